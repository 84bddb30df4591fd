#include "ssdlab/random.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace ssdlab::random {

double uniform_open(std::mt19937_64& rng) {
    // 53 random bits, shifted half a step off zero.
    return (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53;
}

double standard_normal(std::mt19937_64& rng) {
    const double u1 = uniform_open(rng);
    const double u2 = uniform_open(rng);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

double gamma_variate(double shape, double rate, std::mt19937_64& rng) {
    if (!(shape > 0.0) || !(rate > 0.0)) {
        throw std::invalid_argument("gamma_variate: shape and rate must be positive");
    }
    if (shape < 1.0) {
        const double boosted = gamma_variate(shape + 1.0, rate, rng);
        return boosted * std::pow(uniform_open(rng), 1.0 / shape);
    }
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
        double z;
        double v;
        do {
            z = standard_normal(rng);
            v = 1.0 + c * z;
        } while (v <= 0.0);
        v = v * v * v;
        const double u = uniform_open(rng);
        const double z2 = z * z;
        if (u < 1.0 - 0.0331 * z2 * z2) return d * v / rate;
        if (std::log(u) < 0.5 * z2 + d * (1.0 - v + std::log(v))) return d * v / rate;
    }
}

}  // namespace ssdlab::random
