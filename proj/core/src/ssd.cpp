#include "ssdlab/ssd.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

#include "ssdlab/oracle.hpp"
#include "ssdlab/random.hpp"
#include "ssdlab/specfun.hpp"

namespace ssdlab {

namespace sf = specfun;

SsdParams::SsdParams(double alpha, double theta) : alpha_(alpha), theta_(theta) {
    if (!std::isfinite(alpha) || alpha < 0.0) {
        throw std::invalid_argument("SsdParams: alpha must be a finite value >= 0, got " +
                                    std::to_string(alpha));
    }
    if (!std::isfinite(theta) || theta <= 0.0) {
        throw std::invalid_argument("SsdParams: theta must be a finite value > 0, got " +
                                    std::to_string(theta));
    }
    const double log_theta_alpha = alpha_ * std::log(theta_);
    const double log_factorial = sf::log_gamma(alpha_ + 2.0);
    log_normalizer_ = sf::log_add_exp(log_theta_alpha, log_factorial);
    log_weight_ = log_theta_alpha - log_normalizer_;
    log_complement_ = log_factorial - log_normalizer_;
    weight_ = std::exp(log_weight_);
}

namespace ssd {

namespace {

constexpr double kLn2 = std::numbers::ln2;

void require_nonnegative(double x, const char* what) {
    if (!(x >= 0.0)) {
        throw std::domain_error(std::string(what) + ": argument must be >= 0, got " +
                                std::to_string(x));
    }
}

// ln(1 + e^y) without overflow.
double softplus(double y) { return y > 0.0 ? y + std::log1p(std::exp(-y)) : std::log1p(std::exp(y)); }

void check_order_stat(int k, int n) {
    if (n < 1 || k < 1 || k > n) {
        throw std::domain_error("order statistic: need 1 <= k <= n, got k=" + std::to_string(k) +
                                " n=" + std::to_string(n));
    }
}

}  // namespace

double mixing_weight(const SsdParams& params) { return params.mixing_weight(); }

double log_pdf(double x, const SsdParams& params) {
    require_nonnegative(x, "ssd::pdf");
    if (x == 0.0) return -std::numeric_limits<double>::infinity();
    const double a = params.alpha();
    const double theta = params.theta();
    const double lx = std::log(x);
    // ln(x + x^{α+1}) = ln x + ln(1 + x^α)
    return (a + 2.0) * std::log(theta) - params.log_normalizer() - theta * x + lx +
           softplus(a * lx);
}

double pdf(double x, const SsdParams& params) {
    require_nonnegative(x, "ssd::pdf");
    if (x == 0.0) return 0.0;
    return std::exp(log_pdf(x, params));
}

double cdf(double x, const SsdParams& params) {
    require_nonnegative(x, "ssd::cdf");
    if (x == 0.0) return 0.0;
    const double z = params.theta() * x;
    const double p = params.mixing_weight();
    const double value = p * sf::regularized_lower_gamma(2.0, z) +
                         std::exp(params.log_complement_weight()) *
                             sf::regularized_lower_gamma(params.alpha() + 2.0, z);
    return std::min(value, 1.0);
}

double log_survival(double x, const SsdParams& params) {
    require_nonnegative(x, "ssd::survival");
    const double z = params.theta() * x;
    return sf::log_add_exp(params.log_mixing_weight() + sf::log_regularized_upper_gamma(2.0, z),
                           params.log_complement_weight() +
                               sf::log_regularized_upper_gamma(params.alpha() + 2.0, z));
}

double survival(double x, const SsdParams& params) {
    return std::min(std::exp(log_survival(x, params)), 1.0);
}

double hazard(double x, const SsdParams& params) {
    if (!(x > 0.0)) {
        throw std::domain_error("ssd::hazard: x must be > 0, got " + std::to_string(x));
    }
    return std::exp(log_pdf(x, params) - log_survival(x, params));
}

double tail_partial_mean(double q, const SsdParams& params) {
    require_nonnegative(q, "ssd::tail_partial_mean");
    const double a = params.alpha();
    const double z = params.theta() * q;
    // Γ(3, z) = (z² + 2z + 2)e^{−z} and Γ(α+3, z)/Γ(α+2) = (α+2)·Q(α+3, z).
    const double log_base = params.log_mixing_weight() + kLn2 + sf::log_regularized_upper_gamma(3.0, z);
    const double log_ext = params.log_complement_weight() + std::log(a + 2.0) +
                           sf::log_regularized_upper_gamma(a + 3.0, z);
    return std::exp(sf::log_add_exp(log_base, log_ext) - std::log(params.theta()));
}

double mean_residual_life(double x, const SsdParams& params) {
    require_nonnegative(x, "ssd::mean_residual_life");
    const double a = params.alpha();
    const double z = params.theta() * x;
    const double log_base = params.log_mixing_weight() + kLn2 + sf::log_regularized_upper_gamma(3.0, z);
    const double log_ext = params.log_complement_weight() + std::log(a + 2.0) +
                           sf::log_regularized_upper_gamma(a + 3.0, z);
    const double log_tail = sf::log_add_exp(log_base, log_ext) - std::log(params.theta());
    return std::max(std::exp(log_tail - log_survival(x, params)) - x, 0.0);
}

double raw_moment(int r, const SsdParams& params) {
    if (r < 0) throw std::domain_error("ssd::raw_moment: order must be >= 0");
    if (r == 0) return 1.0;
    const double a = params.alpha();
    // [θ^α (r+1)! + Γ(α+r+2)] / [θ^r (θ^α + Γ(α+2))]
    const double log_base = params.log_mixing_weight() + sf::log_gamma(r + 2.0);
    const double log_ext =
        params.log_complement_weight() + sf::log_gamma(a + r + 2.0) - sf::log_gamma(a + 2.0);
    return std::exp(sf::log_add_exp(log_base, log_ext) - r * std::log(params.theta()));
}

double mean(const SsdParams& params) { return raw_moment(1, params); }

double variance(const SsdParams& params) {
    const double m1 = raw_moment(1, params);
    return raw_moment(2, params) - m1 * m1;
}

double mgf(double t, const SsdParams& params) {
    const double theta = params.theta();
    if (!(t < theta)) {
        throw std::domain_error("ssd::mgf: diverges for t >= theta");
    }
    const double a = params.alpha();
    const double log_shift = std::log(theta - t);
    // θ^{α+2} [(θ−t)^α + Γ(α+2)] / [(θ−t)^{α+2} (θ^α + Γ(α+2))]
    const double log_bracket = sf::log_add_exp(a * log_shift, sf::log_gamma(a + 2.0));
    return std::exp((a + 2.0) * std::log(theta) + log_bracket - (a + 2.0) * log_shift -
                    params.log_normalizer());
}

std::complex<double> characteristic_function(double t, const SsdParams& params) {
    const double theta = params.theta();
    const double a = params.alpha();
    const std::complex<double> ratio = std::complex<double>(theta, -t) / theta;  // (θ − it)/θ
    const std::complex<double> inv = 1.0 / ratio;
    // (θ/(θ−it))^{α+2} · [p·((θ−it)/θ)^α + (1 − p)]
    const double p = params.mixing_weight();
    return std::pow(inv, a + 2.0) * (p * std::pow(ratio, a) + (1.0 - p));
}

double quantile(double u, const SsdParams& params) {
    if (!(u > 0.0 && u < 1.0)) {
        throw std::domain_error("ssd::quantile: u must lie in (0, 1), got " + std::to_string(u));
    }
    // Work on whichever tail keeps the target away from 1 in floating point.
    const bool upper = u > 0.5;
    const double target = upper ? 1.0 - u : u;
    const auto residual = [&](double x) {
        return upper ? target - survival(x, params) : cdf(x, params) - target;
    };

    double lo = 0.0;
    double hi = mean(params);
    while (residual(hi) < 0.0) {
        lo = hi;
        hi *= 2.0;
    }
    while (hi - lo > 1e-8 * std::max(1.0, hi)) {
        const double mid = 0.5 * (lo + hi);
        (residual(mid) < 0.0 ? lo : hi) = mid;
    }
    double x = 0.5 * (lo + hi);
    const double tolerance = std::min(1e-10, 1e-8 * target);
    for (int i = 0; i < 50; ++i) {
        const double r = residual(x);
        if (std::abs(r) <= tolerance) break;
        const double density = pdf(x, params);
        if (!(density > 0.0)) break;
        const double next = x - r / density;
        x = (next > lo && next < hi) ? next : 0.5 * (lo + hi);
        (residual(x) < 0.0 ? lo : hi) = x;
    }
    return x;
}

double renyi_entropy(double order, const SsdParams& params, RenyiMethod method) {
    if (!(order > 0.0)) throw std::domain_error("ssd::renyi_entropy: order must be > 0");
    if (order == 1.0) {
        throw std::domain_error(
            "ssd::renyi_entropy: order 1 is the Shannon limit, which is not provided");
    }
    const bool integer_order = order == std::floor(order) && order <= 1000.0;
    if (method == RenyiMethod::automatic) {
        method = integer_order ? RenyiMethod::closed_form : RenyiMethod::quadrature;
    }

    double log_integral = 0.0;
    if (method == RenyiMethod::closed_form) {
        if (!integer_order) {
            throw std::domain_error("ssd::renyi_entropy: closed form needs an integer order");
        }
        // ∫ f^γ = c^γ Σ_k C(γ,k) Γ(αk+γ+1) / (γθ)^{αk+γ+1}, c = θ^{α+2}/(θ^α+Γ(α+2))
        const int g = static_cast<int>(order);
        const double a = params.alpha();
        const double log_rate = std::log(order * params.theta());
        double log_sum = -std::numeric_limits<double>::infinity();
        for (int k = 0; k <= g; ++k) {
            const double shape = a * k + order + 1.0;
            const double log_binom =
                sf::log_gamma(g + 1.0) - sf::log_gamma(k + 1.0) - sf::log_gamma(g - k + 1.0);
            log_sum = sf::log_add_exp(log_sum, log_binom + sf::log_gamma(shape) - shape * log_rate);
        }
        log_integral =
            order * ((a + 2.0) * std::log(params.theta()) - params.log_normalizer()) + log_sum;
    } else {
        // Rescale by the density peak so f^γ neither underflows nor overflows.
        const double peak = log_pdf(std::max(mean(params), 1e-300), params);
        const auto integrand = [&](double x) {
            if (x <= 0.0) return 0.0;
            return std::exp(order * (log_pdf(x, params) - peak));
        };
        const auto r = oracle::integrate(integrand, 0.0, oracle::kInfinity, 1e-12);
        log_integral = std::log(r.value) + order * peak;
    }
    return log_integral / (1.0 - order);
}

double lorenz(double p, const SsdParams& params) {
    if (!(p > 0.0 && p <= 1.0)) {
        throw std::domain_error("ssd::lorenz: p must lie in (0, 1], got " + std::to_string(p));
    }
    if (p == 1.0) return 1.0;
    const double q = quantile(p, params);
    return std::clamp(1.0 - tail_partial_mean(q, params) / mean(params), 0.0, 1.0);
}

double bonferroni(double p, const SsdParams& params) {
    if (!(p > 0.0 && p < 1.0)) {
        throw std::domain_error("ssd::bonferroni: p must lie in (0, 1), got " + std::to_string(p));
    }
    return lorenz(p, params) / p;
}

double order_stat_pdf(double y, int k, int n, const SsdParams& params) {
    check_order_stat(k, n);
    require_nonnegative(y, "ssd::order_stat_pdf");
    if (y == 0.0) return 0.0;
    const double log_coef =
        sf::log_gamma(n + 1.0) - sf::log_gamma(k) - sf::log_gamma(n - k + 1.0);
    const double log_f = std::log(cdf(y, params));
    const double log_s = log_survival(y, params);
    double value = log_coef + log_pdf(y, params);
    if (k > 1) value += (k - 1) * log_f;
    if (n > k) value += (n - k) * log_s;
    return std::exp(value);
}

double order_stat_cdf(double y, int k, int n, const SsdParams& params) {
    check_order_stat(k, n);
    require_nonnegative(y, "ssd::order_stat_cdf");
    if (y == 0.0) return 0.0;
    const double log_f = std::log(cdf(y, params));
    const double log_s = log_survival(y, params);
    double total = 0.0;
    for (int j = k; j <= n; ++j) {
        const double log_binom =
            sf::log_gamma(n + 1.0) - sf::log_gamma(j + 1.0) - sf::log_gamma(n - j + 1.0);
        double term = log_binom + j * log_f;
        if (n > j) term += (n - j) * log_s;
        total += std::exp(term);
    }
    return std::min(total, 1.0);
}

double ttt_transform(double u, const SsdParams& params) {
    if (!(u >= 0.0 && u <= 1.0)) {
        throw std::domain_error("ssd::ttt_transform: u must lie in [0, 1], got " +
                                std::to_string(u));
    }
    if (u == 0.0) return 0.0;
    const double upper = u == 1.0 ? oracle::kInfinity : quantile(u, params);
    const auto r = oracle::integrate([&](double t) { return survival(t, params); }, 0.0, upper,
                                     1e-11);
    return r.value / mean(params);
}

std::vector<double> sample_values(std::size_t n, const SsdParams& params, std::mt19937_64& rng) {
    if (n == 0) throw std::domain_error("ssd::sample: n must be >= 1");
    const double p = params.mixing_weight();
    const double theta = params.theta();
    const double extended_shape = params.alpha() + 2.0;
    std::vector<double> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (random::uniform_open(rng) < p) {
            // gamma(2, θ) as a sum of two exponentials
            const double u1 = random::uniform_open(rng);
            const double u2 = random::uniform_open(rng);
            out.push_back(-(std::log(u1) + std::log(u2)) / theta);
        } else {
            out.push_back(random::gamma_variate(extended_shape, theta, rng));
        }
    }
    return out;
}

Dataset sample(std::size_t n, const SsdParams& params, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    return Dataset(sample_values(n, params, rng), "ssd-sample");
}

}  // namespace ssd
}  // namespace ssdlab
