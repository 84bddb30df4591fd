#pragma once

#include <random>

// Portable variate generation on top of std::mt19937_64. The standard
// library's distributions are implementation-defined, so sequences would
// differ between toolchains for the same seed; these do not.

namespace ssdlab::random {

/// Uniform on the open interval (0, 1).
double uniform_open(std::mt19937_64& rng);

/// Standard normal by Box–Muller (two uniforms per draw, no cached state).
double standard_normal(std::mt19937_64& rng);

/// Gamma(shape, rate) by Marsaglia–Tsang; shape < 1 is boosted through
/// Gamma(shape + 1) · U^{1/shape}.
double gamma_variate(double shape, double rate, std::mt19937_64& rng);

}  // namespace ssdlab::random
