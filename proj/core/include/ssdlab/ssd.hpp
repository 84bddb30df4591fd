#pragma once

#include <complex>
#include <cstdint>
#include <random>
#include <vector>

#include "ssdlab/dataset.hpp"

// The SSD lifetime distribution: a convex mixture of gamma(2, θ) and
// gamma(α + 2, θ),
//
//     f(x; α, θ) = θ^{α+2} / (θ^α + Γ(α+2)) · e^{−θx} (x + x^{α+1}),   x ≥ 0,
//
// with mixing weight p = θ^α / (θ^α + Γ(α+2)) on the gamma(2, θ) component.
// α is a nonnegative real; (α+1)! is read as Γ(α+2) throughout.

namespace ssdlab {

/// Validated (α, θ) pair. Immutable; caches the mixing weight and the
/// log normalizer ln(θ^α + Γ(α+2)).
class SsdParams {
public:
    /// Throws std::invalid_argument unless alpha >= 0 and theta > 0 (both finite).
    SsdParams(double alpha, double theta);

    double alpha() const noexcept { return alpha_; }
    double theta() const noexcept { return theta_; }
    /// p, the weight on the gamma(2, θ) component.
    double mixing_weight() const noexcept { return weight_; }
    double log_mixing_weight() const noexcept { return log_weight_; }
    /// ln(1 − p), the log weight on the gamma(α+2, θ) component.
    double log_complement_weight() const noexcept { return log_complement_; }
    /// ln(θ^α + Γ(α+2)).
    double log_normalizer() const noexcept { return log_normalizer_; }

private:
    double alpha_;
    double theta_;
    double log_normalizer_;
    double log_weight_;
    double log_complement_;
    double weight_;
};

namespace ssd {

double mixing_weight(const SsdParams& params);

double pdf(double x, const SsdParams& params);
double log_pdf(double x, const SsdParams& params);
double cdf(double x, const SsdParams& params);
double survival(double x, const SsdParams& params);
double log_survival(double x, const SsdParams& params);

/// f(x)/S(x) for x > 0, evaluated as exp(ln f − ln S) so it stays finite
/// deep in the tail.
double hazard(double x, const SsdParams& params);

/// E(X − x | X > x).
double mean_residual_life(double x, const SsdParams& params);

/// E(X^r). r = 0 gives the total mass 1; negative r throws.
double raw_moment(int r, const SsdParams& params);
double mean(const SsdParams& params);
double variance(const SsdParams& params);

/// E(e^{tX}) for t < θ.
double mgf(double t, const SsdParams& params);
std::complex<double> characteristic_function(double t, const SsdParams& params);

/// F^{-1}(u) for u in (0, 1), |F(x) − u| ≤ 1e-10.
double quantile(double u, const SsdParams& params);

enum class RenyiMethod { automatic, closed_form, quadrature };

/// (1 − γ)^{-1} ln ∫ f^γ. The closed form needs an integer order; the
/// automatic method uses it whenever that holds and quadrature otherwise.
double renyi_entropy(double order, const SsdParams& params,
                     RenyiMethod method = RenyiMethod::automatic);

/// ∫_q^∞ x f(x) dx.
double tail_partial_mean(double q, const SsdParams& params);
/// L(p) = (1/μ) ∫₀^{F^{-1}(p)} x f(x) dx, p in (0, 1].
double lorenz(double p, const SsdParams& params);
/// B(p) = L(p)/p, p in (0, 1).
double bonferroni(double p, const SsdParams& params);

/// Density and distribution of the k-th smallest of n draws (1 ≤ k ≤ n).
double order_stat_pdf(double y, int k, int n, const SsdParams& params);
double order_stat_cdf(double y, int k, int n, const SsdParams& params);

/// Scaled total-time-on-test transform (1/μ) ∫₀^{F^{-1}(u)} S(t) dt.
double ttt_transform(double u, const SsdParams& params);

/// n draws in generation order, by composition: Bernoulli(p) picks the
/// gamma(2, θ) or gamma(α+2, θ) component.
std::vector<double> sample_values(std::size_t n, const SsdParams& params, std::mt19937_64& rng);
Dataset sample(std::size_t n, const SsdParams& params, std::uint64_t seed);

}  // namespace ssd
}  // namespace ssdlab
