#pragma once

#include <optional>

#include "ssdlab/dataset.hpp"
#include "ssdlab/model.hpp"
#include "ssdlab/ssd.hpp"

namespace ssdlab {

/// Partial derivatives of the log-likelihood.
struct Score {
    double d_theta = 0.0;
    double d_alpha = 0.0;
};

/// Log-likelihood of SSD, evaluated term by term:
///   n(α+2) ln θ − n ln(θ^α + Γ(α+2)) − θ Σx + Σ ln(x + x^{α+1}).
double log_likelihood(const SsdParams& params, const Dataset& data);

/// ∂/∂θ and ∂/∂α of log_likelihood. ∂Γ(α+2)/∂α enters as Γ(α+2)ψ(α+2) and
/// the data term differentiates to Σ x^{α+1} ln x / (x + x^{α+1}).
Score score(const SsdParams& params, const Dataset& data);

/// Integer-α profile: for α = 0..alpha_max solve ∂/∂θ = 0 by safeguarded
/// Newton, keep the α with the largest log-likelihood. Throws FitError when
/// no α admits a root.
FitResult fit_profile(const Dataset& data, int alpha_max = 50);

/// Damped two-dimensional Newton–Raphson on the score with α ≥ 0.
/// Starts from `init` or, by default, from the profile winner α₀ with θ₀
/// matched to the sample mean. Non-convergence is reported in the result,
/// not thrown.
FitResult fit_continuous(const Dataset& data, std::optional<SsdParams> init = std::nullopt,
                         const FitOptions& options = {});

/// Two-parameter exponential-rate gamma mixtures sharing the SSD algebra:
///
///   f(x) ∝ (θ^e x^{s−1} + x^{a+s−1}) e^{−θx},   a = α + offset,
///
/// i.e. a mixture of gamma(s, θ) and gamma(a + s, θ). SSD is (s=2, e=0, 0),
/// the Shukla distribution (s=1, e=1, 0) and Rama–Kamlesh (s=1, e=0, −1).
struct GammaMixtureFamily {
    ModelKind kind;
    double base_shape;
    double base_rate_power;
    double alpha_offset;
    double alpha_min;
    int profile_alpha_min;
};

namespace mixture {

inline constexpr GammaMixtureFamily kSsd{ModelKind::ssd, 2.0, 0.0, 0.0, 0.0, 0};
inline constexpr GammaMixtureFamily kShukla{ModelKind::sd, 1.0, 1.0, 0.0, 0.0, 0};
inline constexpr GammaMixtureFamily kRamaKamlesh{ModelKind::rkd, 1.0, 0.0, -1.0, 1e-6, 1};

/// Throws std::invalid_argument for a kind outside {ssd, sd, rkd}.
const GammaMixtureFamily& family_for(ModelKind kind);

/// Throws std::invalid_argument when (alpha, theta) is outside the family's domain.
void validate(const GammaMixtureFamily& fam, double alpha, double theta);

double log_normalizer(const GammaMixtureFamily& fam, double alpha, double theta);
/// Weight of the gamma(s, θ) component.
double base_weight(const GammaMixtureFamily& fam, double alpha, double theta);
double log_pdf(const GammaMixtureFamily& fam, double x, double alpha, double theta);
double pdf(const GammaMixtureFamily& fam, double x, double alpha, double theta);
double cdf(const GammaMixtureFamily& fam, double x, double alpha, double theta);
double mean(const GammaMixtureFamily& fam, double alpha, double theta);

double log_likelihood(const GammaMixtureFamily& fam, const Dataset& data, double alpha,
                      double theta);
Score score(const GammaMixtureFamily& fam, const Dataset& data, double alpha, double theta);

/// θ with mean(α, θ) equal to the sample mean.
double moment_theta(const GammaMixtureFamily& fam, const Dataset& data, double alpha);

FitResult fit_profile(const GammaMixtureFamily& fam, const Dataset& data, int alpha_max);

struct StartPoint {
    double alpha;
    double theta;
};

FitResult fit_continuous(const GammaMixtureFamily& fam, const Dataset& data,
                         std::optional<StartPoint> init, const FitOptions& options);

}  // namespace mixture
}  // namespace ssdlab
