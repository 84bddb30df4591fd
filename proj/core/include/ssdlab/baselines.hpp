#pragma once

#include "ssdlab/dataset.hpp"
#include "ssdlab/model.hpp"

// One interface over all seven lifetime models:
//
//   exponential  θ e^{−θx}
//   lindley      θ²/(1+θ) (1+x) e^{−θx}
//   lbed         θ² x e^{−θx}                       (gamma(2, θ))
//   gamma        θ^α x^{α−1} e^{−θx} / Γ(α)         (α shape, θ rate)
//   sd           θ^{α+1} (θ + x^α) e^{−θx} / (θ^{α+1} + Γ(α+1))
//   rkd          θ^α (1 + x^{α−1}) e^{−θx} / (θ^{α−1} + Γ(α))
//   ssd          θ^{α+2} (x + x^{α+1}) e^{−θx} / (θ^α + Γ(α+2))

namespace ssdlab {

double model_pdf(const ModelSpec& model, double x);
double model_cdf(const ModelSpec& model, double x);
double model_log_likelihood(const ModelSpec& model, const Dataset& data);

/// Maximum-likelihood fit. Exponential, LBED and Lindley are closed form;
/// gamma uses Newton on ln α − ψ(α) = ln x̄ − mean(ln x); SSD, SD and RKD
/// use the profile or continuous gamma-mixture fitter per options.alpha_mode.
/// Requires n ≥ 2; throws FitError when no estimate exists.
FitResult fit_model(ModelKind kind, const Dataset& data, const FitOptions& options = {});

/// Lindley MLE: positive root of x̄θ² + (x̄ − 1)θ − 2 = 0.
double lindley_mle(double sample_mean);

}  // namespace ssdlab
