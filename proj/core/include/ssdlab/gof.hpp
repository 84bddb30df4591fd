#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ssdlab/curve.hpp"
#include "ssdlab/dataset.hpp"
#include "ssdlab/model.hpp"

namespace ssdlab {

struct InformationCriteria {
    double aic;
    double bic;
    double aicc;
};

/// AIC = −2ℓ + 2k, BIC = −2ℓ + k ln n, AICc = AIC + (2k² + 2k)/(n − k − 1).
/// Throws std::domain_error when n ≤ k + 1.
InformationCriteria information_criteria(double neg2ll, int k, std::size_t n);

/// Exact one-sample Kolmogorov–Smirnov distance
///   D = max_i max(i/n − F(x_(i)), F(x_(i)) − (i−1)/n).
double ks_statistic(const Dataset& data, const std::function<double(double)>& cdf);

/// Asymptotic Kolmogorov p-value P(K > √n·d).
double ks_pvalue(double d, std::size_t n);

struct ModelRow {
    ModelKind model = ModelKind::ssd;
    std::optional<FitResult> fit;  // empty when the fit failed
    std::string error;
    double neg2ll = 0.0;
    double aic = 0.0;
    double bic = 0.0;
    double aicc = 0.0;
    double ks = 0.0;
    double pvalue = 0.0;

    /// A fit exists and converged.
    bool ok() const noexcept { return fit.has_value() && fit->converged; }
};

struct ModelReport {
    std::string dataset_label;
    std::size_t n = 0;
    double mean = 0.0;
    std::vector<ModelRow> rows;       // in the requested model order
    std::vector<ModelKind> ranking;   // rows with a fit, AIC ascending, −2ℓ tiebreak

    bool all_ok() const;
};

/// Fits every model (concurrently), scores it, and ranks by AIC. A failing
/// fit becomes a row with `error` set; it never aborts the report.
ModelReport compare_models(const Dataset& data, const std::vector<ModelKind>& models,
                           const FitOptions& options = {});

/// Empirical scaled TTT points (i/n, (Σ_{j≤i} x_(j) + (n−i) x_(i)) / Σx), i = 0..n.
CurveSeries empirical_ttt(const Dataset& data);

}  // namespace ssdlab
