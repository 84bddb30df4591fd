#include "ssdlab/gof.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <numbers>
#include <stdexcept>

#include "ssdlab/baselines.hpp"

namespace ssdlab {

InformationCriteria information_criteria(double neg2ll, int k, std::size_t n) {
    if (k < 0) throw std::domain_error("information_criteria: k must be >= 0");
    const double nn = static_cast<double>(n);
    if (!(nn > k + 1.0)) {
        throw std::domain_error("information_criteria: AICc undefined for n <= k + 1");
    }
    InformationCriteria ic{};
    ic.aic = neg2ll + 2.0 * k;
    ic.bic = neg2ll + k * std::log(nn);
    ic.aicc = ic.aic + (2.0 * k * k + 2.0 * k) / (nn - k - 1.0);
    return ic;
}

double ks_statistic(const Dataset& data, const std::function<double(double)>& cdf) {
    const auto values = data.values();
    const double n = static_cast<double>(values.size());
    double d = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i) {
        const double f = cdf(values[i]);
        d = std::max({d, (i + 1.0) / n - f, f - i / n});
    }
    return d;
}

double ks_pvalue(double d, std::size_t n) {
    if (!(d >= 0.0)) throw std::domain_error("ks_pvalue: d must be >= 0");
    const double lambda = std::sqrt(static_cast<double>(n)) * d;
    if (lambda == 0.0) return 1.0;
    double p = 0.0;
    if (lambda < 1.18) {
        // P(K ≤ λ) = √(2π)/λ Σ_j exp(−(2j−1)²π²/(8λ²))
        const double c = std::numbers::pi * std::numbers::pi / (8.0 * lambda * lambda);
        double cdf = 0.0;
        for (int j = 1; j < 100; ++j) {
            const double odd = 2.0 * j - 1.0;
            const double term = std::exp(-odd * odd * c);
            cdf += term;
            if (term < 1e-16 * cdf || term == 0.0) break;
        }
        p = 1.0 - std::sqrt(2.0 * std::numbers::pi) / lambda * cdf;
    } else {
        // 2 Σ_j (−1)^{j−1} exp(−2j²λ²)
        double sign = 1.0;
        for (int j = 1; j < 100; ++j) {
            const double term = std::exp(-2.0 * j * j * lambda * lambda);
            p += sign * term;
            if (term < 1e-12) break;
            sign = -sign;
        }
        p *= 2.0;
    }
    return std::clamp(p, 0.0, 1.0);
}

bool ModelReport::all_ok() const {
    return std::all_of(rows.begin(), rows.end(), [](const ModelRow& r) { return r.ok(); });
}

namespace {

ModelRow score_model(ModelKind kind, const Dataset& data, const FitOptions& options) {
    ModelRow row;
    row.model = kind;
    try {
        FitResult fit = fit_model(kind, data, options);
        const auto ic = information_criteria(fit.neg2ll, fit.model.param_count(), data.size());
        row.neg2ll = fit.neg2ll;
        row.aic = ic.aic;
        row.bic = ic.bic;
        row.aicc = ic.aicc;
        const ModelSpec& model = fit.model;
        row.ks = ks_statistic(data, [&model](double x) { return model_cdf(model, x); });
        row.pvalue = ks_pvalue(row.ks, data.size());
        if (!fit.converged) row.error = "fit did not converge";
        row.fit = std::move(fit);
    } catch (const std::exception& e) {
        row.error = e.what();
    }
    return row;
}

}  // namespace

ModelReport compare_models(const Dataset& data, const std::vector<ModelKind>& models,
                           const FitOptions& options) {
    if (models.empty()) throw std::invalid_argument("compare_models: no models requested");
    ModelReport report;
    report.dataset_label = data.label();
    report.n = data.size();
    report.mean = data.mean();

    std::vector<std::future<ModelRow>> pending;
    pending.reserve(models.size());
    for (ModelKind kind : models) {
        pending.push_back(std::async(std::launch::async, score_model, kind, std::cref(data),
                                     std::cref(options)));
    }
    for (auto& f : pending) report.rows.push_back(f.get());

    std::vector<const ModelRow*> ranked;
    for (const auto& row : report.rows) {
        if (row.fit) ranked.push_back(&row);
    }
    std::stable_sort(ranked.begin(), ranked.end(), [](const ModelRow* a, const ModelRow* b) {
        if (a->aic != b->aic) return a->aic < b->aic;
        return a->neg2ll < b->neg2ll;
    });
    for (const ModelRow* row : ranked) report.ranking.push_back(row->model);
    return report;
}

CurveSeries empirical_ttt(const Dataset& data) {
    const auto x = data.values();
    const std::size_t n = x.size();
    if (n < 2) throw std::invalid_argument("empirical_ttt: need at least 2 observations");
    CurveSeries curve{"empirical-ttt", {}};
    curve.points.reserve(n + 1);
    curve.points.push_back({0.0, 0.0});
    double partial = 0.0;
    for (std::size_t i = 1; i <= n; ++i) {
        partial += x[i - 1];
        const double total_time = partial + static_cast<double>(n - i) * x[i - 1];
        curve.points.push_back({static_cast<double>(i) / n, total_time / data.sum()});
    }
    curve.points.back().y = 1.0;
    return curve;
}

}  // namespace ssdlab
