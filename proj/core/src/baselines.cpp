#include "ssdlab/baselines.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "ssdlab/fit.hpp"
#include "ssdlab/specfun.hpp"
#include "ssdlab/ssd.hpp"

namespace ssdlab {

namespace sf = specfun;

namespace {

void check_x(double x) {
    if (!(x >= 0.0)) throw std::domain_error("model pdf/cdf: x must be >= 0");
}

FitResult closed_form(const ModelSpec& model, const Dataset& data) {
    FitResult r(model);
    r.loglik = model_log_likelihood(model, data);
    r.neg2ll = -2.0 * r.loglik;
    r.mode = FitMode::closed_form;
    r.converged = true;
    return r;
}

FitResult fit_gamma(const Dataset& data, const FitOptions& options) {
    const double n = static_cast<double>(data.size());
    const double c = std::log(data.mean()) - data.sum_log() / n;
    if (!(c > 0.0)) {
        throw FitError("gamma fit: sample has no spread, shape estimate diverges");
    }
    // Minka's closed-form start, then Newton on ln k − ψ(k) − c = 0.
    double k = (3.0 - c + std::sqrt((c - 3.0) * (c - 3.0) + 24.0 * c)) / (12.0 * c);
    double residual = 0.0;
    int it = 0;
    for (; it < options.max_iterations; ++it) {
        residual = std::log(k) - sf::digamma(k) - c;
        const double slope = 1.0 / k - sf::trigamma(k);
        double next = k - residual / slope;
        if (!(next > 0.0)) next = 0.5 * k;
        const double change = std::abs(next - k);
        k = next;
        if (change <= 1e-14 * k) break;
    }
    residual = std::log(k) - sf::digamma(k) - c;
    FitResult r(ModelSpec::make(ModelKind::gamma, k, k / data.mean()));
    r.loglik = model_log_likelihood(r.model, data);
    r.neg2ll = -2.0 * r.loglik;
    r.mode = FitMode::continuous;
    r.iterations = it + 1;
    r.gradient_norm = n * std::abs(residual);  // |∂ℓ/∂k| at θ = k/x̄
    r.converged = r.gradient_norm < options.gradient_tolerance * n;
    if (!r.converged) throw FitError("gamma fit: Newton iteration did not converge", r);
    return r;
}

}  // namespace

double lindley_mle(double m) {
    return (-(m - 1.0) + std::sqrt((m - 1.0) * (m - 1.0) + 8.0 * m)) / (2.0 * m);
}

double model_pdf(const ModelSpec& model, double x) {
    check_x(x);
    const double theta = model.theta();
    switch (model.kind()) {
        case ModelKind::exponential: return theta * std::exp(-theta * x);
        case ModelKind::lindley: return theta * theta / (1.0 + theta) * (1.0 + x) * std::exp(-theta * x);
        case ModelKind::lbed: return theta * theta * x * std::exp(-theta * x);
        case ModelKind::gamma: {
            const double k = model.alpha();
            if (x == 0.0) return k < 1.0 ? std::numeric_limits<double>::infinity() : (k == 1.0 ? theta : 0.0);
            return std::exp(k * std::log(theta) + (k - 1.0) * std::log(x) - theta * x -
                            sf::log_gamma(k));
        }
        case ModelKind::ssd: return ssd::pdf(x, SsdParams(model.alpha(), theta));
        case ModelKind::sd:
        case ModelKind::rkd:
            return mixture::pdf(mixture::family_for(model.kind()), x, model.alpha(), theta);
    }
    throw std::invalid_argument("model_pdf: unknown model");
}

double model_cdf(const ModelSpec& model, double x) {
    check_x(x);
    const double theta = model.theta();
    switch (model.kind()) {
        case ModelKind::exponential: return -std::expm1(-theta * x);
        case ModelKind::lindley:
            return 1.0 - (1.0 + theta * x / (1.0 + theta)) * std::exp(-theta * x);
        case ModelKind::lbed: return sf::regularized_lower_gamma(2.0, theta * x);
        case ModelKind::gamma:
            return x == 0.0 ? 0.0 : sf::regularized_lower_gamma(model.alpha(), theta * x);
        case ModelKind::ssd: return ssd::cdf(x, SsdParams(model.alpha(), theta));
        case ModelKind::sd:
        case ModelKind::rkd:
            return mixture::cdf(mixture::family_for(model.kind()), x, model.alpha(), theta);
    }
    throw std::invalid_argument("model_cdf: unknown model");
}

double model_log_likelihood(const ModelSpec& model, const Dataset& data) {
    const double n = static_cast<double>(data.size());
    const double theta = model.theta();
    const double lt = std::log(theta);
    switch (model.kind()) {
        case ModelKind::exponential: return n * lt - theta * data.sum();
        case ModelKind::lindley: {
            double s = 0.0;
            for (double x : data.values()) s += std::log1p(x);
            return n * (2.0 * lt - std::log1p(theta)) + s - theta * data.sum();
        }
        case ModelKind::lbed: return 2.0 * n * lt + data.sum_log() - theta * data.sum();
        case ModelKind::gamma: {
            const double k = model.alpha();
            return n * (k * lt - sf::log_gamma(k)) + (k - 1.0) * data.sum_log() - theta * data.sum();
        }
        case ModelKind::ssd: return log_likelihood(SsdParams(model.alpha(), theta), data);
        case ModelKind::sd:
        case ModelKind::rkd:
            return mixture::log_likelihood(mixture::family_for(model.kind()), data, model.alpha(),
                                           theta);
    }
    throw std::invalid_argument("model_log_likelihood: unknown model");
}

FitResult fit_model(ModelKind kind, const Dataset& data, const FitOptions& options) {
    if (data.size() < 2) {
        throw FitError(std::string(model_name(kind)) + " fit: need at least 2 observations");
    }
    const double xbar = data.mean();
    switch (kind) {
        case ModelKind::exponential: return closed_form(ModelSpec::make(kind, 1.0 / xbar), data);
        case ModelKind::lbed: return closed_form(ModelSpec::make(kind, 2.0 / xbar), data);
        case ModelKind::lindley: return closed_form(ModelSpec::make(kind, lindley_mle(xbar)), data);
        case ModelKind::gamma: return fit_gamma(data, options);
        case ModelKind::ssd:
        case ModelKind::sd:
        case ModelKind::rkd: {
            const auto& fam = mixture::family_for(kind);
            if (options.alpha_mode == AlphaMode::profile) {
                return mixture::fit_profile(fam, data, options.alpha_max);
            }
            return mixture::fit_continuous(fam, data, std::nullopt, options);
        }
    }
    throw std::invalid_argument("fit_model: unknown model");
}

}  // namespace ssdlab
