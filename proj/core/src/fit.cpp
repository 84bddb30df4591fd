#include "ssdlab/fit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "ssdlab/specfun.hpp"

namespace ssdlab {

namespace sf = specfun;

namespace {

double softplus(double y) { return y > 0.0 ? y + std::log1p(std::exp(-y)) : std::log1p(std::exp(y)); }
double sigmoid(double y) {
    if (y >= 0.0) return 1.0 / (1.0 + std::exp(-y));
    const double e = std::exp(y);
    return e / (1.0 + e);
}

}  // namespace

double log_likelihood(const SsdParams& params, const Dataset& data) {
    const double n = static_cast<double>(data.size());
    const double a = params.alpha();
    const double theta = params.theta();
    double data_term = 0.0;
    for (double x : data.values()) {
        const double lx = std::log(x);
        data_term += lx + softplus(a * lx);  // ln(x + x^{α+1})
    }
    return n * (a + 2.0) * std::log(theta) - n * params.log_normalizer() - theta * data.sum() +
           data_term;
}

Score score(const SsdParams& params, const Dataset& data) {
    const double n = static_cast<double>(data.size());
    const double a = params.alpha();
    const double theta = params.theta();
    const double log_theta = std::log(theta);
    // θ^α/(θ^α + Γ(α+2)) = p and Γ(α+2)/(θ^α + Γ(α+2)) = 1 − p
    const double p = params.mixing_weight();
    const double q = std::exp(params.log_complement_weight());

    Score s;
    s.d_theta = n * (a + 2.0) / theta - n * a * p / theta - data.sum();

    double data_term = 0.0;
    for (double x : data.values()) {
        const double lx = std::log(x);
        data_term += sigmoid(a * lx) * lx;  // x^{α+1} ln x / (x + x^{α+1})
    }
    s.d_alpha = n * log_theta - n * (q * sf::digamma(a + 2.0) + p * log_theta) + data_term;
    return s;
}

FitResult fit_profile(const Dataset& data, int alpha_max) {
    return mixture::fit_profile(mixture::kSsd, data, alpha_max);
}

FitResult fit_continuous(const Dataset& data, std::optional<SsdParams> init,
                         const FitOptions& options) {
    std::optional<mixture::StartPoint> start;
    if (init) start = mixture::StartPoint{init->alpha(), init->theta()};
    return mixture::fit_continuous(mixture::kSsd, data, start, options);
}

namespace mixture {

const GammaMixtureFamily& family_for(ModelKind kind) {
    switch (kind) {
        case ModelKind::ssd: return kSsd;
        case ModelKind::sd: return kShukla;
        case ModelKind::rkd: return kRamaKamlesh;
        default: break;
    }
    throw std::invalid_argument("no gamma-mixture family for model " +
                                std::string(model_name(kind)));
}

void validate(const GammaMixtureFamily& fam, double alpha, double theta) {
    if (!std::isfinite(theta) || theta <= 0.0) {
        throw std::invalid_argument(std::string(model_name(fam.kind)) + ": theta must be > 0");
    }
    if (!std::isfinite(alpha) || alpha < fam.alpha_min) {
        throw std::invalid_argument(std::string(model_name(fam.kind)) + ": alpha must be >= " +
                                    std::to_string(fam.alpha_min));
    }
}

namespace {

struct Terms {
    double log_theta;
    double log_base;  // ln of the gamma(s, θ) part of the normalizer
    double log_ext;   // ln of the gamma(a+s, θ) part
    double log_norm;
    double weight;    // W, share of the base component
};

Terms terms(const GammaMixtureFamily& fam, double alpha, double theta) {
    const double a = alpha + fam.alpha_offset;
    const double s = fam.base_shape;
    Terms t{};
    t.log_theta = std::log(theta);
    t.log_base = fam.base_rate_power * t.log_theta + sf::log_gamma(s) - s * t.log_theta;
    t.log_ext = sf::log_gamma(a + s) - (a + s) * t.log_theta;
    t.log_norm = sf::log_add_exp(t.log_base, t.log_ext);
    t.weight = std::exp(t.log_base - t.log_norm);
    return t;
}

// ln(θ^e x^{s−1} + x^{a+s−1})
double log_kernel(const GammaMixtureFamily& fam, double lx, double a, double log_theta) {
    const double e_log_theta = fam.base_rate_power * log_theta;
    return (fam.base_shape - 1.0) * lx + e_log_theta + softplus(a * lx - e_log_theta);
}

}  // namespace

double log_normalizer(const GammaMixtureFamily& fam, double alpha, double theta) {
    validate(fam, alpha, theta);
    return terms(fam, alpha, theta).log_norm;
}

double base_weight(const GammaMixtureFamily& fam, double alpha, double theta) {
    validate(fam, alpha, theta);
    return terms(fam, alpha, theta).weight;
}

double log_pdf(const GammaMixtureFamily& fam, double x, double alpha, double theta) {
    validate(fam, alpha, theta);
    if (x < 0.0) throw std::domain_error("mixture pdf: x must be >= 0");
    const auto t = terms(fam, alpha, theta);
    const double a = alpha + fam.alpha_offset;
    if (x == 0.0) {
        // Kernel at 0: θ^e·[s == 1] + [a + s == 1]
        double k = 0.0;
        if (fam.base_shape == 1.0) k += std::exp(fam.base_rate_power * t.log_theta);
        if (a + fam.base_shape == 1.0) k += 1.0;
        if (k == 0.0 && a + fam.base_shape < 1.0) return std::numeric_limits<double>::infinity();
        return std::log(k) - t.log_norm;
    }
    return log_kernel(fam, std::log(x), a, t.log_theta) - theta * x - t.log_norm;
}

double pdf(const GammaMixtureFamily& fam, double x, double alpha, double theta) {
    return std::exp(log_pdf(fam, x, alpha, theta));
}

double cdf(const GammaMixtureFamily& fam, double x, double alpha, double theta) {
    validate(fam, alpha, theta);
    if (x < 0.0) throw std::domain_error("mixture cdf: x must be >= 0");
    if (x == 0.0) return 0.0;
    const auto t = terms(fam, alpha, theta);
    const double a = alpha + fam.alpha_offset;
    const double z = theta * x;
    return std::min(1.0, t.weight * sf::regularized_lower_gamma(fam.base_shape, z) +
                             (1.0 - t.weight) * sf::regularized_lower_gamma(a + fam.base_shape, z));
}

double mean(const GammaMixtureFamily& fam, double alpha, double theta) {
    validate(fam, alpha, theta);
    const auto t = terms(fam, alpha, theta);
    const double a = alpha + fam.alpha_offset;
    return (t.weight * fam.base_shape + (1.0 - t.weight) * (a + fam.base_shape)) / theta;
}

double log_likelihood(const GammaMixtureFamily& fam, const Dataset& data, double alpha,
                      double theta) {
    validate(fam, alpha, theta);
    const auto t = terms(fam, alpha, theta);
    const double a = alpha + fam.alpha_offset;
    double kernel = 0.0;
    for (double x : data.values()) kernel += log_kernel(fam, std::log(x), a, t.log_theta);
    return kernel - theta * data.sum() - static_cast<double>(data.size()) * t.log_norm;
}

Score score(const GammaMixtureFamily& fam, const Dataset& data, double alpha, double theta) {
    validate(fam, alpha, theta);
    const auto t = terms(fam, alpha, theta);
    const double n = static_cast<double>(data.size());
    const double a = alpha + fam.alpha_offset;
    const double s = fam.base_shape;
    const double e = fam.base_rate_power;

    // Per-observation base-component share of the kernel: w_i = σ(e ln θ − a ln x_i).
    double base_share = 0.0;
    double ext_log_sum = 0.0;
    for (double x : data.values()) {
        const double lx = std::log(x);
        const double w = sigmoid(e * t.log_theta - a * lx);
        base_share += w;
        ext_log_sum += (1.0 - w) * lx;
    }
    const double dlognorm_dtheta = (t.weight * (e - s) - (1.0 - t.weight) * (a + s)) / theta;
    const double dlognorm_dalpha = (1.0 - t.weight) * (sf::digamma(a + s) - t.log_theta);

    Score out;
    out.d_theta = e * base_share / theta - data.sum() - n * dlognorm_dtheta;
    out.d_alpha = ext_log_sum - n * dlognorm_dalpha;
    return out;
}

double moment_theta(const GammaMixtureFamily& fam, const Dataset& data, double alpha) {
    validate(fam, alpha, 1.0);
    // mean = m(θ)/θ with m between the two component shapes, so the root is
    // bracketed by those shapes over the sample mean.
    const double a = alpha + fam.alpha_offset;
    const double xbar = data.mean();
    double lo = std::min(fam.base_shape, a + fam.base_shape) / xbar;
    double hi = std::max(fam.base_shape, a + fam.base_shape) / xbar;
    if (hi - lo <= 1e-15 * hi) return lo;
    for (int i = 0; i < 200 && hi - lo > 1e-14 * hi; ++i) {
        const double mid = 0.5 * (lo + hi);
        (mean(fam, alpha, mid) > xbar ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

namespace {

struct ThetaSolve {
    double theta;
    int iterations;
    double score;
};

// Root of ∂ℓ/∂θ at fixed α by Newton safeguarded with a bisection bracket.
std::optional<ThetaSolve> solve_theta(const GammaMixtureFamily& fam, const Dataset& data,
                                      double alpha) {
    const double n = static_cast<double>(data.size());
    const double tol = 1e-8 * n;
    const auto g = [&](double th) { return score(fam, data, alpha, th).d_theta; };

    double theta = fam.base_shape / data.mean();
    double lo = theta;
    double hi = theta;
    int expand = 0;
    while (g(lo) <= 0.0) {
        lo *= 0.5;
        if (++expand > 200 || lo < 1e-300) return std::nullopt;
    }
    expand = 0;
    while (g(hi) >= 0.0) {
        hi *= 2.0;
        if (++expand > 200 || !std::isfinite(hi)) return std::nullopt;
    }

    theta = std::sqrt(lo * hi);
    double value = g(theta);
    int it = 0;
    for (; it < 200; ++it) {
        if (std::abs(value) < tol) break;
        (value > 0.0 ? lo : hi) = theta;
        if (hi - lo <= 1e-15 * hi) break;
        const double h = 1e-6 * theta;
        const double slope = (g(theta + h) - g(theta - h)) / (2.0 * h);
        double next = slope < 0.0 ? theta - value / slope : 0.5 * (lo + hi);
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
        theta = next;
        value = g(theta);
    }
    if (std::abs(value) >= tol && hi - lo > 1e-12 * hi) return std::nullopt;
    return ThetaSolve{theta, it + 1, value};
}

FitResult make_result(const GammaMixtureFamily& fam, const Dataset& data, double alpha,
                      double theta, FitMode mode) {
    FitResult r(ModelSpec::make(fam.kind, alpha, theta));
    r.loglik = log_likelihood(fam, data, alpha, theta);
    r.neg2ll = -2.0 * r.loglik;
    r.mode = mode;
    return r;
}

}  // namespace

FitResult fit_profile(const GammaMixtureFamily& fam, const Dataset& data, int alpha_max) {
    if (data.size() < 2) throw FitError("fit_profile: need at least 2 observations");
    if (alpha_max < fam.profile_alpha_min) {
        throw std::invalid_argument("fit_profile: alpha_max below the family's smallest alpha");
    }
    std::optional<FitResult> best;
    std::vector<std::string> diagnostics;
    int total_iterations = 0;
    for (int alpha = fam.profile_alpha_min; alpha <= alpha_max; ++alpha) {
        const auto solved = solve_theta(fam, data, alpha);
        if (!solved) {
            diagnostics.push_back("alpha=" + std::to_string(alpha) + ": no interior theta root");
            continue;
        }
        total_iterations += solved->iterations;
        FitResult candidate = make_result(fam, data, alpha, solved->theta, FitMode::profile_integer);
        candidate.gradient_norm = std::abs(solved->score);
        if (!best || candidate.loglik > best->loglik) best = std::move(candidate);
    }
    if (!best) throw FitError("fit_profile: no alpha in range admits a theta root");
    best->iterations = total_iterations;
    best->converged = best->gradient_norm < 1e-8 * static_cast<double>(data.size());
    best->diagnostics = std::move(diagnostics);
    return *best;
}

FitResult fit_continuous(const GammaMixtureFamily& fam, const Dataset& data,
                         std::optional<StartPoint> init, const FitOptions& options) {
    if (data.size() < 2) throw FitError("fit_continuous: need at least 2 observations");
    const double n = static_cast<double>(data.size());
    const double tol = options.gradient_tolerance * n;

    double alpha;
    double theta;
    std::vector<std::string> diagnostics;
    if (init) {
        alpha = init->alpha;
        theta = init->theta;
        validate(fam, alpha, theta);
    } else {
        const auto profile = fit_profile(fam, data, std::max(options.alpha_max, fam.profile_alpha_min));
        alpha = profile.model.alpha();
        theta = moment_theta(fam, data, alpha);
    }

    const auto at_bound = [&](double a) { return a <= fam.alpha_min; };
    const auto projected_norm = [&](double a, const Score& g) {
        const double ga = (at_bound(a) && g.d_alpha < 0.0) ? 0.0 : g.d_alpha;
        return std::hypot(ga, g.d_theta);
    };

    double ll = log_likelihood(fam, data, alpha, theta);
    Score g = score(fam, data, alpha, theta);
    double gnorm = projected_norm(alpha, g);
    int iteration = 0;
    bool stalled = false;
    for (; iteration < options.max_iterations && gnorm >= tol; ++iteration) {
        // Hessian by central differences of the analytic score.
        const double h_theta = 1e-5 * theta;
        const Score gtp = score(fam, data, alpha, theta + h_theta);
        const Score gtm = score(fam, data, alpha, theta - h_theta);
        const double h_alpha = 1e-5 * std::max(1.0, alpha);
        Score gap = score(fam, data, alpha + h_alpha, theta);
        Score gam = g;
        double alpha_span = h_alpha;
        if (alpha - h_alpha >= fam.alpha_min) {
            gam = score(fam, data, alpha - h_alpha, theta);
            alpha_span = 2.0 * h_alpha;
        }
        const double h_tt = (gtp.d_theta - gtm.d_theta) / (2.0 * h_theta);
        const double h_aa = (gap.d_alpha - gam.d_alpha) / alpha_span;
        const double h_at = 0.5 * ((gtp.d_alpha - gtm.d_alpha) / (2.0 * h_theta) +
                                   (gap.d_theta - gam.d_theta) / alpha_span);

        double d_alpha = 0.0;
        double d_theta = 0.0;
        const bool pinned = at_bound(alpha) && g.d_alpha < 0.0;
        const double det = h_aa * h_tt - h_at * h_at;
        if (pinned) {
            d_theta = h_tt < 0.0 ? -g.d_theta / h_tt : g.d_theta / std::max(std::abs(h_tt), 1e-12);
        } else if (h_tt < 0.0 && det > 0.0) {
            d_alpha = -(h_tt * g.d_alpha - h_at * g.d_theta) / det;
            d_theta = -(h_aa * g.d_theta - h_at * g.d_alpha) / det;
        } else {
            // Not negative definite: coordinate-wise steps along the ascent direction.
            d_alpha = g.d_alpha / std::max(std::abs(h_aa), 1e-12);
            d_theta = g.d_theta / std::max(std::abs(h_tt), 1e-12);
            diagnostics.push_back("iteration " + std::to_string(iteration) +
                                  ": indefinite Hessian, coordinate-wise step");
        }

        bool accepted = false;
        double step = 1.0;
        for (int halving = 0; halving <= 30; ++halving, step *= 0.5) {
            const double a_new = std::max(fam.alpha_min, alpha + step * d_alpha);
            const double t_new = theta + step * d_theta;
            if (!(t_new > 0.0) || !std::isfinite(a_new)) continue;
            const double ll_new = log_likelihood(fam, data, a_new, t_new);
            if (ll_new >= ll) {
                alpha = a_new;
                theta = t_new;
                ll = ll_new;
                accepted = true;
                break;
            }
        }
        g = score(fam, data, alpha, theta);
        gnorm = projected_norm(alpha, g);
        if (!accepted) {
            stalled = true;
            break;
        }
    }

    FitResult r = make_result(fam, data, alpha, theta, FitMode::continuous);
    r.iterations = iteration;
    r.gradient_norm = gnorm;
    r.converged = gnorm < tol;
    if (!r.converged) {
        diagnostics.push_back(stalled ? "line search stalled before the score vanished"
                                      : "iteration limit reached");
    }
    r.diagnostics = std::move(diagnostics);
    return r;
}

}  // namespace mixture
}  // namespace ssdlab
