#include "ssdlab/baselines.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "fixtures.hpp"
#include "ssdlab/fit.hpp"
#include "ssdlab/oracle.hpp"
#include "ssdlab/specfun.hpp"
#include "ssdlab/ssd.hpp"

using namespace ssdlab;
using oracle::integrate;
using oracle::kInfinity;

namespace {

constexpr double kE = std::numbers::e;

std::vector<ModelSpec> specs_for(ModelKind kind) {
    switch (kind) {
    case ModelKind::exponential:
    case ModelKind::lindley:
    case ModelKind::lbed:
        return {ModelSpec::make(kind, 0.2), ModelSpec::make(kind, 1.0), ModelSpec::make(kind, 3.5)};
    case ModelKind::rkd:
        return {ModelSpec::make(kind, 0.4, 0.8), ModelSpec::make(kind, 2.0, 1.0), ModelSpec::make(kind, 6.6, 2.5)};
    default:
        return {ModelSpec::make(kind, 0.5, 0.8), ModelSpec::make(kind, 2.0, 1.0), ModelSpec::make(kind, 5.0, 2.7)};
    }
}

Dataset random_dataset(std::uint64_t seed, std::size_t n) {
    std::mt19937_64 rng(seed);
    std::gamma_distribution<double> g(1.0 + seed % 4, 0.5 + 0.3 * (seed % 3));
    std::vector<double> v(n);
    for (auto& x : v) x = g(rng);
    return Dataset(v);
}

// Lindley log-likelihood without the θ-free Σ ln(1+x) term, in extended precision.
long double lindley_profile(long double theta, const Dataset& d) {
    const long double n = d.size();
    return 2 * n * std::log(theta) - n * std::log1p(theta) - theta * static_cast<long double>(d.sum());
}

long double golden_section_max(const std::function<long double(long double)>& f, long double lo, long double hi) {
    const long double r = (std::sqrt(5.0L) - 1) / 2;
    long double a = lo, b = hi;
    long double c = b - r * (b - a), e = a + r * (b - a);
    long double fc = f(c), fe = f(e);
    while (b - a > 1e-12L * (1 + std::fabs(a))) {
        if (fc > fe) {
            b = e; e = c; fe = fc;
            c = b - r * (b - a); fc = f(c);
        } else {
            a = c; c = e; fc = fe;
            e = a + r * (b - a); fe = f(e);
        }
    }
    return (a + b) / 2;
}

}  // namespace

TEST(ModelSpec, NamesAndValidation) {
    for (auto kind : kAllModels) EXPECT_EQ(parse_model_name(model_name(kind)), kind);
    EXPECT_THROW(parse_model_name("weibull"), std::invalid_argument);
    EXPECT_EQ(param_count(ModelKind::lindley), 1);
    EXPECT_EQ(param_count(ModelKind::gamma), 2);

    const auto g = ModelSpec::make(ModelKind::gamma, 2.0, 0.5);
    EXPECT_EQ(g.params()[0].name, "alpha");
    EXPECT_EQ(g.params()[1].name, "theta");
    EXPECT_EQ(g.param_count(), 2);
    EXPECT_EQ(ModelSpec::make(ModelKind::exponential, 1.0).param_count(), 1);

    EXPECT_THROW(ModelSpec::make(ModelKind::exponential, 0.0), std::invalid_argument);
    EXPECT_THROW(ModelSpec::make(ModelKind::gamma, 0.0, 1.0), std::invalid_argument);
    EXPECT_THROW(ModelSpec::make(ModelKind::ssd, -1.0, 1.0), std::invalid_argument);
    EXPECT_THROW(ModelSpec::make(ModelKind::lindley, 1.0, 1.0), std::invalid_argument);
    EXPECT_THROW(ModelSpec::make(ModelKind::ssd, 1.0), std::invalid_argument);
    EXPECT_THROW(ModelSpec::make(ModelKind::sd, 1.0, NAN), std::invalid_argument);
}

TEST(BaselinePdf, Examples) {
    EXPECT_NEAR(model_pdf(ModelSpec::make(ModelKind::lindley, 1.0), 0.0), 0.5, 1e-15);
    EXPECT_NEAR(model_pdf(ModelSpec::make(ModelKind::lbed, 1.0), 1.0), 1 / kE, 1e-15);
    EXPECT_NEAR(model_pdf(ModelSpec::make(ModelKind::exponential, 2.0), 0.0), 2.0, 1e-15);
    const auto sd = ModelSpec::make(ModelKind::sd, 2.0, 1.0);
    EXPECT_NEAR(integrate([&](double x) { return model_pdf(sd, x); }, 0, kInfinity).value, 1.0, 1e-8);
    EXPECT_THROW(model_pdf(sd, -1.0), std::domain_error);
}

TEST(BaselinePdf, IntegratesToOne) {
    for (auto kind : kAllModels) {
        for (const auto& spec : specs_for(kind)) {
            const double total = integrate([&](double x) { return model_pdf(spec, x); }, 0, kInfinity, 1e-12).value;
            EXPECT_NEAR(total, 1.0, 1e-8) << model_name(kind) << " theta=" << spec.theta();
        }
    }
}

TEST(BaselineCdf, Examples) {
    EXPECT_EQ(model_cdf(ModelSpec::make(ModelKind::lindley, 1.3), 0.0), 0.0);
    const double theta = 0.7;
    EXPECT_NEAR(model_cdf(ModelSpec::make(ModelKind::exponential, theta), std::log(2.0) / theta), 0.5, 1e-15);
    EXPECT_NEAR(model_cdf(ModelSpec::make(ModelKind::gamma, 2.0, 1.0), 1.0), 1 - 2 / kE, 1e-15);
    EXPECT_NEAR(model_cdf(ModelSpec::make(ModelKind::gamma, 2.0, 1.0), 1.0), 0.2642411177, 1e-10);
}

TEST(BaselineCdf, MatchesQuadratureAndIsMonotone) {
    for (auto kind : kAllModels) {
        for (const auto& spec : specs_for(kind)) {
            double prev = 0.0;
            for (double z : {0.05, 0.5, 1.0, 2.0, 4.0, 8.0}) {
                const double x = z / spec.theta();
                const double area = integrate([&](double t) { return model_pdf(spec, t); }, 0, x, 1e-13).value;
                const double f = model_cdf(spec, x);
                EXPECT_NEAR(f, area, 1e-8) << model_name(kind) << " x=" << x;
                EXPECT_GE(f, prev);
                prev = f;
            }
        }
    }
}

TEST(Lindley, CdfIsMixtureOfExponentialAndGammaTwo) {
    for (double theta : {0.1866, 0.6297, 1.0, 4.0}) {
        const auto spec = ModelSpec::make(ModelKind::lindley, theta);
        const double w = theta / (1 + theta);
        for (double x : {0.01, 0.3, 1.0, 2.5, 10.0, 40.0}) {
            const double printed = 1 - (1 + theta * x / (1 + theta)) * std::exp(-theta * x);
            const double mixture = w * specfun::regularized_lower_gamma(1.0, theta * x) +
                                   (1 - w) * specfun::regularized_lower_gamma(2.0, theta * x);
            EXPECT_NEAR(model_cdf(spec, x), printed, 1e-12);
            EXPECT_NEAR(printed, mixture, 1e-12);
        }
    }
}

TEST(Shukla, PdfIsExponentialGammaMixture) {
    // weight θ^{α+1}/(θ^{α+1} + Γ(α+1)) on exponential(θ), the rest on gamma(α+1, θ)
    for (const auto& [a, theta] : {std::pair{1.0848, 0.2070}, std::pair{2.0, 1.0}, std::pair{5.1, 1.87}}) {
        const auto spec = ModelSpec::make(ModelKind::sd, a, theta);
        const double w = std::pow(theta, a + 1) / (std::pow(theta, a + 1) + std::tgamma(a + 1));
        for (double x : {0.2, 1.0, 5.0, 20.0}) {
            const double g = std::exp((a + 1) * std::log(theta) + a * std::log(x) - theta * x - std::lgamma(a + 1));
            const double mix = w * theta * std::exp(-theta * x) + (1 - w) * g;
            EXPECT_NEAR(model_pdf(spec, x), mix, 1e-13);
        }
    }
}

TEST(RamaKamlesh, PdfIsExponentialGammaMixture) {
    for (const auto& [a, theta] : {std::pair{0.5, 0.3}, std::pair{2.0, 1.0}, std::pair{6.64, 2.55}}) {
        const auto spec = ModelSpec::make(ModelKind::rkd, a, theta);
        const double w = std::pow(theta, a - 1) / (std::pow(theta, a - 1) + std::tgamma(a));
        for (double x : {0.2, 1.0, 5.0, 20.0}) {
            const double g = std::exp(a * std::log(theta) + (a - 1) * std::log(x) - theta * x - std::lgamma(a));
            const double mix = w * theta * std::exp(-theta * x) + (1 - w) * g;
            EXPECT_NEAR(model_pdf(spec, x), mix, 1e-13);
        }
    }
}

TEST(RamaKamlesh, EqualsOneOffsetExponentialMixture) {
    // θ^{α+1}(1 + x^α)e^{−θx}/(θ^α + Γ(α+1)) is Rama–Kamlesh at α + 1.
    const double a = 1.7, theta = 0.9;
    const auto rkd = ModelSpec::make(ModelKind::rkd, a + 1, theta);
    for (double x : {0.1, 1.0, 4.0}) {
        const double other = std::pow(theta, a + 1) * (1 + std::pow(x, a)) * std::exp(-theta * x) /
                             (std::pow(theta, a) + std::tgamma(a + 1));
        EXPECT_NEAR(model_pdf(rkd, x), other, 1e-14);
    }
}

TEST(Ssd, ModelInterfaceMatchesDistribution) {
    const auto spec = ModelSpec::make(ModelKind::ssd, 1.0, 1.0);
    const SsdParams p(1.0, 1.0);
    EXPECT_NEAR(model_pdf(spec, 1.0), 2 / (3 * kE), 1e-15);
    for (double x : {0.1, 1.0, 3.0}) {
        EXPECT_EQ(model_pdf(spec, x), ssd::pdf(x, p));
        EXPECT_EQ(model_cdf(spec, x), ssd::cdf(x, p));
    }
}

TEST(Collapse, LbedIsGammaTwoIsSsdAtZeroAlpha) {
    for (double theta : {0.2, 1.0, 2.7713, 5.0}) {
        const auto lbed = ModelSpec::make(ModelKind::lbed, theta);
        const auto gamma2 = ModelSpec::make(ModelKind::gamma, 2.0, theta);
        const auto ssd0 = ModelSpec::make(ModelKind::ssd, 0.0, theta);
        for (double x : {0.01, 0.4, 1.0, 3.0, 12.0}) {
            EXPECT_NEAR(model_pdf(lbed, x), model_pdf(gamma2, x), 1e-12);
            EXPECT_NEAR(model_pdf(lbed, x), model_pdf(ssd0, x), 1e-12);
            EXPECT_NEAR(model_cdf(lbed, x), model_cdf(gamma2, x), 1e-12);
            EXPECT_NEAR(model_cdf(lbed, x), model_cdf(ssd0, x), 1e-12);
        }
    }
    const auto data = random_dataset(3, 40);
    for (double theta : {0.3, 1.1}) {
        EXPECT_NEAR(model_log_likelihood(ModelSpec::make(ModelKind::lbed, theta), data),
                    model_log_likelihood(ModelSpec::make(ModelKind::ssd, 0.0, theta), data), 1e-10);
        EXPECT_NEAR(model_log_likelihood(ModelSpec::make(ModelKind::lbed, theta), data),
                    log_likelihood(SsdParams(0.0, theta), data), 1e-10);
    }
}

TEST(LogLikelihood, SumsLogPdf) {
    const auto data = random_dataset(11, 30);
    for (auto kind : kAllModels) {
        for (const auto& spec : specs_for(kind)) {
            double sum = 0.0;
            for (double x : data.values()) sum += std::log(model_pdf(spec, x));
            EXPECT_NEAR(model_log_likelihood(spec, data), sum, 1e-10 * std::max(1.0, std::abs(sum)))
                << model_name(kind);
        }
    }
}

TEST(ClosedFormFit, Examples) {
    const Dataset mean_two({1.0, 2.0, 3.0});
    EXPECT_NEAR(fit_model(ModelKind::lbed, mean_two).model.theta(), 1.0, 1e-15);
    EXPECT_NEAR(fit_model(ModelKind::exponential, mean_two).model.theta(), 0.5, 1e-15);
    const double xbar = 2.0;
    EXPECT_NEAR(lindley_mle(xbar), (-(xbar - 1) + std::sqrt((xbar - 1) * (xbar - 1) + 8 * xbar)) / (2 * xbar), 1e-15);
    const auto fit = fit_model(ModelKind::lindley, mean_two);
    EXPECT_EQ(fit.mode, FitMode::closed_form);
    EXPECT_TRUE(fit.converged);
    EXPECT_NEAR(fit.neg2ll, -2 * fit.loglik, 1e-12);
}

TEST(ClosedFormFit, EstimatesAreStationary) {
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        const auto data = random_dataset(seed, 60);
        const double n = data.size();
        for (auto kind : {ModelKind::exponential, ModelKind::lbed, ModelKind::lindley}) {
            const double theta = fit_model(kind, data).model.theta();
            const double h = 1e-6 * theta;
            const double d = oracle::finite_diff(
                [&](double t) { return model_log_likelihood(ModelSpec::make(kind, t), data); }, theta, h);
            EXPECT_LT(std::abs(d), 1e-6 * n) << model_name(kind) << " seed " << seed;
        }
    }
}

TEST(Lindley, ClosedFormAgreesWithGoldenSection) {
    for (std::uint64_t seed = 21; seed <= 25; ++seed) {
        const auto data = random_dataset(seed, 50);
        const long double best =
            golden_section_max([&](long double t) { return lindley_profile(t, data); }, 1e-4L, 50.0L);
        EXPECT_NEAR(fit_model(ModelKind::lindley, data).model.theta(), static_cast<double>(best), 1e-8);
    }
}

TEST(GammaFit, SolvesDigammaEquation) {
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        const auto data = random_dataset(seed, 200);
        const auto fit = fit_model(ModelKind::gamma, data);
        ASSERT_TRUE(fit.converged);
        const double shape = fit.model.alpha();
        const double rate = fit.model.theta();
        const double target = std::log(data.mean()) - data.sum_log() / data.size();
        EXPECT_NEAR(std::log(shape) - specfun::digamma(shape), target, 1e-10);
        EXPECT_NEAR(rate, shape / data.mean(), 1e-12 * rate);
    }
}

TEST(MixtureFits, TwoParameterBaselinesAreStationary) {
    std::mt19937_64 rng(77);
    const auto data = Dataset(ssd::sample_values(400, SsdParams(2.0, 1.2), rng));
    for (auto kind : {ModelKind::sd, ModelKind::rkd, ModelKind::ssd}) {
        const auto fit = fit_model(kind, data);
        ASSERT_TRUE(fit.converged) << model_name(kind);
        const auto& fam = mixture::family_for(kind);
        const auto s = mixture::score(fam, data, fit.model.alpha(), fit.model.theta());
        EXPECT_LT(std::abs(s.d_theta), 1e-6 * data.size()) << model_name(kind);
        if (fit.model.alpha() > fam.alpha_min) {
            EXPECT_LT(std::abs(s.d_alpha), 1e-6 * data.size());
        }
    }
}

TEST(Fit, RejectsTinySamples) {
    const Dataset one({2.0});
    for (auto kind : kAllModels) EXPECT_THROW(fit_model(kind, one), FitError) << model_name(kind);
}

TEST(BankData, PublishedEstimates) {
    const auto data = test_data::load_fixture(test_data::kBankFixture);
    if (!data) GTEST_SKIP() << "bank waiting-time fixture not present";
    ASSERT_EQ(data->size(), 100u);
    EXPECT_NEAR(data->mean(), 9.877, 1e-9);

    EXPECT_NEAR(fit_model(ModelKind::exponential, *data).model.theta(), 0.1012, 1e-4);
    EXPECT_NEAR(fit_model(ModelKind::lbed, *data).model.theta(), 0.2025, 1e-4);
    EXPECT_NEAR(fit_model(ModelKind::lindley, *data).model.theta(), 0.1866, 1e-4);
    EXPECT_NEAR(fit_model(ModelKind::exponential, *data).neg2ll, 658.04, 0.01);
    EXPECT_NEAR(fit_model(ModelKind::lindley, *data).neg2ll, 638.07, 0.01);
    EXPECT_NEAR(fit_model(ModelKind::lbed, *data).neg2ll, 634.60, 0.01);

    // Published as (rate, shape); stored as (shape, rate).
    const auto gamma = fit_model(ModelKind::gamma, *data);
    EXPECT_NEAR(gamma.model.alpha(), 2.0088, 1e-4);
    EXPECT_NEAR(gamma.model.theta(), 0.2034, 1e-4);
    EXPECT_NEAR(gamma.neg2ll, 634.60, 0.01);

    const auto sd = fit_model(ModelKind::sd, *data);
    EXPECT_NEAR(sd.model.alpha(), 1.0848, 2e-3);
    EXPECT_NEAR(sd.model.theta(), 0.2070, 5e-4);
    EXPECT_NEAR(sd.neg2ll, 635.17, 0.01);

    // Only −2LL of the Rama–Kamlesh row is consistent; its estimates are
    // copied from the other table.
    EXPECT_NEAR(fit_model(ModelKind::rkd, *data).neg2ll, 636.73, 0.01);
}
