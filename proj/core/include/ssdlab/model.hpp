#pragma once

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace ssdlab {

/// The seven lifetime models compared by the harness, in table order.
enum class ModelKind { ssd, sd, rkd, gamma, lbed, lindley, exponential };

inline constexpr std::array<ModelKind, 7> kAllModels = {
    ModelKind::ssd,  ModelKind::sd,      ModelKind::rkd,        ModelKind::gamma,
    ModelKind::lbed, ModelKind::lindley, ModelKind::exponential};

std::string_view model_name(ModelKind kind);
/// Throws std::invalid_argument for an unknown name.
ModelKind parse_model_name(std::string_view name);
/// 1 for exponential/lindley/lbed, 2 otherwise.
int param_count(ModelKind kind);

struct NamedValue {
    std::string name;
    double value;
};

/// A model with concrete parameter values. Two-parameter models carry
/// {alpha, theta}, where alpha is the shape-type parameter (the gamma
/// shape for the gamma model) and theta the rate; one-parameter models
/// carry {theta}.
class ModelSpec {
public:
    /// Validates the parameters for the given kind; throws std::invalid_argument.
    static ModelSpec make(ModelKind kind, double theta);
    static ModelSpec make(ModelKind kind, double alpha, double theta);

    ModelKind kind() const noexcept { return kind_; }
    std::string_view name() const { return model_name(kind_); }
    const std::vector<NamedValue>& params() const noexcept { return params_; }
    int param_count() const noexcept { return static_cast<int>(params_.size()); }
    double theta() const noexcept { return params_.back().value; }
    /// Only meaningful for two-parameter models.
    double alpha() const noexcept { return params_.front().value; }

private:
    ModelSpec(ModelKind kind, std::vector<NamedValue> params)
        : kind_(kind), params_(std::move(params)) {}
    ModelKind kind_;
    std::vector<NamedValue> params_;
};

enum class FitMode { closed_form, profile_integer, continuous };
std::string_view fit_mode_name(FitMode mode);

struct FitResult {
    explicit FitResult(ModelSpec fitted) : model(std::move(fitted)) {}

    ModelSpec model;
    double loglik = 0.0;
    double neg2ll = 0.0;
    int iterations = 0;
    bool converged = false;
    FitMode mode = FitMode::closed_form;
    double gradient_norm = 0.0;
    std::vector<std::string> diagnostics;

    const std::vector<NamedValue>& estimates() const noexcept { return model.params(); }
};

/// Raised when a fit cannot produce an estimate at all. Carries the last
/// iterate when one exists.
class FitError : public std::runtime_error {
public:
    explicit FitError(const std::string& what, std::optional<FitResult> last = std::nullopt)
        : std::runtime_error(what), last_(std::move(last)) {}
    const std::optional<FitResult>& last_iterate() const noexcept { return last_; }

private:
    std::optional<FitResult> last_;
};

enum class AlphaMode { profile, continuous };

struct FitOptions {
    AlphaMode alpha_mode = AlphaMode::continuous;
    int alpha_max = 50;
    int max_iterations = 200;
    /// Convergence when the (projected) score norm is below gradient_tolerance · n.
    double gradient_tolerance = 1e-6;
};

}  // namespace ssdlab
