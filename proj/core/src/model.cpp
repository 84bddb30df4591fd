#include "ssdlab/model.hpp"

#include <cmath>

namespace ssdlab {

std::string_view model_name(ModelKind kind) {
    switch (kind) {
        case ModelKind::ssd: return "ssd";
        case ModelKind::sd: return "sd";
        case ModelKind::rkd: return "rkd";
        case ModelKind::gamma: return "gamma";
        case ModelKind::lbed: return "lbed";
        case ModelKind::lindley: return "lindley";
        case ModelKind::exponential: return "exponential";
    }
    return "unknown";
}

ModelKind parse_model_name(std::string_view name) {
    for (ModelKind kind : kAllModels) {
        if (model_name(kind) == name) return kind;
    }
    throw std::invalid_argument("unknown model '" + std::string(name) +
                                "' (expected ssd, sd, rkd, gamma, lbed, lindley, exponential)");
}

int param_count(ModelKind kind) {
    switch (kind) {
        case ModelKind::exponential:
        case ModelKind::lindley:
        case ModelKind::lbed: return 1;
        default: return 2;
    }
}

std::string_view fit_mode_name(FitMode mode) {
    switch (mode) {
        case FitMode::closed_form: return "closed-form";
        case FitMode::profile_integer: return "profile-integer";
        case FitMode::continuous: return "continuous";
    }
    return "unknown";
}

ModelSpec ModelSpec::make(ModelKind kind, double theta) {
    if (ssdlab::param_count(kind) != 1) {
        throw std::invalid_argument(std::string(model_name(kind)) + " takes two parameters");
    }
    if (!std::isfinite(theta) || theta <= 0.0) {
        throw std::invalid_argument(std::string(model_name(kind)) + ": theta must be > 0");
    }
    return ModelSpec(kind, {{"theta", theta}});
}

ModelSpec ModelSpec::make(ModelKind kind, double alpha, double theta) {
    if (ssdlab::param_count(kind) != 2) {
        throw std::invalid_argument(std::string(model_name(kind)) + " takes one parameter");
    }
    if (!std::isfinite(theta) || theta <= 0.0) {
        throw std::invalid_argument(std::string(model_name(kind)) + ": theta must be > 0");
    }
    const bool strictly_positive = kind == ModelKind::gamma || kind == ModelKind::rkd;
    if (!std::isfinite(alpha) || alpha < 0.0 || (strictly_positive && alpha == 0.0)) {
        throw std::invalid_argument(std::string(model_name(kind)) + ": alpha must be " +
                                    (strictly_positive ? "> 0" : ">= 0"));
    }
    return ModelSpec(kind, {{"alpha", alpha}, {"theta", theta}});
}

}  // namespace ssdlab
