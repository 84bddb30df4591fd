#pragma once

#include <span>
#include <string>
#include <vector>

namespace ssdlab {

/// Sorted sample of strictly positive observations with cached summaries.
class Dataset {
public:
    /// Sorts the values. Throws std::invalid_argument when empty or when any
    /// value is non-finite or not strictly positive.
    explicit Dataset(std::vector<double> values, std::string label = {});

    std::span<const double> values() const noexcept { return values_; }
    std::size_t size() const noexcept { return values_.size(); }
    const std::string& label() const noexcept { return label_; }
    double sum() const noexcept { return sum_; }
    double mean() const noexcept { return sum_ / static_cast<double>(values_.size()); }
    /// Σ ln x_i, cached for the likelihood routines.
    double sum_log() const noexcept { return sum_log_; }

private:
    std::vector<double> values_;
    std::string label_;
    double sum_ = 0.0;
    double sum_log_ = 0.0;
};

}  // namespace ssdlab
