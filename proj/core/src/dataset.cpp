#include "ssdlab/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ssdlab {

Dataset::Dataset(std::vector<double> values, std::string label)
    : values_(std::move(values)), label_(std::move(label)) {
    if (values_.empty()) throw std::invalid_argument("Dataset: no observations");
    for (std::size_t i = 0; i < values_.size(); ++i) {
        if (!std::isfinite(values_[i]) || values_[i] <= 0.0) {
            throw std::invalid_argument("Dataset: observation " + std::to_string(i + 1) +
                                        " is not a positive finite number");
        }
    }
    std::sort(values_.begin(), values_.end());
    for (double v : values_) {
        sum_ += v;
        sum_log_ += std::log(v);
    }
}

}  // namespace ssdlab
