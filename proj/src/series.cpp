#include "ssmlab/series.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace ssmlab {

ScalarSeries::ScalarSeries(std::vector<double> values) : values_(std::move(values)) {
    for (std::size_t i = 0; i < values_.size(); ++i) {
        if (!std::isfinite(values_[i])) {
            throw std::invalid_argument("ScalarSeries: non-finite value at index " +
                                        std::to_string(i));
        }
    }
}

ScalarSeries ScalarSeries::zeros(std::size_t length) {
    return ScalarSeries(std::vector<double>(length, 0.0));
}

double l1_norm(const ScalarSeries& s) {
    double sum = 0.0;
    for (double v : s.values()) sum += std::abs(v);
    return sum;
}

double l2_norm(const ScalarSeries& s) {
    double sum = 0.0;
    for (double v : s.values()) sum += v * v;
    return std::sqrt(sum);
}

double linf_norm(const ScalarSeries& s) {
    double best = 0.0;
    for (double v : s.values()) best = std::max(best, std::abs(v));
    return best;
}

}  // namespace ssmlab
