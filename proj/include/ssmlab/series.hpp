#pragma once

#include <cstddef>
#include <vector>

namespace ssmlab {

// A finite real-valued sequence indexed 1..length in the math, 0-based in
// storage.  Construction validates that every entry is finite.
class ScalarSeries {
public:
    ScalarSeries() = default;
    explicit ScalarSeries(std::vector<double> values);

    static ScalarSeries zeros(std::size_t length);

    std::size_t length() const { return values_.size(); }
    bool empty() const { return values_.empty(); }

    double operator[](std::size_t i) const { return values_[i]; }
    double& operator[](std::size_t i) { return values_[i]; }

    const std::vector<double>& values() const { return values_; }
    std::vector<double>& values() { return values_; }

private:
    std::vector<double> values_;
};

double l1_norm(const ScalarSeries& s);
double l2_norm(const ScalarSeries& s);
double linf_norm(const ScalarSeries& s);

}  // namespace ssmlab
