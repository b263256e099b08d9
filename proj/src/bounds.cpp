#include "ssmlab/bounds.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace ssmlab {

namespace {

// binom(order, j) for j = 0..order, exact in unsigned __int128 and converted
// to double at the end.  Callers keep order <= 64, where the largest value
// binom(64, 32) ~ 1.8e18 is exactly representable in the integer type.
std::vector<double> binomial_row(std::size_t order) {
    std::vector<double> row(order + 1, 0.0);
    unsigned __int128 value = 1;
    row[0] = 1.0;
    for (std::size_t j = 1; j <= order; ++j) {
        // value stays a binomial coefficient throughout, so the division is exact.
        value = value * (order - j + 1) / j;
        row[j] = static_cast<double>(value);
    }
    return row;
}

ScalarSeries difference_closed_form(const ScalarSeries& s, std::size_t order) {
    const std::vector<double> binom = binomial_row(order);
    const std::size_t out_len = s.length() - order;
    std::vector<double> out(out_len, 0.0);
    for (std::size_t m = 0; m < out_len; ++m) {
        double acc = 0.0;
        for (std::size_t j = 0; j <= order; ++j) {
            const double term = binom[j] * s[m + j];
            acc += ((order - j) % 2 == 0) ? term : -term;
        }
        out[m] = acc;
    }
    return ScalarSeries(std::move(out));
}

ScalarSeries difference_iterated(ScalarSeries s, std::size_t order) {
    for (std::size_t level = 0; level < order; ++level) {
        std::vector<double> next(s.length() - 1);
        for (std::size_t m = 0; m + 1 < s.length(); ++m) next[m] = s[m + 1] - s[m];
        s = ScalarSeries(std::move(next));
    }
    return s;
}

}  // namespace

ScalarSeries forward_difference(const ScalarSeries& series, std::size_t order) {
    if (order >= series.length()) {
        throw std::invalid_argument(
            "forward_difference: order must be smaller than the series length");
    }
    if (order == 0) return series;
    return order <= 64 ? difference_closed_form(series, order)
                       : difference_iterated(series, order);
}

ScalarSeries restrict_parity(const ScalarSeries& series, Parity parity) {
    std::vector<double> out;
    out.reserve((series.length() + 1) / 2);
    // 1-indexed entries 1,3,5,... are at even 0-based offsets.
    const std::size_t start = (parity == Parity::Odd) ? 0 : 1;
    for (std::size_t i = start; i < series.length(); i += 2) out.push_back(series[i]);
    return ScalarSeries(std::move(out));
}

BoundReport lower_bound_general(const BoundQuery& query) {
    const std::size_t t = query.target.length();
    if (t < 4) {
        throw std::invalid_argument("lower_bound_general: horizon must be >= 4");
    }
    if (!(query.epsilon >= 0.0) || !std::isfinite(query.epsilon)) {
        throw std::invalid_argument("lower_bound_general: epsilon must be >= 0");
    }

    const std::size_t budget = t / 2;  // d + m <= floor(t/2), d, m >= 1
    BoundReport report;
    report.bound = -std::numeric_limits<double>::infinity();
    bool found = false;

    for (Parity parity : {Parity::Odd, Parity::Even}) {
        ScalarSeries level = restrict_parity(query.target, parity);
        // level holds (target|parity)^(d); build each order from the previous
        // one so the whole search is O(t^2).
        for (std::size_t d = 1; d + 1 <= budget; ++d) {
            std::vector<double> next(level.length() - 1);
            for (std::size_t i = 0; i + 1 < level.length(); ++i) {
                next[i] = level[i + 1] - level[i];
            }
            level = ScalarSeries(std::move(next));

            const std::size_t m_max = std::min(budget - d, level.length());
            for (std::size_t m = 1; m <= m_max; ++m) {
                const double witness = std::abs(level[m - 1]);
                const double inner = std::ldexp(witness, -static_cast<int>(d)) -
                                     query.epsilon;
                // The amplification exponent counts how far the probed element
                // sits from the start of the differenced sequence, so the
                // 1-indexed position m enters as its zero-based offset m - 1.
                const int exponent = static_cast<int>(d + 2 * std::min(d, m - 1));
                bool overflow = false;
                double value;
                if (inner == 0.0) {
                    value = 0.0;
                } else {
                    const double scale = std::ldexp(1.0, exponent);
                    value = scale * inner;
                    if (!std::isfinite(value)) overflow = true;
                }
                const bool better =
                    !found ||
                    value > report.bound ||
                    (value == report.bound &&
                     (d < report.best_d ||
                      (d == report.best_d &&
                       (m < report.best_m ||
                        (m == report.best_m && parity == Parity::Odd &&
                         report.best_parity == Parity::Even)))));
                if (better) {
                    report.bound = value;
                    report.best_d = d;
                    report.best_m = m;
                    report.best_parity = parity;
                    report.witness_difference = witness;
                    report.overflowed = overflow;
                    found = true;
                }
            }
        }
    }
    return report;
}

std::optional<double> lower_bound_copy(std::size_t t, double epsilon) {
    if (!(epsilon >= 0.0) || !std::isfinite(epsilon)) {
        throw std::invalid_argument("lower_bound_copy: epsilon must be >= 0");
    }
    const double sqrt_t = std::sqrt(static_cast<double>(t));
    if (t < 9 || epsilon > 1.0 / (8.0 * sqrt_t)) return std::nullopt;
    return std::exp2(static_cast<double>(t) / 2.0) / (32.0 * sqrt_t);
}

double lower_bound_random(std::size_t t, double alpha, double p) {
    if (t == 0) throw std::invalid_argument("lower_bound_random: t must be >= 1");
    if (!(alpha > 0.0) || !std::isfinite(alpha)) {
        throw std::invalid_argument("lower_bound_random: alpha must be positive");
    }
    if (!(p > 0.0) || p > 1.0) {
        throw std::invalid_argument("lower_bound_random: p must lie in (0, 1]");
    }
    const double sqrt_t = std::sqrt(static_cast<double>(t));
    return std::exp2(static_cast<double>(t) / 2.0) * alpha * std::sqrt(p) /
           (8.0 * sqrt_t);
}

double lower_bound_oscillatory(std::size_t t) {
    if (t == 0 || t % 4 != 0) {
        throw std::invalid_argument(
            "lower_bound_oscillatory: t must be a positive multiple of 4");
    }
    return std::exp2(3.0 * static_cast<double>(t) / 4.0 - 4.0);
}

std::size_t count_alternations(const ScalarSeries& series, double threshold) {
    if (!(threshold > 0.0) || !std::isfinite(threshold)) {
        throw std::invalid_argument("count_alternations: threshold must be positive");
    }
    std::size_t count = 0;
    int band = 0;  // 0 = none seen yet, +1 = high band, -1 = low band
    for (double v : series.values()) {
        int here = 0;
        if (v >= threshold) here = 1;
        else if (v <= -threshold) here = -1;
        if (here == 0) continue;
        if (band != 0 && here != band) ++count;
        band = here;
    }
    return count;
}

std::size_t sign_changes(const ScalarSeries& series, double deadband) {
    if (!(deadband >= 0.0) || !std::isfinite(deadband)) {
        throw std::invalid_argument("sign_changes: deadband must be >= 0");
    }
    std::size_t count = 0;
    int last = 0;
    for (double v : series.values()) {
        if (std::abs(v) <= deadband) continue;
        const int here = (v > 0.0) ? 1 : -1;
        if (last != 0 && here != last) ++count;
        last = here;
    }
    return count;
}

}  // namespace ssmlab
