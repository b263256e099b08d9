#pragma once

#include <cstddef>
#include <optional>

#include "ssmlab/series.hpp"

namespace ssmlab {

// Forward difference of a series, 1-indexed convention:
//
//   (S^(d))_m = sum_{j=0..d} (-1)^(d-j) binom(d,j) S_{m+j},
//
// output length = length - order.  Orders up to 64 use the closed form with
// exact integer binomials; larger orders fall back to iterated first
// differences.  Requires order < length.
ScalarSeries forward_difference(const ScalarSeries& series, std::size_t order);

enum class Parity { Odd, Even };

// Subsequence of the 1-indexed odd entries (1,3,5,...) or even entries
// (2,4,6,...).
ScalarSeries restrict_parity(const ScalarSeries& series, Parity parity);

struct BoundQuery {
    ScalarSeries target;
    double epsilon = 0.0;
};

// Certificate produced by the exhaustive difference search.  `bound` may be
// <= 0 (vacuous) and is reported as found, never clamped.  `overflowed` is
// set when a power-of-two scale exceeded double range and saturated to +inf.
struct BoundReport {
    double bound = 0.0;
    std::size_t best_d = 0;
    std::size_t best_m = 0;        // 1-indexed position within the restriction
    Parity best_parity = Parity::Odd;
    double witness_difference = 0.0;  // |(target|parity)^(d)_m| at the argmax
    bool overflowed = false;
};

// Lower bound on n * max_j |c_j b_j| over all real systems whose truncated
// impulse response epsilon-approximates the target in l1:
//
//   max over d,m >= 1, d+m <= floor(t/2), parity in {Odd, Even} of
//     2^(d + 2 min(d, m-1)) * (2^-d |(target|parity)^(d)_m| - epsilon),
//
// where m - 1 is the zero-based offset of the probed element.
//
// Ties break toward smaller d, then smaller m, then Odd before Even.
// Requires horizon >= 4 (so the search domain is nonempty) and epsilon >= 0.
BoundReport lower_bound_general(const BoundQuery& query);

// Closed forms for the three benchmark targets.  All grow like 2^(c t).
//
// Delay (copy) at the default k: valid for t >= 9 and epsilon <= 1/(8 sqrt t);
// returns nullopt ("not applicable") outside that regime.
std::optional<double> lower_bound_copy(std::size_t t, double epsilon);

// Random uniform [-alpha, alpha] targets: bound that holds with probability
// >= 1 - p over the draw; requires p in (0, 1].
double lower_bound_random(std::size_t t, double alpha, double p);

// Oscillatory target, epsilon = 1/2: 2^(3t/4 - 4).  Requires t divisible by 4.
double lower_bound_oscillatory(std::size_t t);

// Number of transitions between the bands >= +threshold and <= -threshold,
// scanning left to right and skipping entries strictly inside the band.
// threshold > 0.
std::size_t count_alternations(const ScalarSeries& series, double threshold);

// Number of sign flips between consecutive entries whose magnitude exceeds
// the dead band; entries with |value| <= deadband are skipped.  deadband >= 0.
std::size_t sign_changes(const ScalarSeries& series, double deadband);

}  // namespace ssmlab
