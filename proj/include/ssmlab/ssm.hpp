#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "ssmlab/series.hpp"

namespace ssmlab {

using cdouble = std::complex<double>;

enum class Mode { Real, Complex };

// Diagonal linear state-space model over R or C:
//
//   x(k) = A x(k-1) + B u(k),   y(k) = Re(C^T x(k)),   x(0) = 0,
//
// with A = diag(a).  Real mode keeps a, b, c real (zero imaginary parts);
// Complex mode allows arbitrary complex entries.  The readout takes the real
// part in both modes, so outputs are always real scalars.
struct DiagonalSsm {
    Mode mode = Mode::Real;
    std::vector<cdouble> a;
    std::vector<cdouble> b;
    std::vector<cdouble> c;

    std::size_t dim() const { return a.size(); }

    // Validating factories.  Dimensions must match and be >= 1; every entry
    // must be finite; Real mode requires exactly zero imaginary parts.
    static DiagonalSsm real(std::vector<double> a, std::vector<double> b,
                            std::vector<double> c);
    static DiagonalSsm complex(std::vector<cdouble> a, std::vector<cdouble> b,
                               std::vector<cdouble> c);
};

// State trajectory produced by apply(); states[k] is x(k), so states[0] is
// the zero initial state and states.size() == input.length() + 1.
struct StateTrace {
    Mode mode = Mode::Real;
    std::vector<std::vector<cdouble>> states;
};

struct ApplyResult {
    ScalarSeries output;
    StateTrace trace;
};

// First t entries of the impulse response: entry k (1-indexed) equals
// Re(sum_j c_j a_j^(k-1) b_j).  O(dim * t) via running powers.  Rejects t = 0.
ScalarSeries impulse_response(const DiagonalSsm& ssm, std::size_t t);

// Runs the state recursion on an input sequence and returns the output
// together with the full state trajectory.  Rejects empty input.
ApplyResult apply(const DiagonalSsm& ssm, const ScalarSeries& input);

// Strict spectral-radius test: max_j |a_j| < 1.
bool is_stable(const DiagonalSsm& ssm);

// l1 distance between two equal-length series (the epsilon-approximation
// metric on truncated impulse responses).
double approximation_error(const ScalarSeries& candidate,
                           const ScalarSeries& target);

// Bilinear (Tustin) map from a continuous-time diagonal system to a discrete
// one at step delta:
//
//   a_d = (1 + delta/2 a) / (1 - delta/2 a),   b_d = delta b / (1 - delta/2 a),
//   c_d = c.
//
// Requires Re(a_j) < 0 for every pole and delta > 0; the image then satisfies
// |a_d| < 1.  The result is Real mode when all inputs have zero imaginary
// parts, Complex otherwise.
DiagonalSsm bilinear_discretize(const std::vector<cdouble>& a_cont,
                                const std::vector<cdouble>& b_cont,
                                const std::vector<cdouble>& c_cont,
                                double delta);

}  // namespace ssmlab
