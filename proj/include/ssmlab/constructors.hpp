#pragma once

#include <optional>
#include <vector>

#include "ssmlab/series.hpp"
#include "ssmlab/ssm.hpp"

namespace ssmlab {

// Output of an explicit construction: the system plus the diagnostics the
// experiments report.  residual_l1 is ||impulse_response - target||_1 at the
// target's horizon, recomputed honestly from the constructed system.
struct ConstructionResult {
    DiagonalSsm ssm;
    double b_norm2 = 0.0;
    double c_norm2 = 0.0;
    double residual_l1 = 0.0;
};

// Real construction that matches the target exactly in exact arithmetic:
// with n = t nodes a_1..a_t and c = ones, the impulse-response conditions
// form the Vandermonde system V(a) b = target, solved here by dense
// Gaussian elimination with partial pivoting.  Default nodes are n points
// equispaced in [-0.95, 0.95] (the single node 0 when n = 1).  Nodes must be
// pairwise distinct and lie in (-1, 1).  The solve is numerically honest:
// ill-conditioning for larger t shows up in residual_l1 and in the size of b.
ConstructionResult construct_real_vandermonde(
    const ScalarSeries& target,
    const std::optional<std::vector<double>>& nodes = std::nullopt);

// Complex construction with n = t modes on a ring: a_j = alpha e^(2 pi i (j-1)/t)
// with alpha = (1/2)^(1/(t-1)) (alpha = 1/2 when t = 1) and c_j = 1/sqrt(t).
// b is the discrete Fourier transform of the alpha-descaled target, scaled by
// 1/sqrt(t); the match is exact up to rounding, with the norm certificates
// ||b||_2 <= 2 ||target||_2 and ||c||_2 = 1.  Direct O(t^2) summation.
ConstructionResult construct_complex_dft(const ScalarSeries& target);

}  // namespace ssmlab
