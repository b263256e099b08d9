#pragma once

#include <cstdint>

#include "ssmlab/series.hpp"
#include "ssmlab/ssm.hpp"

namespace ssmlab {

// Monte Carlo study of multiplicative parameter noise: every entry of
// (a, b, c) is scaled by an independent uniform factor in [1-q/2, 1+q/2],
// and a sample counts as robust when the perturbed impulse response still
// epsilon-approximates the target in l1.
struct QuantizationSpec {
    double q = 0.0;               // relative perturbation width, in [0, 2]
    double epsilon = 0.0;         // approximation budget, > 0
    ScalarSeries target;
    std::size_t samples = 100000;
    std::uint64_t seed = 0;
};

struct QuantizationReport {
    double empirical_robustness = 0.0;   // fraction of robust samples
    double wilson_halfwidth = 0.0;       // 95% score-interval half width
    double theoretical_ceiling = 0.0;    // min(1, 2 eps / (q max_j |c_j b_j|))
};

// Requires a Real-mode system whose unperturbed response already
// epsilon-approximates the target (otherwise the question is vacuous and the
// call is rejected).  Sampling uses one counter-based substream per sample,
// so the estimate is independent of evaluation order.
QuantizationReport estimate_robustness(const DiagonalSsm& ssm,
                                       const QuantizationSpec& spec);

}  // namespace ssmlab
