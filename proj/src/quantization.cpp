#include "ssmlab/quantization.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "ssmlab/rng.hpp"

namespace ssmlab {

namespace {

// 95% Wilson score interval half width for `hits` successes out of `n`.
double wilson_halfwidth(std::size_t hits, std::size_t n) {
    constexpr double z = 1.96;
    const double nn = static_cast<double>(n);
    const double phat = static_cast<double>(hits) / nn;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / nn;
    const double spread =
        (z / denom) * std::sqrt(phat * (1.0 - phat) / nn + z2 / (4.0 * nn * nn));
    return spread;
}

}  // namespace

QuantizationReport estimate_robustness(const DiagonalSsm& ssm,
                                       const QuantizationSpec& spec) {
    if (ssm.mode != Mode::Real) {
        throw std::invalid_argument("estimate_robustness: requires a Real-mode system");
    }
    if (!(spec.q >= 0.0) || spec.q > 2.0 || !std::isfinite(spec.q)) {
        throw std::invalid_argument("estimate_robustness: q must lie in [0, 2]");
    }
    if (!(spec.epsilon > 0.0) || !std::isfinite(spec.epsilon)) {
        throw std::invalid_argument("estimate_robustness: epsilon must be positive");
    }
    if (spec.samples == 0) {
        throw std::invalid_argument("estimate_robustness: samples must be >= 1");
    }
    const std::size_t t = spec.target.length();
    if (t == 0) {
        throw std::invalid_argument("estimate_robustness: target must be non-empty");
    }

    const double base_error =
        approximation_error(impulse_response(ssm, t), spec.target);
    if (!(base_error <= spec.epsilon)) {
        throw std::invalid_argument(
            "estimate_robustness: system must epsilon-approximate the target "
            "before perturbation");
    }

    const std::size_t n = ssm.dim();
    std::vector<double> a(n), b(n), c(n);
    double max_cb = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        a[j] = ssm.a[j].real();
        b[j] = ssm.b[j].real();
        c[j] = ssm.c[j].real();
        max_cb = std::max(max_cb, std::abs(c[j] * b[j]));
    }

    const double lo = 1.0 - spec.q / 2.0;
    const double hi = 1.0 + spec.q / 2.0;
    std::vector<double> pa(n), pb(n), pc(n), pow(n);
    std::size_t hits = 0;
    for (std::size_t i = 0; i < spec.samples; ++i) {
        // One substream per sample: the estimate does not depend on the order
        // in which samples are evaluated.
        SeededRng rng = SeededRng::substream(spec.seed, i);
        for (std::size_t j = 0; j < n; ++j) pa[j] = a[j] * rng.uniform(lo, hi);
        for (std::size_t j = 0; j < n; ++j) pb[j] = b[j] * rng.uniform(lo, hi);
        for (std::size_t j = 0; j < n; ++j) pc[j] = c[j] * rng.uniform(lo, hi);

        double err = 0.0;
        // Inline impulse response of the perturbed system, stopping early
        // once the error budget is exhausted.
        std::fill(pow.begin(), pow.end(), 1.0);
        for (std::size_t k = 0; k < t && err <= spec.epsilon; ++k) {
            double y = 0.0;
            for (std::size_t j = 0; j < n; ++j) {
                y += pow[j] * pc[j] * pb[j];
                pow[j] *= pa[j];
            }
            err += std::abs(y - spec.target[k]);
        }
        if (err <= spec.epsilon) ++hits;
    }

    QuantizationReport report;
    report.empirical_robustness =
        static_cast<double>(hits) / static_cast<double>(spec.samples);
    report.wilson_halfwidth = wilson_halfwidth(hits, spec.samples);
    if (spec.q == 0.0 || max_cb == 0.0) {
        report.theoretical_ceiling = 1.0;
    } else {
        report.theoretical_ceiling =
            std::min(1.0, 2.0 * spec.epsilon / (spec.q * max_cb));
    }
    return report;
}

}  // namespace ssmlab
