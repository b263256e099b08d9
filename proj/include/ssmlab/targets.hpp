#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ssmlab/series.hpp"

namespace ssmlab {

enum class TargetKind { Delay, RandomUniform, Oscillatory, Alternating, Custom };

// Descriptor for the benchmark mappings the experiments try to approximate.
//
//   Delay(k):       delta at position k+1, i.e. target_m = 1{m = k+1}.
//                   k defaults to floor((horizon-1)/2) when unset.
//   RandomUniform:  i.i.d. uniform [-alpha, alpha) entries from `seed`.
//   Oscillatory:    1, 0, -1, 0, 1, ...  (period-4 sign wave).
//   Alternating:    1, -1, 1, -1, ...
//   Custom:         values passed through verbatim (must match horizon).
struct TargetSpec {
    TargetKind kind = TargetKind::Delay;
    std::size_t horizon = 1;
    std::optional<std::size_t> delay_k;      // Delay only
    double alpha = 1.0;                      // RandomUniform only
    std::uint64_t seed = 0;                  // RandomUniform only
    std::vector<double> custom_values;       // Custom only

    static TargetSpec delay(std::size_t horizon,
                            std::optional<std::size_t> k = std::nullopt);
    static TargetSpec random_uniform(std::size_t horizon, double alpha,
                                     std::uint64_t seed);
    static TargetSpec oscillatory(std::size_t horizon);
    static TargetSpec alternating(std::size_t horizon);
    static TargetSpec custom(std::vector<double> values);

    std::size_t resolved_delay() const;
};

// True when a Delay target's k >= horizon, which makes the truncated target
// identically zero.  Generation permits it; callers may want to warn.
bool degenerate_delay(const TargetSpec& spec);

ScalarSeries generate(const TargetSpec& spec);

// ||candidate - target||_1 / ||target||_1.  The all-zero candidate scores
// exactly 1; an all-zero target is rejected.
double normalized_error(const ScalarSeries& candidate,
                        const ScalarSeries& target);

std::string to_string(TargetKind kind);
TargetKind target_kind_from_string(const std::string& name);

}  // namespace ssmlab
