#include "ssmlab/targets.hpp"

#include <cmath>
#include <stdexcept>

#include "ssmlab/rng.hpp"

namespace ssmlab {

TargetSpec TargetSpec::delay(std::size_t horizon, std::optional<std::size_t> k) {
    TargetSpec spec;
    spec.kind = TargetKind::Delay;
    spec.horizon = horizon;
    spec.delay_k = k;
    return spec;
}

TargetSpec TargetSpec::random_uniform(std::size_t horizon, double alpha,
                                      std::uint64_t seed) {
    TargetSpec spec;
    spec.kind = TargetKind::RandomUniform;
    spec.horizon = horizon;
    spec.alpha = alpha;
    spec.seed = seed;
    return spec;
}

TargetSpec TargetSpec::oscillatory(std::size_t horizon) {
    TargetSpec spec;
    spec.kind = TargetKind::Oscillatory;
    spec.horizon = horizon;
    return spec;
}

TargetSpec TargetSpec::alternating(std::size_t horizon) {
    TargetSpec spec;
    spec.kind = TargetKind::Alternating;
    spec.horizon = horizon;
    return spec;
}

TargetSpec TargetSpec::custom(std::vector<double> values) {
    TargetSpec spec;
    spec.kind = TargetKind::Custom;
    spec.horizon = values.size();
    spec.custom_values = std::move(values);
    return spec;
}

std::size_t TargetSpec::resolved_delay() const {
    return delay_k ? *delay_k : (horizon - 1) / 2;
}

bool degenerate_delay(const TargetSpec& spec) {
    return spec.kind == TargetKind::Delay && spec.resolved_delay() >= spec.horizon;
}

ScalarSeries generate(const TargetSpec& spec) {
    if (spec.horizon == 0) throw std::invalid_argument("generate: horizon must be >= 1");
    std::vector<double> out(spec.horizon, 0.0);
    switch (spec.kind) {
        case TargetKind::Delay: {
            const std::size_t k = spec.resolved_delay();
            if (k < spec.horizon) out[k] = 1.0;  // target_m = 1{m = k+1}, 1-indexed
            break;
        }
        case TargetKind::RandomUniform: {
            if (!(spec.alpha > 0.0) || !std::isfinite(spec.alpha)) {
                throw std::invalid_argument("generate: alpha must be positive");
            }
            SeededRng rng(spec.seed);
            for (double& v : out) v = rng.uniform_sym(spec.alpha);
            break;
        }
        case TargetKind::Oscillatory: {
            // 1, 0, -1, 0, 1, ...
            for (std::size_t m = 0; m < spec.horizon; m += 2) {
                out[m] = (m % 4 == 0) ? 1.0 : -1.0;
            }
            break;
        }
        case TargetKind::Alternating: {
            for (std::size_t m = 0; m < spec.horizon; ++m) {
                out[m] = (m % 2 == 0) ? 1.0 : -1.0;
            }
            break;
        }
        case TargetKind::Custom: {
            if (spec.custom_values.size() != spec.horizon) {
                throw std::invalid_argument(
                    "generate: custom values must match horizon");
            }
            out = spec.custom_values;
            break;
        }
    }
    return ScalarSeries(std::move(out));
}

double normalized_error(const ScalarSeries& candidate, const ScalarSeries& target) {
    if (candidate.length() != target.length()) {
        throw std::invalid_argument("normalized_error: length mismatch");
    }
    const double denom = l1_norm(target);
    if (denom == 0.0) {
        throw std::invalid_argument("normalized_error: target must not be all zero");
    }
    double diff = 0.0;
    for (std::size_t i = 0; i < candidate.length(); ++i) {
        diff += std::abs(candidate[i] - target[i]);
    }
    return diff / denom;
}

std::string to_string(TargetKind kind) {
    switch (kind) {
        case TargetKind::Delay: return "delay";
        case TargetKind::RandomUniform: return "random";
        case TargetKind::Oscillatory: return "oscillatory";
        case TargetKind::Alternating: return "alternating";
        case TargetKind::Custom: return "custom";
    }
    return "unknown";
}

TargetKind target_kind_from_string(const std::string& name) {
    if (name == "delay") return TargetKind::Delay;
    if (name == "random") return TargetKind::RandomUniform;
    if (name == "oscillatory") return TargetKind::Oscillatory;
    if (name == "alternating") return TargetKind::Alternating;
    if (name == "custom") return TargetKind::Custom;
    throw std::invalid_argument("unknown target kind: " + name);
}

}  // namespace ssmlab
