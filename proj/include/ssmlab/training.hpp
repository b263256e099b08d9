#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ssmlab/rng.hpp"
#include "ssmlab/series.hpp"
#include "ssmlab/ssm.hpp"
#include "ssmlab/targets.hpp"

namespace ssmlab {

// Thrown when training encounters a non-finite loss or gradient.
struct NumericError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class OptimizerKind { Adam, AdamW, RAdam };
enum class ScheduleKind { Constant, Cosine };
enum class InitKind { UniformFull, UniformRing };

// Stable parameterization of a diagonal system: the diagonal magnitude is
// exp(-exp(nu)), which lies in (0, 1) for every real nu, so gradient steps
// can never leave the stable region.
//
//   Real mode:     a_j = sign_j * exp(-exp(nu_j)), sign frozen at init;
//                  flat layout [nu(n) | b(n) | c(n)].
//   Complex mode:  a_j = exp(-exp(nu_j)) * e^(i theta_j);
//                  flat layout [nu | theta | b_re | b_im | c_re | c_im].
struct StableParams {
    Mode mode = Mode::Real;
    std::size_t dim = 0;
    std::vector<double> x;        // flat trainable parameters (layout above)
    std::vector<double> sign;     // Real mode only: +1/-1 per coordinate

    std::size_t param_count() const { return x.size(); }

    double nu(std::size_t j) const { return x[j]; }
    double theta(std::size_t j) const { return x[dim + j]; }  // Complex only

    DiagonalSsm realize() const;

    // Re-expresses an existing system in this parameterization.  Requires
    // 0 < |a_j| < 1 for every j (and, in Real mode, a_j != 0 so the sign is
    // defined).
    static StableParams from_ssm(const DiagonalSsm& ssm);

    // Seeded initialization.  UniformRing draws |a| uniform in [0.99, 1)
    // (clamped to at most 1 - 1e-6) with uniform phase (Complex) or a fair
    // sign (Real).  UniformFull draws a scalar v uniform in [-1, 1) per
    // coordinate and maps |v| (clamped to [1e-6, 1 - 1e-6]) into the
    // magnitude, taking the sign/phase from the sign of v.  b and c entries
    // are i.i.d. uniform in [-1/sqrt(n), 1/sqrt(n)) per real component.
    static StableParams init(Mode mode, std::size_t dim, InitKind kind,
                             SeededRng& rng);
};

// Squared l2 distance between the truncated impulse response and the target:
// the closed form of the expected squared output error over unit-variance
// i.i.d. inputs.
double loss(const DiagonalSsm& ssm, const ScalarSeries& target);

// Analytic gradient of loss(params.realize(), target) with respect to the
// flat parameter vector, in the layout documented on StableParams.
std::vector<double> gradient(const StableParams& params,
                             const ScalarSeries& target);

struct TrainConfig {
    Mode mode = Mode::Real;
    std::size_t dim = 1;
    TargetSpec target;
    OptimizerKind optimizer = OptimizerKind::Adam;
    double learning_rate = 1e-3;
    double weight_decay = 0.0;    // AdamW only
    std::size_t steps = 0;
    ScheduleKind schedule = ScheduleKind::Constant;
    InitKind init = InitKind::UniformRing;
    std::uint64_t seed = 0;
    std::size_t record_every = 1000;
};

struct TraceRow {
    std::size_t step = 0;
    double loss = 0.0;
    double norm_err_l1 = 0.0;
    double max_abs_b = 0.0;
    double max_abs_c = 0.0;
    double max_abs_a = 0.0;
};

struct TrainTrace {
    std::vector<TraceRow> rows;
    std::string optimizer;        // "adam", "adamw", "radam", "gd"
    bool raw_parameters = false;  // true only for plain GD on raw (a, b, c)
};

struct TrainResult {
    DiagonalSsm ssm;
    StableParams params;
    TrainTrace trace;
};

// Full-batch first-order training of the stable parameterization against a
// fixed target.  Deterministic for a fixed config (bit-identical parameters
// on the same platform).  Throws NumericError if the loss goes non-finite.
TrainResult train(const TrainConfig& config);

// Plain gradient descent on the raw entries of (a, b, c) for a Real system,
// at a constant learning rate — the regime covered by the parameter-growth
// guarantee.  Initial point drawn like UniformFull but on raw entries.
struct RawGdConfig {
    std::size_t dim = 1;
    TargetSpec target;
    double learning_rate = 1e-3;
    std::size_t steps = 0;
    std::uint64_t seed = 0;
    std::size_t record_every = 100;
};

struct RawGdResult {
    DiagonalSsm ssm;
    TrainTrace trace;
};

RawGdResult train_raw_gd(const RawGdConfig& config);

// Checks a recorded trace against the linear growth ceiling
//
//   ceiling(i) = max(|b|_inf, |c|_inf at step 0) + i * sqrt(4 c1 c2 t loss_0),
//
// where c2 = max_i loss_i / loss_0 over the trace.  The guarantee only covers
// plain GD on raw parameters with learning rate <= c1/loss-smoothness regime;
// for any other trace the rows are still reported but hypotheses_met = false.
struct GrowthRow {
    std::size_t step = 0;
    double observed = 0.0;
    double ceiling = 0.0;
    bool within = false;
};

struct GrowthReport {
    std::vector<GrowthRow> rows;
    bool all_within = false;
    bool hypotheses_met = false;
    double c2 = 1.0;
};

GrowthReport growth_check(const TrainTrace& trace, double c1, std::size_t t);

std::string to_string(OptimizerKind kind);
OptimizerKind optimizer_from_string(const std::string& name);
std::string to_string(ScheduleKind kind);
ScheduleKind schedule_from_string(const std::string& name);
std::string to_string(InitKind kind);
InitKind init_from_string(const std::string& name);

}  // namespace ssmlab
