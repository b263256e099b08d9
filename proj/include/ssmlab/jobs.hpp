#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "ssmlab/ssm.hpp"
#include "ssmlab/targets.hpp"
#include "ssmlab/training.hpp"

namespace ssmlab {

// Config/schema violations (CLI exit code 2).
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Filesystem failures while reading configs or writing results (exit code 4).
struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// One experiment = one job description executed once per seed.  When a
// RandomUniform target carries no explicit seed, each run derives the target
// seed from its run seed (independent replicates); an explicit target seed is
// shared across all runs.
struct ConstructJob {
    std::string method;  // "vandermonde" | "dft"
    TargetSpec target;
    bool fixed_target_seed = false;
    std::optional<std::vector<double>> nodes;  // vandermonde only
};

struct TrainJob {
    Mode mode = Mode::Real;
    std::size_t dim = 1;
    OptimizerKind optimizer = OptimizerKind::Adam;
    double learning_rate = 1e-3;
    double weight_decay = 0.0;
    std::size_t steps = 0;
    ScheduleKind schedule = ScheduleKind::Cosine;
    InitKind init = InitKind::UniformRing;
    std::size_t record_every = 1000;
    TargetSpec target;
    bool fixed_target_seed = false;
};

struct BoundJob {
    TargetSpec target;
    bool fixed_target_seed = false;
    double epsilon = 0.0;
    // Tail probability for the random-target closed form; when absent only
    // the search bound is reported.
    std::optional<double> tail_probability;
};

struct QuantizeJob {
    TargetSpec target;
    bool fixed_target_seed = false;
    double epsilon = 0.5;
    std::vector<double> q_values;
    std::size_t samples = 100000;
};

struct OscillationJob {
    std::size_t horizon = 100;
    double threshold = 0.25;
    double deadband = 1e-12;
    double complex_magnitude = 0.999;
    double complex_phase = 1.5707963267948966;  // pi/2
    std::size_t real_dim = 4;
};

struct ExperimentConfig {
    std::string name;  // defaults to a deterministic label derived from the job
    std::string output_dir;
    std::vector<std::uint64_t> seeds;
    std::string format = "json";  // per-seed result files: "json" | "csv"
    std::size_t parallel_jobs = 1;
    std::variant<ConstructJob, TrainJob, BoundJob, QuantizeJob, OscillationJob> payload;
};

// Strict parse: unknown keys, missing required fields, and out-of-domain
// values all raise ConfigError.
ExperimentConfig parse_config(const nlohmann::json& j);
ExperimentConfig load_config_file(const std::filesystem::path& path);

// Fully-resolved config (all defaults explicit).  Re-parsing it yields the
// identical job description.
nlohmann::json resolved_config_json(const ExperimentConfig& config);

struct RunOutcome {
    nlohmann::json summary;
    std::string text;  // human-readable run report for stdout
};

// Executes the job for every seed, writes per-seed result files, traces
// (train jobs), the resolved config, and the aggregate summary into
// output_dir.  Deterministic: re-running produces byte-identical files.
RunOutcome run_experiment(const ExperimentConfig& config);

struct ReportOutcome {
    std::string text;
    bool gaps = false;  // missing/corrupt cells found (CLI exit code 5)
};

// Scans a results directory for aggregate summaries and renders the
// experiment tables (real mode: optimizer x target with best-seed error;
// complex mode: horizon x target with worst-seed error), plus CSV twins
// written next to the summaries.
ReportOutcome report_table(const std::filesystem::path& dir);

}  // namespace ssmlab
