#include "ssmlab/jobs.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <thread>

#include "ssmlab/bounds.hpp"
#include "ssmlab/constructors.hpp"
#include "ssmlab/quantization.hpp"
#include "ssmlab/rng.hpp"

namespace ssmlab {

namespace {

using nlohmann::json;

std::string fmt(const char* format, double v) {
    char buffer[64];
    std::snprintf(buffer, sizeof(buffer), format, v);
    return buffer;
}

std::string fmt_full(double v) { return fmt("%.17g", v); }
std::string fmt_short(double v) { return fmt("%.6g", v); }

// ---------------------------------------------------------------------------
// Parsing

void check_keys(const json& j, const std::set<std::string>& allowed,
                const std::string& where) {
    for (const auto& item : j.items()) {
        if (!allowed.count(item.key())) {
            throw ConfigError("unknown key '" + item.key() + "' in " + where);
        }
    }
}

const json& require(const json& j, const std::string& key, const std::string& where) {
    auto it = j.find(key);
    if (it == j.end()) {
        throw ConfigError("missing required key '" + key + "' in " + where);
    }
    return *it;
}

std::string as_string(const json& j, const std::string& key) {
    if (!j.is_string()) throw ConfigError("'" + key + "' must be a string");
    return j.get<std::string>();
}

std::uint64_t as_uint(const json& j, const std::string& key) {
    if (!j.is_number_integer() && !j.is_number_unsigned()) {
        throw ConfigError("'" + key + "' must be a non-negative integer");
    }
    if (j.is_number_integer() && j.get<std::int64_t>() < 0) {
        throw ConfigError("'" + key + "' must be a non-negative integer");
    }
    return j.get<std::uint64_t>();
}

double as_double(const json& j, const std::string& key) {
    if (!j.is_number()) throw ConfigError("'" + key + "' must be a number");
    const double v = j.get<double>();
    if (!std::isfinite(v)) throw ConfigError("'" + key + "' must be finite");
    return v;
}

TargetSpec parse_target(const json& j, bool& fixed_seed) {
    if (!j.is_object()) throw ConfigError("'target' must be an object");
    check_keys(j, {"kind", "horizon", "k", "alpha", "seed", "values"}, "target");
    TargetSpec spec;
    spec.kind = target_kind_from_string(
        as_string(require(j, "kind", "target"), "target.kind"));
    fixed_seed = false;

    auto forbid = [&](const char* key) {
        if (j.contains(key)) {
            throw ConfigError(std::string("target key '") + key +
                              "' is not valid for kind '" + to_string(spec.kind) + "'");
        }
    };

    switch (spec.kind) {
        case TargetKind::Delay: {
            forbid("alpha"); forbid("seed"); forbid("values");
            spec.horizon = as_uint(require(j, "horizon", "target"), "target.horizon");
            if (j.contains("k")) spec.delay_k = as_uint(j.at("k"), "target.k");
            break;
        }
        case TargetKind::RandomUniform: {
            forbid("k"); forbid("values");
            spec.horizon = as_uint(require(j, "horizon", "target"), "target.horizon");
            if (j.contains("alpha")) {
                spec.alpha = as_double(j.at("alpha"), "target.alpha");
                if (!(spec.alpha > 0.0)) {
                    throw ConfigError("'target.alpha' must be positive");
                }
            }
            if (j.contains("seed")) {
                spec.seed = as_uint(j.at("seed"), "target.seed");
                fixed_seed = true;
            }
            break;
        }
        case TargetKind::Oscillatory:
        case TargetKind::Alternating: {
            forbid("k"); forbid("alpha"); forbid("seed"); forbid("values");
            spec.horizon = as_uint(require(j, "horizon", "target"), "target.horizon");
            break;
        }
        case TargetKind::Custom: {
            forbid("k"); forbid("alpha"); forbid("seed");
            const json& values = require(j, "values", "target");
            if (!values.is_array() || values.empty()) {
                throw ConfigError("'target.values' must be a non-empty array");
            }
            for (const json& v : values) {
                spec.custom_values.push_back(as_double(v, "target.values[]"));
            }
            spec.horizon = spec.custom_values.size();
            if (j.contains("horizon") &&
                as_uint(j.at("horizon"), "target.horizon") != spec.horizon) {
                throw ConfigError("'target.horizon' must match target.values length");
            }
            break;
        }
    }
    if (spec.horizon == 0) throw ConfigError("'target.horizon' must be >= 1");
    return spec;
}

json serialize_target(const TargetSpec& spec, bool fixed_seed) {
    json j;
    j["kind"] = to_string(spec.kind);
    j["horizon"] = spec.horizon;
    switch (spec.kind) {
        case TargetKind::Delay:
            j["k"] = spec.resolved_delay();
            break;
        case TargetKind::RandomUniform:
            j["alpha"] = spec.alpha;
            // An explicit seed pins one target across run seeds; its absence
            // means "derive from the run seed" and must stay absent.
            if (fixed_seed) j["seed"] = spec.seed;
            break;
        case TargetKind::Custom:
            j["values"] = spec.custom_values;
            break;
        default:
            break;
    }
    return j;
}

const std::set<std::string> kCommonKeys = {"job",    "name",   "output_dir",
                                           "seeds",  "format", "jobs"};

std::set<std::string> with_common(std::initializer_list<std::string> extra) {
    std::set<std::string> keys = kCommonKeys;
    keys.insert(extra.begin(), extra.end());
    return keys;
}

std::string default_name(const ExperimentConfig& config) {
    struct Visitor {
        std::string operator()(const ConstructJob& job) const {
            return "construct_" + job.method + "_" + to_string(job.target.kind) + "_t" +
                   std::to_string(job.target.horizon);
        }
        std::string operator()(const TrainJob& job) const {
            return std::string("train_") +
                   (job.mode == Mode::Real ? "real" : "complex") + "_" +
                   to_string(job.optimizer) + "_" + to_string(job.target.kind) + "_t" +
                   std::to_string(job.target.horizon);
        }
        std::string operator()(const BoundJob& job) const {
            return "bound_" + to_string(job.target.kind) + "_t" +
                   std::to_string(job.target.horizon);
        }
        std::string operator()(const QuantizeJob& job) const {
            return "quantize_" + to_string(job.target.kind) + "_t" +
                   std::to_string(job.target.horizon);
        }
        std::string operator()(const OscillationJob& job) const {
            return "oscillation_t" + std::to_string(job.horizon);
        }
    };
    return std::visit(Visitor{}, config.payload);
}

}  // namespace

ExperimentConfig parse_config(const json& j) {
    if (!j.is_object()) throw ConfigError("config must be a JSON object");
    const std::string job = as_string(require(j, "job", "config"), "job");

    ExperimentConfig config;
    if (job == "construct") {
        check_keys(j, with_common({"method", "target", "nodes"}), "config");
        ConstructJob payload;
        payload.method = as_string(require(j, "method", "config"), "method");
        if (payload.method != "vandermonde" && payload.method != "dft") {
            throw ConfigError("'method' must be 'vandermonde' or 'dft'");
        }
        payload.target =
            parse_target(require(j, "target", "config"), payload.fixed_target_seed);
        if (j.contains("nodes")) {
            if (payload.method != "vandermonde") {
                throw ConfigError("'nodes' is only valid with method 'vandermonde'");
            }
            const json& nodes = j.at("nodes");
            if (!nodes.is_array()) throw ConfigError("'nodes' must be an array");
            std::vector<double> parsed;
            for (const json& v : nodes) parsed.push_back(as_double(v, "nodes[]"));
            payload.nodes = std::move(parsed);
        }
        config.payload = std::move(payload);
    } else if (job == "train") {
        check_keys(j,
                   with_common({"mode", "dim", "optimizer", "learning_rate",
                                "weight_decay", "steps", "schedule", "init",
                                "record_every", "target"}),
                   "config");
        TrainJob payload;
        const std::string mode = as_string(require(j, "mode", "config"), "mode");
        if (mode == "real") payload.mode = Mode::Real;
        else if (mode == "complex") payload.mode = Mode::Complex;
        else throw ConfigError("'mode' must be 'real' or 'complex'");
        payload.dim = as_uint(require(j, "dim", "config"), "dim");
        if (payload.dim == 0) throw ConfigError("'dim' must be >= 1");
        payload.optimizer = optimizer_from_string(
            as_string(require(j, "optimizer", "config"), "optimizer"));
        payload.learning_rate =
            as_double(require(j, "learning_rate", "config"), "learning_rate");
        if (!(payload.learning_rate > 0.0)) {
            throw ConfigError("'learning_rate' must be positive");
        }
        if (j.contains("weight_decay")) {
            payload.weight_decay = as_double(j.at("weight_decay"), "weight_decay");
            if (payload.weight_decay < 0.0) {
                throw ConfigError("'weight_decay' must be >= 0");
            }
            if (payload.weight_decay > 0.0 &&
                payload.optimizer != OptimizerKind::AdamW) {
                throw ConfigError("'weight_decay' requires optimizer 'adamw'");
            }
        }
        payload.steps = as_uint(require(j, "steps", "config"), "steps");
        if (j.contains("schedule")) {
            payload.schedule =
                schedule_from_string(as_string(j.at("schedule"), "schedule"));
        }
        if (j.contains("init")) {
            payload.init = init_from_string(as_string(j.at("init"), "init"));
        }
        if (j.contains("record_every")) {
            payload.record_every = as_uint(j.at("record_every"), "record_every");
            if (payload.record_every == 0) {
                throw ConfigError("'record_every' must be >= 1");
            }
        }
        payload.target =
            parse_target(require(j, "target", "config"), payload.fixed_target_seed);
        config.payload = std::move(payload);
    } else if (job == "bound") {
        check_keys(j, with_common({"target", "epsilon", "tail_probability"}), "config");
        BoundJob payload;
        payload.target =
            parse_target(require(j, "target", "config"), payload.fixed_target_seed);
        payload.epsilon = as_double(require(j, "epsilon", "config"), "epsilon");
        if (payload.epsilon < 0.0) throw ConfigError("'epsilon' must be >= 0");
        if (j.contains("tail_probability")) {
            const double p = as_double(j.at("tail_probability"), "tail_probability");
            if (!(p > 0.0) || p > 1.0) {
                throw ConfigError("'tail_probability' must lie in (0, 1]");
            }
            payload.tail_probability = p;
        }
        config.payload = std::move(payload);
    } else if (job == "quantize") {
        check_keys(j, with_common({"target", "epsilon", "q_values", "samples"}),
                   "config");
        QuantizeJob payload;
        payload.target =
            parse_target(require(j, "target", "config"), payload.fixed_target_seed);
        payload.epsilon = as_double(require(j, "epsilon", "config"), "epsilon");
        if (!(payload.epsilon > 0.0)) throw ConfigError("'epsilon' must be positive");
        const json& qs = require(j, "q_values", "config");
        if (!qs.is_array() || qs.empty()) {
            throw ConfigError("'q_values' must be a non-empty array");
        }
        for (const json& v : qs) {
            const double q = as_double(v, "q_values[]");
            if (q < 0.0 || q > 2.0) throw ConfigError("'q_values' entries must lie in [0, 2]");
            payload.q_values.push_back(q);
        }
        if (j.contains("samples")) {
            payload.samples = as_uint(j.at("samples"), "samples");
            if (payload.samples == 0) throw ConfigError("'samples' must be >= 1");
        }
        config.payload = std::move(payload);
    } else if (job == "oscillation") {
        check_keys(j,
                   with_common({"t", "threshold", "deadband", "complex_magnitude",
                                "complex_phase", "real_dim"}),
                   "config");
        OscillationJob payload;
        payload.horizon = as_uint(require(j, "t", "config"), "t");
        if (payload.horizon == 0) throw ConfigError("'t' must be >= 1");
        if (j.contains("threshold")) {
            payload.threshold = as_double(j.at("threshold"), "threshold");
            if (!(payload.threshold > 0.0)) {
                throw ConfigError("'threshold' must be positive");
            }
        }
        if (j.contains("deadband")) {
            payload.deadband = as_double(j.at("deadband"), "deadband");
            if (payload.deadband < 0.0) throw ConfigError("'deadband' must be >= 0");
        }
        if (j.contains("complex_magnitude")) {
            payload.complex_magnitude =
                as_double(j.at("complex_magnitude"), "complex_magnitude");
            if (!(payload.complex_magnitude > 0.0) || payload.complex_magnitude >= 1.0) {
                throw ConfigError("'complex_magnitude' must lie in (0, 1)");
            }
        }
        if (j.contains("complex_phase")) {
            payload.complex_phase = as_double(j.at("complex_phase"), "complex_phase");
        }
        if (j.contains("real_dim")) {
            payload.real_dim = as_uint(j.at("real_dim"), "real_dim");
            if (payload.real_dim == 0) throw ConfigError("'real_dim' must be >= 1");
        }
        config.payload = std::move(payload);
    } else {
        throw ConfigError("unknown job '" + job + "'");
    }

    config.output_dir = as_string(require(j, "output_dir", "config"), "output_dir");
    if (config.output_dir.empty()) throw ConfigError("'output_dir' must be non-empty");

    const json& seeds = require(j, "seeds", "config");
    if (!seeds.is_array() || seeds.empty()) {
        throw ConfigError("'seeds' must be a non-empty array");
    }
    std::set<std::uint64_t> seen;
    for (const json& s : seeds) {
        const std::uint64_t seed = as_uint(s, "seeds[]");
        if (!seen.insert(seed).second) {
            throw ConfigError("'seeds' must not contain duplicates");
        }
        config.seeds.push_back(seed);
    }

    if (j.contains("format")) {
        config.format = as_string(j.at("format"), "format");
        if (config.format != "json" && config.format != "csv") {
            throw ConfigError("'format' must be 'json' or 'csv'");
        }
    }
    if (j.contains("jobs")) {
        config.parallel_jobs = as_uint(j.at("jobs"), "jobs");
        if (config.parallel_jobs == 0) throw ConfigError("'jobs' must be >= 1");
    }
    if (j.contains("name")) {
        config.name = as_string(j.at("name"), "name");
        if (config.name.empty()) throw ConfigError("'name' must be non-empty");
        for (char ch : config.name) {
            if (!std::isalnum(static_cast<unsigned char>(ch)) && ch != '_' &&
                ch != '-') {
                throw ConfigError("'name' may contain only [A-Za-z0-9_-]");
            }
        }
    } else {
        config.name = default_name(config);
    }
    return config;
}

ExperimentConfig load_config_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config file: " + path.string());
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw ConfigError("config is not valid JSON: " + std::string(e.what()));
    }
    return parse_config(j);
}

nlohmann::json resolved_config_json(const ExperimentConfig& config) {
    json j;
    j["name"] = config.name;
    j["output_dir"] = config.output_dir;
    j["seeds"] = config.seeds;
    j["format"] = config.format;
    j["jobs"] = config.parallel_jobs;

    struct Visitor {
        json& j;
        void operator()(const ConstructJob& job) const {
            j["job"] = "construct";
            j["method"] = job.method;
            j["target"] = serialize_target(job.target, job.fixed_target_seed);
            if (job.nodes) j["nodes"] = *job.nodes;
        }
        void operator()(const TrainJob& job) const {
            j["job"] = "train";
            j["mode"] = job.mode == Mode::Real ? "real" : "complex";
            j["dim"] = job.dim;
            j["optimizer"] = to_string(job.optimizer);
            j["learning_rate"] = job.learning_rate;
            j["weight_decay"] = job.weight_decay;
            j["steps"] = job.steps;
            j["schedule"] = to_string(job.schedule);
            j["init"] = to_string(job.init);
            j["record_every"] = job.record_every;
            j["target"] = serialize_target(job.target, job.fixed_target_seed);
        }
        void operator()(const BoundJob& job) const {
            j["job"] = "bound";
            j["target"] = serialize_target(job.target, job.fixed_target_seed);
            j["epsilon"] = job.epsilon;
            if (job.tail_probability) j["tail_probability"] = *job.tail_probability;
        }
        void operator()(const QuantizeJob& job) const {
            j["job"] = "quantize";
            j["target"] = serialize_target(job.target, job.fixed_target_seed);
            j["epsilon"] = job.epsilon;
            j["q_values"] = job.q_values;
            j["samples"] = job.samples;
        }
        void operator()(const OscillationJob& job) const {
            j["job"] = "oscillation";
            j["t"] = job.horizon;
            j["threshold"] = job.threshold;
            j["deadband"] = job.deadband;
            j["complex_magnitude"] = job.complex_magnitude;
            j["complex_phase"] = job.complex_phase;
            j["real_dim"] = job.real_dim;
        }
    };
    std::visit(Visitor{j}, config.payload);
    return j;
}

namespace {

// ---------------------------------------------------------------------------
// Per-seed execution

struct SeedResult {
    json record;
    std::map<std::string, double> metrics;
    std::string trace_csv;  // empty when the job has no trace
};

TargetSpec resolve_target(TargetSpec spec, bool fixed_seed, std::uint64_t seed) {
    if (spec.kind == TargetKind::RandomUniform && !fixed_seed) spec.seed = seed;
    return spec;
}

std::string trace_to_csv(const TrainTrace& trace) {
    std::string out = "step,loss,norm_err_l1,max_abs_b,max_abs_c,max_abs_a\n";
    for (const TraceRow& row : trace.rows) {
        out += std::to_string(row.step);
        out += ',';
        out += fmt_full(row.loss);
        out += ',';
        out += fmt_full(row.norm_err_l1);
        out += ',';
        out += fmt_full(row.max_abs_b);
        out += ',';
        out += fmt_full(row.max_abs_c);
        out += ',';
        out += fmt_full(row.max_abs_a);
        out += '\n';
    }
    return out;
}

SeedResult run_construct_seed(const ConstructJob& job, std::uint64_t seed) {
    const TargetSpec target_spec =
        resolve_target(job.target, job.fixed_target_seed, seed);
    const ScalarSeries target = generate(target_spec);
    const ConstructionResult result =
        job.method == "vandermonde"
            ? construct_real_vandermonde(target, job.nodes)
            : construct_complex_dft(target);

    SeedResult out;
    out.record["seed"] = seed;
    out.record["method"] = job.method;
    out.record["dim"] = result.ssm.dim();
    out.record["horizon"] = target.length();
    out.record["residual_l1"] = result.residual_l1;
    out.record["b_norm2"] = result.b_norm2;
    out.record["c_norm2"] = result.c_norm2;
    out.metrics["residual_l1"] = result.residual_l1;
    out.metrics["b_norm2"] = result.b_norm2;
    out.metrics["c_norm2"] = result.c_norm2;
    return out;
}

SeedResult run_train_seed(const TrainJob& job, std::uint64_t seed) {
    TrainConfig config;
    config.mode = job.mode;
    config.dim = job.dim;
    config.target = resolve_target(job.target, job.fixed_target_seed, seed);
    config.optimizer = job.optimizer;
    config.learning_rate = job.learning_rate;
    config.weight_decay = job.weight_decay;
    config.steps = job.steps;
    config.schedule = job.schedule;
    config.init = job.init;
    config.seed = seed;
    config.record_every = job.record_every;

    const TrainResult result = train(config);
    const TraceRow& final_row = result.trace.rows.back();

    SeedResult out;
    out.record["seed"] = seed;
    out.record["steps"] = job.steps;
    out.record["final_loss"] = final_row.loss;
    out.record["norm_err_l1"] = final_row.norm_err_l1;
    out.record["max_abs_a"] = final_row.max_abs_a;
    out.record["max_abs_b"] = final_row.max_abs_b;
    out.record["max_abs_c"] = final_row.max_abs_c;
    if (degenerate_delay(config.target)) out.record["degenerate_target"] = true;
    out.metrics["final_loss"] = final_row.loss;
    out.metrics["norm_err_l1"] = final_row.norm_err_l1;
    out.metrics["max_abs_a"] = final_row.max_abs_a;
    out.metrics["max_abs_b"] = final_row.max_abs_b;
    out.metrics["max_abs_c"] = final_row.max_abs_c;
    out.trace_csv = trace_to_csv(result.trace);
    return out;
}

SeedResult run_bound_seed(const BoundJob& job, std::uint64_t seed) {
    const TargetSpec target_spec =
        resolve_target(job.target, job.fixed_target_seed, seed);
    const ScalarSeries target = generate(target_spec);
    const BoundReport report = lower_bound_general({target, job.epsilon});

    SeedResult out;
    out.record["seed"] = seed;
    out.record["epsilon"] = job.epsilon;
    out.record["bound"] = report.bound;
    out.record["best_d"] = report.best_d;
    out.record["best_m"] = report.best_m;
    out.record["best_parity"] = report.best_parity == Parity::Odd ? "odd" : "even";
    out.record["witness_difference"] = report.witness_difference;
    out.record["overflowed"] = report.overflowed;
    out.metrics["bound"] = report.bound;

    const std::size_t t = target.length();
    std::optional<double> closed;
    switch (target_spec.kind) {
        case TargetKind::Delay:
            closed = lower_bound_copy(t, job.epsilon);
            break;
        case TargetKind::Oscillatory:
            if (t % 4 == 0 && job.epsilon == 0.5) closed = lower_bound_oscillatory(t);
            break;
        case TargetKind::RandomUniform:
            if (job.tail_probability) {
                closed = lower_bound_random(t, target_spec.alpha,
                                            *job.tail_probability);
            }
            break;
        default:
            break;
    }
    if (closed) {
        out.record["closed_form"] = *closed;
        out.metrics["closed_form"] = *closed;
    }
    return out;
}

SeedResult run_quantize_seed(const QuantizeJob& job, std::uint64_t seed) {
    const TargetSpec target_spec =
        resolve_target(job.target, job.fixed_target_seed, seed);
    const ScalarSeries target = generate(target_spec);
    const ConstructionResult construction = construct_real_vandermonde(target);

    SeedResult out;
    out.record["seed"] = seed;
    out.record["residual_l1"] = construction.residual_l1;
    out.record["rows"] = json::array();
    for (const double q : job.q_values) {
        QuantizationSpec spec;
        spec.q = q;
        spec.epsilon = job.epsilon;
        spec.target = target;
        spec.samples = job.samples;
        spec.seed = seed;
        const QuantizationReport report = estimate_robustness(construction.ssm, spec);
        json row;
        row["q"] = q;
        row["empirical_robustness"] = report.empirical_robustness;
        row["wilson_halfwidth"] = report.wilson_halfwidth;
        row["theoretical_ceiling"] = report.theoretical_ceiling;
        out.record["rows"].push_back(row);
        const std::string suffix = "_q" + fmt("%g", q);
        out.metrics["empirical" + suffix] = report.empirical_robustness;
        out.metrics["halfwidth" + suffix] = report.wilson_halfwidth;
        out.metrics["ceiling" + suffix] = report.theoretical_ceiling;
    }
    return out;
}

SeedResult run_oscillation_seed(const OscillationJob& job, std::uint64_t seed) {
    const cdouble pole =
        job.complex_magnitude *
        cdouble{std::cos(job.complex_phase), std::sin(job.complex_phase)};
    const DiagonalSsm witness = DiagonalSsm::complex({pole}, {1.0}, {1.0});
    const ScalarSeries complex_odd =
        restrict_parity(impulse_response(witness, job.horizon), Parity::Odd);
    const std::size_t alternations =
        count_alternations(complex_odd, job.threshold);

    SeededRng rng(seed);
    const std::size_t n = job.real_dim;
    std::vector<double> a(n), b(n), c(n);
    for (std::size_t j = 0; j < n; ++j) {
        a[j] = std::clamp(rng.uniform_sym(1.0), -(1.0 - 1e-6), 1.0 - 1e-6);
    }
    for (std::size_t j = 0; j < n; ++j) b[j] = rng.uniform_sym(1.0);
    for (std::size_t j = 0; j < n; ++j) c[j] = rng.uniform_sym(1.0);
    const DiagonalSsm real_system = DiagonalSsm::real(a, b, c);
    const ScalarSeries real_odd =
        restrict_parity(impulse_response(real_system, job.horizon), Parity::Odd);
    const std::size_t changes = sign_changes(real_odd, job.deadband);

    SeedResult out;
    out.record["seed"] = seed;
    out.record["complex_alternations"] = alternations;
    out.record["real_sign_changes"] = changes;
    out.record["alternation_floor"] =
        static_cast<std::int64_t>(job.horizon / 9) - 1;
    out.metrics["complex_alternations"] = static_cast<double>(alternations);
    out.metrics["real_sign_changes"] = static_cast<double>(changes);
    return out;
}

SeedResult run_one_seed(const ExperimentConfig& config, std::uint64_t seed) {
    struct Visitor {
        std::uint64_t seed;
        SeedResult operator()(const ConstructJob& job) const {
            return run_construct_seed(job, seed);
        }
        SeedResult operator()(const TrainJob& job) const {
            return run_train_seed(job, seed);
        }
        SeedResult operator()(const BoundJob& job) const {
            return run_bound_seed(job, seed);
        }
        SeedResult operator()(const QuantizeJob& job) const {
            return run_quantize_seed(job, seed);
        }
        SeedResult operator()(const OscillationJob& job) const {
            return run_oscillation_seed(job, seed);
        }
    };
    return std::visit(Visitor{seed}, config.payload);
}

// ---------------------------------------------------------------------------
// File output

void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open for writing: " + path.string());
    out << content;
    if (!out) throw IoError("write failed: " + path.string());
}

std::string scalar_to_csv(const json& value) {
    if (value.is_string()) return value.get<std::string>();
    return value.dump();
}

// CSV rendering of a per-seed record: flat "key,value" lines (sorted by key),
// then, if the record has a "rows" array, a blank line and a rows table.
std::string record_to_csv(const json& record) {
    std::string out = "key,value\n";
    for (const auto& item : record.items()) {
        if (item.key() == "rows") continue;
        out += item.key();
        out += ',';
        out += scalar_to_csv(item.value());
        out += '\n';
    }
    if (record.contains("rows") && record.at("rows").is_array() &&
        !record.at("rows").empty()) {
        out += '\n';
        const json& rows = record.at("rows");
        std::string header;
        for (const auto& item : rows.front().items()) {
            if (!header.empty()) header += ',';
            header += item.key();
        }
        out += header;
        out += '\n';
        for (const json& row : rows) {
            std::string line;
            for (const auto& item : row.items()) {
                if (!line.empty()) line += ',';
                line += scalar_to_csv(item.value());
            }
            out += line;
            out += '\n';
        }
    }
    return out;
}

}  // namespace

RunOutcome run_experiment(const ExperimentConfig& config) {
    std::error_code ec;
    std::filesystem::create_directories(config.output_dir, ec);
    if (ec) {
        throw IoError("cannot create output directory '" + config.output_dir +
                      "': " + ec.message());
    }
    const std::filesystem::path dir(config.output_dir);

    const std::size_t count = config.seeds.size();
    std::vector<SeedResult> results(count);
    std::vector<std::exception_ptr> errors(count);

    const std::size_t workers = std::min(config.parallel_jobs, count);
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) {
            try {
                results[i] = run_one_seed(config, config.seeds[i]);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    } else {
        std::atomic<std::size_t> next{0};
        auto worker = [&]() {
            while (true) {
                const std::size_t i = next.fetch_add(1);
                if (i >= count) return;
                try {
                    results[i] = run_one_seed(config, config.seeds[i]);
                } catch (...) {
                    errors[i] = std::current_exception();
                }
            }
        };
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(worker);
        for (std::thread& thread : pool) thread.join();
    }
    for (const std::exception_ptr& error : errors) {
        if (error) std::rethrow_exception(error);
    }

    const json resolved = resolved_config_json(config);
    write_file(dir / (config.name + "_config.json"), resolved.dump(2) + "\n");

    for (std::size_t i = 0; i < count; ++i) {
        const std::string stem = config.name + "_seed" + std::to_string(config.seeds[i]);
        if (config.format == "json") {
            write_file(dir / (stem + ".json"), results[i].record.dump(2) + "\n");
        } else {
            write_file(dir / (stem + ".csv"), record_to_csv(results[i].record));
        }
        if (!results[i].trace_csv.empty()) {
            write_file(dir / (config.name + "_trace_seed" +
                              std::to_string(config.seeds[i]) + ".csv"),
                       results[i].trace_csv);
        }
    }

    json metrics = json::object();
    if (count > 0) {
        for (const auto& [key, first_value] : results[0].metrics) {
            double lo = first_value, hi = first_value, sum = 0.0;
            for (const SeedResult& r : results) {
                const double v = r.metrics.at(key);
                lo = std::min(lo, v);
                hi = std::max(hi, v);
                sum += v;
            }
            metrics[key] = {{"min", lo},
                            {"max", hi},
                            {"mean", sum / static_cast<double>(count)}};
        }
    }

    json summary;
    summary["config"] = resolved;
    summary["metrics"] = metrics;
    json per_seed = json::object();
    for (std::size_t i = 0; i < count; ++i) {
        per_seed[std::to_string(config.seeds[i])] = results[i].record;
    }
    summary["results"] = per_seed;
    write_file(dir / (config.name + "_summary.json"), summary.dump(2) + "\n");

    std::ostringstream text;
    text << config.name << ": " << count << " seed(s) -> " << config.output_dir
         << "\n";
    for (const auto& item : metrics.items()) {
        text << "  " << item.key()
             << ": min=" << fmt_short(item.value()["min"].get<double>())
             << " mean=" << fmt_short(item.value()["mean"].get<double>())
             << " max=" << fmt_short(item.value()["max"].get<double>()) << "\n";
    }
    if (std::holds_alternative<QuantizeJob>(config.payload)) {
        const QuantizeJob& job = std::get<QuantizeJob>(config.payload);
        text << "  q-sweep (mean over seeds):\n";
        text << "    q         empirical  halfwidth  ceiling\n";
        for (const double q : job.q_values) {
            const std::string suffix = "_q" + fmt("%g", q);
            char line[160];
            std::snprintf(line, sizeof(line), "    %-9g %-10.6g %-10.4g %-10.6g\n", q,
                          metrics["empirical" + suffix]["mean"].get<double>(),
                          metrics["halfwidth" + suffix]["mean"].get<double>(),
                          metrics["ceiling" + suffix]["mean"].get<double>());
            text << line;
        }
    }
    if (std::holds_alternative<BoundJob>(config.payload) && count > 0) {
        const json& first = results[0].record;
        text << "  certificate (seed " << config.seeds[0]
             << "): d=" << first["best_d"] << " m=" << first["best_m"]
             << " parity=" << first["best_parity"].get<std::string>() << "\n";
    }

    return RunOutcome{summary, text.str()};
}

// ---------------------------------------------------------------------------
// Report

namespace {

const std::vector<std::string> kOptimizerOrder = {"adam", "adamw", "radam"};
const std::vector<std::string> kTargetOrder = {"delay", "random", "oscillatory",
                                               "alternating", "custom"};

std::string render_grid(const std::string& title, const std::string& row_label,
                        const std::vector<std::string>& rows,
                        const std::vector<std::string>& cols,
                        const std::map<std::pair<std::string, std::string>, double>& cells,
                        std::string& csv, bool& gaps) {
    std::ostringstream text;
    text << title << "\n";
    text << "  " << row_label;
    for (std::size_t pad = row_label.size(); pad < 14; ++pad) text << ' ';
    for (const std::string& col : cols) {
        text << col;
        for (std::size_t pad = col.size(); pad < 14; ++pad) text << ' ';
    }
    text << "\n";
    csv = row_label;
    for (const std::string& col : cols) csv += "," + col;
    csv += "\n";
    for (const std::string& row : rows) {
        text << "  " << row;
        for (std::size_t pad = row.size(); pad < 14; ++pad) text << ' ';
        csv += row;
        for (const std::string& col : cols) {
            auto it = cells.find({row, col});
            std::string shown = "-";
            std::string raw = "NA";
            if (it != cells.end()) {
                shown = fmt_short(it->second);
                raw = fmt_full(it->second);
            } else {
                gaps = true;
            }
            text << shown;
            for (std::size_t pad = shown.size(); pad < 14; ++pad) text << ' ';
            csv += "," + raw;
        }
        text << "\n";
        csv += "\n";
    }
    return text.str();
}

}  // namespace

ReportOutcome report_table(const std::filesystem::path& dir) {
    if (!std::filesystem::is_directory(dir)) {
        throw IoError("not a directory: " + dir.string());
    }

    std::vector<std::filesystem::path> summary_files;
    for (const auto& entry : std::filesystem::directory_iterator(dir)) {
        if (!entry.is_regular_file()) continue;
        const std::string name = entry.path().filename().string();
        if (name.size() > 13 &&
            name.compare(name.size() - 13, 13, "_summary.json") == 0) {
            summary_files.push_back(entry.path());
        }
    }
    std::sort(summary_files.begin(), summary_files.end());

    ReportOutcome outcome;
    std::ostringstream text;
    // (row, col) -> cell value, one grid per mode
    std::map<std::pair<std::string, std::string>, double> real_cells, complex_cells;
    std::set<std::string> real_rows_seen, real_cols_seen, complex_cols_seen;
    std::set<std::size_t> complex_horizons;
    std::vector<std::string> listing;

    for (const std::filesystem::path& path : summary_files) {
        json summary;
        try {
            std::ifstream in(path);
            if (!in) throw IoError("cannot open " + path.string());
            in >> summary;
            const json& config = summary.at("config");
            const std::string job = config.at("job").get<std::string>();
            if (job == "train") {
                const std::string mode = config.at("mode").get<std::string>();
                const std::string kind =
                    config.at("target").at("kind").get<std::string>();
                const std::size_t horizon =
                    config.at("target").at("horizon").get<std::size_t>();
                const json& err = summary.at("metrics").at("norm_err_l1");
                if (mode == "real") {
                    const std::string row = config.at("optimizer").get<std::string>();
                    real_cells[{row, kind}] = err.at("min").get<double>();
                    real_rows_seen.insert(row);
                    real_cols_seen.insert(kind);
                } else {
                    complex_cells[{"t=" + std::to_string(horizon), kind}] =
                        err.at("max").get<double>();
                    complex_horizons.insert(horizon);
                    complex_cols_seen.insert(kind);
                }
            } else {
                std::string line =
                    config.at("name").get<std::string>() + ":";
                for (const auto& item : summary.at("metrics").items()) {
                    line += " " + item.key() + "=" +
                            fmt_short(item.value().at("mean").get<double>());
                }
                listing.push_back(line);
            }
        } catch (const std::exception&) {
            listing.push_back(path.filename().string() + ": unreadable (gap)");
            outcome.gaps = true;
            continue;
        }
    }

    auto ordered = [](const std::vector<std::string>& canonical,
                      const std::set<std::string>& seen) {
        std::vector<std::string> out;
        for (const std::string& key : canonical) {
            if (seen.count(key)) out.push_back(key);
        }
        for (const std::string& key : seen) {
            if (std::find(canonical.begin(), canonical.end(), key) == canonical.end()) {
                out.push_back(key);
            }
        }
        return out;
    };

    if (!real_cells.empty()) {
        const std::vector<std::string> rows = ordered(kOptimizerOrder, real_rows_seen);
        const std::vector<std::string> cols = ordered(kTargetOrder, real_cols_seen);
        std::string csv;
        text << render_grid("Real mode - best-seed normalized error (lower is better)",
                            "optimizer", rows, cols, real_cells, csv, outcome.gaps);
        write_file(dir / "report_real.csv", csv);
        text << "\n";
    }
    if (!complex_cells.empty()) {
        std::vector<std::string> rows;
        for (const std::size_t horizon : complex_horizons) {
            rows.push_back("t=" + std::to_string(horizon));
        }
        const std::vector<std::string> cols = ordered(kTargetOrder, complex_cols_seen);
        std::string csv;
        text << render_grid(
            "Complex mode - worst-seed normalized error (lower is better)", "horizon",
            rows, cols, complex_cells, csv, outcome.gaps);
        write_file(dir / "report_complex.csv", csv);
        text << "\n";
    }
    if (!listing.empty()) {
        text << "Other results:\n";
        for (const std::string& line : listing) text << "  " << line << "\n";
    }
    if (summary_files.empty()) {
        text << "No result summaries found in " << dir.string() << "\n";
        outcome.gaps = true;
    }

    outcome.text = text.str();
    return outcome;
}

}  // namespace ssmlab
