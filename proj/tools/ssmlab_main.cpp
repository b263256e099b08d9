#include <CLI11.hpp>
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <json.hpp>
#include <set>
#include <string>
#include <vector>

#include "ssmlab/jobs.hpp"
#include "ssmlab/training.hpp"

namespace {

void emit_error(const std::string& type, const std::string& message) {
    nlohmann::json j;
    j["error"] = {{"type", type}, {"message", message}};
    std::cerr << j.dump() << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"diagonal state-space model experiment runner"};
    app.require_subcommand(1);

    std::string config_path;
    std::vector<std::uint64_t> seeds_override;
    std::string output_dir_override;
    std::string format_override;
    std::uint64_t jobs_override = 1;
    CLI::App* run = app.add_subcommand(
        "run", "execute the experiment described by a JSON config");
    run->add_option("config", config_path, "path to the experiment config")
        ->required();
    run->add_option("--seeds", seeds_override, "override the config's seed list");
    run->add_option("--output-dir", output_dir_override,
                    "override the config's output directory");
    run->add_option("--format", format_override,
                    "override the per-seed record format (json|csv)");
    CLI::Option* jobs_opt = run->add_option(
        "--jobs", jobs_override, "number of worker threads for seed execution");

    std::string report_dir;
    CLI::App* report = app.add_subcommand(
        "report", "summarize the experiment outputs found in a directory");
    report->add_option("dir", report_dir, "directory holding *_summary.json files")
        ->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (run->parsed()) {
            ssmlab::ExperimentConfig config = ssmlab::load_config_file(config_path);
            if (!seeds_override.empty()) {
                std::set<std::uint64_t> seen(seeds_override.begin(),
                                             seeds_override.end());
                if (seen.size() != seeds_override.size()) {
                    throw ssmlab::ConfigError("--seeds must not contain duplicates");
                }
                config.seeds = seeds_override;
            }
            if (!output_dir_override.empty()) config.output_dir = output_dir_override;
            if (!format_override.empty()) {
                if (format_override != "json" && format_override != "csv") {
                    throw ssmlab::ConfigError("--format must be 'json' or 'csv'");
                }
                config.format = format_override;
            }
            if (jobs_opt->count() > 0) {
                if (jobs_override == 0) {
                    throw ssmlab::ConfigError("--jobs must be >= 1");
                }
                config.parallel_jobs = jobs_override;
            }
            const ssmlab::RunOutcome outcome = ssmlab::run_experiment(config);
            std::cout << outcome.text;
            return 0;
        }
        const ssmlab::ReportOutcome outcome = ssmlab::report_table(report_dir);
        std::cout << outcome.text;
        if (outcome.gaps) {
            emit_error("report", "report has gaps or unreadable summaries");
            return 5;
        }
        return 0;
    } catch (const ssmlab::ConfigError& e) {
        emit_error("config", e.what());
        return 2;
    } catch (const ssmlab::NumericError& e) {
        emit_error("numeric", e.what());
        return 3;
    } catch (const ssmlab::IoError& e) {
        emit_error("io", e.what());
        return 4;
    } catch (const std::filesystem::filesystem_error& e) {
        emit_error("io", e.what());
        return 4;
    } catch (const std::invalid_argument& e) {
        emit_error("config", e.what());
        return 2;
    } catch (const std::exception& e) {
        emit_error("internal", e.what());
        return 1;
    }
}
