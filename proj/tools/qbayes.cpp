// Batch experiment runner: seeded simulation and inference pipelines over
// exchangeable qubit ensembles, with CSV/JSON emission. See README for the
// config schema.

#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "qbayes/experiment.hpp"

namespace {

qbayes::Json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw qbayes::IoError("cannot open config file '" + path + "'");
    try {
        qbayes::Json j;
        in >> j;
        return j;
    } catch (const qbayes::Json::exception& e) {
        throw qbayes::ConfigError("config file '" + path + "': " + e.what());
    }
}

std::optional<uint64_t> seed_override_from_env() {
    const char* raw = std::getenv("QBAYES_SEED_OVERRIDE");
    if (raw == nullptr || *raw == '\0') return std::nullopt;
    try {
        return std::stoull(raw);
    } catch (const std::exception&) {
        throw qbayes::ConfigError("QBAYES_SEED_OVERRIDE: not an unsigned integer");
    }
}

struct CliOptions {
    std::string config_path;
    std::string out_path;
    std::string format;
    std::optional<uint64_t> seed;
    int threads = 1;
};

void add_common_options(CLI::App* cmd, CliOptions& opt) {
    cmd->add_option("--config", opt.config_path, "experiment config JSON");
    cmd->add_option("--out", opt.out_path, "output file for result rows");
    cmd->add_option("--format", opt.format, "output format: csv|json")
        ->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--seed", opt.seed, "override the config seed");
    cmd->add_option("--threads", opt.threads, "worker threads for independent trials")
        ->check(CLI::PositiveNumber);
}

int run_command(const CliOptions& opt, std::optional<qbayes::ExperimentKind> forced_kind,
                qbayes::ExperimentConfig fallback) {
    qbayes::ExperimentConfig config = std::move(fallback);
    if (!opt.config_path.empty()) {
        config = qbayes::parse_config(load_json_file(opt.config_path));
    }
    if (forced_kind && config.kind != *forced_kind) {
        throw qbayes::ConfigError("config kind '" + qbayes::experiment_kind_name(config.kind) +
                                  "' does not match the '" +
                                  qbayes::experiment_kind_name(*forced_kind) + "' subcommand");
    }
    if (opt.seed) config.seed = *opt.seed;
    if (const auto env_seed = seed_override_from_env()) config.seed = *env_seed;
    if (!opt.out_path.empty()) config.output.path = opt.out_path;
    if (!opt.format.empty()) config.output.format = opt.format;

    const std::string hash = qbayes::config_hash(config);
    const qbayes::ExperimentResult result = qbayes::run_experiment(config, opt.threads);

    if (!config.output.path.empty()) {
        qbayes::emit_results(result.rows, config.output.format, config.output.path, hash,
                             config.seed);
        qbayes::write_summary(result.summary, qbayes::summary_path_for(config.output.path));
        std::cerr << "wrote " << result.rows.size() << " rows to " << config.output.path
                  << " (summary: " << qbayes::summary_path_for(config.output.path) << ")\n";
    } else {
        if (config.output.format == "csv") {
            std::cout << qbayes::rows_to_csv(result.rows);
        } else {
            std::cout << qbayes::rows_to_jsonl(result.rows, hash, config.seed);
        }
        std::cerr << result.summary.dump(2) << '\n';
    }
    return result.pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"quantum Bayes rule experiments on exchangeable ensembles"};
    app.require_subcommand(1);

    CliOptions opt;

    CLI::App* run = app.add_subcommand("run", "run the experiment described by --config");
    CLI::App* verify = app.add_subcommand(
        "verify", "brute-force equivalence check of the ensemble Bayes rule");
    CLI::App* maxent = app.add_subcommand(
        "maxent-compare", "Bayes posterior vs maximum-entropy product state");
    CLI::App* predict = app.add_subcommand(
        "predict", "posterior predictive counts for a future spin measurement");
    CLI::App* tomography = app.add_subcommand(
        "tomography", "posterior concentration under informationally complete data");
    for (CLI::App* cmd : {run, verify, maxent, predict, tomography}) {
        add_common_options(cmd, opt);
    }

    CLI11_PARSE(app, argc, argv);

    try {
        using qbayes::ExperimentKind;
        if (run->parsed()) {
            if (opt.config_path.empty()) {
                throw qbayes::ConfigError("run: --config is required");
            }
            return run_command(opt, std::nullopt, {});
        }
        if (verify->parsed()) {
            return run_command(opt, ExperimentKind::VerifyOracle,
                               qbayes::default_verify_config());
        }
        if (maxent->parsed()) {
            return run_command(opt, ExperimentKind::MaxentCompare,
                               qbayes::default_maxent_compare_config());
        }
        if (predict->parsed()) {
            return run_command(opt, ExperimentKind::Predict, qbayes::default_predict_config());
        }
        return run_command(opt, ExperimentKind::Tomography, qbayes::default_tomography_config());
    } catch (const qbayes::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
}
