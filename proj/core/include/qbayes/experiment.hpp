#pragma once

#include <map>
#include <optional>

#include "qbayes/serialize.hpp"

namespace qbayes {

enum class ExperimentKind { QubitCounts, Tomography, VerifyOracle, MaxentCompare, Predict };

std::string experiment_kind_name(ExperimentKind k);
ExperimentKind experiment_kind_from_name(const std::string& name);

// One measurement-plan step: a spin axis or a POVM referenced by id
// ("sx", "sy", "sz", "sic" are built in; others come from config.povms).
// Counts are either given explicitly (axis entries) or simulated from the
// true state with `shots` draws.
struct PlanEntry {
    bool is_axis = true;
    BlochVector axis{0.0, 0.0, 1.0};
    std::string povm_id;
    long shots = 0;
    long plus = 0;
    long minus = 0;
    bool explicit_counts = false;
};

struct OracleParams {
    int cases = 200;
    int max_atoms = 4;
    int max_subsystems = 5;
    double tolerance = 1e-10;
    int entangled_cases = 3;
};

struct OutputSpec {
    std::string path;           // empty: caller decides (CLI prints to stdout)
    std::string format = "csv"; // csv | json
};

struct ExperimentConfig {
    ExperimentKind kind = ExperimentKind::QubitCounts;
    uint64_t seed = 0;
    int trial_count = 1;
    std::optional<PriorSpec> prior;
    std::vector<PlanEntry> plan;
    std::optional<DensityOperator> true_state;
    BlochVector future_axis{1.0, 0.0, 0.0};
    int predict_n = 10;
    OracleParams oracle;
    std::vector<long> checkpoints;      // tomography; empty = 1,3,10,30,...
    std::map<std::string, Povm> povms;  // custom POVMs by id
    OutputSpec output;
};

ExperimentConfig parse_config(const Json& j);
// Canonical form: hashing it yields the run's provenance digest.
Json config_to_json(const ExperimentConfig& c);
std::string config_hash(const ExperimentConfig& c);

struct ResultRow {
    long trial = 0;
    long step = 0;
    std::string quantity;
    Json value;
};

struct ExperimentResult {
    std::vector<ResultRow> rows;
    Json summary;  // config_hash, seed, kind, pass, kind-specific extras
    bool pass = true;
};

// Deterministic for a fixed config; `threads` parallelizes independent
// trials without affecting the emitted bytes.
ExperimentResult run_experiment(const ExperimentConfig& config, int threads = 1);

std::string rows_to_csv(const std::vector<ResultRow>& rows);
std::string rows_to_jsonl(const std::vector<ResultRow>& rows, const std::string& hash,
                          uint64_t seed);
std::vector<ResultRow> rows_from_csv(const std::string& csv);

// format "csv" writes the pinned trial,step,quantity,value table; "json"
// writes JSON lines. Bit-stable for fixed inputs.
void emit_results(const std::vector<ResultRow>& rows, const std::string& format,
                  const std::string& path, const std::string& hash = "", uint64_t seed = 0);

// <out>.summary.json next to the rows file.
std::string summary_path_for(const std::string& out_path);
void write_summary(const Json& summary, const std::string& path);

// Built-in single-command reproductions (see README).
ExperimentConfig default_verify_config();
ExperimentConfig default_maxent_compare_config();
ExperimentConfig default_predict_config();
ExperimentConfig default_tomography_config();

}  // namespace qbayes
