#include "qbayes/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <limits>
#include <mutex>
#include <sstream>
#include <thread>

namespace qbayes {

std::string experiment_kind_name(ExperimentKind k) {
    switch (k) {
        case ExperimentKind::QubitCounts: return "qubit-counts";
        case ExperimentKind::Tomography: return "tomography";
        case ExperimentKind::VerifyOracle: return "verify-oracle";
        case ExperimentKind::MaxentCompare: return "maxent-compare";
        case ExperimentKind::Predict: return "predict";
    }
    throw InvalidArgumentError("unknown experiment kind");
}

ExperimentKind experiment_kind_from_name(const std::string& name) {
    if (name == "qubit-counts") return ExperimentKind::QubitCounts;
    if (name == "tomography") return ExperimentKind::Tomography;
    if (name == "verify-oracle") return ExperimentKind::VerifyOracle;
    if (name == "maxent-compare") return ExperimentKind::MaxentCompare;
    if (name == "predict") return ExperimentKind::Predict;
    throw ConfigError("kind: unknown experiment kind '" + name + "'");
}

namespace {

BlochVector named_axis(const std::string& name, const std::string& field) {
    if (name == "x") return {1.0, 0.0, 0.0};
    if (name == "y") return {0.0, 1.0, 0.0};
    if (name == "z") return {0.0, 0.0, 1.0};
    throw ConfigError(field + ": unknown axis '" + name + "' (use x, y, z or [x,y,z])");
}

BlochVector axis_from_json(const Json& j, const std::string& field) {
    if (j.is_string()) return named_axis(j.get<std::string>(), field);
    if (j.is_array()) return bloch_from_json(j);
    throw ConfigError(field + ": expected axis name or [x,y,z]");
}

PlanEntry plan_entry_from_json(const Json& j, const std::string& field) {
    PlanEntry e;
    const bool has_axis = j.contains("axis");
    const bool has_povm = j.contains("povm");
    if (has_axis == has_povm) {
        throw ConfigError(field + ": exactly one of 'axis' or 'povm' is required");
    }
    if (has_axis) {
        e.is_axis = true;
        e.axis = axis_from_json(j["axis"], field + ".axis");
        if (std::abs(e.axis.norm() - 1.0) > 1e-9) {
            throw ConfigError(field + ".axis: axis must be a unit vector");
        }
    } else {
        e.is_axis = false;
        e.povm_id = j["povm"].get<std::string>();
    }
    const bool has_counts = j.contains("plus") || j.contains("minus");
    if (has_counts) {
        if (!e.is_axis) {
            throw ConfigError(field + ": explicit plus/minus counts require an axis entry");
        }
        e.explicit_counts = true;
        e.plus = j.value("plus", 0L);
        e.minus = j.value("minus", 0L);
        if (e.plus < 0 || e.minus < 0) throw ConfigError(field + ": counts must be >= 0");
        if (j.contains("shots")) {
            throw ConfigError(field + ": give either explicit counts or 'shots', not both");
        }
    } else {
        if (!j.contains("shots")) {
            throw ConfigError(field + ": needs 'shots' or explicit plus/minus counts");
        }
        e.shots = j["shots"].get<long>();
        if (e.shots < 0) throw ConfigError(field + ".shots: must be >= 0");
    }
    return e;
}

Json plan_entry_to_json(const PlanEntry& e) {
    Json j;
    if (e.is_axis) {
        j["axis"] = bloch_to_json(e.axis);
    } else {
        j["povm"] = e.povm_id;
    }
    if (e.explicit_counts) {
        j["plus"] = e.plus;
        j["minus"] = e.minus;
    } else {
        j["shots"] = e.shots;
    }
    return j;
}

// Plan entry resolved to an operation plus its induced POVM.
struct ResolvedOp {
    QuantumOperation op;
    Povm povm;
    bool is_axis;
    BlochVector axis;
};

ResolvedOp resolve_entry(const PlanEntry& e, const ExperimentConfig& c, size_t index) {
    if (e.is_axis) {
        QuantumOperation op = projective_spin_povm(e.axis);
        Povm povm = povm_from_operation(op);
        return {std::move(op), std::move(povm), true, e.axis};
    }
    if (e.povm_id == "sx" || e.povm_id == "sy" || e.povm_id == "sz") {
        const BlochVector axis = named_axis(e.povm_id.substr(1), "plan povm");
        QuantumOperation op = projective_spin_povm(axis);
        Povm povm = povm_from_operation(op);
        return {std::move(op), std::move(povm), true, axis};
    }
    if (e.povm_id == "sic") {
        Povm povm = tetrahedral_sic_povm();
        QuantumOperation op = operation_from_povm(povm);
        return {std::move(op), std::move(povm), false, {0.0, 0.0, 0.0}};
    }
    auto it = c.povms.find(e.povm_id);
    if (it == c.povms.end()) {
        throw ConfigError("plan[" + std::to_string(index) + "].povm: id '" + e.povm_id +
                          "' does not resolve (builtins: sx, sy, sz, sic)");
    }
    QuantumOperation op = operation_from_povm(it->second);
    return {std::move(op), it->second, false, {0.0, 0.0, 0.0}};
}

const PriorSpec& require_prior(const ExperimentConfig& c) {
    if (!c.prior) {
        throw ConfigError("prior: required for " + experiment_kind_name(c.kind) +
                          " (no default prior measure is assumed)");
    }
    return *c.prior;
}

const DensityOperator& require_true_state(const ExperimentConfig& c) {
    if (!c.true_state) {
        throw ConfigError("true_state: required for " + experiment_kind_name(c.kind));
    }
    return *c.true_state;
}

uint64_t entry_stream(long trial, size_t step) {
    return (static_cast<uint64_t>(trial) << 32) | static_cast<uint64_t>(step);
}

void push_moment_rows(std::vector<ResultRow>& rows, long trial, long step, const Ensemble& e) {
    const PosteriorMoments mom = posterior_moments(e);
    rows.push_back({trial, step, "mean_bloch", bloch_to_json(mom.mean_bloch)});
    rows.push_back({trial, step, "variance_bloch",
                    Json::array({mom.variances[0], mom.variances[1], mom.variances[2]})});
    rows.push_back({trial, step, "entropy_mean_state", von_neumann_entropy(mom.mean_state)});
}

// Shared by qubit-counts, maxent-compare and predict: walk the plan,
// batching per entry; returns the posterior and appends per-step rows if
// asked to.
Ensemble apply_plan(const ExperimentConfig& c, Ensemble e, long trial,
                    std::vector<ResultRow>* rows) {
    for (size_t s = 0; s < c.plan.size(); ++s) {
        const PlanEntry& entry = c.plan[s];
        const ResolvedOp resolved = resolve_entry(entry, c, s);
        CountsUpdateResult res = [&] {
            if (entry.explicit_counts) {
                return qubit_counts_update_with_evidence(e, entry.axis, entry.plus, entry.minus);
            }
            const MeasurementRecord record =
                sample_measurement_record(require_true_state(c), {resolved.op}, entry.shots,
                                          c.seed, entry_stream(trial, s));
            const auto counts = record.tally({resolved.povm.outcome_count()});
            if (resolved.is_axis) {
                return qubit_counts_update_with_evidence(e, resolved.axis, counts[0][0],
                                                         counts[0][1]);
            }
            return povm_counts_update(e, resolved.povm, counts[0]);
        }();
        e = std::move(res.posterior);
        if (rows) {
            const long step = static_cast<long>(s) + 1;
            push_moment_rows(*rows, trial, step, e);
            rows->push_back({trial, step, "log_evidence", res.log_evidence});
        }
    }
    return e;
}

std::vector<long> effective_checkpoints(const ExperimentConfig& c, long total) {
    std::vector<long> cps;
    if (!c.checkpoints.empty()) {
        for (long cp : c.checkpoints) {
            if (cp < 1 || cp > total) continue;
            cps.push_back(cp);
        }
    } else {
        // 1, 3, 10, 30, ... up to the full record.
        for (long base = 1; base <= total; base *= 10) {
            cps.push_back(base);
            if (3 * base <= total) cps.push_back(3 * base);
        }
    }
    if (cps.empty() || cps.back() != total) cps.push_back(total);
    std::sort(cps.begin(), cps.end());
    cps.erase(std::unique(cps.begin(), cps.end()), cps.end());
    return cps;
}

std::vector<ResultRow> run_tomography_trial(const ExperimentConfig& c, long trial) {
    PriorSpec spec = require_prior(c);
    spec.seed = spec.seed + static_cast<uint64_t>(trial);  // independent atoms per trial
    const Ensemble prior = discretize_prior(spec);
    const DensityOperator& truth = require_true_state(c);

    std::vector<QuantumOperation> ops;
    std::vector<Povm> povms;
    std::vector<int> outcome_counts;
    long total = 0;
    for (size_t s = 0; s < c.plan.size(); ++s) {
        if (c.plan[s].explicit_counts) {
            throw ConfigError("tomography plan entries need 'shots', not explicit counts");
        }
        ResolvedOp r = resolve_entry(c.plan[s], c, s);
        outcome_counts.push_back(r.povm.outcome_count());
        ops.push_back(std::move(r.op));
        povms.push_back(std::move(r.povm));
        total += c.plan[s].shots;
    }
    if (total < 1) throw ConfigError("tomography: plan has no shots");

    const MeasurementRecord record = sample_measurement_record(
        truth, ops, total, c.seed, static_cast<uint64_t>(trial));

    // Per-atom log-likelihood table, one entry per (operation, outcome).
    std::vector<std::vector<std::vector<double>>> loglik(ops.size());
    for (size_t o = 0; o < ops.size(); ++o) {
        loglik[o].assign(static_cast<size_t>(povms[o].outcome_count()),
                         std::vector<double>(static_cast<size_t>(prior.size())));
        for (int k = 0; k < povms[o].outcome_count(); ++k) {
            for (int i = 0; i < prior.size(); ++i) {
                const double p = effect_probability(povms[o].effect(k), prior.state(i));
                loglik[o][static_cast<size_t>(k)][static_cast<size_t>(i)] =
                    p > 0.0 ? std::log(p) : -std::numeric_limits<double>::infinity();
            }
        }
    }

    std::vector<ResultRow> rows;
    for (long cp : effective_checkpoints(c, total)) {
        const auto counts = record.tally(outcome_counts, cp);
        std::vector<double> logw = prior.log_weights();
        for (size_t o = 0; o < ops.size(); ++o) {
            for (size_t k = 0; k < counts[o].size(); ++k) {
                const long n = counts[o][k];
                if (n == 0) continue;
                const auto& table = loglik[o][k];
                for (size_t i = 0; i < logw.size(); ++i) {
                    logw[i] += static_cast<double>(n) * table[i];
                }
            }
        }
        const Ensemble posterior = prior.reweighted(std::move(logw));
        const PosteriorMoments mom = posterior_moments(posterior);
        rows.push_back({trial, cp, "trace_distance_to_truth",
                        trace_distance(mom.mean_state, truth)});
        rows.push_back({trial, cp, "mean_bloch", bloch_to_json(mom.mean_bloch)});
        rows.push_back({trial, cp, "variance_bloch",
                        Json::array({mom.variances[0], mom.variances[1], mom.variances[2]})});
    }
    return rows;
}

std::vector<ResultRow> run_counts_trial(const ExperimentConfig& c, long trial) {
    std::vector<ResultRow> rows;
    Ensemble e = discretize_prior(require_prior(c));
    push_moment_rows(rows, trial, 0, e);
    apply_plan(c, std::move(e), trial, &rows);
    return rows;
}

// Runs one trial function over [0, trial_count) on `threads` workers;
// results come back in trial order regardless of scheduling.
template <typename Fn>
std::vector<ResultRow> run_trials(const ExperimentConfig& c, int threads, Fn&& fn) {
    const long trials = c.trial_count;
    std::vector<std::vector<ResultRow>> per_trial(static_cast<size_t>(trials));
    const int workers = std::max(1, std::min<int>(threads, static_cast<int>(trials)));
    if (workers == 1) {
        for (long t = 0; t < trials; ++t) per_trial[static_cast<size_t>(t)] = fn(t);
    } else {
        std::atomic<long> next{0};
        std::exception_ptr failure;
        std::mutex failure_mutex;
        auto worker = [&] {
            for (;;) {
                const long t = next.fetch_add(1);
                if (t >= trials) return;
                try {
                    per_trial[static_cast<size_t>(t)] = fn(t);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(failure_mutex);
                    if (!failure) failure = std::current_exception();
                    return;
                }
            }
        };
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
        for (std::thread& th : pool) th.join();
        if (failure) std::rethrow_exception(failure);
    }
    std::vector<ResultRow> rows;
    for (auto& trial_rows : per_trial) {
        rows.insert(rows.end(), std::make_move_iterator(trial_rows.begin()),
                    std::make_move_iterator(trial_rows.end()));
    }
    return rows;
}

}  // namespace

ExperimentConfig parse_config(const Json& j) {
    ExperimentConfig c;
    if (!j.is_object()) throw ConfigError("config: expected a JSON object");
    if (!j.contains("kind")) throw ConfigError("kind: required");
    c.kind = experiment_kind_from_name(j["kind"].get<std::string>());
    c.seed = j.value("seed", uint64_t{0});
    c.trial_count = j.value("trial_count", 1);
    if (c.trial_count < 1) throw ConfigError("trial_count: must be >= 1");
    if (j.contains("prior")) c.prior = prior_spec_from_json(j["prior"]);
    if (j.contains("plan")) {
        const Json& plan = j["plan"];
        if (!plan.is_array()) throw ConfigError("plan: expected an array");
        for (size_t s = 0; s < plan.size(); ++s) {
            c.plan.push_back(plan_entry_from_json(plan[s], "plan[" + std::to_string(s) + "]"));
        }
    }
    if (j.contains("true_state")) {
        const Json& ts = j["true_state"];
        if (ts.is_array()) {
            c.true_state = density_from_bloch(bloch_from_json(ts));
        } else if (ts.is_object()) {
            c.true_state = density_from_json(ts);
        } else {
            throw ConfigError("true_state: expected [x,y,z] or a matrix object");
        }
    }
    if (j.contains("future_axis")) c.future_axis = axis_from_json(j["future_axis"], "future_axis");
    c.predict_n = j.value("predict_n", 10);
    if (c.predict_n < 0) throw ConfigError("predict_n: must be >= 0");
    if (j.contains("oracle")) {
        const Json& o = j["oracle"];
        c.oracle.cases = o.value("cases", c.oracle.cases);
        c.oracle.max_atoms = o.value("max_atoms", c.oracle.max_atoms);
        c.oracle.max_subsystems = o.value("max_subsystems", c.oracle.max_subsystems);
        c.oracle.tolerance = o.value("tolerance", c.oracle.tolerance);
        c.oracle.entangled_cases = o.value("entangled_cases", c.oracle.entangled_cases);
        if (c.oracle.cases < 0) throw ConfigError("oracle.cases: must be >= 0");
    }
    if (j.contains("checkpoints")) {
        c.checkpoints = j["checkpoints"].get<std::vector<long>>();
        for (long cp : c.checkpoints) {
            if (cp < 1) throw ConfigError("checkpoints: entries must be >= 1");
        }
    }
    if (j.contains("povms")) {
        for (const auto& [name, def] : j["povms"].items()) {
            c.povms.emplace(name, povm_from_json(def));
        }
    }
    if (j.contains("output")) {
        const Json& o = j["output"];
        c.output.path = o.value("path", std::string{});
        c.output.format = o.value("format", std::string{"csv"});
        if (c.output.format != "csv" && c.output.format != "json") {
            throw ConfigError("output.format: must be 'csv' or 'json'");
        }
    }
    return c;
}

Json config_to_json(const ExperimentConfig& c) {
    Json j{{"kind", experiment_kind_name(c.kind)},
           {"seed", c.seed},
           {"trial_count", c.trial_count},
           {"predict_n", c.predict_n},
           {"future_axis", bloch_to_json(c.future_axis)},
           {"oracle",
            Json{{"cases", c.oracle.cases},
                 {"max_atoms", c.oracle.max_atoms},
                 {"max_subsystems", c.oracle.max_subsystems},
                 {"tolerance", c.oracle.tolerance},
                 {"entangled_cases", c.oracle.entangled_cases}}},
           {"output", Json{{"path", c.output.path}, {"format", c.output.format}}}};
    if (c.prior) j["prior"] = prior_spec_to_json(*c.prior);
    Json plan = Json::array();
    for (const PlanEntry& e : c.plan) plan.push_back(plan_entry_to_json(e));
    j["plan"] = std::move(plan);
    if (c.true_state) {
        if (c.true_state->dim() == 2) {
            j["true_state"] = bloch_to_json(bloch_from_density(*c.true_state));
        } else {
            j["true_state"] = density_to_json(*c.true_state);
        }
    }
    if (!c.checkpoints.empty()) j["checkpoints"] = c.checkpoints;
    if (!c.povms.empty()) {
        Json povms;
        for (const auto& [name, povm] : c.povms) povms[name] = povm_to_json(povm);
        j["povms"] = std::move(povms);
    }
    return j;
}

std::string config_hash(const ExperimentConfig& c) { return json_digest(config_to_json(c)); }

ExperimentResult run_experiment(const ExperimentConfig& config, int threads) {
    ExperimentResult result;
    const std::string hash = config_hash(config);
    result.summary["config_hash"] = hash;
    result.summary["seed"] = config.seed;
    result.summary["kind"] = experiment_kind_name(config.kind);

    switch (config.kind) {
        case ExperimentKind::QubitCounts: {
            result.rows = run_trials(config, threads,
                                     [&](long t) { return run_counts_trial(config, t); });
            break;
        }
        case ExperimentKind::Tomography: {
            result.rows = run_trials(config, threads,
                                     [&](long t) { return run_tomography_trial(config, t); });
            // Mean distance across trials per checkpoint.
            std::map<long, std::pair<double, long>> acc;
            for (const ResultRow& r : result.rows) {
                if (r.quantity != "trace_distance_to_truth") continue;
                auto& [sum, n] = acc[r.step];
                sum += r.value.get<double>();
                n += 1;
            }
            Json means;
            for (const auto& [cp, sum_n] : acc) {
                const double mean = sum_n.first / static_cast<double>(sum_n.second);
                result.rows.push_back({-1, cp, "mean_trace_distance_to_truth", mean});
                means[std::to_string(cp)] = mean;
            }
            result.summary["mean_trace_distance_to_truth"] = std::move(means);
            break;
        }
        case ExperimentKind::VerifyOracle: {
            const OracleParams& o = config.oracle;
            const std::vector<OracleCase> cases =
                run_oracle_cases(o.cases, o.max_atoms, o.max_subsystems, o.tolerance, config.seed);
            int passed = 0;
            for (const OracleCase& oc : cases) {
                const long t = oc.case_index;
                result.rows.push_back({t, 0, "oracle_pass", oc.report.pass ? 1 : 0});
                result.rows.push_back({t, 0, "p_k_bayes", oc.report.p_k_bayes});
                result.rows.push_back({t, 0, "p_k_brute", oc.report.p_k_brute});
                result.rows.push_back(
                    {t, 0, "posterior_trace_distance", oc.report.trace_distance_posterior});
                result.rows.push_back({t, 0, "probability_triple_spread", oc.triple_spread});
                passed += oc.report.pass ? 1 : 0;
            }
            int broken = 0;
            for (int i = 0; i < o.entangled_cases; ++i) {
                const OracleCase oc =
                    run_entangled_case(config.seed, static_cast<uint64_t>(i), o.tolerance);
                const long t = o.cases + i;
                result.rows.push_back({t, 0, "entangled_equivalence_pass", oc.report.pass ? 1 : 0});
                result.rows.push_back(
                    {t, 0, "posterior_trace_distance", oc.report.trace_distance_posterior});
                broken += oc.report.pass ? 0 : 1;
            }
            result.summary["standard_passed"] = passed;
            result.summary["standard_total"] = o.cases;
            result.summary["entangled_broken"] = broken;
            result.summary["entangled_total"] = o.entangled_cases;
            result.pass = passed == o.cases && broken == o.entangled_cases;
            break;
        }
        case ExperimentKind::MaxentCompare: {
            Ensemble posterior =
                apply_plan(config, discretize_prior(require_prior(config)), 0, nullptr);
            const BayesVsMaxentReport rep =
                bayes_vs_maxent_report(posterior, config.future_axis, config.predict_n);
            const PosteriorMoments mom = posterior_moments(posterior);
            result.rows.push_back({0, 0, "mean_bloch", bloch_to_json(mom.mean_bloch)});
            result.rows.push_back({0, 0, "marginal_trace_distance", rep.marginal_trace_distance});
            result.rows.push_back(
                {0, 0, "predictive_total_variation", rep.predictive_total_variation});
            result.rows.push_back({0, 0, "learning_shift_bayes", rep.learning_shift_bayes});
            result.rows.push_back({0, 0, "learning_shift_maxent", rep.learning_shift_maxent});
            result.rows.push_back(
                {0, 0, "predictive_bayes", rep.predictive_bayes.probabilities});
            result.rows.push_back(
                {0, 0, "predictive_maxent", rep.predictive_maxent.probabilities});
            result.summary["report"] = bayes_vs_maxent_to_json(rep);
            break;
        }
        case ExperimentKind::Predict: {
            Ensemble posterior =
                apply_plan(config, discretize_prior(require_prior(config)), 0, nullptr);
            const PredictiveDistribution dist =
                posterior_predictive_counts(posterior, config.future_axis, config.predict_n);
            for (size_t k = 0; k < dist.probabilities.size(); ++k) {
                result.rows.push_back(
                    {0, static_cast<long>(k), "p_nplus", dist.probabilities[k]});
            }
            result.summary["predictive"] = predictive_to_json(dist);
            break;
        }
    }

    std::stable_sort(result.rows.begin(), result.rows.end(),
                     [](const ResultRow& a, const ResultRow& b) {
                         return a.trial != b.trial ? a.trial < b.trial : a.step < b.step;
                     });
    // Provenance rows lead every output.
    result.rows.insert(result.rows.begin(),
                       {ResultRow{-1, -1, "config_hash", hash},
                        ResultRow{-1, -1, "seed", config.seed}});
    result.summary["pass"] = result.pass;
    return result;
}

namespace {

std::string csv_escape(const std::string& field) {
    const bool quote = field.find_first_of(",\"\n\r") != std::string::npos;
    if (!quote) return field;
    std::string out = "\"";
    for (char ch : field) {
        if (ch == '"') out += "\"\"";
        else out += ch;
    }
    out += '"';
    return out;
}

}  // namespace

std::string rows_to_csv(const std::vector<ResultRow>& rows) {
    std::ostringstream out;
    out << "trial,step,quantity,value\n";
    for (const ResultRow& r : rows) {
        out << r.trial << ',' << r.step << ',' << csv_escape(r.quantity) << ','
            << csv_escape(r.value.dump()) << '\n';
    }
    return out.str();
}

std::string rows_to_jsonl(const std::vector<ResultRow>& rows, const std::string& hash,
                          uint64_t seed) {
    std::ostringstream out;
    for (const ResultRow& r : rows) {
        out << Json{{"trial", r.trial},
                    {"step", r.step},
                    {"quantity", r.quantity},
                    {"value", r.value},
                    {"config_hash", hash},
                    {"seed", seed}}
                   .dump()
            << '\n';
    }
    return out.str();
}

std::vector<ResultRow> rows_from_csv(const std::string& csv) {
    // RFC 4180 state machine; fields may contain quoted commas/newlines.
    std::vector<std::vector<std::string>> records;
    std::vector<std::string> fields;
    std::string field;
    bool in_quotes = false;
    for (size_t i = 0; i < csv.size(); ++i) {
        const char ch = csv[i];
        if (in_quotes) {
            if (ch == '"') {
                if (i + 1 < csv.size() && csv[i + 1] == '"') {
                    field += '"';
                    ++i;
                } else {
                    in_quotes = false;
                }
            } else {
                field += ch;
            }
        } else if (ch == '"') {
            in_quotes = true;
        } else if (ch == ',') {
            fields.push_back(std::move(field));
            field.clear();
        } else if (ch == '\n') {
            fields.push_back(std::move(field));
            field.clear();
            records.push_back(std::move(fields));
            fields.clear();
        } else if (ch != '\r') {
            field += ch;
        }
    }
    if (!field.empty() || !fields.empty()) {
        fields.push_back(std::move(field));
        records.push_back(std::move(fields));
    }

    std::vector<ResultRow> rows;
    for (size_t i = 1; i < records.size(); ++i) {  // skip header
        const auto& rec = records[i];
        if (rec.size() != 4) {
            throw IoError("rows_from_csv: expected 4 fields, got " + std::to_string(rec.size()));
        }
        rows.push_back({std::stol(rec[0]), std::stol(rec[1]), rec[2], Json::parse(rec[3])});
    }
    return rows;
}

void emit_results(const std::vector<ResultRow>& rows, const std::string& format,
                  const std::string& path, const std::string& hash, uint64_t seed) {
    if (format != "csv" && format != "json") {
        throw InvalidArgumentError("emit_results: format must be 'csv' or 'json'");
    }
    const std::string body =
        format == "csv" ? rows_to_csv(rows) : rows_to_jsonl(rows, hash, seed);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("emit_results: cannot open '" + path + "' for writing");
    out << body;
    if (!out) throw IoError("emit_results: write to '" + path + "' failed");
}

std::string summary_path_for(const std::string& out_path) {
    const size_t slash = out_path.find_last_of('/');
    const size_t dot = out_path.find_last_of('.');
    if (dot == std::string::npos || (slash != std::string::npos && dot < slash)) {
        return out_path + ".summary.json";
    }
    return out_path.substr(0, dot) + ".summary.json";
}

void write_summary(const Json& summary, const std::string& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("write_summary: cannot open '" + path + "' for writing");
    out << summary.dump(2) << '\n';
    if (!out) throw IoError("write_summary: write to '" + path + "' failed");
}

ExperimentConfig default_verify_config() {
    ExperimentConfig c;
    c.kind = ExperimentKind::VerifyOracle;
    c.seed = 20260810;
    return c;
}

ExperimentConfig default_maxent_compare_config() {
    ExperimentConfig c;
    c.kind = ExperimentKind::MaxentCompare;
    c.seed = 11;
    PriorSpec prior;
    prior.kind = PriorKind::UniformBall;
    prior.atom_count = 10000;
    prior.seed = 11;
    c.prior = prior;
    PlanEntry entry;
    entry.is_axis = true;
    entry.axis = {0.0, 0.0, 1.0};
    entry.explicit_counts = true;
    entry.plus = 5000;
    entry.minus = 5000;
    c.plan.push_back(entry);
    c.future_axis = {1.0, 0.0, 0.0};
    c.predict_n = 10;
    return c;
}

ExperimentConfig default_predict_config() {
    ExperimentConfig c;
    c.kind = ExperimentKind::Predict;
    c.seed = 5;
    // A prior supported on the x = 0 slice of the Bloch ball: the sigma_x
    // predictive is then exactly binomial.
    PriorSpec prior;
    prior.kind = PriorKind::Atoms;
    for (const BlochVector& b : sample_bloch_uniform(400, 5)) {
        prior.atoms.emplace_back(1.0, density_from_bloch({0.0, b.y, b.z}));
    }
    prior.atom_count = static_cast<int>(prior.atoms.size());
    c.prior = prior;
    c.future_axis = {1.0, 0.0, 0.0};
    c.predict_n = 10;
    return c;
}

ExperimentConfig default_tomography_config() {
    ExperimentConfig c;
    c.kind = ExperimentKind::Tomography;
    c.seed = 20260810;
    c.trial_count = 100;
    PriorSpec prior;
    prior.kind = PriorKind::UniformBall;
    prior.atom_count = 20000;
    prior.seed = 3;
    c.prior = prior;
    c.true_state = density_from_bloch({0.3, -0.2, 0.4});
    PlanEntry entry;
    entry.is_axis = false;
    entry.povm_id = "sic";
    entry.shots = 30000;
    c.plan.push_back(entry);
    return c;
}

}  // namespace qbayes
