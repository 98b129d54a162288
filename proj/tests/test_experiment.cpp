#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "qbayes/experiment.hpp"

using namespace qbayes;

namespace {

Json base_counts_config() {
    return Json{
        {"kind", "qubit-counts"},
        {"seed", 7},
        {"prior", {{"kind", "uniform-ball"}, {"atom_count", 2000}, {"seed", 40}}},
        {"plan", Json::array({Json{{"axis", "z"}, {"plus", 750}, {"minus", 250}}})},
    };
}

const ResultRow* find_row(const std::vector<ResultRow>& rows, long trial, long step,
                          const std::string& quantity) {
    for (const ResultRow& r : rows) {
        if (r.trial == trial && r.step == step && r.quantity == quantity) return &r;
    }
    return nullptr;
}

}  // namespace

TEST_CASE("config parsing and field-level validation") {
    CHECK_NOTHROW(parse_config(base_counts_config()));

    Json missing_kind = base_counts_config();
    missing_kind.erase("kind");
    CHECK_THROWS_AS(parse_config(missing_kind), ConfigError);

    Json bad_axis = base_counts_config();
    bad_axis["plan"][0]["axis"] = "w";
    CHECK_THROWS_AS(parse_config(bad_axis), ConfigError);

    Json both_counts_and_shots = base_counts_config();
    both_counts_and_shots["plan"][0]["shots"] = 5;
    CHECK_THROWS_AS(parse_config(both_counts_and_shots), ConfigError);

    Json neither = base_counts_config();
    neither["plan"][0].erase("plus");
    neither["plan"][0].erase("minus");
    CHECK_THROWS_AS(parse_config(neither), ConfigError);

    Json bad_trials = base_counts_config();
    bad_trials["trial_count"] = 0;
    CHECK_THROWS_AS(parse_config(bad_trials), ConfigError);

    Json bad_format = base_counts_config();
    bad_format["output"] = {{"path", "x.csv"}, {"format", "xml"}};
    CHECK_THROWS_AS(parse_config(bad_format), ConfigError);
}

TEST_CASE("unresolved POVM ids fail at run time with a clear message") {
    Json cfg = base_counts_config();
    cfg["plan"] = Json::array({Json{{"povm", "nonsense"}, {"shots", 5}}});
    cfg["true_state"] = Json::array({0.0, 0.0, 0.5});
    const ExperimentConfig c = parse_config(cfg);
    CHECK_THROWS_WITH_AS(run_experiment(c), doctest::Contains("does not resolve"), ConfigError);
}

TEST_CASE("custom POVM definitions resolve") {
    Json cfg = base_counts_config();
    const Povm sic = tetrahedral_sic_povm();
    cfg["povms"] = Json{{"mine", povm_to_json(sic)}};
    cfg["plan"] = Json::array({Json{{"povm", "mine"}, {"shots", 50}}});
    cfg["true_state"] = Json::array({0.0, 0.0, 0.5});
    CHECK_NOTHROW(run_experiment(parse_config(cfg)));
}

TEST_CASE("config hash changes with every field") {
    const ExperimentConfig base = parse_config(base_counts_config());
    const std::string h0 = config_hash(base);

    Json j = base_counts_config();
    j["seed"] = 8;
    CHECK(config_hash(parse_config(j)) != h0);

    j = base_counts_config();
    j["prior"]["atom_count"] = 2001;
    CHECK(config_hash(parse_config(j)) != h0);

    j = base_counts_config();
    j["plan"][0]["plus"] = 751;
    CHECK(config_hash(parse_config(j)) != h0);

    j = base_counts_config();
    j["trial_count"] = 2;
    CHECK(config_hash(parse_config(j)) != h0);

    // And it is stable.
    CHECK(config_hash(parse_config(base_counts_config())) == h0);
}

TEST_CASE("qubit-counts runs are deterministic and carry provenance") {
    const ExperimentConfig c = parse_config(base_counts_config());
    const ExperimentResult a = run_experiment(c);
    const ExperimentResult b = run_experiment(c);
    CHECK(rows_to_csv(a.rows) == rows_to_csv(b.rows));
    CHECK(a.summary.dump() == b.summary.dump());

    const ResultRow* hash_row = find_row(a.rows, -1, -1, "config_hash");
    REQUIRE(hash_row != nullptr);
    CHECK(hash_row->value.get<std::string>() == config_hash(c));
    CHECK(find_row(a.rows, -1, -1, "seed") != nullptr);

    // Step 0 is the prior, step 1 the posterior after the batch.
    const ResultRow* prior_mean = find_row(a.rows, 0, 0, "mean_bloch");
    REQUIRE(prior_mean != nullptr);
    const ResultRow* post_mean = find_row(a.rows, 0, 1, "mean_bloch");
    REQUIRE(post_mean != nullptr);
    CHECK(std::abs(post_mean->value[2].get<double>() - 0.5) < 0.05);
    CHECK(find_row(a.rows, 0, 1, "log_evidence") != nullptr);
    CHECK(find_row(a.rows, 0, 1, "entropy_mean_state") != nullptr);
}

TEST_CASE("simulated counts reproduce the truth with enough shots") {
    Json cfg = base_counts_config();
    cfg["plan"] = Json::array({Json{{"axis", "z"}, {"shots", 4000}}});
    cfg["true_state"] = Json::array({0.0, 0.0, 0.6});
    const ExperimentResult res = run_experiment(parse_config(cfg));
    const ResultRow* mean = find_row(res.rows, 0, 1, "mean_bloch");
    REQUIRE(mean != nullptr);
    CHECK(std::abs(mean->value[2].get<double>() - 0.6) < 0.06);
}

TEST_CASE("evidence telescopes to the brute-force record probability") {
    // Sequential p_k products from the ensemble rule equal the one-shot
    // probability of the whole record computed on the (M+1)-copy state
    // with an explicit tensor-product effect, for M <= 4.
    PriorSpec spec;
    spec.kind = PriorKind::UniformBall;
    spec.atom_count = 12;
    spec.seed = 3;
    const Ensemble prior = discretize_prior(spec);
    const Povm sz = povm_from_operation(projective_spin_povm({0, 0, 1}));

    const std::vector<int> record = {0, 1, 0, 0};  // M = 4 outcomes
    double log_evidence = 0.0;
    Ensemble e = prior;
    for (int k : record) {
        const auto [post, p] = bayes_update(e, sz, k);
        log_evidence += std::log(p);
        e = post;
    }

    const DensityOperator big = expand_to_copies(prior, 5);
    CMat effect = sz.effect(record[0]);
    for (size_t i = 1; i < record.size(); ++i) {
        effect = tensor_product(effect, sz.effect(record[static_cast<size_t>(i)]));
    }
    effect = tensor_product(effect, CMat::Identity(2, 2));
    const double brute = (effect * big.matrix()).trace().real();
    CHECK(std::abs(std::exp(log_evidence) - brute) < 1e-10);

    // The batched update reports the same joint evidence.
    const CountsUpdateResult batched =
        qubit_counts_update_with_evidence(prior, {0, 0, 1}, 3, 1);
    CHECK(batched.log_evidence == doctest::Approx(log_evidence).epsilon(1e-12));
}

TEST_CASE("csv emission: header, quoting, and parse-back") {
    CHECK(rows_to_csv({}) == "trial,step,quantity,value\n");

    std::vector<ResultRow> rows;
    rows.push_back({0, 0, "scalar", 0.125});
    rows.push_back({0, 1, "vector", Json::array({1.5, -2.25, 0.75})});
    rows.push_back({1, 0, "text", "needs,quoting \"here\""});
    const std::string csv = rows_to_csv(rows);
    CHECK(csv.substr(0, 25) == "trial,step,quantity,value");

    const std::vector<ResultRow> back = rows_from_csv(csv);
    REQUIRE(back.size() == rows.size());
    for (size_t i = 0; i < rows.size(); ++i) {
        CHECK(back[i].trial == rows[i].trial);
        CHECK(back[i].step == rows[i].step);
        CHECK(back[i].quantity == rows[i].quantity);
        CHECK(back[i].value == rows[i].value);
    }
}

TEST_CASE("emit_results writes byte-stable files") {
    std::vector<ResultRow> rows;
    rows.push_back({0, 0, "value", 1.0 / 3.0});
    const std::string path = "/tmp/qbayes_emit_test.csv";
    emit_results(rows, "csv", path, "abc", 1);
    std::ifstream in(path);
    std::stringstream buf;
    buf << in.rdbuf();
    CHECK(buf.str() == rows_to_csv(rows));
    std::remove(path.c_str());

    CHECK_THROWS_AS(emit_results(rows, "csv", "/nonexistent-dir/x.csv", "abc", 1), IoError);
    CHECK(summary_path_for("out/results.csv") == "out/results.summary.json");
    CHECK(summary_path_for("results") == "results.summary.json");
}

TEST_CASE("jsonl rows carry provenance") {
    std::vector<ResultRow> rows;
    rows.push_back({0, 0, "x", 1});
    const std::string line = rows_to_jsonl(rows, "deadbeef", 42);
    const Json parsed = Json::parse(line);
    CHECK(parsed["config_hash"] == "deadbeef");
    CHECK(parsed["seed"] == 42);
    CHECK(parsed["quantity"] == "x");
}

TEST_CASE("verify experiment reports oracle results") {
    ExperimentConfig c = default_verify_config();
    c.oracle.cases = 12;
    c.oracle.entangled_cases = 2;
    const ExperimentResult res = run_experiment(c);
    CHECK(res.pass);
    CHECK(res.summary["standard_passed"] == 12);
    CHECK(res.summary["entangled_broken"] == 2);
    int pass_rows = 0, entangled_rows = 0;
    for (const ResultRow& r : res.rows) {
        if (r.quantity == "oracle_pass") {
            ++pass_rows;
            CHECK(r.value.get<int>() == 1);
        }
        if (r.quantity == "entangled_equivalence_pass") {
            ++entangled_rows;
            CHECK(r.value.get<int>() == 0);
        }
    }
    CHECK(pass_rows == 12);
    CHECK(entangled_rows == 2);
}

TEST_CASE("tomography: sigma_z data alone never fixes x or y") {
    // Mixed true state, so the z = E_z slice of the ball keeps a finite
    // x-y disk: z pins down while x and y keep their prior conditional
    // spread (disk variance (1 - z^2)/4 ~ 0.19).
    Json cfg{{"kind", "tomography"},
             {"seed", 5},
             {"trial_count", 1},
             {"prior", {{"kind", "uniform-ball"}, {"atom_count", 3000}, {"seed", 9}}},
             {"true_state", Json::array({0.4, 0.0, 0.5})},
             {"plan", Json::array({Json{{"axis", "z"}, {"shots", 2000}}})}};
    const ExperimentResult res = run_experiment(parse_config(cfg));

    const ResultRow* last_var = find_row(res.rows, 0, 2000, "variance_bloch");
    REQUIRE(last_var != nullptr);
    CHECK(last_var->value[2].get<double>() < 1e-3);
    CHECK(last_var->value[0].get<double>() > 0.05);
    CHECK(last_var->value[1].get<double>() > 0.05);
    // The x component of the truth stays invisible: distance to truth
    // stalls far above the SIC runs below.
    const ResultRow* dist = find_row(res.rows, 0, 2000, "trace_distance_to_truth");
    REQUIRE(dist != nullptr);
    CHECK(dist->value.get<double>() > 0.1);

    // At a pure pole the z counts do concentrate the z marginal.
    Json pole = cfg;
    pole["true_state"] = Json::array({0.0, 0.0, 1.0});
    const ExperimentResult pole_res = run_experiment(parse_config(pole));
    const ResultRow* pole_mean = find_row(pole_res.rows, 0, 2000, "mean_bloch");
    REQUIRE(pole_mean != nullptr);
    CHECK(pole_mean->value[2].get<double>() > 0.9);
}

TEST_CASE("tomography with the SIC POVM concentrates on the truth") {
    Json cfg{{"kind", "tomography"},
             {"seed", 6},
             {"trial_count", 4},
             {"prior", {{"kind", "uniform-ball"}, {"atom_count", 4000}, {"seed", 10}}},
             {"true_state", Json::array({0.3, -0.2, 0.4})},
             {"plan", Json::array({Json{{"povm", "sic"}, {"shots", 3000}}})}};
    const ExperimentResult res = run_experiment(parse_config(cfg), 2);

    const ResultRow* mean_final = find_row(res.rows, -1, 3000, "mean_trace_distance_to_truth");
    REQUIRE(mean_final != nullptr);
    CHECK(mean_final->value.get<double>() < 0.08);
    const ResultRow* mean_early = find_row(res.rows, -1, 10, "mean_trace_distance_to_truth");
    REQUIRE(mean_early != nullptr);
    CHECK(mean_early->value.get<double>() > mean_final->value.get<double>());

    // Threaded and single-threaded runs emit identical bytes.
    const ExperimentResult serial = run_experiment(parse_config(cfg), 1);
    CHECK(rows_to_csv(serial.rows) == rows_to_csv(res.rows));
}

TEST_CASE("xyz cycle plans are tomographically complete") {
    Json cfg{{"kind", "tomography"},
             {"seed", 16},
             {"trial_count", 2},
             {"prior", {{"kind", "uniform-ball"}, {"atom_count", 3000}, {"seed", 12}}},
             {"true_state", Json::array({0.3, -0.2, 0.4})},
             {"plan", Json::array({Json{{"axis", "x"}, {"shots", 1000}},
                                   Json{{"axis", "y"}, {"shots", 1000}},
                                   Json{{"axis", "z"}, {"shots", 1000}}})}};
    const ExperimentResult res = run_experiment(parse_config(cfg));
    const ResultRow* mean_final = find_row(res.rows, -1, 3000, "mean_trace_distance_to_truth");
    REQUIRE(mean_final != nullptr);
    CHECK(mean_final->value.get<double>() < 0.1);
}

TEST_CASE("predict emits the binomial table for x-free priors") {
    const ExperimentConfig c = default_predict_config();
    const ExperimentResult res = run_experiment(c);
    double binom[11];
    double total = 0;
    for (int k = 0; k <= 10; ++k) {
        double c_nk = 1;
        for (int i = 0; i < k; ++i) c_nk = c_nk * (10 - i) / (i + 1);
        binom[k] = c_nk * std::pow(2.0, -10);
        total += binom[k];
    }
    CHECK(total == doctest::Approx(1.0));
    for (int k = 0; k <= 10; ++k) {
        const ResultRow* row = find_row(res.rows, 0, k, "p_nplus");
        REQUIRE(row != nullptr);
        CHECK(std::abs(row->value.get<double>() - binom[k]) < 1e-10);
    }
}

TEST_CASE("maxent-compare default reproduces the headline contrast") {
    const ExperimentResult res = run_experiment(default_maxent_compare_config());
    const ResultRow* tv = find_row(res.rows, 0, 0, "predictive_total_variation");
    REQUIRE(tv != nullptr);
    CHECK(tv->value.get<double>() > 0.1);
    const ResultRow* md = find_row(res.rows, 0, 0, "marginal_trace_distance");
    REQUIRE(md != nullptr);
    CHECK(md->value.get<double>() < 0.02);
    const ResultRow* shift = find_row(res.rows, 0, 0, "learning_shift_maxent");
    REQUIRE(shift != nullptr);
    CHECK(shift->value.get<double>() == 0.0);
}

TEST_CASE("prior is mandatory where inference happens") {
    Json cfg = base_counts_config();
    cfg.erase("prior");
    CHECK_THROWS_WITH_AS(run_experiment(parse_config(cfg)),
                         doctest::Contains("no default prior"), ConfigError);
}

TEST_CASE("serialization round trips") {
    PriorSpec spec;
    spec.kind = PriorKind::Bures;
    spec.atom_count = 50;
    spec.seed = 19;
    const Ensemble e = discretize_prior(spec);
    const Ensemble back = ensemble_from_json(ensemble_to_json(e));
    CHECK(back.size() == e.size());
    double worst = 0;
    for (int i = 0; i < e.size(); ++i) {
        worst = std::max(worst, trace_distance(back.state(i), e.state(i)));
        worst = std::max(worst, std::abs(back.weight(i) - e.weight(i)));
    }
    CHECK(worst < 1e-12);

    const Povm sic = tetrahedral_sic_povm();
    const Povm sic_back = povm_from_json(povm_to_json(sic));
    CHECK((sic_back.effect(2) - sic.effect(2)).cwiseAbs().maxCoeff() < 1e-15);
    CHECK(sic_back.labels() == sic.labels());

    const QuantumOperation op = operation_from_povm(tetrahedral_sic_povm());
    const QuantumOperation op_back = operation_from_json(operation_to_json(op));
    CHECK((op_back.kraus(1)[0] - op.kraus(1)[0]).cwiseAbs().maxCoeff() < 1e-15);

    const EquivalenceReport rep{0.5, 0.5 + 1e-12, 2e-11, {1e-11, 2e-11}, 1e-10, true};
    const Json rep_json = equivalence_report_to_json(rep);
    CHECK(rep_json["pass"] == true);
    CHECK(rep_json["p_k_bayes"] == 0.5);
    CHECK(rep_json["per_marginal_distances"].size() == 2);

    MeasurementRecord rec;
    rec.entries = {{0, 1}, {1, 0}, {0, 3}};
    const MeasurementRecord rec_json = record_from_json(record_to_json(rec));
    const MeasurementRecord rec_csv = record_from_csv(record_to_csv(rec));
    for (size_t i = 0; i < rec.entries.size(); ++i) {
        CHECK(rec_json.entries[i].outcome == rec.entries[i].outcome);
        CHECK(rec_csv.entries[i].operation_id == rec.entries[i].operation_id);
    }
}
