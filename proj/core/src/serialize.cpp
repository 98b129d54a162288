#include "qbayes/serialize.hpp"

#include <sstream>

namespace qbayes {

namespace {

const Json& require_field(const Json& j, const char* key, const char* what) {
    auto it = j.find(key);
    if (it == j.end()) {
        throw ConfigError(std::string(what) + ": missing field '" + key + "'");
    }
    return *it;
}

}  // namespace

Json matrix_to_json(const CMat& m) {
    Json entries = Json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j)
            entries.push_back(Json::array({m(i, j).real(), m(i, j).imag()}));
    return Json{{"dim", m.rows()}, {"entries", std::move(entries)}};
}

CMat matrix_from_json(const Json& j) {
    const Eigen::Index d = require_field(j, "dim", "matrix").get<Eigen::Index>();
    const Json& entries = require_field(j, "entries", "matrix");
    if (d < 1 || !entries.is_array() ||
        entries.size() != static_cast<size_t>(d) * static_cast<size_t>(d)) {
        throw ConfigError("matrix: entries must hold dim*dim [re, im] pairs");
    }
    CMat m(d, d);
    size_t idx = 0;
    for (Eigen::Index i = 0; i < d; ++i)
        for (Eigen::Index jj = 0; jj < d; ++jj) {
            const Json& pair = entries[idx++];
            if (!pair.is_array() || pair.size() != 2) {
                throw ConfigError("matrix: each entry must be an [re, im] pair");
            }
            m(i, jj) = cdouble(pair[0].get<double>(), pair[1].get<double>());
        }
    return m;
}

Json density_to_json(const DensityOperator& r) { return matrix_to_json(r.matrix()); }

DensityOperator density_from_json(const Json& j) {
    return DensityOperator::from_matrix(matrix_from_json(j));
}

Json bloch_to_json(const BlochVector& b) { return Json::array({b.x, b.y, b.z}); }

BlochVector bloch_from_json(const Json& j) {
    if (!j.is_array() || j.size() != 3) {
        throw ConfigError("bloch vector: expected [x, y, z]");
    }
    return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

Json povm_to_json(const Povm& p) {
    Json effects = Json::array();
    for (const CMat& e : p.effects()) effects.push_back(matrix_to_json(e));
    Json out{{"dim", p.dim()}, {"effects", std::move(effects)}};
    if (!p.labels().empty()) out["labels"] = p.labels();
    return out;
}

Povm povm_from_json(const Json& j) {
    const Json& effects = require_field(j, "effects", "povm");
    std::vector<CMat> mats;
    for (const Json& e : effects) mats.push_back(matrix_from_json(e));
    std::vector<std::string> labels;
    if (j.contains("labels")) labels = j["labels"].get<std::vector<std::string>>();
    return Povm::make(std::move(mats), std::move(labels));
}

Json operation_to_json(const QuantumOperation& op) {
    Json outcomes = Json::array();
    for (int k = 0; k < op.outcome_count(); ++k) {
        Json kraus = Json::array();
        for (const CMat& a : op.kraus(k)) kraus.push_back(matrix_to_json(a));
        outcomes.push_back(std::move(kraus));
    }
    return Json{{"dim", op.dim()}, {"outcomes", std::move(outcomes)}};
}

QuantumOperation operation_from_json(const Json& j) {
    const Json& outcomes = require_field(j, "outcomes", "operation");
    std::vector<std::vector<CMat>> kraus;
    for (const Json& outcome : outcomes) {
        std::vector<CMat> ops;
        for (const Json& a : outcome) ops.push_back(matrix_from_json(a));
        kraus.push_back(std::move(ops));
    }
    return QuantumOperation::make(std::move(kraus));
}

Json ensemble_to_json(const Ensemble& e) {
    Json atoms = Json::array();
    for (int i = 0; i < e.size(); ++i) {
        Json atom{{"weight", e.weight(i)}};
        if (e.dim() == 2) {
            atom["bloch"] = bloch_to_json(bloch_from_density(e.state(i)));
        } else {
            atom["matrix"] = density_to_json(e.state(i));
        }
        atoms.push_back(std::move(atom));
    }
    return Json{{"dim", e.dim()}, {"atoms", std::move(atoms)}};
}

Ensemble ensemble_from_json(const Json& j) {
    const Json& atoms = require_field(j, "atoms", "ensemble");
    std::vector<DensityOperator> states;
    std::vector<double> weights;
    for (const Json& atom : atoms) {
        weights.push_back(require_field(atom, "weight", "ensemble atom").get<double>());
        if (atom.contains("bloch")) {
            states.push_back(density_from_bloch(bloch_from_json(atom["bloch"])));
        } else if (atom.contains("matrix")) {
            states.push_back(density_from_json(atom["matrix"]));
        } else {
            throw ConfigError("ensemble atom: needs 'bloch' or 'matrix'");
        }
    }
    return Ensemble::make(std::move(states), std::move(weights));
}

Json record_to_json(const MeasurementRecord& r) {
    Json out = Json::array();
    for (size_t i = 0; i < r.entries.size(); ++i) {
        out.push_back(Json{{"step", i},
                           {"operation_id", r.entries[i].operation_id},
                           {"outcome", r.entries[i].outcome}});
    }
    return out;
}

MeasurementRecord record_from_json(const Json& j) {
    MeasurementRecord r;
    for (const Json& e : j) {
        r.entries.push_back({require_field(e, "operation_id", "record entry").get<int>(),
                             require_field(e, "outcome", "record entry").get<int>()});
    }
    return r;
}

std::string record_to_csv(const MeasurementRecord& r) {
    std::ostringstream out;
    out << "step,operation_id,outcome\n";
    for (size_t i = 0; i < r.entries.size(); ++i) {
        out << i << ',' << r.entries[i].operation_id << ',' << r.entries[i].outcome << '\n';
    }
    return out.str();
}

MeasurementRecord record_from_csv(const std::string& csv) {
    MeasurementRecord r;
    std::istringstream in(csv);
    std::string line;
    bool header = true;
    while (std::getline(in, line)) {
        if (header) {
            header = false;
            continue;
        }
        if (line.empty()) continue;
        std::istringstream fields(line);
        std::string step, op, outcome;
        if (!std::getline(fields, step, ',') || !std::getline(fields, op, ',') ||
            !std::getline(fields, outcome, ',')) {
            throw IoError("measurement record CSV: malformed line '" + line + "'");
        }
        r.entries.push_back({std::stoi(op), std::stoi(outcome)});
    }
    return r;
}

namespace {

const char* prior_kind_name(PriorKind k) {
    switch (k) {
        case PriorKind::UniformBall: return "uniform-ball";
        case PriorKind::PureHaar: return "pure-haar";
        case PriorKind::Bures: return "bures";
        case PriorKind::IsotropicRadial: return "isotropic-radial";
        case PriorKind::Atoms: return "atoms";
    }
    throw InvalidArgumentError("unknown prior kind");
}

PriorKind prior_kind_from_name(const std::string& name) {
    if (name == "uniform-ball") return PriorKind::UniformBall;
    if (name == "pure-haar") return PriorKind::PureHaar;
    if (name == "bures") return PriorKind::Bures;
    if (name == "isotropic-radial") return PriorKind::IsotropicRadial;
    if (name == "atoms") return PriorKind::Atoms;
    throw ConfigError("prior.kind: unknown kind '" + name + "'");
}

}  // namespace

Json prior_spec_to_json(const PriorSpec& spec) {
    Json out{{"kind", prior_kind_name(spec.kind)},
             {"atom_count", spec.atom_count},
             {"seed", spec.seed}};
    if (spec.kind == PriorKind::IsotropicRadial) out["radial_density"] = spec.radial_density;
    if (spec.kind == PriorKind::Atoms) {
        Json atoms = Json::array();
        for (const auto& [w, s] : spec.atoms) {
            Json atom{{"weight", w}};
            if (s.dim() == 2) {
                atom["bloch"] = bloch_to_json(bloch_from_density(s));
            } else {
                atom["matrix"] = density_to_json(s);
            }
            atoms.push_back(std::move(atom));
        }
        out["atoms"] = std::move(atoms);
    }
    return out;
}

PriorSpec prior_spec_from_json(const Json& j) {
    PriorSpec spec;
    spec.kind = prior_kind_from_name(require_field(j, "kind", "prior").get<std::string>());
    if (j.contains("atom_count")) spec.atom_count = j["atom_count"].get<int>();
    if (j.contains("seed")) spec.seed = j["seed"].get<uint64_t>();
    if (spec.kind == PriorKind::IsotropicRadial) {
        spec.radial_density =
            require_field(j, "radial_density", "prior").get<std::vector<double>>();
    }
    if (spec.kind == PriorKind::Atoms) {
        const Json& atoms = require_field(j, "atoms", "prior");
        for (const Json& atom : atoms) {
            const double w = require_field(atom, "weight", "prior atom").get<double>();
            if (atom.contains("bloch")) {
                spec.atoms.emplace_back(w, density_from_bloch(bloch_from_json(atom["bloch"])));
            } else if (atom.contains("matrix")) {
                spec.atoms.emplace_back(w, density_from_json(atom["matrix"]));
            } else {
                throw ConfigError("prior atom: needs 'bloch' or 'matrix'");
            }
        }
        spec.atom_count = static_cast<int>(spec.atoms.size());
    }
    return spec;
}

Json predictive_to_json(const PredictiveDistribution& d) {
    return Json{{"total_shots", d.total_shots}, {"probabilities", d.probabilities}};
}

Json equivalence_report_to_json(const EquivalenceReport& r) {
    return Json{{"p_k_bayes", r.p_k_bayes},
                {"p_k_brute", r.p_k_brute},
                {"trace_distance_posterior", r.trace_distance_posterior},
                {"per_marginal_distances", r.per_marginal_distances},
                {"tolerance", r.tolerance},
                {"pass", r.pass}};
}

Json bayes_vs_maxent_to_json(const BayesVsMaxentReport& r) {
    return Json{{"marginal_bayes", density_to_json(r.marginal_bayes)},
                {"marginal_maxent", density_to_json(r.marginal_maxent)},
                {"marginal_trace_distance", r.marginal_trace_distance},
                {"predictive_bayes", predictive_to_json(r.predictive_bayes)},
                {"predictive_maxent", predictive_to_json(r.predictive_maxent)},
                {"predictive_total_variation", r.predictive_total_variation},
                {"learning_shift_bayes", r.learning_shift_bayes},
                {"learning_shift_maxent", r.learning_shift_maxent}};
}

uint64_t fnv1a64(std::string_view bytes) {
    uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

std::string json_digest(const Json& j) {
    const uint64_t h = fnv1a64(j.dump());
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return std::string(buf);
}

}  // namespace qbayes
