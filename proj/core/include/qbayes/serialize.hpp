#pragma once

#include <nlohmann/json.hpp>
#include <string>
#include <string_view>

#include "qbayes/maxent.hpp"
#include "qbayes/oracle.hpp"
#include "qbayes/prior.hpp"

namespace qbayes {

using Json = nlohmann::json;

// Matrices serialize as {"dim": d, "entries": [[re, im], ...]} with the
// entries row-major.
Json matrix_to_json(const CMat& m);
CMat matrix_from_json(const Json& j);

Json density_to_json(const DensityOperator& r);
DensityOperator density_from_json(const Json& j);

Json bloch_to_json(const BlochVector& b);
BlochVector bloch_from_json(const Json& j);

Json povm_to_json(const Povm& p);
Povm povm_from_json(const Json& j);

Json operation_to_json(const QuantumOperation& op);
QuantumOperation operation_from_json(const Json& j);

// {"dim": d, "atoms": [{"weight": w, "bloch": [x,y,z]}, ...]}; non-qubit
// atoms carry "matrix" instead of "bloch".
Json ensemble_to_json(const Ensemble& e);
Ensemble ensemble_from_json(const Json& j);

Json record_to_json(const MeasurementRecord& r);
MeasurementRecord record_from_json(const Json& j);
std::string record_to_csv(const MeasurementRecord& r);
MeasurementRecord record_from_csv(const std::string& csv);

Json prior_spec_to_json(const PriorSpec& spec);
PriorSpec prior_spec_from_json(const Json& j);

Json predictive_to_json(const PredictiveDistribution& d);
Json equivalence_report_to_json(const EquivalenceReport& r);
Json bayes_vs_maxent_to_json(const BayesVsMaxentReport& r);

// FNV-1a over the canonical (sorted-key) JSON dump; the provenance hash
// stamped into every output.
uint64_t fnv1a64(std::string_view bytes);
std::string json_digest(const Json& j);

}  // namespace qbayes
