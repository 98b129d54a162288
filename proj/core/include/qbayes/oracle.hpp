#pragma once

#include <optional>

#include "qbayes/bayes.hpp"
#include "qbayes/rng.hpp"

namespace qbayes {

// Side-by-side comparison of the ensemble-level posterior against the
// explicit multi-subsystem computation.
struct EquivalenceReport {
    double p_k_bayes = 0.0;
    double p_k_brute = 0.0;
    double trace_distance_posterior = 0.0;
    std::vector<double> per_marginal_distances;  // one per remaining subsystem
    double tolerance = 0.0;
    bool pass = false;
};

struct BruteForcePosterior {
    DensityOperator state;  // on n_total - 1 subsystems
    double probability;
};

// Materializes the full n_total-copy state, applies the operation's Kraus
// operators on subsystem 0 (extended by identity), normalizes and traces
// out the measured subsystem. An optional unitary is applied to the full
// state first; an entangling choice breaks the ensemble-level equivalence.
BruteForcePosterior brute_force_posterior(const Ensemble& prior, int n_total,
                                          const QuantumOperation& op, int outcome,
                                          const std::optional<CMat>& pre_unitary = std::nullopt,
                                          Eigen::Index cap = kDefaultDimCap);

EquivalenceReport equivalence_report(const Ensemble& prior, int n_total,
                                     const QuantumOperation& op, int outcome,
                                     double tolerance = 1e-10,
                                     const std::optional<CMat>& pre_unitary = std::nullopt,
                                     Eigen::Index cap = kDefaultDimCap);

// p_k computed three ways: full trace of F_k on the expanded state, single
// trace against the prior marginal, and the ensemble average. All three
// must agree to ~1e-12.
std::array<double, 3> probability_triple_check(const Ensemble& prior, const QuantumOperation& op,
                                               int outcome, int n_total,
                                               Eigen::Index cap = kDefaultDimCap);

// Haar-distributed unitary (Ginibre + QR with phase fix).
CMat haar_random_unitary(int dim, Philox& rng);

// Two-outcome operation read off a Haar unitary on system (x) qubit
// ancilla; genuinely trace-decreasing and non-projective.
QuantumOperation random_kraus_operation(int dim, Philox& rng);

Ensemble random_qubit_ensemble(int max_atoms, Philox& rng);

struct OracleCase {
    int case_index = 0;
    int atom_count = 0;
    int n_total = 0;
    bool projective = false;
    int outcome = 0;
    EquivalenceReport report;
    std::array<double, 3> probability_triple{};
    double triple_spread = 0.0;  // max pairwise difference
};

// Seeded randomized equivalence cases (case i uses stream i of the seed).
std::vector<OracleCase> run_oracle_cases(int cases, int max_atoms, int max_subsystems,
                                         double tolerance, uint64_t seed);

// A seeded case with a Haar entangler across the measured/unmeasured cut;
// its report is expected to fail.
OracleCase run_entangled_case(uint64_t seed, uint64_t stream, double tolerance);

}  // namespace qbayes
