#include "qbayes/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace qbayes {

namespace {

Eigen::Index pow_dim(Eigen::Index d, int n, Eigen::Index cap, const char* what) {
    Eigen::Index total = 1;
    for (int i = 0; i < n; ++i) {
        if (total > cap / d) {
            throw CapacityError(std::string(what) + ": dim^" + std::to_string(n) +
                                " exceeds cap " + std::to_string(cap));
        }
        total *= d;
    }
    return total;
}

}  // namespace

BruteForcePosterior brute_force_posterior(const Ensemble& prior, int n_total,
                                          const QuantumOperation& op, int outcome,
                                          const std::optional<CMat>& pre_unitary,
                                          Eigen::Index cap) {
    if (n_total < 2) {
        throw InvalidArgumentError("brute_force_posterior: need at least 2 subsystems");
    }
    if (op.dim() != prior.dim()) {
        throw DimensionError("brute_force_posterior: operation dim mismatch");
    }
    if (outcome < 0 || outcome >= op.outcome_count()) {
        throw InvalidArgumentError("brute_force_posterior: outcome out of range");
    }
    const Eigen::Index d = prior.dim();
    const Eigen::Index total = pow_dim(d, n_total, cap, "brute_force_posterior");

    CMat full = expand_to_copies(prior, n_total, cap).matrix();
    if (pre_unitary) {
        if (pre_unitary->rows() != total || pre_unitary->cols() != total) {
            throw DimensionError("brute_force_posterior: pre-unitary dim mismatch");
        }
        full = (*pre_unitary) * full * pre_unitary->adjoint();
    }

    const CMat rest = CMat::Identity(total / d, total / d);
    CMat conditioned = CMat::Zero(total, total);
    for (const CMat& a : op.kraus(outcome)) {
        const CMat extended = tensor_product(a, rest, cap);
        conditioned += extended * full * extended.adjoint();
    }
    const double p = conditioned.trace().real();
    if (p < kImpossibleOutcomeTol) {
        throw ImpossibleOutcomeError("brute_force_posterior: outcome probability " +
                                     std::to_string(p) + " is numerically zero");
    }
    conditioned /= p;

    std::vector<int> dims(static_cast<size_t>(n_total), static_cast<int>(d));
    std::vector<int> keep;
    for (int i = 1; i < n_total; ++i) keep.push_back(i);
    CMat reduced = partial_trace(conditioned, dims, keep);
    // Symmetrize away the ~1e-16 anti-Hermitian noise from the Kraus
    // sandwich before validating.
    reduced = 0.5 * (reduced + CMat(reduced.adjoint()));
    return {DensityOperator::from_matrix(std::move(reduced)), p};
}

EquivalenceReport equivalence_report(const Ensemble& prior, int n_total,
                                     const QuantumOperation& op, int outcome, double tolerance,
                                     const std::optional<CMat>& pre_unitary, Eigen::Index cap) {
    BruteForcePosterior brute = brute_force_posterior(prior, n_total, op, outcome, pre_unitary, cap);
    BayesUpdateResult bayes = bayes_update(prior, povm_from_operation(op), outcome);
    DensityOperator expanded = expand_to_copies(bayes.posterior, n_total - 1, cap);

    EquivalenceReport report;
    report.p_k_bayes = bayes.probability;
    report.p_k_brute = brute.probability;
    report.tolerance = tolerance;
    report.trace_distance_posterior = trace_distance(expanded, brute.state);

    std::vector<int> dims(static_cast<size_t>(n_total - 1), static_cast<int>(prior.dim()));
    for (int s = 0; s + 1 < n_total; ++s) {
        if (n_total == 2) {
            report.per_marginal_distances.push_back(report.trace_distance_posterior);
            break;
        }
        const DensityOperator mb = partial_trace(brute.state, dims, {s});
        const DensityOperator me = partial_trace(expanded, dims, {s});
        report.per_marginal_distances.push_back(trace_distance(mb, me));
    }

    bool pass = std::abs(report.p_k_bayes - report.p_k_brute) <= tolerance &&
                report.trace_distance_posterior <= tolerance;
    for (double m : report.per_marginal_distances) pass = pass && m <= tolerance;
    report.pass = pass;
    return report;
}

std::array<double, 3> probability_triple_check(const Ensemble& prior, const QuantumOperation& op,
                                               int outcome, int n_total, Eigen::Index cap) {
    if (n_total < 2) {
        throw InvalidArgumentError("probability_triple_check: need at least 2 subsystems");
    }
    const Eigen::Index d = prior.dim();
    const Eigen::Index total = pow_dim(d, n_total, cap, "probability_triple_check");

    // (2): full trace of the operation applied to the expanded state.
    const CMat full = expand_to_copies(prior, n_total, cap).matrix();
    const CMat rest = CMat::Identity(total / d, total / d);
    double p_full = 0.0;
    for (const CMat& a : op.kraus(outcome)) {
        const CMat extended = tensor_product(a, rest, cap);
        p_full += (extended * full * extended.adjoint()).trace().real();
    }

    // (4): single-subsystem trace against the prior marginal.
    const Povm povm = povm_from_operation(op);
    const double p_marginal = effect_probability(povm.effect(outcome), marginal_state(prior));

    // (13): ensemble average of per-atom probabilities.
    std::vector<double> contributions(static_cast<size_t>(prior.size()));
    for (int i = 0; i < prior.size(); ++i) {
        contributions[static_cast<size_t>(i)] =
            prior.weight(i) * effect_probability(povm.effect(outcome), prior.state(i));
    }
    const double p_ensemble = neumaier_sum(contributions);

    return {p_full, p_marginal, p_ensemble};
}

CMat haar_random_unitary(int dim, Philox& rng) {
    if (dim < 1) throw InvalidArgumentError("haar_random_unitary: dim must be >= 1");
    CMat g(dim, dim);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) g(i, j) = cdouble(rng.next_gaussian(), rng.next_gaussian());
    Eigen::HouseholderQR<CMat> qr(g);
    CMat q = qr.householderQ();
    CMat r = qr.matrixQR().triangularView<Eigen::Upper>();
    // Fix the phase gauge so the distribution is exactly Haar.
    for (int i = 0; i < dim; ++i) {
        const cdouble rii = r(i, i);
        const double mag = std::abs(rii);
        q.col(i) *= mag > 0.0 ? rii / mag : cdouble(1.0, 0.0);
    }
    return q;
}

QuantumOperation random_kraus_operation(int dim, Philox& rng) {
    const CMat u = haar_random_unitary(2 * dim, rng);
    // A_k = (1 (x) <k|) U (1 (x) |0>) with system-major index layout.
    std::vector<std::vector<CMat>> outcomes;
    for (int k = 0; k < 2; ++k) {
        CMat a(dim, dim);
        for (int i = 0; i < dim; ++i)
            for (int j = 0; j < dim; ++j) a(i, j) = u(2 * i + k, 2 * j);
        outcomes.push_back({std::move(a)});
    }
    return QuantumOperation::make(std::move(outcomes));
}

Ensemble random_qubit_ensemble(int max_atoms, Philox& rng) {
    if (max_atoms < 1) throw InvalidArgumentError("random_qubit_ensemble: max_atoms must be >= 1");
    const int atoms = 1 + static_cast<int>(rng.next_below(static_cast<uint64_t>(max_atoms)));
    std::vector<DensityOperator> states;
    std::vector<double> weights;
    for (int i = 0; i < atoms; ++i) {
        const double r = std::cbrt(rng.next_double());
        const double z = 2.0 * rng.next_double() - 1.0;
        const double phi = 2.0 * M_PI * rng.next_double();
        const double s = std::sqrt(std::max(0.0, 1.0 - z * z));
        states.push_back(density_from_bloch({r * s * std::cos(phi), r * s * std::sin(phi), r * z}));
        weights.push_back(-std::log(rng.next_open_double()));  // Dirichlet(1,...,1)
    }
    return Ensemble::make(std::move(states), std::move(weights));
}

std::vector<OracleCase> run_oracle_cases(int cases, int max_atoms, int max_subsystems,
                                         double tolerance, uint64_t seed) {
    if (max_subsystems < 2) {
        throw InvalidArgumentError("run_oracle_cases: max_subsystems must be >= 2");
    }
    std::vector<OracleCase> results;
    results.reserve(static_cast<size_t>(cases));
    for (int c = 0; c < cases; ++c) {
        Philox rng(seed, static_cast<uint64_t>(c));
        OracleCase oc;
        oc.case_index = c;
        Ensemble prior = random_qubit_ensemble(max_atoms, rng);
        oc.atom_count = prior.size();
        oc.n_total = 2 + static_cast<int>(rng.next_below(static_cast<uint64_t>(max_subsystems - 1)));
        oc.projective = rng.next_double() < 0.5;

        QuantumOperation op = [&] {
            if (oc.projective) {
                const double z = 2.0 * rng.next_double() - 1.0;
                const double phi = 2.0 * M_PI * rng.next_double();
                const double s = std::sqrt(std::max(0.0, 1.0 - z * z));
                return projective_spin_povm({s * std::cos(phi), s * std::sin(phi), z});
            }
            return random_kraus_operation(2, rng);
        }();

        // Draw the outcome from its actual distribution; fall back to the
        // likelier one when the draw lands on a numerically dead branch.
        const std::vector<double> probs =
            outcome_probabilities(marginal_state(prior), povm_from_operation(op));
        const double u = rng.next_double();
        oc.outcome = u < probs[0] ? 0 : 1;
        if (probs[static_cast<size_t>(oc.outcome)] < 1e-9) oc.outcome = 1 - oc.outcome;

        oc.report = equivalence_report(prior, oc.n_total, op, oc.outcome, tolerance);
        oc.probability_triple = probability_triple_check(prior, op, oc.outcome, oc.n_total);
        const auto [mn, mx] = std::minmax_element(oc.probability_triple.begin(),
                                                  oc.probability_triple.end());
        oc.triple_spread = *mx - *mn;
        results.push_back(std::move(oc));
    }
    return results;
}

OracleCase run_entangled_case(uint64_t seed, uint64_t stream, double tolerance) {
    Philox rng(seed, derive_seed(0xE27A9Cull, stream));
    Ensemble prior = random_qubit_ensemble(3, rng);
    const int n_total = 3;

    // Haar entangler across subsystems (0,1); subsystem 2 untouched.
    const CMat u2 = haar_random_unitary(4, rng);
    const CMat u = tensor_product(u2, CMat::Identity(2, 2));

    const double z = 2.0 * rng.next_double() - 1.0;
    const double phi = 2.0 * M_PI * rng.next_double();
    const double s = std::sqrt(std::max(0.0, 1.0 - z * z));
    QuantumOperation op = projective_spin_povm({s * std::cos(phi), s * std::sin(phi), z});

    OracleCase oc;
    oc.case_index = -1;
    oc.atom_count = prior.size();
    oc.n_total = n_total;
    oc.projective = true;
    oc.outcome = 0;
    oc.report = equivalence_report(prior, n_total, op, 0, tolerance, u);
    oc.probability_triple = {0.0, 0.0, 0.0};
    oc.triple_spread = 0.0;
    return oc;
}

}  // namespace qbayes
