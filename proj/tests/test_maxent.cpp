#include <doctest.h>

#include <cmath>

#include "qbayes/maxent.hpp"
#include "qbayes/prior.hpp"
#include "qbayes/rng.hpp"

using namespace qbayes;

namespace {

// Embed a single-qubit observable at position `pos` of an n-qubit space.
CMat embed(const CMat& o, int pos, int n) {
    CMat out = pos == 0 ? o : CMat(CMat::Identity(2, 2));
    for (int i = 1; i < n; ++i) {
        out = tensor_product(out, i == pos ? o : CMat(CMat::Identity(2, 2)));
    }
    return out;
}

}  // namespace

TEST_CASE("unconstrained maximum is the maximally mixed state") {
    const MaxEntSolution sol = maxent_state({}, 2);
    CHECK(trace_distance(sol.state, density_from_bloch({0, 0, 0})) < 1e-12);
    CHECK(sol.entropy == doctest::Approx(std::log(2.0)).epsilon(1e-12));
    CHECK(sol.multipliers.empty());

    const MaxEntSolution qutrit = maxent_state({}, 3);
    CHECK(qutrit.entropy == doctest::Approx(std::log(3.0)).epsilon(1e-12));
}

TEST_CASE("single sigma_z constraint reproduces the closed form") {
    const ConstraintSet c{{pauli_z()}, {0.8}};
    const MaxEntSolution sol = maxent_state(c, 2);
    CHECK(trace_distance(sol.state, density_from_bloch({0, 0, 0.8})) < 1e-8);
    CHECK(std::abs(sol.residuals[0]) <= 1e-10);
}

TEST_CASE("two Pauli constraints give the Bloch state with those components") {
    const ConstraintSet c{{pauli_z(), pauli_x()}, {0.3, 0.4}};
    const MaxEntSolution sol = maxent_state(c, 2);
    CHECK(std::abs(sol.residuals[0]) <= 1e-10);
    CHECK(std::abs(sol.residuals[1]) <= 1e-10);
    CHECK(trace_distance(sol.state, density_from_bloch({0.4, 0, 0.3})) < 1e-8);

    // Entropy dominance over 1000 random feasible states, constructed by
    // projecting random Bloch points onto the constraint slice.
    Philox rng(55);
    const double s_star = sol.entropy;
    for (int i = 0; i < 1000; ++i) {
        double y = 2.0 * rng.next_double() - 1.0;
        const double cap = std::sqrt(std::max(0.0, 1.0 - 0.4 * 0.4 - 0.3 * 0.3));
        y = std::clamp(y, -cap, cap);
        const double s_feasible = von_neumann_entropy(density_from_bloch({0.4, y, 0.3}));
        CHECK(s_star >= s_feasible - 1e-8);
    }
}

TEST_CASE("closed form agrees with the solver across the interior") {
    for (double ez = -0.9; ez <= 0.9 + 1e-9; ez += 0.1) {
        const MaxEntSolution sol = maxent_state({{pauli_z()}, {ez}}, 2);
        CHECK(trace_distance(sol.state, maxent_qubit_z(ez)) < 1e-8);
    }
}

TEST_CASE("closed-form qubit boundary cases") {
    CHECK(trace_distance(maxent_qubit_z(0.0), density_from_bloch({0, 0, 0})) < 1e-14);
    const DensityOperator up = maxent_qubit_z(1.0);
    CHECK(up.matrix()(0, 0).real() == doctest::Approx(1.0));
    const DensityOperator half = maxent_qubit_z(0.5);
    CHECK(half.matrix()(0, 0).real() == doctest::Approx(0.75).epsilon(1e-14));
    CHECK(half.matrix()(1, 1).real() == doctest::Approx(0.25).epsilon(1e-14));
    CHECK_THROWS_AS(maxent_qubit_z(1.2), InvalidArgumentError);
}

TEST_CASE("boundary and infeasible targets are rejected by the solver") {
    CHECK_THROWS_AS(maxent_state({{pauli_z()}, {1.0}}, 2), NoInteriorSolutionError);
    CHECK_THROWS_AS(maxent_state({{pauli_z()}, {1.5}}, 2), NoInteriorSolutionError);
    // Jointly infeasible Pauli targets (norm > 1).
    CHECK_THROWS_AS(maxent_state({{pauli_x(), pauli_z()}, {0.9, 0.9}}, 2),
                    NoInteriorSolutionError);
}

TEST_CASE("observables must be Hermitian") {
    CMat bad(2, 2);
    bad << 0.0, 1.0, 0.0, 0.0;
    CHECK_THROWS_AS(maxent_state({{bad}, {0.1}}, 2), InvalidArgumentError);
}

TEST_CASE("identical per-subsystem constraints yield the product state") {
    const double ez = 0.45;
    const DensityOperator single = maxent_state({{pauli_z()}, {ez}}, 2).state;
    for (const int n : {2, 3}) {
        ConstraintSet c;
        for (int pos = 0; pos < n; ++pos) {
            c.observables.push_back(embed(pauli_z(), pos, n));
            c.targets.push_back(ez);
        }
        const MaxEntSolution sol = maxent_state(c, 1 << n, 1e-10);
        CHECK(trace_distance(sol.state, tensor_power(single, n)) < 1e-8);
    }
}

TEST_CASE("constraints on non-commuting observables still converge") {
    const ConstraintSet c{{pauli_x(), pauli_y(), pauli_z()}, {0.3, -0.2, 0.4}};
    const MaxEntSolution sol = maxent_state(c, 2, 1e-12);
    CHECK(trace_distance(sol.state, density_from_bloch({0.3, -0.2, 0.4})) < 1e-8);
    for (double r : sol.residuals) CHECK(std::abs(r) <= 1e-12);
}

TEST_CASE("damped Newton descends the dual monotonically") {
    for (const ConstraintSet& c :
         {ConstraintSet{{pauli_z()}, {0.85}},
          ConstraintSet{{pauli_x(), pauli_y(), pauli_z()}, {0.5, -0.4, 0.3}}}) {
        const MaxEntSolution sol = maxent_state(c, 2, 1e-11);
        REQUIRE(sol.dual_values.size() >= 2);
        for (size_t i = 1; i < sol.dual_values.size(); ++i) {
            CHECK(sol.dual_values[i] <= sol.dual_values[i - 1] + 1e-15);
        }
    }
}

TEST_CASE("report: schemes coincide on a single-atom posterior") {
    const Ensemble single = Ensemble::make({density_from_bloch({0.3, 0.0, 0.8})}, {1.0});
    const BayesVsMaxentReport rep = bayes_vs_maxent_report(single, {1, 0, 0}, 8);
    CHECK(rep.marginal_trace_distance < 1e-8);
    CHECK(rep.predictive_total_variation < 1e-8);
    CHECK(rep.learning_shift_bayes < 1e-12);
    CHECK(rep.learning_shift_maxent < 1e-12);
}

TEST_CASE("report: x-free priors make the x-predictive exactly binomial") {
    Philox rng(66);
    std::vector<DensityOperator> states;
    for (int i = 0; i < 60; ++i) {
        const double z = 2.0 * rng.next_double() - 1.0;
        const double y = (2.0 * rng.next_double() - 1.0) * std::sqrt(std::max(0.0, 1 - z * z));
        states.push_back(density_from_bloch({0.0, y, z}));
    }
    const BayesVsMaxentReport rep =
        bayes_vs_maxent_report(Ensemble::uniform(std::move(states)), {1, 0, 0}, 12);
    CHECK(rep.predictive_total_variation < 1e-10);
}

TEST_CASE("report: isotropic posterior diverges from the product prediction") {
    PriorSpec spec;
    spec.kind = PriorKind::UniformBall;
    spec.atom_count = 10000;
    spec.seed = 40;
    const Ensemble posterior =
        qubit_counts_update(discretize_prior(spec), {0, 0, 1}, 5000, 5000);
    const BayesVsMaxentReport rep = bayes_vs_maxent_report(posterior, {1, 0, 0}, 10);
    // Same marginal, sharply different multi-shot predictions, and only
    // the ensemble side reacts to one more data point.
    CHECK(rep.marginal_trace_distance < 0.02);
    CHECK(rep.predictive_total_variation > 0.1);
    CHECK(rep.learning_shift_maxent < 1e-12);
    CHECK(rep.learning_shift_bayes > 1e-6);
}
