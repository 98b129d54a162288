#pragma once

#include "qbayes/bayes.hpp"

namespace qbayes {

// Expectation-value constraints tr(rho O_j) = e_j.
struct ConstraintSet {
    std::vector<CMat> observables;
    std::vector<double> targets;
};

struct MaxEntSolution {
    DensityOperator state;             // exp(-sum_j l_j O_j)/Z
    std::vector<double> multipliers;   // l_j
    double entropy = 0.0;              // nats
    std::vector<double> residuals;     // tr(rho O_j) - e_j
    int iterations = 0;
    std::vector<double> dual_values;   // g(l) per iterate, non-increasing
};

// Maximizes von Neumann entropy subject to the constraints, by damped
// Newton descent on the convex dual g(l) = ln Z(l) + l.e. Targets must be
// strictly feasible; boundary or infeasible targets drive the multipliers
// to infinity and raise NoInteriorSolutionError (detected at |l| > 1e6 or
// 200 iterations).
MaxEntSolution maxent_state(const ConstraintSet& c, Eigen::Index dim, double tol = 1e-10);

// Closed-form qubit solution for <sigma_z> = e_z, valid on the closed
// interval |e_z| <= 1 (the iterative solver rejects the boundary).
DensityOperator maxent_qubit_z(double e_z);

// The Bayes-vs-MAXENT contrast for a qubit posterior: identical
// single-subsystem marginals, diverging multi-subsystem predictions, and
// the product state's inability to learn.
struct BayesVsMaxentReport {
    DensityOperator marginal_bayes;
    DensityOperator marginal_maxent;
    double marginal_trace_distance = 0.0;
    PredictiveDistribution predictive_bayes;
    PredictiveDistribution predictive_maxent;  // binomial from the product state
    double predictive_total_variation = 0.0;
    // Trace distance each scheme's marginal moves under one further
    // sigma_z update; the product-state side is pinned at zero.
    double learning_shift_bayes = 0.0;
    double learning_shift_maxent = 0.0;
};

// The MAXENT side is given every single-subsystem expectation the data
// could pin down (all three Pauli components of the posterior marginal) —
// the most generous reading — and still diverges beyond one subsystem.
BayesVsMaxentReport bayes_vs_maxent_report(const Ensemble& posterior,
                                           const BlochVector& axis_future, int n);

}  // namespace qbayes
