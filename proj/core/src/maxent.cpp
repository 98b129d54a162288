#include "qbayes/maxent.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace qbayes {

namespace {

constexpr int kMaxIterations = 200;
constexpr double kMultiplierCap = 1e6;

struct DualPoint {
    double value;        // g(l) = ln Z + l.e
    RVec expectations;   // <O_j>
    RVec eigenvalues;    // of H = sum l_j O_j, shifted
    CMat eigenvectors;
    RVec boltzmann;      // exp(-h'_m)/Z'
    double log_z;        // unshifted ln Z
};

DualPoint evaluate_dual(const ConstraintSet& c, const RVec& lambda, Eigen::Index dim) {
    CMat h = CMat::Zero(dim, dim);
    for (size_t j = 0; j < c.observables.size(); ++j) {
        h += lambda[static_cast<Eigen::Index>(j)] * c.observables[j];
    }
    HermitianEig eig = hermitian_eig(h);
    const double h0 = eig.eigenvalues.minCoeff();
    RVec w = (-(eig.eigenvalues.array() - h0)).exp();
    const double z_shifted = w.sum();
    w /= z_shifted;

    DualPoint pt;
    pt.log_z = std::log(z_shifted) - h0;
    pt.eigenvalues = eig.eigenvalues.array() - h0;
    pt.eigenvectors = std::move(eig.eigenvectors);
    pt.boltzmann = std::move(w);

    pt.expectations = RVec(static_cast<Eigen::Index>(c.observables.size()));
    double dot = 0.0;
    for (size_t j = 0; j < c.observables.size(); ++j) {
        const CMat tilde = pt.eigenvectors.adjoint() * c.observables[j] * pt.eigenvectors;
        double ev = 0.0;
        for (Eigen::Index m = 0; m < dim; ++m) ev += pt.boltzmann[m] * tilde(m, m).real();
        pt.expectations[static_cast<Eigen::Index>(j)] = ev;
        dot += lambda[static_cast<Eigen::Index>(j)] * c.targets[j];
    }
    pt.value = pt.log_z + dot;
    return pt;
}

// Kubo-Mori covariance: the exact Hessian of ln Z for non-commuting
// observables, assembled in the eigenbasis of H.
RMat dual_hessian(const ConstraintSet& c, const DualPoint& pt, Eigen::Index dim) {
    const size_t m_count = c.observables.size();
    std::vector<CMat> tilde;
    tilde.reserve(m_count);
    for (const CMat& o : c.observables) {
        tilde.push_back(pt.eigenvectors.adjoint() * o * pt.eigenvectors);
    }
    // phi(m, n) = (exp(-h_n) - exp(-h_m)) / (h_m - h_n) / Z', continuous at
    // coinciding eigenvalues.
    RMat phi(dim, dim);
    for (Eigen::Index m = 0; m < dim; ++m) {
        for (Eigen::Index n = 0; n < dim; ++n) {
            const double hm = pt.eigenvalues[m], hn = pt.eigenvalues[n];
            if (std::abs(hm - hn) < 1e-12) {
                phi(m, n) = pt.boltzmann[m];
            } else {
                phi(m, n) = (pt.boltzmann[n] - pt.boltzmann[m]) / (hm - hn);
            }
        }
    }
    RMat hess(static_cast<Eigen::Index>(m_count), static_cast<Eigen::Index>(m_count));
    for (size_t i = 0; i < m_count; ++i) {
        for (size_t j = i; j < m_count; ++j) {
            double acc = 0.0;
            for (Eigen::Index m = 0; m < dim; ++m)
                for (Eigen::Index n = 0; n < dim; ++n)
                    acc += (std::conj(tilde[i](m, n)) * tilde[j](m, n)).real() * phi(m, n);
            const double hij = acc - pt.expectations[static_cast<Eigen::Index>(i)] *
                                         pt.expectations[static_cast<Eigen::Index>(j)];
            hess(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = hij;
            hess(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)) = hij;
        }
    }
    return hess;
}

}  // namespace

MaxEntSolution maxent_state(const ConstraintSet& c, Eigen::Index dim, double tol) {
    if (dim < 1) throw InvalidArgumentError("maxent_state: dim must be >= 1");
    if (c.observables.size() != c.targets.size()) {
        throw InvalidArgumentError("maxent_state: observable/target count mismatch");
    }
    for (size_t j = 0; j < c.observables.size(); ++j) {
        require_square_finite(c.observables[j], "maxent observable");
        if (c.observables[j].rows() != dim) {
            throw DimensionError("maxent_state: observable dim mismatch");
        }
        if (!is_hermitian(c.observables[j])) {
            throw InvalidArgumentError("maxent_state: observable " + std::to_string(j) +
                                       " is not Hermitian");
        }
    }

    const Eigen::Index m = static_cast<Eigen::Index>(c.observables.size());
    RVec lambda = RVec::Zero(m);
    DualPoint pt = evaluate_dual(c, lambda, dim);
    std::vector<double> dual_values = {pt.value};
    int iter = 0;
    for (; iter < kMaxIterations; ++iter) {
        RVec grad(m);
        for (Eigen::Index j = 0; j < m; ++j) {
            grad[j] = c.targets[static_cast<size_t>(j)] - pt.expectations[j];
        }
        if (m == 0 || grad.cwiseAbs().maxCoeff() <= tol) break;

        RMat hess = dual_hessian(c, pt, dim);
        const double ridge = 1e-12 * std::max(1.0, hess.cwiseAbs().maxCoeff());
        RVec step;
        for (double mu = ridge;; mu *= 100.0) {
            Eigen::LDLT<RMat> ldlt(hess + mu * RMat::Identity(m, m));
            step = ldlt.solve(-grad);
            if (ldlt.info() == Eigen::Success && step.allFinite()) break;
            if (mu > 1e6) {
                throw NoInteriorSolutionError("maxent_state: singular dual Hessian");
            }
        }

        // Backtracking keeps the dual strictly decreasing.
        const double slope = grad.dot(step);
        double t = 1.0;
        DualPoint next = evaluate_dual(c, lambda + step, dim);
        int backtracks = 0;
        while (next.value > pt.value + 1e-4 * t * slope && backtracks < 60) {
            t *= 0.5;
            next = evaluate_dual(c, lambda + t * step, dim);
            ++backtracks;
        }
        lambda += t * step;
        pt = std::move(next);
        dual_values.push_back(pt.value);

        if (lambda.cwiseAbs().maxCoeff() > kMultiplierCap) {
            throw NoInteriorSolutionError(
                "maxent_state: multipliers diverged; targets are infeasible or on the boundary");
        }
    }

    if (m > 0) {
        RVec grad(m);
        for (Eigen::Index j = 0; j < m; ++j) {
            grad[j] = c.targets[static_cast<size_t>(j)] - pt.expectations[j];
        }
        if (grad.cwiseAbs().maxCoeff() > tol) {
            throw NoInteriorSolutionError(
                "maxent_state: no interior solution within iteration cap (residual " +
                std::to_string(grad.cwiseAbs().maxCoeff()) + ")");
        }
        // Targets on (or within tol of) the state-space boundary drive the
        // Gibbs state degenerate before the residual test can see it;
        // reject them rather than return a numerically rank-deficient
        // solution.
        if (pt.boltzmann.minCoeff() < tol) {
            throw NoInteriorSolutionError(
                "maxent_state: targets lie on the state-space boundary (min eigenvalue " +
                std::to_string(pt.boltzmann.minCoeff()) + "); use the closed form instead");
        }
    }

    CMat rho = pt.eigenvectors * pt.boltzmann.asDiagonal() * pt.eigenvectors.adjoint();
    rho = 0.5 * (rho + CMat(rho.adjoint()));
    MaxEntSolution sol{DensityOperator::from_matrix(std::move(rho)),
                       std::vector<double>(lambda.data(), lambda.data() + lambda.size()),
                       0.0,
                       {},
                       iter,
                       std::move(dual_values)};
    sol.entropy = von_neumann_entropy(sol.state);
    sol.residuals.resize(static_cast<size_t>(m));
    for (Eigen::Index j = 0; j < m; ++j) {
        sol.residuals[static_cast<size_t>(j)] =
            (c.observables[static_cast<size_t>(j)] * sol.state.matrix()).trace().real() -
            c.targets[static_cast<size_t>(j)];
    }
    return sol;
}

DensityOperator maxent_qubit_z(double e_z) {
    if (std::abs(e_z) > 1.0) {
        throw InvalidArgumentError("maxent_qubit_z: |e_z| = " + std::to_string(std::abs(e_z)) +
                                   " > 1");
    }
    return density_from_bloch({0.0, 0.0, e_z});
}

BayesVsMaxentReport bayes_vs_maxent_report(const Ensemble& posterior,
                                           const BlochVector& axis_future, int n) {
    const DensityOperator marginal_bayes = marginal_state(posterior);
    const BlochVector b = bloch_from_density(marginal_bayes);

    DensityOperator marginal_maxent = [&] {
        if (b.norm() < 1.0 - 1e-6) {
            ConstraintSet c{{pauli_x(), pauli_y(), pauli_z()}, {b.x, b.y, b.z}};
            return maxent_state(c, 2, 1e-12).state;
        }
        return density_from_bloch(b);  // boundary: closed form
    }();

    BayesVsMaxentReport rep{marginal_bayes,
                            marginal_maxent,
                            trace_distance(marginal_bayes, marginal_maxent),
                            posterior_predictive_counts(posterior, axis_future, n),
                            posterior_predictive_counts(Ensemble::uniform({marginal_maxent}),
                                                        axis_future, n),
                            0.0,
                            0.0,
                            0.0};
    rep.predictive_total_variation =
        total_variation_distance(rep.predictive_bayes, rep.predictive_maxent);

    // One more sigma_z shot (the likelier outcome, so it exists for both).
    const Povm sz = povm_from_operation(projective_spin_povm({0.0, 0.0, 1.0}));
    const std::vector<double> pz = outcome_probabilities(marginal_bayes, sz);
    const int outcome = pz[0] >= pz[1] ? 0 : 1;
    rep.learning_shift_bayes = trace_distance(
        marginal_bayes, marginal_state(bayes_update(posterior, sz, outcome).posterior));
    rep.learning_shift_maxent = trace_distance(
        marginal_maxent,
        marginal_state(bayes_update(Ensemble::uniform({marginal_maxent}), sz, outcome).posterior));
    return rep;
}

}  // namespace qbayes
