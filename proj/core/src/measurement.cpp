#include "qbayes/measurement.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace qbayes {

Povm Povm::make(std::vector<CMat> effects, std::vector<std::string> labels) {
    if (effects.empty()) throw InvalidArgumentError("Povm: needs at least one effect");
    if (!labels.empty() && labels.size() != effects.size()) {
        throw InvalidArgumentError("Povm: label count does not match effect count");
    }
    const Eigen::Index d = effects.front().rows();
    CMat sum = CMat::Zero(d, d);
    for (size_t k = 0; k < effects.size(); ++k) {
        const CMat& e = effects[k];
        require_square_finite(e, "Povm effect");
        if (e.rows() != d) throw DimensionError("Povm: effects have mixed dimensions");
        if (!is_hermitian(e)) {
            throw InvalidStateError("Povm: effect " + std::to_string(k) + " is not Hermitian");
        }
        const double min_eig = hermitian_eigenvalues(e).minCoeff();
        if (min_eig < -kPsdTol) {
            throw InvalidStateError("Povm: effect " + std::to_string(k) +
                                    " has negative eigenvalue " + std::to_string(min_eig));
        }
        sum += e;
    }
    const double completeness = (sum - CMat::Identity(d, d)).cwiseAbs().maxCoeff();
    if (completeness > kCompletenessTol) {
        throw InvalidStateError("Povm: effects sum deviates from identity by " +
                                std::to_string(completeness));
    }
    return Povm(d, std::move(effects), std::move(labels));
}

QuantumOperation QuantumOperation::make(std::vector<std::vector<CMat>> kraus_by_outcome) {
    if (kraus_by_outcome.empty()) {
        throw InvalidArgumentError("QuantumOperation: needs at least one outcome");
    }
    if (kraus_by_outcome.front().empty()) {
        throw InvalidArgumentError("QuantumOperation: outcome 0 has no Kraus operators");
    }
    const Eigen::Index d = kraus_by_outcome.front().front().rows();
    CMat sum = CMat::Zero(d, d);
    for (size_t k = 0; k < kraus_by_outcome.size(); ++k) {
        if (kraus_by_outcome[k].empty()) {
            throw InvalidArgumentError("QuantumOperation: outcome " + std::to_string(k) +
                                       " has no Kraus operators");
        }
        for (const CMat& a : kraus_by_outcome[k]) {
            require_square_finite(a, "Kraus operator");
            if (a.rows() != d) throw DimensionError("QuantumOperation: mixed dimensions");
            sum += a.adjoint() * a;
        }
    }
    const double completeness = (sum - CMat::Identity(d, d)).cwiseAbs().maxCoeff();
    if (completeness > kCompletenessTol) {
        throw InvalidStateError("QuantumOperation: sum of A^dag A deviates from identity by " +
                                std::to_string(completeness));
    }
    return QuantumOperation(d, std::move(kraus_by_outcome));
}

Povm povm_from_operation(const QuantumOperation& op) {
    std::vector<CMat> effects;
    effects.reserve(static_cast<size_t>(op.outcome_count()));
    for (int k = 0; k < op.outcome_count(); ++k) {
        CMat e = CMat::Zero(op.dim(), op.dim());
        for (const CMat& a : op.kraus(k)) e += a.adjoint() * a;
        // Round off the anti-Hermitian noise from the products.
        effects.push_back(0.5 * (e + CMat(e.adjoint())));
    }
    return Povm::make(std::move(effects));
}

double effect_probability(const CMat& effect, const DensityOperator& r) {
    if (effect.rows() != r.dim()) {
        throw DimensionError("effect_probability: effect dim " + std::to_string(effect.rows()) +
                             " vs state dim " + std::to_string(r.dim()));
    }
    const double p = (effect * r.matrix()).trace().real();
    if (p < -kProbabilityTol || p > 1.0 + kProbabilityTol) {
        throw InvalidStateError("effect_probability: tr(E rho) = " + std::to_string(p) +
                                " outside [0,1]");
    }
    return std::clamp(p, 0.0, 1.0);
}

std::vector<double> outcome_probabilities(const DensityOperator& r, const Povm& p) {
    if (p.dim() != r.dim()) {
        throw DimensionError("outcome_probabilities: POVM dim " + std::to_string(p.dim()) +
                             " vs state dim " + std::to_string(r.dim()));
    }
    std::vector<double> probs(static_cast<size_t>(p.outcome_count()));
    for (int k = 0; k < p.outcome_count(); ++k) {
        probs[static_cast<size_t>(k)] = effect_probability(p.effect(k), r);
    }
    return probs;
}

std::pair<CMat, double> apply_operation(const DensityOperator& r, const QuantumOperation& op,
                                        int outcome) {
    if (op.dim() != r.dim()) {
        throw DimensionError("apply_operation: operation dim " + std::to_string(op.dim()) +
                             " vs state dim " + std::to_string(r.dim()));
    }
    if (outcome < 0 || outcome >= op.outcome_count()) {
        throw InvalidArgumentError("apply_operation: outcome " + std::to_string(outcome) +
                                   " out of range");
    }
    CMat f = CMat::Zero(r.dim(), r.dim());
    for (const CMat& a : op.kraus(outcome)) f += a * r.matrix() * a.adjoint();
    const double p = f.trace().real();
    if (p < kImpossibleOutcomeTol) {
        throw ImpossibleOutcomeError("apply_operation: outcome " + std::to_string(outcome) +
                                     " has probability " + std::to_string(p) +
                                     "; post-measurement state undefined");
    }
    return {std::move(f), p};
}

QuantumOperation projective_spin_povm(const BlochVector& axis) {
    if (std::abs(axis.norm() - 1.0) > kBlochNormTol) {
        throw InvalidArgumentError("projective_spin_povm: axis norm " +
                                   std::to_string(axis.norm()) + " != 1");
    }
    const CMat n_sigma = axis.x * pauli_x() + axis.y * pauli_y() + axis.z * pauli_z();
    CMat plus = 0.5 * (identity2() + n_sigma);
    CMat minus = 0.5 * (identity2() - n_sigma);
    return QuantumOperation::make({{std::move(plus)}, {std::move(minus)}});
}

Povm tetrahedral_sic_povm() {
    static const double s = 1.0 / std::sqrt(3.0);
    const BlochVector verts[4] = {{s, s, s}, {s, -s, -s}, {-s, s, -s}, {-s, -s, s}};
    std::vector<CMat> effects;
    effects.reserve(4);
    for (const BlochVector& n : verts) {
        effects.push_back(0.25 * (identity2() + n.x * pauli_x() + n.y * pauli_y() +
                                  n.z * pauli_z()));
    }
    return Povm::make(std::move(effects), {"+++", "+--", "-+-", "--+"});
}

QuantumOperation operation_from_povm(const Povm& p) {
    std::vector<std::vector<CMat>> outcomes;
    outcomes.reserve(static_cast<size_t>(p.outcome_count()));
    for (int k = 0; k < p.outcome_count(); ++k) {
        HermitianEig eig = hermitian_eig(p.effect(k));
        RVec root = eig.eigenvalues.cwiseMax(0.0).cwiseSqrt();
        CMat a = eig.eigenvectors * root.asDiagonal() * eig.eigenvectors.adjoint();
        outcomes.push_back({std::move(a)});
    }
    return QuantumOperation::make(std::move(outcomes));
}

}  // namespace qbayes
