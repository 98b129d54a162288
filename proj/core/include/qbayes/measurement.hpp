#pragma once

#include <string>
#include <utility>
#include <vector>

#include "qbayes/density.hpp"

namespace qbayes {

// Positive operator valued measure: effects E_k, each Hermitian and PSD,
// summing to the identity. Outcome order is the constructor's list order
// and is part of the public contract.
class Povm {
public:
    static Povm make(std::vector<CMat> effects, std::vector<std::string> labels = {});

    Eigen::Index dim() const { return dim_; }
    int outcome_count() const { return static_cast<int>(effects_.size()); }
    const CMat& effect(int k) const { return effects_.at(static_cast<size_t>(k)); }
    const std::vector<CMat>& effects() const { return effects_; }
    const std::vector<std::string>& labels() const { return labels_; }

private:
    Povm(Eigen::Index dim, std::vector<CMat> effects, std::vector<std::string> labels)
        : dim_(dim), effects_(std::move(effects)), labels_(std::move(labels)) {}

    Eigen::Index dim_;
    std::vector<CMat> effects_;
    std::vector<std::string> labels_;
};

// Generalized measurement in Kraus form: outcome k maps rho to
// F_k(rho) = sum_l A_kl rho A_kl^dag, trace-preserving over all outcomes.
class QuantumOperation {
public:
    static QuantumOperation make(std::vector<std::vector<CMat>> kraus_by_outcome);

    Eigen::Index dim() const { return dim_; }
    int outcome_count() const { return static_cast<int>(outcomes_.size()); }
    const std::vector<CMat>& kraus(int k) const { return outcomes_.at(static_cast<size_t>(k)); }
    const std::vector<std::vector<CMat>>& outcomes() const { return outcomes_; }

private:
    QuantumOperation(Eigen::Index dim, std::vector<std::vector<CMat>> outcomes)
        : dim_(dim), outcomes_(std::move(outcomes)) {}

    Eigen::Index dim_;
    std::vector<std::vector<CMat>> outcomes_;
};

// Induced POVM: E_k = sum_l A_kl^dag A_kl.
Povm povm_from_operation(const QuantumOperation& op);

// p_k = tr(E_k rho), clamped into [0,1]. Values outside [-1e-12, 1+1e-12]
// before clamping indicate a broken effect or state and throw.
std::vector<double> outcome_probabilities(const DensityOperator& r, const Povm& p);

// Single effect probability with the same tolerance-then-clamp policy.
double effect_probability(const CMat& effect, const DensityOperator& r);

// Unnormalized conditional state F_k(rho) and its trace p_k. Outcomes with
// p_k < 1e-15 have no defined post-measurement state and throw.
std::pair<CMat, double> apply_operation(const DensityOperator& r, const QuantumOperation& op,
                                        int outcome);

// Projective spin measurement along a unit axis: outcomes +1, -1 with
// projectors (1 +- n.sigma)/2.
QuantumOperation projective_spin_povm(const BlochVector& axis);

// Symmetric informationally complete qubit POVM: four effects
// (1 + n_j.sigma)/4 with n_j the vertices of a regular tetrahedron.
Povm tetrahedral_sic_povm();

// Kraus form with A_k = sqrt(E_k); implements any POVM as an operation.
QuantumOperation operation_from_povm(const Povm& p);

}  // namespace qbayes
