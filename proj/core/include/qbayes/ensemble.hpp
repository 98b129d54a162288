#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "qbayes/measurement.hpp"

namespace qbayes {

// Weighted atom set {(w_i, rho_i)} standing in for a measure on density
// operator space. Weights are kept both linearly and in log space; atoms
// are shared immutably between an ensemble and its posteriors, so updates
// reweight without copying states.
class Ensemble {
public:
    static Ensemble make(std::vector<DensityOperator> states, std::vector<double> weights);

    // Equal-weight convenience.
    static Ensemble uniform(std::vector<DensityOperator> states);

    // New ensemble sharing this one's atoms, with weights proportional to
    // exp(log_weights). Throws ImpossibleOutcomeError when every entry is
    // -inf (zero total mass).
    Ensemble reweighted(std::vector<double> log_weights) const;

    int size() const { return static_cast<int>(weights_.size()); }
    Eigen::Index dim() const { return dim_; }
    const std::vector<DensityOperator>& states() const { return *states_; }
    const DensityOperator& state(int i) const { return (*states_)[static_cast<size_t>(i)]; }
    double weight(int i) const { return weights_[static_cast<size_t>(i)]; }
    const std::vector<double>& weights() const { return weights_; }
    const std::vector<double>& log_weights() const { return log_weights_; }

private:
    Ensemble(Eigen::Index dim, std::shared_ptr<const std::vector<DensityOperator>> states,
             std::vector<double> weights, std::vector<double> log_weights)
        : dim_(dim),
          states_(std::move(states)),
          weights_(std::move(weights)),
          log_weights_(std::move(log_weights)) {}

    static Ensemble normalize(Eigen::Index dim,
                              std::shared_ptr<const std::vector<DensityOperator>> states,
                              const std::vector<double>& log_weights);

    Eigen::Index dim_;
    std::shared_ptr<const std::vector<DensityOperator>> states_;
    std::vector<double> weights_;
    std::vector<double> log_weights_;
};

// Ordered measurement outcomes; operation ids index the experiment's
// operation list.
struct MeasurementRecord {
    struct Entry {
        int operation_id;
        int outcome;
    };
    std::vector<Entry> entries;

    // counts[op_id][outcome] over the first `prefix` entries (all if < 0).
    std::vector<std::vector<long>> tally(const std::vector<int>& outcome_counts,
                                         long prefix = -1) const;
};

// sum_i w_i rho_i.
DensityOperator marginal_state(const Ensemble& e);

// sum_i w_i rho_i^{(x) n} as an explicit d^n-dimensional operator.
DensityOperator expand_to_copies(const Ensemble& e, int n, Eigen::Index cap = kDefaultDimCap);

// True iff the state is invariant (max-norm 1e-10) under every adjacent
// transposition of its equal-dimension subsystems; these generate the full
// permutation group.
bool is_permutation_invariant(const DensityOperator& r, int subsystem_dim);

// i.i.d. outcomes from a hidden true state; entry s uses ops[s % ops.size()].
MeasurementRecord sample_measurement_record(const DensityOperator& true_state,
                                            const std::vector<QuantumOperation>& ops, long shots,
                                            uint64_t seed, uint64_t stream = 0);

}  // namespace qbayes
