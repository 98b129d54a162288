#include "qbayes/ensemble.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "qbayes/rng.hpp"

namespace qbayes {

Ensemble Ensemble::normalize(Eigen::Index dim,
                             std::shared_ptr<const std::vector<DensityOperator>> states,
                             const std::vector<double>& log_weights) {
    const double log_total = log_sum_exp(log_weights);
    if (!std::isfinite(log_total)) {
        throw ImpossibleOutcomeError("Ensemble: total weight is zero, no atom supports the data");
    }
    std::vector<double> logw(log_weights.size());
    std::vector<double> w(log_weights.size());
    for (size_t i = 0; i < log_weights.size(); ++i) {
        logw[i] = log_weights[i] - log_total;
        w[i] = std::exp(logw[i]);
    }
    // One compensated correction pass keeps sum(w) = 1 to ~1e-16 even for
    // 1e4-atom ensembles.
    const double resid = neumaier_sum(w);
    const double fix = std::log(resid);
    for (size_t i = 0; i < w.size(); ++i) {
        logw[i] -= fix;
        w[i] /= resid;
    }
    return Ensemble(dim, std::move(states), std::move(w), std::move(logw));
}

Ensemble Ensemble::make(std::vector<DensityOperator> states, std::vector<double> weights) {
    if (states.empty()) throw InvalidArgumentError("Ensemble: needs at least one atom");
    if (states.size() != weights.size()) {
        throw InvalidArgumentError("Ensemble: weight/state count mismatch");
    }
    const Eigen::Index d = states.front().dim();
    for (const DensityOperator& s : states) {
        if (s.dim() != d) throw DimensionError("Ensemble: atoms have mixed dimensions");
    }
    std::vector<double> logw(weights.size());
    for (size_t i = 0; i < weights.size(); ++i) {
        if (!(weights[i] >= 0.0)) {
            throw InvalidArgumentError("Ensemble: weight " + std::to_string(i) +
                                       " is negative or NaN");
        }
        logw[i] = weights[i] > 0.0 ? std::log(weights[i])
                                   : -std::numeric_limits<double>::infinity();
    }
    auto shared = std::make_shared<const std::vector<DensityOperator>>(std::move(states));
    return normalize(d, std::move(shared), logw);
}

Ensemble Ensemble::uniform(std::vector<DensityOperator> states) {
    std::vector<double> w(states.size(), 1.0 / static_cast<double>(states.size()));
    return make(std::move(states), std::move(w));
}

Ensemble Ensemble::reweighted(std::vector<double> log_weights) const {
    if (log_weights.size() != weights_.size()) {
        throw InvalidArgumentError("Ensemble::reweighted: weight count mismatch");
    }
    return normalize(dim_, states_, log_weights);
}

std::vector<std::vector<long>> MeasurementRecord::tally(const std::vector<int>& outcome_counts,
                                                        long prefix) const {
    std::vector<std::vector<long>> counts;
    counts.reserve(outcome_counts.size());
    for (int n : outcome_counts) counts.emplace_back(static_cast<size_t>(n), 0L);
    const long limit = prefix < 0 ? static_cast<long>(entries.size())
                                  : std::min<long>(prefix, static_cast<long>(entries.size()));
    for (long i = 0; i < limit; ++i) {
        const Entry& e = entries[static_cast<size_t>(i)];
        counts.at(static_cast<size_t>(e.operation_id)).at(static_cast<size_t>(e.outcome)) += 1;
    }
    return counts;
}

DensityOperator marginal_state(const Ensemble& e) {
    CMat acc = CMat::Zero(e.dim(), e.dim());
    for (int i = 0; i < e.size(); ++i) acc += e.weight(i) * e.state(i).matrix();
    return DensityOperator::from_matrix(std::move(acc));
}

DensityOperator expand_to_copies(const Ensemble& e, int n, Eigen::Index cap) {
    if (n < 1) throw InvalidArgumentError("expand_to_copies: n must be >= 1");
    Eigen::Index total = 1;
    for (int i = 0; i < n; ++i) {
        if (total > cap / e.dim()) {
            throw CapacityError("expand_to_copies: dim^" + std::to_string(n) + " exceeds cap " +
                                std::to_string(cap));
        }
        total *= e.dim();
    }
    CMat acc = CMat::Zero(total, total);
    for (int i = 0; i < e.size(); ++i) {
        if (e.weight(i) == 0.0) continue;
        acc += e.weight(i) * tensor_power(e.state(i).matrix(), n, cap);
    }
    return DensityOperator::from_matrix(std::move(acc));
}

bool is_permutation_invariant(const DensityOperator& r, int subsystem_dim) {
    if (subsystem_dim < 2) throw DimensionError("is_permutation_invariant: subsystem dim < 2");
    int n = 0;
    Eigen::Index total = 1;
    while (total < r.dim()) {
        total *= subsystem_dim;
        ++n;
    }
    if (total != r.dim()) {
        throw DimensionError("is_permutation_invariant: dim " + std::to_string(r.dim()) +
                             " is not a power of " + std::to_string(subsystem_dim));
    }
    if (n == 1) return true;
    for (int pos = 0; pos + 1 < n; ++pos) {
        const CMat s = adjacent_swap_operator(subsystem_dim, n, pos);
        const CMat diff = s * r.matrix() * s.adjoint() - r.matrix();
        if (diff.cwiseAbs().maxCoeff() > 1e-10) return false;
    }
    return true;
}

MeasurementRecord sample_measurement_record(const DensityOperator& true_state,
                                            const std::vector<QuantumOperation>& ops, long shots,
                                            uint64_t seed, uint64_t stream) {
    if (ops.empty()) throw InvalidArgumentError("sample_measurement_record: no operations");
    if (shots < 0) throw InvalidArgumentError("sample_measurement_record: negative shot count");
    std::vector<std::vector<double>> cumulative;
    cumulative.reserve(ops.size());
    for (const QuantumOperation& op : ops) {
        std::vector<double> probs = outcome_probabilities(true_state, povm_from_operation(op));
        double acc = 0.0;
        for (double& p : probs) {
            acc += p;
            p = acc;
        }
        cumulative.push_back(std::move(probs));
    }
    Philox rng(seed, stream);
    MeasurementRecord record;
    record.entries.reserve(static_cast<size_t>(shots));
    for (long s = 0; s < shots; ++s) {
        const int op_id = static_cast<int>(s % static_cast<long>(ops.size()));
        const std::vector<double>& cum = cumulative[static_cast<size_t>(op_id)];
        const double u = rng.next_double();
        int outcome = static_cast<int>(cum.size()) - 1;
        for (size_t k = 0; k < cum.size(); ++k) {
            if (u < cum[k]) {
                outcome = static_cast<int>(k);
                break;
            }
        }
        record.entries.push_back({op_id, outcome});
    }
    return record;
}

}  // namespace qbayes
