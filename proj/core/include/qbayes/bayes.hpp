#pragma once

#include <array>

#include "qbayes/ensemble.hpp"

namespace qbayes {

struct BayesUpdateResult {
    Ensemble posterior;
    double probability;  // p_k = sum_i w_i tr(E_k rho_i)
};

// Posterior over counts of the +1 outcome in n future spin measurements.
struct PredictiveDistribution {
    int total_shots = 0;
    std::vector<double> probabilities;  // index = N_+, size total_shots + 1
};

struct PosteriorMoments {
    BlochVector mean_bloch;
    DensityOperator mean_state;
    std::array<double, 3> variances;  // per Bloch component
};

struct CountsUpdateResult {
    Ensemble posterior;
    double log_evidence;  // log of the joint probability of the whole batch
};

// Reweight by the outcome likelihoods tr(E_k rho_i): atom states are
// untouched, only weights move. Outcomes with zero prior probability throw
// ImpossibleOutcomeError — the discrete prior excludes the data and must
// be widened, not silently renormalized.
BayesUpdateResult bayes_update(const Ensemble& prior, const Povm& p, int outcome);

// Collective measurement on `copies` subsystems at once: likelihoods
// tr(E_k rho_i^{(x) copies}).
BayesUpdateResult bayes_update_collective(const Ensemble& prior, const Povm& p, int copies,
                                          int outcome, Eigen::Index cap = kDefaultDimCap);

// Batched spin-count posterior: weights gain a factor
// ((1+a)/2)^n_plus ((1-a)/2)^n_minus with a = axis.b_i, accumulated in log
// space in one pass. Equal to the corresponding iterated single-shot
// updates in any order.
Ensemble qubit_counts_update(const Ensemble& prior, const BlochVector& axis, long n_plus,
                             long n_minus);

// Same, returning the log joint probability of the count batch.
CountsUpdateResult qubit_counts_update_with_evidence(const Ensemble& prior,
                                                     const BlochVector& axis, long n_plus,
                                                     long n_minus);

// Batched update for repeated draws of an arbitrary POVM; counts[k] is the
// number of observed k outcomes.
CountsUpdateResult povm_counts_update(const Ensemble& prior, const Povm& p,
                                      const std::vector<long>& counts);

PosteriorMoments posterior_moments(const Ensemble& e);

// p(N_+) = sum_i w_i C(n, N_+) a_i^{N_+} (1-a_i)^{n-N_+},
// a_i = (1 + axis.b_i)/2. Binomial coefficients through log-gamma; n is
// capped at 10^4.
PredictiveDistribution posterior_predictive_counts(const Ensemble& e, const BlochVector& axis,
                                                   int n);

// posterior_i = likelihood_i prior_i / sum_j likelihood_j prior_j.
std::vector<double> classical_bayes(const std::vector<double>& prior,
                                    const std::vector<double>& likelihood);

// (1/2) sum |p_i - q_i| between two predictive distributions.
double total_variation_distance(const PredictiveDistribution& a, const PredictiveDistribution& b);

}  // namespace qbayes
