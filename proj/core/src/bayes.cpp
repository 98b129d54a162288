#include "qbayes/bayes.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace qbayes {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr long kPredictiveShotCap = 10000;

double safe_log(double p) { return p > 0.0 ? std::log(p) : kNegInf; }

// Spin-up probability (1 + axis.b)/2, clamped against roundoff at the
// poles.
double up_probability(const BlochVector& axis, const BlochVector& b) {
    return std::clamp(0.5 * (1.0 + axis.dot(b)), 0.0, 1.0);
}

void require_unit_axis(const BlochVector& axis, const char* what) {
    if (std::abs(axis.norm() - 1.0) > kBlochNormTol) {
        throw InvalidArgumentError(std::string(what) + ": axis norm " +
                                   std::to_string(axis.norm()) + " != 1");
    }
}

BayesUpdateResult update_with_likelihoods(const Ensemble& prior,
                                          const std::vector<double>& likelihoods) {
    std::vector<double> contributions(likelihoods.size());
    std::vector<double> logw(likelihoods.size());
    for (size_t i = 0; i < likelihoods.size(); ++i) {
        contributions[i] = prior.weight(static_cast<int>(i)) * likelihoods[i];
        logw[i] = prior.log_weights()[i] + safe_log(likelihoods[i]);
    }
    const double p_k = neumaier_sum(contributions);
    if (p_k < kImpossibleOutcomeTol) {
        throw ImpossibleOutcomeError("bayes_update: outcome has zero prior probability (p_k = " +
                                     std::to_string(p_k) + "); widen the prior");
    }
    return {prior.reweighted(std::move(logw)), p_k};
}

}  // namespace

BayesUpdateResult bayes_update(const Ensemble& prior, const Povm& p, int outcome) {
    if (p.dim() != prior.dim()) {
        throw DimensionError("bayes_update: POVM dim " + std::to_string(p.dim()) +
                             " vs ensemble dim " + std::to_string(prior.dim()));
    }
    if (outcome < 0 || outcome >= p.outcome_count()) {
        throw InvalidArgumentError("bayes_update: outcome " + std::to_string(outcome) +
                                   " out of range");
    }
    std::vector<double> lik(static_cast<size_t>(prior.size()));
    for (int i = 0; i < prior.size(); ++i) {
        lik[static_cast<size_t>(i)] = effect_probability(p.effect(outcome), prior.state(i));
    }
    return update_with_likelihoods(prior, lik);
}

BayesUpdateResult bayes_update_collective(const Ensemble& prior, const Povm& p, int copies,
                                          int outcome, Eigen::Index cap) {
    if (copies < 1) throw InvalidArgumentError("bayes_update_collective: copies must be >= 1");
    Eigen::Index expected = 1;
    for (int i = 0; i < copies; ++i) {
        if (expected > cap / prior.dim()) {
            throw CapacityError("bayes_update_collective: dim^" + std::to_string(copies) +
                                " exceeds cap");
        }
        expected *= prior.dim();
    }
    if (p.dim() != expected) {
        throw DimensionError("bayes_update_collective: POVM dim " + std::to_string(p.dim()) +
                             " != dim^copies " + std::to_string(expected));
    }
    if (outcome < 0 || outcome >= p.outcome_count()) {
        throw InvalidArgumentError("bayes_update_collective: outcome out of range");
    }
    std::vector<double> lik(static_cast<size_t>(prior.size()));
    for (int i = 0; i < prior.size(); ++i) {
        const DensityOperator power = tensor_power(prior.state(i), copies, cap);
        lik[static_cast<size_t>(i)] = effect_probability(p.effect(outcome), power);
    }
    return update_with_likelihoods(prior, lik);
}

CountsUpdateResult qubit_counts_update_with_evidence(const Ensemble& prior,
                                                     const BlochVector& axis, long n_plus,
                                                     long n_minus) {
    require_unit_axis(axis, "qubit_counts_update");
    if (prior.dim() != 2) {
        throw DimensionError("qubit_counts_update: ensemble must hold qubit atoms");
    }
    if (n_plus < 0 || n_minus < 0) {
        throw InvalidArgumentError("qubit_counts_update: negative counts");
    }
    std::vector<double> logw(static_cast<size_t>(prior.size()));
    for (int i = 0; i < prior.size(); ++i) {
        const double a = up_probability(axis, bloch_from_density(prior.state(i)));
        double ll = 0.0;
        if (n_plus > 0) ll += static_cast<double>(n_plus) * safe_log(a);
        if (n_minus > 0) ll += static_cast<double>(n_minus) * safe_log(1.0 - a);
        logw[static_cast<size_t>(i)] = prior.log_weights()[static_cast<size_t>(i)] + ll;
    }
    const double log_evidence = log_sum_exp(logw);
    if (!std::isfinite(log_evidence)) {
        throw ImpossibleOutcomeError(
            "qubit_counts_update: every atom assigns zero probability to the counts");
    }
    return {prior.reweighted(std::move(logw)), log_evidence};
}

Ensemble qubit_counts_update(const Ensemble& prior, const BlochVector& axis, long n_plus,
                             long n_minus) {
    return qubit_counts_update_with_evidence(prior, axis, n_plus, n_minus).posterior;
}

CountsUpdateResult povm_counts_update(const Ensemble& prior, const Povm& p,
                                      const std::vector<long>& counts) {
    if (p.dim() != prior.dim()) {
        throw DimensionError("povm_counts_update: POVM dim mismatch");
    }
    if (counts.size() != static_cast<size_t>(p.outcome_count())) {
        throw InvalidArgumentError("povm_counts_update: counts length != outcome count");
    }
    for (long c : counts) {
        if (c < 0) throw InvalidArgumentError("povm_counts_update: negative count");
    }
    std::vector<double> logw(static_cast<size_t>(prior.size()));
    for (int i = 0; i < prior.size(); ++i) {
        double ll = 0.0;
        for (int k = 0; k < p.outcome_count(); ++k) {
            const long c = counts[static_cast<size_t>(k)];
            if (c == 0) continue;
            ll += static_cast<double>(c) * safe_log(effect_probability(p.effect(k), prior.state(i)));
        }
        logw[static_cast<size_t>(i)] = prior.log_weights()[static_cast<size_t>(i)] + ll;
    }
    const double log_evidence = log_sum_exp(logw);
    if (!std::isfinite(log_evidence)) {
        throw ImpossibleOutcomeError(
            "povm_counts_update: every atom assigns zero probability to the counts");
    }
    return {prior.reweighted(std::move(logw)), log_evidence};
}

PosteriorMoments posterior_moments(const Ensemble& e) {
    if (e.dim() != 2) throw DimensionError("posterior_moments: qubit ensembles only");
    std::vector<double> xs(static_cast<size_t>(e.size()));
    std::vector<double> ys(xs.size()), zs(xs.size());
    for (int i = 0; i < e.size(); ++i) {
        const BlochVector b = bloch_from_density(e.state(i));
        const double w = e.weight(i);
        xs[static_cast<size_t>(i)] = w * b.x;
        ys[static_cast<size_t>(i)] = w * b.y;
        zs[static_cast<size_t>(i)] = w * b.z;
    }
    const BlochVector mean{neumaier_sum(xs), neumaier_sum(ys), neumaier_sum(zs)};
    std::array<double, 3> var{0.0, 0.0, 0.0};
    for (int i = 0; i < e.size(); ++i) {
        const BlochVector b = bloch_from_density(e.state(i));
        const double w = e.weight(i);
        var[0] += w * (b.x - mean.x) * (b.x - mean.x);
        var[1] += w * (b.y - mean.y) * (b.y - mean.y);
        var[2] += w * (b.z - mean.z) * (b.z - mean.z);
    }
    return {mean, density_from_bloch(mean), var};
}

PredictiveDistribution posterior_predictive_counts(const Ensemble& e, const BlochVector& axis,
                                                   int n) {
    require_unit_axis(axis, "posterior_predictive_counts");
    if (e.dim() != 2) throw DimensionError("posterior_predictive_counts: qubit ensembles only");
    if (n < 0) throw InvalidArgumentError("posterior_predictive_counts: n must be >= 0");
    if (n > kPredictiveShotCap) {
        throw InvalidArgumentError("posterior_predictive_counts: n exceeds cap " +
                                   std::to_string(kPredictiveShotCap));
    }
    std::vector<double> log_binom(static_cast<size_t>(n) + 1);
    for (int k = 0; k <= n; ++k) {
        log_binom[static_cast<size_t>(k)] =
            std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
    }
    PredictiveDistribution dist;
    dist.total_shots = n;
    dist.probabilities.assign(static_cast<size_t>(n) + 1, 0.0);
    for (int i = 0; i < e.size(); ++i) {
        const double w = e.weight(i);
        if (w == 0.0) continue;
        const double a = up_probability(axis, bloch_from_density(e.state(i)));
        if (a == 0.0) {
            dist.probabilities[0] += w;
            continue;
        }
        if (a == 1.0) {
            dist.probabilities[static_cast<size_t>(n)] += w;
            continue;
        }
        const double la = std::log(a), lb = std::log1p(-a);
        for (int k = 0; k <= n; ++k) {
            dist.probabilities[static_cast<size_t>(k)] +=
                w * std::exp(log_binom[static_cast<size_t>(k)] + k * la + (n - k) * lb);
        }
    }
    return dist;
}

std::vector<double> classical_bayes(const std::vector<double>& prior,
                                    const std::vector<double>& likelihood) {
    if (prior.size() != likelihood.size() || prior.empty()) {
        throw InvalidArgumentError("classical_bayes: size mismatch or empty input");
    }
    std::vector<double> products(prior.size());
    for (size_t i = 0; i < prior.size(); ++i) {
        if (!(prior[i] >= 0.0)) throw InvalidArgumentError("classical_bayes: negative prior");
        if (!(likelihood[i] >= 0.0)) {
            throw InvalidArgumentError("classical_bayes: negative likelihood");
        }
        products[i] = prior[i] * likelihood[i];
    }
    const double evidence = neumaier_sum(products);
    if (evidence < kImpossibleOutcomeTol) {
        throw ImpossibleOutcomeError("classical_bayes: zero evidence");
    }
    for (double& p : products) p /= evidence;
    return products;
}

double total_variation_distance(const PredictiveDistribution& a,
                                const PredictiveDistribution& b) {
    if (a.total_shots != b.total_shots) {
        throw InvalidArgumentError("total_variation_distance: shot counts differ");
    }
    double tv = 0.0;
    for (size_t i = 0; i < a.probabilities.size(); ++i) {
        tv += std::abs(a.probabilities[i] - b.probabilities[i]);
    }
    return 0.5 * tv;
}

}  // namespace qbayes
