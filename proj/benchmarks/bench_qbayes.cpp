#include <benchmark/benchmark.h>

#include "qbayes/bayes.hpp"
#include "qbayes/maxent.hpp"
#include "qbayes/oracle.hpp"
#include "qbayes/prior.hpp"

using namespace qbayes;

namespace {

Ensemble make_prior(int atoms) {
    PriorSpec spec;
    spec.kind = PriorKind::UniformBall;
    spec.atom_count = atoms;
    spec.seed = 42;
    return discretize_prior(spec);
}

void BM_TensorPower(benchmark::State& state) {
    const DensityOperator rho = density_from_bloch({0.3, -0.2, 0.4});
    const int n = static_cast<int>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(tensor_power(rho, n));
    }
}
BENCHMARK(BM_TensorPower)->DenseRange(2, 5);

void BM_PartialTrace(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const DensityOperator power = tensor_power(density_from_bloch({0.3, -0.2, 0.4}), n);
    std::vector<int> dims(static_cast<size_t>(n), 2);
    std::vector<int> keep;
    for (int i = 1; i < n; ++i) keep.push_back(i);
    for (auto _ : state) {
        benchmark::DoNotOptimize(partial_trace(power, dims, keep));
    }
}
BENCHMARK(BM_PartialTrace)->DenseRange(2, 5);

void BM_BayesUpdate(benchmark::State& state) {
    const Ensemble prior = make_prior(static_cast<int>(state.range(0)));
    const Povm sz = povm_from_operation(projective_spin_povm({0, 0, 1}));
    for (auto _ : state) {
        benchmark::DoNotOptimize(bayes_update(prior, sz, 0));
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_BayesUpdate)->RangeMultiplier(10)->Range(100, 100000)->Complexity();

void BM_QubitCountsUpdate(benchmark::State& state) {
    const Ensemble prior = make_prior(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(qubit_counts_update(prior, {0, 0, 1}, 7500, 2500));
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_QubitCountsUpdate)->RangeMultiplier(10)->Range(100, 100000)->Complexity();

void BM_PosteriorPredictive(benchmark::State& state) {
    const Ensemble prior = make_prior(10000);
    const int n = static_cast<int>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(posterior_predictive_counts(prior, {1, 0, 0}, n));
    }
}
BENCHMARK(BM_PosteriorPredictive)->Arg(10)->Arg(100);

void BM_OracleCase(benchmark::State& state) {
    uint64_t seed = 7;
    for (auto _ : state) {
        benchmark::DoNotOptimize(run_oracle_cases(1, 4, static_cast<int>(state.range(0)), 1e-10,
                                                  seed++));
    }
}
BENCHMARK(BM_OracleCase)->DenseRange(3, 5);

void BM_MaxentSolve(benchmark::State& state) {
    ConstraintSet c{{pauli_x(), pauli_z()}, {0.4, 0.3}};
    for (auto _ : state) {
        benchmark::DoNotOptimize(maxent_state(c, 2, 1e-10));
    }
}
BENCHMARK(BM_MaxentSolve);

void BM_SicRecordSampling(benchmark::State& state) {
    const DensityOperator truth = density_from_bloch({0.3, -0.2, 0.4});
    const QuantumOperation sic = operation_from_povm(tetrahedral_sic_povm());
    const long shots = state.range(0);
    uint64_t stream = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(sample_measurement_record(truth, {sic}, shots, 1, stream++));
    }
}
BENCHMARK(BM_SicRecordSampling)->Arg(1000)->Arg(30000);

}  // namespace

BENCHMARK_MAIN();
