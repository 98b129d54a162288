#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "qbayes/ensemble.hpp"

namespace qbayes {

enum class PriorKind {
    UniformBall,      // uniform over the closed Bloch ball
    PureHaar,         // Haar-uniform pure qubit states (unit sphere)
    Bures,            // Bures measure, qubit radial density ~ r^2/sqrt(1-r^2)
    IsotropicRadial,  // user-supplied density of the Bloch radius on [0,1]
    Atoms,            // explicit weighted atom list, any dimension
};

// A prior measure on density-operator space plus how to discretize it.
// There is deliberately no default kind: callers must choose.
struct PriorSpec {
    PriorKind kind = PriorKind::UniformBall;
    int atom_count = 1;
    uint64_t seed = 0;
    // IsotropicRadial: density values of the Bloch radius on a uniform grid
    // over [0,1] (first sample at r=0, last at r=1); need not be normalized.
    std::vector<double> radial_density;
    // Atoms: explicit weights (normalized on construction) and states.
    std::vector<std::pair<double, DensityOperator>> atoms;
};

std::vector<BlochVector> sample_bloch_uniform(int count, uint64_t seed, uint64_t stream = 0);
std::vector<BlochVector> sample_pure_haar(int count, uint64_t seed, uint64_t stream = 0);
std::vector<BlochVector> sample_bures(int count, uint64_t seed, uint64_t stream = 0);

// Radius CDF of the qubit Bures measure: (2/pi)(asin r - r sqrt(1-r^2)).
double bures_radius_cdf(double r);

Ensemble discretize_prior(const PriorSpec& spec);

}  // namespace qbayes
