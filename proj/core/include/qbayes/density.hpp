#pragma once

#include <cmath>

#include "qbayes/linalg.hpp"

namespace qbayes {

// Point in (or on) the Bloch ball. Valid vectors satisfy |b| <= 1 + 1e-12.
struct BlochVector {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    double norm() const { return std::sqrt(x * x + y * y + z * z); }
    double dot(const BlochVector& o) const { return x * o.x + y * o.y + z * o.z; }
};

inline constexpr double kBlochNormTol = 1e-12;

// Hermitian, unit-trace, positive semidefinite matrix. Construction
// validates all three invariants; instances are immutable.
class DensityOperator {
public:
    // Validates Hermiticity (1e-12 max-norm), trace (1e-12) and positivity
    // (min eigenvalue >= -1e-10).
    static DensityOperator from_matrix(CMat m);

    const CMat& matrix() const { return matrix_; }
    Eigen::Index dim() const { return matrix_.rows(); }

private:
    explicit DensityOperator(CMat m) : matrix_(std::move(m)) {}
    CMat matrix_;
};

// rho = (1 + x sx + y sy + z sz) / 2. Bloch norms within tolerance of 1
// are clamped onto the sphere; larger norms are rejected.
DensityOperator density_from_bloch(const BlochVector& b);

// (tr(rho sx), tr(rho sy), tr(rho sz)); qubit states only.
BlochVector bloch_from_density(const DensityOperator& r);

DensityOperator tensor_power(const DensityOperator& r, int n, Eigen::Index cap = kDefaultDimCap);

DensityOperator partial_trace(const DensityOperator& r, const std::vector<int>& dims,
                              const std::vector<int>& keep);

// -sum_i l_i ln l_i in nats, with 0 ln 0 := 0; eigenvalues above -1e-10 are
// clamped to zero. Result clamped into [0, ln dim].
double von_neumann_entropy(const DensityOperator& r);

// (1/2) sum |eig(a - b)|, in [0, 1].
double trace_distance(const DensityOperator& a, const DensityOperator& b);

}  // namespace qbayes
