#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "qbayes/errors.hpp"

namespace qbayes {

using cdouble = std::complex<double>;
using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;
using RVec = Eigen::VectorXd;
using RMat = Eigen::MatrixXd;

// Largest operator dimension the library will materialize by default.
inline constexpr Eigen::Index kDefaultDimCap = 1 << 12;

// Numerical tolerances shared across the library.
inline constexpr double kHermitianTol = 1e-12;
inline constexpr double kTraceTol = 1e-12;
inline constexpr double kPsdTol = 1e-10;          // min eigenvalue >= -kPsdTol
inline constexpr double kCompletenessTol = 1e-10; // POVM effects sum to identity
inline constexpr double kProbabilityTol = 1e-12;
inline constexpr double kImpossibleOutcomeTol = 1e-15;

// Throws DimensionError / InvalidStateError if m is not square or has
// non-finite entries.
void require_square_finite(const CMat& m, const char* what);

bool is_hermitian(const CMat& m, double tol = kHermitianTol);

// Eigendecomposition of a Hermitian matrix; the single spectral kernel
// behind entropy, trace distance, positivity checks and the matrix
// exponential.
struct HermitianEig {
    RVec eigenvalues;   // ascending
    CMat eigenvectors;  // columns
};
HermitianEig hermitian_eig(const CMat& m);

RVec hermitian_eigenvalues(const CMat& m);

// exp(m) for Hermitian m, through the spectral kernel.
CMat hermitian_exp(const CMat& m);

// Kronecker product a (x) b. Throws CapacityError if the result dimension
// would exceed cap.
CMat tensor_product(const CMat& a, const CMat& b, Eigen::Index cap = kDefaultDimCap);

// n-fold Kronecker power.
CMat tensor_power(const CMat& m, int n, Eigen::Index cap = kDefaultDimCap);

// Partial trace of an operator living on the tensor product of subsystems
// with dimensions `dims`, keeping the subsystems listed in `keep` (indices
// into dims, kept in their original order).
CMat partial_trace(const CMat& m, const std::vector<int>& dims, const std::vector<int>& keep);

// Permutation matrix that swaps adjacent subsystems (pos, pos+1) in an
// n-fold product of d-dimensional subsystems.
CMat adjacent_swap_operator(int d, int n, int pos);

// Compensated (Neumaier) summation; keeps 1e4-term weight sums inside the
// 1e-12 normalization tolerances.
double neumaier_sum(const std::vector<double>& xs);

// Stable log(sum(exp(xs))); -inf entries are permitted.
double log_sum_exp(const std::vector<double>& xs);

// Pauli matrices and the 2x2 identity.
const CMat& pauli_x();
const CMat& pauli_y();
const CMat& pauli_z();
const CMat& identity2();

}  // namespace qbayes
