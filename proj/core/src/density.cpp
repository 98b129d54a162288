#include "qbayes/density.hpp"

#include <algorithm>
#include <string>

namespace qbayes {

DensityOperator DensityOperator::from_matrix(CMat m) {
    require_square_finite(m, "DensityOperator");
    const double herm = (m - m.adjoint()).cwiseAbs().maxCoeff();
    if (herm > kHermitianTol) {
        throw InvalidStateError("DensityOperator: not Hermitian, max deviation " +
                                std::to_string(herm));
    }
    const double tr_err = std::abs(m.trace() - cdouble(1.0, 0.0));
    if (tr_err > kTraceTol) {
        throw InvalidStateError("DensityOperator: trace differs from 1 by " +
                                std::to_string(tr_err));
    }
    const double min_eig = hermitian_eigenvalues(m).minCoeff();
    if (min_eig < -kPsdTol) {
        throw InvalidStateError("DensityOperator: not positive semidefinite, min eigenvalue " +
                                std::to_string(min_eig));
    }
    return DensityOperator(std::move(m));
}

DensityOperator density_from_bloch(const BlochVector& b) {
    double n = b.norm();
    if (n > 1.0 + kBlochNormTol) {
        throw InvalidStateError("density_from_bloch: Bloch norm " + std::to_string(n) +
                                " exceeds 1");
    }
    BlochVector v = b;
    if (n > 1.0) {  // within tolerance, clamp onto the sphere
        v.x /= n;
        v.y /= n;
        v.z /= n;
    }
    CMat m = 0.5 * (CMat::Identity(2, 2) + v.x * pauli_x() + v.y * pauli_y() + v.z * pauli_z());
    return DensityOperator::from_matrix(std::move(m));
}

BlochVector bloch_from_density(const DensityOperator& r) {
    if (r.dim() != 2) {
        throw DimensionError("bloch_from_density: expected a qubit state, got dim " +
                             std::to_string(r.dim()));
    }
    const CMat& m = r.matrix();
    return BlochVector{(m * pauli_x()).trace().real(), (m * pauli_y()).trace().real(),
                       (m * pauli_z()).trace().real()};
}

DensityOperator tensor_power(const DensityOperator& r, int n, Eigen::Index cap) {
    return DensityOperator::from_matrix(tensor_power(r.matrix(), n, cap));
}

DensityOperator partial_trace(const DensityOperator& r, const std::vector<int>& dims,
                              const std::vector<int>& keep) {
    return DensityOperator::from_matrix(partial_trace(r.matrix(), dims, keep));
}

double von_neumann_entropy(const DensityOperator& r) {
    const RVec eigs = hermitian_eigenvalues(r.matrix());
    double s = 0.0;
    for (Eigen::Index i = 0; i < eigs.size(); ++i) {
        const double l = std::max(eigs[i], 0.0);
        if (l > 0.0) s -= l * std::log(l);
    }
    return std::clamp(s, 0.0, std::log(static_cast<double>(r.dim())));
}

double trace_distance(const DensityOperator& a, const DensityOperator& b) {
    if (a.dim() != b.dim()) {
        throw DimensionError("trace_distance: dimension mismatch " + std::to_string(a.dim()) +
                             " vs " + std::to_string(b.dim()));
    }
    const RVec eigs = hermitian_eigenvalues(a.matrix() - b.matrix());
    return std::clamp(0.5 * eigs.cwiseAbs().sum(), 0.0, 1.0);
}

}  // namespace qbayes
