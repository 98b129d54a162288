#include "qbayes/linalg.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <limits>
#include <string>

namespace qbayes {

void require_square_finite(const CMat& m, const char* what) {
    if (m.rows() != m.cols() || m.rows() < 1) {
        throw DimensionError(std::string(what) + ": matrix must be square, got " +
                             std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
    }
    if (!m.allFinite()) {
        throw InvalidStateError(std::string(what) + ": matrix has non-finite entries");
    }
}

bool is_hermitian(const CMat& m, double tol) {
    if (m.rows() != m.cols()) return false;
    return (m - m.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

HermitianEig hermitian_eig(const CMat& m) {
    Eigen::SelfAdjointEigenSolver<CMat> solver(m);
    if (solver.info() != Eigen::Success) {
        throw InvalidStateError("hermitian_eig: eigensolver failed to converge");
    }
    return {solver.eigenvalues(), solver.eigenvectors()};
}

RVec hermitian_eigenvalues(const CMat& m) {
    Eigen::SelfAdjointEigenSolver<CMat> solver(m, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) {
        throw InvalidStateError("hermitian_eigenvalues: eigensolver failed to converge");
    }
    return solver.eigenvalues();
}

CMat hermitian_exp(const CMat& m) {
    HermitianEig eig = hermitian_eig(m);
    RVec expvals = eig.eigenvalues.array().exp();
    return eig.eigenvectors * expvals.asDiagonal() * eig.eigenvectors.adjoint();
}

CMat tensor_product(const CMat& a, const CMat& b, Eigen::Index cap) {
    require_square_finite(a, "tensor_product lhs");
    require_square_finite(b, "tensor_product rhs");
    const Eigen::Index da = a.rows(), db = b.rows();
    if (da > cap / db) {
        throw CapacityError("tensor_product: result dimension " + std::to_string(da) + "*" +
                            std::to_string(db) + " exceeds cap " + std::to_string(cap));
    }
    CMat out(da * db, da * db);
    for (Eigen::Index i = 0; i < da; ++i)
        for (Eigen::Index j = 0; j < da; ++j)
            out.block(i * db, j * db, db, db) = a(i, j) * b;
    return out;
}

CMat tensor_power(const CMat& m, int n, Eigen::Index cap) {
    require_square_finite(m, "tensor_power");
    if (n < 1) throw InvalidArgumentError("tensor_power: exponent must be >= 1");
    CMat out = m;
    for (int i = 1; i < n; ++i) out = tensor_product(out, m, cap);
    return out;
}

namespace {

// Multi-index strides for a list of subsystem dimensions, row-major
// (subsystem 0 is the most significant factor).
std::vector<Eigen::Index> strides_of(const std::vector<int>& dims) {
    std::vector<Eigen::Index> s(dims.size());
    Eigen::Index acc = 1;
    for (int i = static_cast<int>(dims.size()) - 1; i >= 0; --i) {
        s[static_cast<size_t>(i)] = acc;
        acc *= dims[static_cast<size_t>(i)];
    }
    return s;
}

}  // namespace

CMat partial_trace(const CMat& m, const std::vector<int>& dims, const std::vector<int>& keep) {
    require_square_finite(m, "partial_trace");
    if (dims.empty()) throw DimensionError("partial_trace: empty subsystem list");
    Eigen::Index total = 1;
    for (int d : dims) {
        if (d < 1) throw DimensionError("partial_trace: subsystem dims must be >= 1");
        total *= d;
    }
    if (total != m.rows()) {
        throw DimensionError("partial_trace: product of dims " + std::to_string(total) +
                             " != matrix dimension " + std::to_string(m.rows()));
    }
    if (keep.empty()) throw DimensionError("partial_trace: keep set must be nonempty");

    const int n = static_cast<int>(dims.size());
    std::vector<bool> kept(static_cast<size_t>(n), false);
    for (int k : keep) {
        if (k < 0 || k >= n) throw DimensionError("partial_trace: keep index out of range");
        if (kept[static_cast<size_t>(k)]) throw DimensionError("partial_trace: duplicate keep index");
        kept[static_cast<size_t>(k)] = true;
    }

    std::vector<int> keep_sorted;
    std::vector<int> traced;
    for (int i = 0; i < n; ++i) (kept[static_cast<size_t>(i)] ? keep_sorted : traced).push_back(i);

    const auto strides = strides_of(dims);
    Eigen::Index dk = 1, dt = 1;
    for (int i : keep_sorted) dk *= dims[static_cast<size_t>(i)];
    for (int i : traced) dt *= dims[static_cast<size_t>(i)];

    // Offset of the kept (resp. traced) multi-index inside the full index.
    auto offsets = [&](const std::vector<int>& subsys, Eigen::Index count) {
        std::vector<Eigen::Index> off(static_cast<size_t>(count));
        for (Eigen::Index flat = 0; flat < count; ++flat) {
            Eigen::Index rem = flat, o = 0;
            for (int i = static_cast<int>(subsys.size()) - 1; i >= 0; --i) {
                const int sub = subsys[static_cast<size_t>(i)];
                const Eigen::Index d = dims[static_cast<size_t>(sub)];
                o += (rem % d) * strides[static_cast<size_t>(sub)];
                rem /= d;
            }
            off[static_cast<size_t>(flat)] = o;
        }
        return off;
    };
    const auto keep_off = offsets(keep_sorted, dk);
    const auto traced_off = offsets(traced, dt);

    CMat out = CMat::Zero(dk, dk);
    for (Eigen::Index i = 0; i < dk; ++i)
        for (Eigen::Index j = 0; j < dk; ++j) {
            cdouble acc(0.0, 0.0);
            for (Eigen::Index t = 0; t < dt; ++t)
                acc += m(keep_off[static_cast<size_t>(i)] + traced_off[static_cast<size_t>(t)],
                         keep_off[static_cast<size_t>(j)] + traced_off[static_cast<size_t>(t)]);
            out(i, j) = acc;
        }
    return out;
}

CMat adjacent_swap_operator(int d, int n, int pos) {
    if (d < 1 || n < 2 || pos < 0 || pos + 1 >= n) {
        throw InvalidArgumentError("adjacent_swap_operator: bad subsystem layout");
    }
    Eigen::Index total = 1;
    for (int i = 0; i < n; ++i) total *= d;
    std::vector<int> dims(static_cast<size_t>(n), d);
    const auto strides = strides_of(dims);
    CMat s = CMat::Zero(total, total);
    for (Eigen::Index idx = 0; idx < total; ++idx) {
        const Eigen::Index a = (idx / strides[static_cast<size_t>(pos)]) % d;
        const Eigen::Index b = (idx / strides[static_cast<size_t>(pos + 1)]) % d;
        const Eigen::Index swapped = idx + (b - a) * strides[static_cast<size_t>(pos)] +
                                     (a - b) * strides[static_cast<size_t>(pos + 1)];
        s(swapped, idx) = 1.0;
    }
    return s;
}

double neumaier_sum(const std::vector<double>& xs) {
    double sum = 0.0, comp = 0.0;
    for (double x : xs) {
        const double t = sum + x;
        if (std::abs(sum) >= std::abs(x)) {
            comp += (sum - t) + x;
        } else {
            comp += (x - t) + sum;
        }
        sum = t;
    }
    return sum + comp;
}

double log_sum_exp(const std::vector<double>& xs) {
    double mx = -std::numeric_limits<double>::infinity();
    for (double x : xs) mx = std::max(mx, x);
    if (!std::isfinite(mx)) return mx;  // all -inf (or contains +inf)
    double s = 0.0;
    for (double x : xs) s += std::exp(x - mx);
    return mx + std::log(s);
}

const CMat& pauli_x() {
    static const CMat m = [] {
        CMat x(2, 2);
        x << 0.0, 1.0, 1.0, 0.0;
        return x;
    }();
    return m;
}

const CMat& pauli_y() {
    static const CMat m = [] {
        CMat y(2, 2);
        y << cdouble(0, 0), cdouble(0, -1), cdouble(0, 1), cdouble(0, 0);
        return y;
    }();
    return m;
}

const CMat& pauli_z() {
    static const CMat m = [] {
        CMat z(2, 2);
        z << 1.0, 0.0, 0.0, -1.0;
        return z;
    }();
    return m;
}

const CMat& identity2() {
    static const CMat m = CMat::Identity(2, 2);
    return m;
}

}  // namespace qbayes
