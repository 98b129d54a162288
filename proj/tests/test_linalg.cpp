#include <doctest.h>

#include <cmath>
#include <limits>

#include "qbayes/linalg.hpp"
#include "qbayes/rng.hpp"

using namespace qbayes;

namespace {

CMat mat2(cdouble a, cdouble b, cdouble c, cdouble d) {
    CMat m(2, 2);
    m << a, b, c, d;
    return m;
}

// Independent partial trace over subsystem 0 of an n-qubit operator,
// written as a plain index sum; the oracle the library routine is checked
// against.
CMat naive_trace_out_first_qubit(const CMat& m, int n_qubits) {
    const Eigen::Index rest = m.rows() / 2;
    CMat out = CMat::Zero(rest, rest);
    for (Eigen::Index i = 0; i < rest; ++i)
        for (Eigen::Index j = 0; j < rest; ++j)
            for (Eigen::Index t = 0; t < 2; ++t) out(i, j) += m(t * rest + i, t * rest + j);
    (void)n_qubits;
    return out;
}

}  // namespace

TEST_CASE("tensor product basics") {
    const CMat i2 = CMat::Identity(2, 2);
    CHECK((tensor_product(i2, i2) - CMat::Identity(4, 4)).cwiseAbs().maxCoeff() == 0.0);

    const CMat p0 = mat2(1, 0, 0, 0);
    const CMat p1 = mat2(0, 0, 0, 1);
    CMat expected = CMat::Zero(4, 4);
    expected(1, 1) = 1.0;
    CHECK((tensor_product(p0, p1) - expected).cwiseAbs().maxCoeff() == 0.0);

    const CMat rho = mat2(0.9, 0.3, 0.3, 0.1);
    const CMat rr = tensor_product(rho, rho);
    CHECK(rr(0, 0).real() == doctest::Approx(0.81).epsilon(1e-14));
    CHECK(std::abs(rr.trace() - cdouble(1, 0)) < 1e-14);
}

TEST_CASE("tensor power arithmetic") {
    const CMat d = mat2(0.75, 0, 0, 0.25);
    const CMat d2 = tensor_power(d, 2);
    // Direct arithmetic on the diagonal.
    CHECK(d2(0, 0).real() == doctest::Approx(0.75 * 0.75).epsilon(1e-15));
    CHECK(d2(1, 1).real() == doctest::Approx(0.75 * 0.25).epsilon(1e-15));
    CHECK(d2(2, 2).real() == doctest::Approx(0.25 * 0.75).epsilon(1e-15));
    CHECK(d2(3, 3).real() == doctest::Approx(0.25 * 0.25).epsilon(1e-15));

    const CMat one = tensor_power(d, 1);
    CHECK((one - d).cwiseAbs().maxCoeff() == 0.0);

    const CMat mixed3 = tensor_power(0.5 * CMat::Identity(2, 2), 3);
    CHECK((mixed3 - 0.125 * CMat::Identity(8, 8)).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("tensor product capacity errors") {
    const CMat big = CMat::Identity(128, 128);
    CHECK_THROWS_AS(tensor_product(big, big), CapacityError);
    CHECK_THROWS_AS(tensor_power(CMat::Identity(2, 2), 13), CapacityError);
    CHECK_NOTHROW(tensor_power(CMat::Identity(2, 2), 12));
}

TEST_CASE("partial trace of a product factorizes") {
    const CMat rho = mat2(0.9, cdouble(0.1, 0.2), cdouble(0.1, -0.2), 0.1);
    const CMat sigma = mat2(0.6, 0.25, 0.25, 0.4);
    const CMat joint = tensor_product(rho, sigma);
    CHECK((partial_trace(joint, {2, 2}, {0}) - rho).cwiseAbs().maxCoeff() < 1e-14);
    CHECK((partial_trace(joint, {2, 2}, {1}) - sigma).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("partial trace of Bell and GHZ projectors") {
    CVec bell = CVec::Zero(4);
    bell(0) = bell(3) = 1.0 / std::sqrt(2.0);
    const CMat bell_proj = bell * bell.adjoint();
    const CMat bell_reduced = partial_trace(bell_proj, {2, 2}, {0});
    CHECK((bell_reduced - 0.5 * CMat::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-14);
    // Cross-check against the naive index-sum oracle (tracing the other way).
    const CMat oracle = naive_trace_out_first_qubit(bell_proj, 2);
    CHECK((partial_trace(bell_proj, {2, 2}, {1}) - oracle).cwiseAbs().maxCoeff() < 1e-15);

    CVec ghz = CVec::Zero(8);
    ghz(0) = ghz(7) = 1.0 / std::sqrt(2.0);
    const CMat ghz_proj = ghz * ghz.adjoint();
    CHECK((partial_trace(ghz_proj, {2, 2, 2}, {0}) - 0.5 * CMat::Identity(2, 2))
              .cwiseAbs()
              .maxCoeff() < 1e-14);
    const CMat ghz_oracle = naive_trace_out_first_qubit(ghz_proj, 3);
    CHECK((partial_trace(ghz_proj, {2, 2, 2}, {1, 2}) - ghz_oracle).cwiseAbs().maxCoeff() <
          1e-15);
}

TEST_CASE("partial trace preserves trace and rejects bad dims") {
    Philox rng(5);
    CMat m(8, 8);
    for (int i = 0; i < 8; ++i)
        for (int j = 0; j < 8; ++j) m(i, j) = cdouble(rng.next_gaussian(), rng.next_gaussian());
    m = 0.5 * (m + CMat(m.adjoint()));
    const CMat reduced = partial_trace(m, {2, 2, 2}, {1});
    CHECK(std::abs(reduced.trace() - m.trace()) < 1e-12);

    CHECK_THROWS_AS(partial_trace(m, {2, 2}, {0}), DimensionError);
    CHECK_THROWS_AS(partial_trace(m, {2, 2, 2}, {}), DimensionError);
    CHECK_THROWS_AS(partial_trace(m, {2, 2, 2}, {3}), DimensionError);
}

TEST_CASE("adjacent swap operator exchanges factors") {
    const CMat a = mat2(1, 0, 0, 0);
    const CMat b = mat2(0, 0, 0, 1);
    const CMat ab = tensor_product(a, b);
    const CMat ba = tensor_product(b, a);
    const CMat s = adjacent_swap_operator(2, 2, 0);
    CHECK((s * ab * s.adjoint() - ba).cwiseAbs().maxCoeff() < 1e-15);

    // Three subsystems, swap the middle pair.
    const CMat c = mat2(0.5, 0.5, 0.5, 0.5);
    const CMat abc = tensor_product(tensor_product(a, b), c);
    const CMat acb = tensor_product(tensor_product(a, c), b);
    const CMat s12 = adjacent_swap_operator(2, 3, 1);
    CHECK((s12 * abc * s12.adjoint() - acb).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("hermitian exp through the spectral kernel") {
    const CMat z = pauli_z();
    const CMat e = hermitian_exp(z);
    CHECK(e(0, 0).real() == doctest::Approx(std::exp(1.0)).epsilon(1e-14));
    CHECK(e(1, 1).real() == doctest::Approx(std::exp(-1.0)).epsilon(1e-14));
    CHECK(std::abs(e(0, 1)) < 1e-15);
}

TEST_CASE("compensated sum and log-sum-exp") {
    std::vector<double> xs(10000, 1e-4);
    CHECK(std::abs(neumaier_sum(xs) - 1.0) < 1e-15);

    std::vector<double> logs = {std::log(0.25), std::log(0.75)};
    CHECK(log_sum_exp(logs) == doctest::Approx(0.0).epsilon(1e-15));
    const double ninf = -std::numeric_limits<double>::infinity();
    CHECK(log_sum_exp({ninf, ninf}) == ninf);
    CHECK(log_sum_exp({ninf, 0.0}) == doctest::Approx(0.0));
}
