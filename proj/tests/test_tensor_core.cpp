#include <doctest.h>

#include "oracles.hpp"
#include "symtensor/tensor_core.hpp"

#include <cstdlib>

using namespace symtensor;

TEST_CASE("flat and multi indices are inverse row-major maps") {
    for (int n : {2, 3}) {
        for (int k = 1; k <= 4; ++k) {
            for (int f = 0; f < ipow(n, k); ++f) {
                const auto idx = multi_index(n, k, static_cast<std::size_t>(f));
                CHECK(flat_index(n, idx) == static_cast<std::size_t>(f));
                CHECK(oracle::flat_of(n, idx) == f);
            }
        }
    }
    CHECK(flat_index(3, {1, 2}) == 5u);
}

TEST_CASE("kron_power matches the entrywise product definition") {
    std::mt19937_64 rng(11);
    for (int k = 1; k <= 4; ++k) {
        const Matrix q3 = oracle::random_rotation3(rng);
        CHECK((kron_power(q3, k).matrix - oracle::brute_kron(q3, k)).cwiseAbs().maxCoeff() < 1e-13);
        const Matrix q2 = oracle::random_orthogonal2(rng, k % 2 == 0);
        CHECK((kron_power(q2, k).matrix - oracle::brute_kron(q2, k)).cwiseAbs().maxCoeff() < 1e-13);
    }
}

TEST_CASE("kron_power is a representation") {
    std::mt19937_64 rng(12);
    for (int trial = 0; trial < 5; ++trial) {
        const Matrix a = oracle::random_rotation3(rng);
        const Matrix b = oracle::random_rotation3(rng);
        const Matrix lhs = kron_power(a * b, 3).matrix;
        const Matrix rhs = kron_power(a, 3).matrix * kron_power(b, 3).matrix;
        CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-12);
    }
}

TEST_CASE("kron_power rejects non-orthogonal input") {
    Matrix q = Matrix::Identity(3, 3);
    q(0, 1) = 0.1;
    try {
        kron_power(q, 2);
        FAIL("expected an error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::Input);
    }
    CHECK_THROWS_AS(kron_power(Matrix::Identity(3, 3), 7), Error);
}

TEST_CASE("trace, idempotence and rank of a coordinate projector") {
    FlatOperator p = FlatOperator::identity(2, 2);
    p.matrix(3, 3) = 0.0;
    CHECK(operator_trace(p) == doctest::Approx(3.0));
    CHECK(idempotence_defect(p.matrix) == 0.0);
    CHECK(numerical_rank(p.matrix, TolerancePolicy{}) == 3);
    const Matrix b = image_basis_matrix(p, TolerancePolicy{});
    CHECK(b.cols() == 3);
    CHECK((b.transpose() * b - Matrix::Identity(3, 3)).cwiseAbs().maxCoeff() < 1e-14);
    CHECK((p.matrix * b - b).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("image basis cardinality survives an orthogonal change of basis") {
    std::mt19937_64 rng(13);
    const int n = 9;
    Matrix d = Matrix::Zero(n, n);
    for (int i = 0; i < 4; ++i) d(i, i) = 1.0;
    Eigen::HouseholderQR<Matrix> qr(Matrix::Random(n, n));
    const Matrix u = qr.householderQ();
    FlatOperator p;
    p.n = 3;
    p.k = 2;
    p.matrix = u * d * u.transpose();
    CHECK(image_basis(p, TolerancePolicy{}).size() == 4u);
}

TEST_CASE("image_basis refuses a non-projector") {
    FlatOperator p = FlatOperator::identity(2, 2);
    p.matrix *= 2.0;
    CHECK_THROWS_AS(image_basis_matrix(p, TolerancePolicy{}), Error);
}

TEST_CASE("null_space of stacked blocks") {
    Matrix a(2, 3);
    a << 1, 0, 0, 0, 1, 0;
    const Matrix ns = null_space(a, TolerancePolicy{});
    REQUIRE(ns.cols() == 1);
    CHECK(std::fabs(std::fabs(ns(2, 0)) - 1.0) < 1e-14);
}

TEST_CASE("rational_snap recognizes small rationals and radicals") {
    const TolerancePolicy tol;
    CHECK(rational_snap(0.5, tol).text == "1/2");
    CHECK(rational_snap(-2.0, tol).text == "-2");
    CHECK(rational_snap(std::sqrt(2.0) / 2.0, tol).text == "√2/2");
    CHECK(rational_snap(-3.0 * std::sqrt(2.0) / 4.0, tol).text == "-3√2/4");
    CHECK(rational_snap(std::sqrt(3.0), tol).text == "√3");
    CHECK(rational_snap(1e-12, tol).text == "0");
    const SnapResult pi = rational_snap(M_PI, tol);
    CHECK_FALSE(pi.snapped);
    const SnapResult third = rational_snap(1.0 / 3.0 + 1e-13, tol);
    CHECK(third.snapped);
    CHECK(third.value == 1.0 / 3.0);
}

TEST_CASE("tolerance policy validation and environment override") {
    TolerancePolicy bad;
    bad.zero_tol = -1.0;
    CHECK_THROWS_AS(bad.validate(), Error);
    setenv("SYMTENSOR_TOL", "1e-7", 1);
    CHECK(TolerancePolicy::from_env().zero_tol == 1e-7);
    setenv("SYMTENSOR_TOL", "abc", 1);
    CHECK_THROWS_AS(TolerancePolicy::from_env(), Error);
    unsetenv("SYMTENSOR_TOL");
    CHECK(TolerancePolicy::from_env().zero_tol == 1e-9);
}

TEST_CASE("flat tensor shape checks") {
    CHECK(FlatTensor::zeros(3, 4).size() == 81u);
    CHECK_THROWS_AS(FlatTensor::from(3, 2, Vector::Zero(4)), Error);
}
