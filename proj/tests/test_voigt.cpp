#include <doctest.h>

#include "oracles.hpp"
#include "symtensor/projector.hpp"

using namespace symtensor;

namespace {

// Symmetric random tensor in the named space, via the explicit index average.
FlatTensor random_member(const std::string& space, std::mt19937_64& rng) {
    const auto& sym = oracle::index_symmetry(space);
    const Vector raw = oracle::random_vector(rng, oracle::power(sym.n, sym.k));
    return FlatTensor::from(sym.n, sym.k, oracle::delta_pi(sym) * raw);
}

}  // namespace

TEST_CASE("Voigt forward examples") {
    const Vector i3 = voigt_forward(Matrix::Identity(3, 3));
    CHECK(i3 == (Vector(6) << 1, 1, 1, 0, 0, 0).finished());
    Matrix x = Matrix::Zero(3, 3);
    x(1, 2) = x(2, 1) = 5.0;
    CHECK(voigt_forward(x) == (Vector(6) << 0, 0, 0, 10, 0, 0).finished());
    x(1, 2) = 4.0;
    CHECK_THROWS_AS(voigt_forward(x), Error);
}

TEST_CASE("Mandel is an isometry and Voigt is not") {
    std::mt19937_64 rng(41);
    for (int t = 0; t < 20; ++t) {
        const Matrix x = oracle::random_symmetric(rng, 3);
        CHECK(std::fabs(mandel_forward(x).norm() - x.norm()) < 1e-12);
        CHECK(std::fabs(voigt_forward(x).norm() - x.norm()) > 1e-6);
    }
    Matrix e = Matrix::Zero(3, 3);
    e(1, 2) = e(2, 1) = 1.0;
    CHECK(mandel_forward(e).norm() == doctest::Approx(std::sqrt(2.0)));
    CHECK(mandel_forward(Matrix::Identity(3, 3)).norm() == doctest::Approx(std::sqrt(3.0)));
}

TEST_CASE("roundtrips of every map are exact") {
    std::mt19937_64 rng(42);
    for (const auto& name : voigt_map_names()) {
        const VoigtMap& m = voigt_map(name);
        const Vector v = oracle::random_vector(rng, m.size());
        CHECK((m.forward(m.inverse(v)) - v).cwiseAbs().maxCoeff() < 1e-14);
        const Vector flat = m.inverse(v);
        CHECK((m.inverse(m.forward(flat)) - flat).cwiseAbs().maxCoeff() < 1e-14);
        CHECK((m.forward_matrix() * m.inverse_matrix() - Matrix::Identity(m.size(), m.size())).cwiseAbs().maxCoeff() <
              1e-15);
    }
    const Matrix x = oracle::random_symmetric(rng, 3);
    CHECK((voigt_inverse(voigt_forward(x)) - x).cwiseAbs().maxCoeff() < 1e-14);
    CHECK((mandel_inverse(mandel_forward(x)) - x).cwiseAbs().maxCoeff() < 1e-14);
    const Matrix y = Matrix::Random(3, 3);
    CHECK((nine_slot_inverse(nine_slot_forward(y)) - y).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("nine-slot ordering") {
    CHECK(nine_slot_forward(Matrix::Identity(3, 3)) == (Vector(9) << 1, 1, 1, 0, 0, 0, 0, 0, 0).finished());
    Matrix s = Matrix::Zero(3, 3);
    s(1, 2) = 1.0;
    s(2, 1) = -1.0;
    const Vector v = nine_slot_forward(s);
    CHECK(v(3) == 1.0);
    CHECK(v(4) == -1.0);
}

TEST_CASE("18-slot ordering table") {
    const std::vector<std::string> tags{"11;1", "22;1", "12;2", "33;1", "13;3", "22;2", "11;2", "12;1", "33;2",
                                        "23;3", "33;3", "11;3", "13;1", "22;3", "23;2", "12;3", "13;2", "23;1"};
    const VoigtMap& n = voigt_map("n18");
    REQUIRE(n.size() == 18);
    for (int a = 0; a < 18; ++a) CHECK(n.slots[static_cast<std::size_t>(a)].tag == tags[static_cast<std::size_t>(a)]);
}

TEST_CASE("extended map on the orthonormal sigma basis") {
    // sigma_ijk = (e_i e_j + e_j e_i) e_k, scaled to unit norm.
    auto sigma = [](int i, int j, int k) {
        FlatTensor t = FlatTensor::zeros(3, 3);
        const double c = i == j ? 0.5 : 1.0 / std::sqrt(2.0);
        t({i, j, k}) += c;
        t({j, i, k}) += c;
        return t;
    };
    Vector e1 = Vector::Zero(18);
    e1(0) = 1.0;
    CHECK((extended_n_forward(sigma(0, 0, 0)) - e1).norm() < 1e-15);
    Vector e16 = Vector::Zero(18);
    e16(15) = 1.0;
    CHECK((extended_n_forward(sigma(0, 1, 2)) - e16).norm() < 1e-15);

    std::mt19937_64 rng(43);
    FlatTensor t = FlatTensor::from(3, 3, oracle::random_vector(rng, 27));
    CHECK_THROWS_AS(extended_n_forward(t), Error);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < i; ++j)
            for (int k = 0; k < 3; ++k) t({i, j, k}) = t({j, i, k});
    CHECK((extended_n_inverse(extended_n_forward(t)).coeffs - t.coeffs).cwiseAbs().maxCoeff() < 1e-14);
    CHECK(std::fabs(extended_n_forward(t).norm() - t.coeffs.norm()) < 1e-12);
}

TEST_CASE("axl and anti") {
    const Matrix a3 = anti(Eigen::Vector3d::UnitZ());
    Matrix want(3, 3);
    want << 0, -1, 0, 1, 0, 0, 0, 0, 0;
    CHECK(a3 == want);
    std::mt19937_64 rng(44);
    for (int t = 0; t < 10; ++t) {
        const Eigen::Vector3d a = oracle::random_vector(rng, 3);
        CHECK((axl(anti(a)) - a).norm() < 1e-15);
        const Matrix s = oracle::random_skew(rng);
        const Eigen::Vector3d v = oracle::random_vector(rng, 3);
        const Eigen::Vector3d lhs = s * v;
        CHECK((lhs - axl(s).cross(v)).norm() < 1e-14);
    }
    CHECK_THROWS_AS(axl(Matrix::Identity(3, 3)), Error);
}

TEST_CASE("induced matrix slot sourcing on a basis sweep") {
    // Each elasticity component is placed by the pair tables 11,22,33,23,13,12.
    const int pair[6][2] = {{0, 0}, {1, 1}, {2, 2}, {1, 2}, {0, 2}, {0, 1}};
    const TensorSpace ela = space_from_name("ela3");
    const Matrix basis = space_basis(ela);
    for (Eigen::Index b = 0; b < basis.cols(); ++b) {
        const FlatTensor t = FlatTensor::from(3, 4, basis.col(b));
        const Matrix m = induced_matrix(rendering_for("ela3"), t);
        for (int a = 0; a < 6; ++a)
            for (int c = 0; c < 6; ++c) {
                const double src = t({pair[a][0], pair[a][1], pair[c][0], pair[c][1]});
                CHECK(m(a, c) == doctest::Approx(src).epsilon(1e-14));
            }
    }
}

TEST_CASE("symmetrized identity renders as diag(1,1,1,1/2,1/2,1/2)") {
    FlatTensor id = FlatTensor::zeros(3, 4);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            id({i, j, i, j}) += 0.5;
            id({i, j, j, i}) += 0.5;
        }
    const Matrix m = induced_matrix(rendering_for("ela3"), id);
    Vector d(6);
    d << 1, 1, 1, 0.5, 0.5, 0.5;
    CHECK((m - Matrix(d.asDiagonal())).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("major symmetry gives symmetric matrices for the symmetric renderings") {
    std::mt19937_64 rng(45);
    for (const char* name : {"ela3", "major3", "v2", "v2bar", "high2", "ela2"}) {
        const Matrix m = induced_matrix(rendering_for(name), random_member(name, rng));
        CHECK((m - m.transpose()).cwiseAbs().maxCoeff() < 1e-14);
    }
}

TEST_CASE("bilinear characterization of the induced matrix") {
    std::mt19937_64 rng(46);
    for (const auto& name : space_catalog_names()) {
        const Rendering& r = rendering_for(name);
        const VoigtMap& rm = voigt_map(r.row_map);
        const VoigtMap& cm = voigt_map(r.col_map);
        const FlatTensor t = random_member(name, rng);
        const Matrix m = induced_matrix(r, t);
        const Vector a = oracle::random_vector(rng, cm.size());
        const Vector b = oracle::random_vector(rng, rm.size());
        // <T : map_row^{-1} b (x) map_col^{-1} a> with the row map on the leading or trailing slots.
        const Vector ra = cm.inverse(a), rb = rm.inverse(b);
        double s = 0.0;
        const int nr = static_cast<int>(rb.size()), nc = static_cast<int>(ra.size());
        for (int p = 0; p < nr; ++p)
            for (int q = 0; q < nc; ++q) {
                const int flat = r.rows_trailing ? q * nr + p : p * nc + q;
                s += t.coeffs(flat) * rb(p) * ra(q);
            }
        INFO(name);
        CHECK(std::fabs(b.dot(m * a) - s) < 1e-12);
    }
}

TEST_CASE("transversely isotropic elasticity satisfies C11 - C12 - 2 C66 = 0") {
    std::mt19937_64 rng(47);
    const TensorSpace s = space_from_name("ela3");
    const FlatTensor t = project(s, group_from_name("o2-e3", 3), random_member("ela3", rng));
    const Matrix m = induced_matrix(rendering_for("ela3"), t);
    CHECK(std::fabs(m(0, 0) - m(0, 1) - 2.0 * m(5, 5)) < 1e-9);
}

TEST_CASE("unknown renderings and maps are name errors") {
    CHECK_THROWS_AS(rendering_for("ela4"), Error);
    CHECK_THROWS_AS(voigt_map("kelvin"), Error);
    CHECK_THROWS_AS(induced_matrix(rendering_for("ela3"), FlatTensor::zeros(3, 2)), Error);
}
