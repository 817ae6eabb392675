#include <doctest.h>

#include "oracles.hpp"
#include "symtensor/projector.hpp"

using namespace symtensor;

namespace {

FlatTensor random_member(const std::string& space, std::mt19937_64& rng) {
    const auto& sym = oracle::index_symmetry(space);
    return FlatTensor::from(sym.n, sym.k, oracle::delta_pi(sym) * oracle::random_vector(rng, oracle::power(sym.n, sym.k)));
}

StructureReport report(const char* space, const char* group) {
    const TensorSpace s = space_from_name(space);
    return structure_report(s, group_from_name(group, s.n));
}

std::vector<std::string> displays(const StructureReport& r) {
    std::vector<std::string> out;
    for (const auto& row : r.entries)
        for (const auto& e : row) out.push_back(e.display);
    return out;
}

}  // namespace

TEST_CASE("planar example: SO(2) average of a symmetric matrix") {
    const TensorSpace s = space_from_name("sym2");
    Vector v(4);
    v << 1, 2, 2, 5;
    const FlatTensor p = project(s, group_from_name("so2", 2), FlatTensor::from(2, 2, v));
    CHECK((p.coeffs - (Vector(4) << 3, 0, 0, 3).finished()).cwiseAbs().maxCoeff() < 1e-12);

    std::mt19937_64 rng(51);
    const Vector g = oracle::random_vector(rng, 3);
    Vector w(4);
    w << g(0), g(1), g(1), g(2);
    const FlatTensor q = project(s, group_from_name("so2", 2), FlatTensor::from(2, 2, w));
    CHECK(std::fabs(q.coeffs(0) - 0.5 * (g(0) + g(2))) < 1e-12);
    CHECK(std::fabs(q.coeffs(1)) < 1e-12);
}

TEST_CASE("trivial group gives the symmetrization identity") {
    for (const auto& name : space_catalog_names()) {
        const TensorSpace s = space_from_name(name);
        const FlatOperator a = averaged_projector(s, group_from_name("trivial", s.n));
        CHECK((a.matrix - sym_identity(s).matrix).cwiseAbs().maxCoeff() == 0.0);
    }
}

TEST_CASE("sign-matrix average zeroes the off-diagonal slot") {
    const TensorSpace s = space_from_name("sym2");
    Vector v(4);
    v << 1, 2, 2, 5;
    const FlatTensor p = project(s, group_from_name("d2", 2), FlatTensor::from(2, 2, v));
    CHECK(p.coeffs == (Vector(4) << 1, 0, 0, 5).finished());
}

TEST_CASE("project rejects tensors outside the space") {
    const TensorSpace s = space_from_name("sym2");
    Vector v(4);
    v << 1, 2, 3, 5;
    try {
        project(s, group_from_name("so2", 2), FlatTensor::from(2, 2, v));
        FAIL("expected an error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::Input);
    }
}

TEST_CASE("projection is idempotent and lands in the fixed space") {
    std::mt19937_64 rng(52);
    for (const char* group : {"cubic", "o2-e3", "so3", "d3"}) {
        const TensorSpace s = space_from_name("ela3");
        const SymmetryGroup g = group_from_name(group, 3);
        const FlatOperator a = averaged_projector(s, g);
        const FlatTensor t = random_member("ela3", rng);
        const FlatTensor once = project(a, s, t);
        const FlatTensor twice = project(a, s, once);
        CHECK((once.coeffs - twice.coeffs).cwiseAbs().maxCoeff() < 1e-12);
        CHECK(invariance_residual(once, g) < 1e-10);
        CHECK(equivariance_residual(a, g) < 1e-9);
        CHECK(idempotence_defect(a.matrix) < 1e-9);
    }
}

TEST_CASE("an invariant input is returned unchanged") {
    const TensorSpace s = space_from_name("ela3");
    FlatTensor id = FlatTensor::zeros(3, 4);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            id({i, j, i, j}) += 0.5;
            id({i, j, j, i}) += 0.5;
        }
    const FlatTensor p = project(s, group_from_name("so3", 3), id);
    CHECK((p.coeffs - id.coeffs).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("projection preserves positive definiteness") {
    std::mt19937_64 rng(53);
    const TensorSpace s = space_from_name("ela3");
    FlatTensor id = FlatTensor::zeros(3, 4);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            id({i, j, i, j}) += 0.5;
            id({i, j, j, i}) += 0.5;
        }
    FlatTensor t = random_member("ela3", rng);
    t.coeffs = id.coeffs + 0.2 * t.coeffs;
    const auto min_eig = [](const FlatTensor& x) {
        const VoigtMap& m = voigt_map("mandel3");
        const Matrix mm = induced_matrix(m, m, x);
        return Eigen::SelfAdjointEigenSolver<Matrix>(mm).eigenvalues().minCoeff();
    };
    REQUIRE(min_eig(t) > 0.0);
    for (const char* group : {"cubic", "so2-e3", "d2", "so3"}) {
        CHECK(min_eig(project(s, group_from_name(group, 3), t)) > 0.0);
    }
}

TEST_CASE("structure report invariants") {
    struct Case {
        const char* space;
        const char* group;
    };
    const Case cases[] = {{"ela3", "d2"},    {"ela3", "o2-e3"},  {"ela3", "so3"},     {"major3", "so2-e3"},
                          {"v2bar", "cubic"}, {"v1bar", "cubic"}, {"v1", "so2-e3"},    {"high2", "d4"},
                          {"sym2", "so2"},   {"ela2", "d3"},     {"v2", "o2-e3"},     {"sym3", "z3"}};
    for (const auto& c : cases) {
        INFO(c.space << " x " << c.group);
        const StructureReport r = report(c.space, c.group);
        const TensorSpace s = space_from_name(c.space);
        CHECK(r.dim == fix_dimension(s, group_from_name(c.group, s.n)));
        CHECK(static_cast<int>(r.labels().size() - r.constraints.size()) == r.dim);
        CHECK(r.basis.size() == static_cast<std::size_t>(r.dim));
        // Free label i reads 1 on basis[i] and 0 on the others.
        const Rendering& rend = rendering_for(c.space);
        for (std::size_t b = 0; b < r.basis.size(); ++b) {
            const Matrix m = induced_matrix(rend, r.basis[b]);
            for (int i = 0; i < r.rows; ++i)
                for (int j = 0; j < r.cols; ++j) {
                    const auto& e = r.at(i, j);
                    if (e.kind != EntryKind::Free) continue;
                    const double want = e.label == r.free_labels[b] ? 1.0 : 0.0;
                    CHECK(std::fabs(m(i, j) - want) < 1e-12);
                }
        }
        for (const auto& row : r.entries)
            for (const auto& e : row)
                for (const auto& t : e.combo) {
                    CHECK(std::find(r.free_labels.begin(), r.free_labels.end(), t.label) != r.free_labels.end());
                    CHECK(t.snapped);
                }
        if (rend.symmetric) {
            for (int i = 0; i < r.rows; ++i)
                for (int j = 0; j < i; ++j) CHECK(r.at(i, j).display == r.at(j, i).display);
        }
    }
}

TEST_CASE("orthotropic elasticity pattern") {
    const StructureReport r = report("ela3", "orthotropic");
    const std::vector<std::string> want{"C11", "C12", "C13", "0",   "0",   "0",   "C12", "C22", "C23",
                                        "0",   "0",   "0",   "C13", "C23", "C33", "0",   "0",   "0",
                                        "0",   "0",   "0",   "C44", "0",   "0",   "0",   "0",   "0",
                                        "0",   "C55", "0",   "0",   "0",   "0",   "0",   "0",   "C66"};
    CHECK(displays(r) == want);
    CHECK(r.constraints.empty());
}

TEST_CASE("isotropic reports carry the named relation") {
    CHECK(report("ela3", "so3").constraints == std::vector<std::string>{"C11 = C12 + 2 C44"});
    CHECK(report("major3", "so3").constraints == std::vector<std::string>{"C11 = C12 + C44 + C45"});
    CHECK(report("ela3", "o2-e3").constraints == std::vector<std::string>{"C11 = C12 + 2 C66"});
}

TEST_CASE("D4 planar elasticity") {
    const StructureReport r = report("ela2", "d4");
    CHECK(displays(r) == std::vector<std::string>{"C11", "C12", "0", "C12", "C11", "0", "0", "0", "C33"});
}

TEST_CASE("isotropic moduli") {
    const StructureReport r = report("major3", "so3");
    const IsotropicModuli m = extract_isotropic_moduli(r, {{"C12", 1.0}, {"C44", 3.0}, {"C45", 1.0}});
    CHECK(std::fabs(m.lambda - 1.0) < 1e-12);
    CHECK(std::fabs(m.mu - 2.0) < 1e-12);
    CHECK(std::fabs(m.mu_c - 1.0) < 1e-12);
    CHECK(extract_isotropic_moduli(r, {{"C12", 1.0}, {"C44", 2.0}, {"C45", 2.0}}).mu_c == doctest::Approx(0.0));
    CHECK_THROWS_AS(extract_isotropic_moduli(report("ela3", "so3"), {{"C12", 1.0}}), Error);
    CHECK_THROWS_AS(extract_isotropic_moduli(r, {{"C12", 1.0}}), Error);
    CHECK_THROWS_AS(extract_isotropic_moduli(r, {{"C99", 1.0}, {"C12", 1.0}, {"C44", 1.0}}), Error);
}

TEST_CASE("isotropic matrix round trip") {
    std::mt19937_64 rng(54);
    const StructureReport r = report("major3", "so3");
    for (int t = 0; t < 10; ++t) {
        const Vector v = oracle::random_vector(rng, 3);
        const IsotropicModuli in{v(0), v(1), v(2)};
        const Matrix m = isotropic_matrix(in);
        const IsotropicModuli out = moduli_from_matrix(m);
        CHECK(std::fabs(out.lambda - in.lambda) < 1e-12);
        CHECK(std::fabs(out.mu - in.mu) < 1e-12);
        CHECK(std::fabs(out.mu_c - in.mu_c) < 1e-12);
        const IsotropicModuli via = extract_isotropic_moduli(r, {{"C11", m(0, 0)}, {"C12", m(0, 1)}, {"C44", m(3, 3)}});
        CHECK(std::fabs(via.mu_c - in.mu_c) < 1e-12);
        const FlatTensor tensor = tensor_from_labels(r, {{"C12", m(0, 1)}, {"C44", m(3, 3)}, {"C45", m(3, 4)}});
        CHECK((induced_matrix(rendering_for("major3"), tensor) - m).cwiseAbs().maxCoeff() < 1e-12);
    }
}

TEST_CASE("odd-order tensors vanish under the planar inversion") {
    const TensorSpace odd = make_space("vec2", 2, 1, {});
    const FlatOperator a = averaged_projector(odd, group_from_name("z2", 2));
    CHECK(a.matrix.cwiseAbs().maxCoeff() < 1e-15);
    CHECK(fix_dimension(odd, group_from_name("z2", 2)) == 0);
}
