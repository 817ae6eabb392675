#include "symtensor/verify.hpp"

#include "symtensor/projector.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <set>
#include <sstream>

namespace symtensor {

namespace {

struct DimCase {
    const char* space;
    const char* group;
    int expected;
};

const DimCase kDims[] = {
    {"ela3", "orthotropic", 9}, {"ela3", "o2-e3", 5},     {"ela3", "cubic", 3},      {"ela3", "so3", 2},
    {"major3", "trivial", 45},  {"major3", "orthotropic", 15}, {"major3", "so2-e3", 11}, {"major3", "o2-e3", 8},
    {"major3", "cubic", 4},     {"major3", "so3", 3},     {"v1", "cubic", 3},        {"v1bar", "cubic", 3},
    {"v2", "cubic", 11},        {"v2bar", "cubic", 11},   {"v2bar", "so2-e3", 31},   {"v2bar", "o2-e3", 21},
    {"sym2", "o2", 1},          {"sym2", "d4", 1},        {"sym2", "d2", 2},         {"sym2", "z2", 3},
    {"ela2", "d4", 3},          {"high2", "d4", 10},      {"high2", "d2", 20},       {"high2", "z2", 36},
};

struct ConstraintCase {
    const char* space;
    const char* group;
    const char* constraint;
};

const ConstraintCase kConstraints[] = {
    {"ela3", "o2-e3", "C11 = C12 + 2 C66"},
    {"major3", "o2-e3", "C11 = C12 + C88 + C89"},
    {"major3", "so3", "C11 = C12 + C44 + C45"},
    {"ela3", "so3", "C11 = C12 + 2 C44"},
};

std::string fmt(double x) {
    std::ostringstream os;
    os.precision(15);
    os << x;
    return os.str();
}

SymmetryGroup group_for(const TensorSpace& s, const std::string& g) { return group_from_name(g, s.n); }

// Runs `body`, turning a library error into a failed row.
VerifyRow guarded(std::string category, std::string id, std::string expected, const std::function<std::string()>& body,
                  const std::function<bool(const std::string&)>& ok) {
    VerifyRow row{std::move(category), std::move(id), std::move(expected), "", false};
    try {
        row.actual = body();
        row.pass = ok(row.actual);
    } catch (const std::exception& ex) {
        row.actual = std::string("error: ") + ex.what();
    }
    return row;
}

void dims_rows(std::vector<VerifyRow>& out) {
    for (const auto& c : kDims) {
        out.push_back(guarded(
            "dims", std::string(c.space) + " x " + c.group, std::to_string(c.expected),
            [&] {
                const TensorSpace s = space_from_name(c.space);
                return std::to_string(fix_dimension(s, group_for(s, c.group)));
            },
            [&](const std::string& a) { return a == std::to_string(c.expected); }));
    }
}

void character_rows(std::vector<VerifyRow>& out) {
    for (const auto& name : space_catalog_names()) {
        const SpaceCatalogEntry& e = catalog_entry(name);
        out.push_back(guarded(
            "characters", name + " chi(I)", std::to_string(e.expected_dim),
            [&] { return fmt(character_closed_form(e.space, Matrix::Identity(e.space.n, e.space.n)).value); },
            [&](const std::string& a) { return std::fabs(std::stod(a) - e.expected_dim) < 1e-9; }));
        const Matrix q = e.space.n == 3 ? rotation3d(Eigen::Vector3d(1.0, 2.0, 3.0).normalized(), 0.7) : rotation2d(0.7);
        double direct = 0.0;
        out.push_back(guarded(
            "characters", name + " closed form vs direct", "|diff| < 1e-9",
            [&] {
                direct = character_direct(e.space, q);
                return fmt(std::fabs(character_closed_form(e.space, q).value - direct));
            },
            [](const std::string& a) { return std::stod(a) < 1e-9; }));
    }
}

void structure_rows(std::vector<VerifyRow>& out) {
    for (const auto& c : kConstraints) {
        out.push_back(guarded(
            "structure", std::string(c.space) + " x " + c.group + " constraint", c.constraint,
            [&] {
                const TensorSpace s = space_from_name(c.space);
                const StructureReport r = structure_report(s, group_for(s, c.group));
                std::string all;
                for (const auto& k : r.constraints) all += (all.empty() ? "" : "; ") + k;
                return all;
            },
            [&](const std::string& a) { return a == c.constraint; }));
    }
}

void projector_rows(std::vector<VerifyRow>& out) {
    out.push_back(guarded(
        "projector", "sym2 x so2 on [[1,2],[2,5]]", "3,0,0,3",
        [] {
            const TensorSpace s = space_from_name("sym2");
            Vector v(4);
            v << 1, 2, 2, 5;
            const FlatTensor p = project(s, group_for(s, "so2"), FlatTensor::from(2, 2, v));
            Vector want(4);
            want << 3, 0, 0, 3;
            std::ostringstream os;
            os << "max deviation " << fmt((p.coeffs - want).cwiseAbs().maxCoeff());
            return os.str();
        },
        [](const std::string& a) { return std::stod(a.substr(a.rfind(' ') + 1)) < 1e-12; }));
}

void haar_rows(std::vector<VerifyRow>& out) {
    out.push_back(guarded(
        "haar", "so2: integral of 3cos^2 - sin^2", "1",
        [] {
            return fmt(integrate(group_from_name("so2", 2), [](const Matrix& q) {
                const double c = q(0, 0), s = q(1, 0);
                return 3.0 * c * c - s * s;
            }));
        },
        [](const std::string& a) { return std::fabs(std::stod(a) - 1.0) < 1e-12; }));
    for (const char* g : {"so3", "so2-e3", "o2-e3"}) {
        out.push_back(guarded(
            "haar", std::string(g) + " normalization", "1",
            [&] { return fmt(integrate(group_from_name(g, 3), [](const Matrix&) { return 1.0; })); },
            [](const std::string& a) { return std::fabs(std::stod(a) - 1.0) < 1e-12; }));
    }
}

void moduli_rows(std::vector<VerifyRow>& out) {
    out.push_back(guarded(
        "moduli", "C12=1, C44=3, C45=1", "(1, 2, 1)",
        [] {
            const TensorSpace s = space_from_name("major3");
            const StructureReport r = structure_report(s, group_for(s, "so3"));
            const IsotropicModuli m = extract_isotropic_moduli(r, {{"C12", 1.0}, {"C44", 3.0}, {"C45", 1.0}});
            const double dev = std::max({std::fabs(m.lambda - 1.0), std::fabs(m.mu - 2.0), std::fabs(m.mu_c - 1.0)});
            return "(" + fmt(m.lambda) + ", " + fmt(m.mu) + ", " + fmt(m.mu_c) + ") deviation " + fmt(dev);
        },
        [](const std::string& a) { return std::stod(a.substr(a.rfind(' ') + 1)) < 1e-12; }));
}

void voigt_rows(std::vector<VerifyRow>& out) {
    out.push_back(guarded(
        "voigt", "ela3 identity rendered", "diag(1,1,1,1/2,1/2,1/2)",
        [] {
            // I_ijkl = (d_ik d_jl + d_il d_jk) / 2
            FlatTensor t = FlatTensor::zeros(3, 4);
            for (int i = 0; i < 3; ++i)
                for (int j = 0; j < 3; ++j) {
                    t({i, j, i, j}) += 0.5;
                    t({i, j, j, i}) += 0.5;
                }
            const Matrix m = induced_matrix(rendering_for("ela3"), t);
            std::ostringstream os;
            for (int a = 0; a < 6; ++a) os << (a ? "," : "") << fmt(m(a, a));
            const double off = (m - Matrix(m.diagonal().asDiagonal())).cwiseAbs().maxCoeff();
            if (off != 0.0) os << " off-diagonal " << fmt(off);
            return os.str();
        },
        [](const std::string& a) { return a == "1,1,1,0.5,0.5,0.5"; }));
    out.push_back(guarded(
        "voigt", "n18 slot 16 is sigma_123", "12;3",
        [] { return voigt_map("n18").slots[15].tag; }, [](const std::string& a) { return a == "12;3"; }));
}

}  // namespace

const std::vector<std::string>& verify_categories() {
    static const std::vector<std::string> c{"dims", "characters", "structure", "projector", "haar", "moduli", "voigt"};
    return c;
}

std::vector<VerifyRow> run_reference_table(const std::string& filter) {
    std::set<std::string> want;
    if (filter.empty() || filter == "all") {
        want.insert(verify_categories().begin(), verify_categories().end());
    } else {
        std::stringstream ss(filter);
        std::string item;
        while (std::getline(ss, item, ',')) {
            bool known = false;
            for (const auto& c : verify_categories()) known = known || c == item;
            if (!known) throw Error(ErrorKind::Name, "unknown verification row set '" + item + "'");
            want.insert(item);
        }
    }
    std::vector<VerifyRow> out;
    if (want.count("dims")) dims_rows(out);
    if (want.count("characters")) character_rows(out);
    if (want.count("structure")) structure_rows(out);
    if (want.count("projector")) projector_rows(out);
    if (want.count("haar")) haar_rows(out);
    if (want.count("moduli")) moduli_rows(out);
    if (want.count("voigt")) voigt_rows(out);
    return out;
}

}  // namespace symtensor
