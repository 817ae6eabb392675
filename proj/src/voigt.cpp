#include "symtensor/voigt.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>
#include <sstream>

namespace symtensor {

namespace {

const double kSqrt2 = std::sqrt(2.0);

std::string digits(const std::vector<int>& idx) {
    std::string s;
    for (int i : idx) s += static_cast<char>('1' + i);
    return s;
}

VoigtMap vector_map(int n) {
    VoigtMap m{"vec" + std::to_string(n), "identity on R^" + std::to_string(n), n, 1, {}};
    for (int i = 0; i < n; ++i) m.slots.push_back({digits({i}), {{i}}, 1.0, 1.0});
    return m;
}

// Symmetric-matrix maps: diagonal first, then the given off-diagonal pairs.
VoigtMap sym_map(std::string name, std::string desc, int n, const std::vector<std::pair<int, int>>& off, double fwd) {
    VoigtMap m{std::move(name), std::move(desc), n, 2, {}};
    for (int i = 0; i < n; ++i) m.slots.push_back({digits({i, i}), {{i, i}}, 1.0, 1.0});
    for (auto [i, j] : off) m.slots.push_back({digits({i, j}), {{i, j}, {j, i}}, fwd, 1.0 / fwd});
    return m;
}

VoigtMap nine_map() {
    VoigtMap m{"nine", "3x3 matrices in the order 11,22,33,23,32,13,31,12,21", 3, 2, {}};
    const int order[9][2] = {{0, 0}, {1, 1}, {2, 2}, {1, 2}, {2, 1}, {0, 2}, {2, 0}, {0, 1}, {1, 0}};
    for (const auto& p : order) m.slots.push_back({digits({p[0], p[1]}), {{p[0], p[1]}}, 1.0, 1.0});
    return m;
}

// (i, j, k) with i, j the symmetric pair and k the free index, 1-based.
const int kNOrder[18][3] = {{1, 1, 1}, {2, 2, 1}, {1, 2, 2}, {3, 3, 1}, {1, 3, 3}, {2, 2, 2},
                            {1, 1, 2}, {1, 2, 1}, {3, 3, 2}, {2, 3, 3}, {3, 3, 3}, {1, 1, 3},
                            {1, 3, 1}, {2, 2, 3}, {2, 3, 2}, {1, 2, 3}, {1, 3, 2}, {2, 3, 1}};

VoigtMap n18_map(bool vector_first) {
    VoigtMap m;
    m.name = vector_first ? "n18-left" : "n18";
    m.description = vector_first ? "R^3 (x) Sym(3) in the orthonormal sigma basis, free index first"
                                 : "Sym(3) (x) R^3 in the orthonormal sigma basis";
    m.n = 3;
    m.order = 3;
    for (const auto& e : kNOrder) {
        const int i = e[0] - 1, j = e[1] - 1, k = e[2] - 1;
        VoigtSlot s;
        s.tag = digits({i, j}) + ";" + digits({k});
        if (vector_first) {
            s.pattern.push_back({k, i, j});
            if (i != j) s.pattern.push_back({k, j, i});
        } else {
            s.pattern.push_back({i, j, k});
            if (i != j) s.pattern.push_back({j, i, k});
        }
        s.forward_scale = i == j ? 1.0 : kSqrt2;
        s.inverse_scale = i == j ? 1.0 : 1.0 / kSqrt2;
        m.slots.push_back(std::move(s));
    }
    return m;
}

VoigtMap high2_map() {
    VoigtMap m{"high2", "third-order planar tensors: odd count of index 1 first, then even", 2, 3, {}};
    const int order[8][3] = {{0, 0, 0}, {0, 1, 1}, {1, 1, 0}, {1, 0, 1}, {1, 1, 1}, {1, 0, 0}, {0, 0, 1}, {0, 1, 0}};
    for (const auto& p : order) m.slots.push_back({digits({p[0], p[1], p[2]}), {{p[0], p[1], p[2]}}, 1.0, 1.0});
    return m;
}

const std::map<std::string, VoigtMap>& registry() {
    static const std::map<std::string, VoigtMap> r = [] {
        std::map<std::string, VoigtMap> m;
        auto put = [&](VoigtMap v) { m.emplace(v.name, std::move(v)); };
        put(vector_map(2));
        put(vector_map(3));
        put(sym_map("voigt3", "Sym(3): 11,22,33,23,13,12 with doubled off-diagonals", 3, {{1, 2}, {0, 2}, {0, 1}}, 2.0));
        put(sym_map("mandel3", "Sym(3): 11,22,33,23,13,12 with sqrt(2) off-diagonals", 3, {{1, 2}, {0, 2}, {0, 1}},
                    kSqrt2));
        put(sym_map("voigt2", "Sym(2): 11,22,12 with doubled off-diagonal", 2, {{0, 1}}, 2.0));
        put(sym_map("mandel2", "Sym(2): 11,22,12 with sqrt(2) off-diagonal", 2, {{0, 1}}, kSqrt2));
        put(nine_map());
        put(n18_map(false));
        put(n18_map(true));
        put(high2_map());
        return m;
    }();
    return r;
}

}  // namespace

Matrix VoigtMap::forward_matrix() const {
    Matrix f = Matrix::Zero(size(), ipow(n, order));
    for (int a = 0; a < size(); ++a) {
        const auto& s = slots[static_cast<std::size_t>(a)];
        const double w = s.forward_scale / static_cast<double>(s.pattern.size());
        for (const auto& p : s.pattern) f(a, static_cast<Eigen::Index>(flat_index(n, p))) = w;
    }
    return f;
}

Matrix VoigtMap::inverse_matrix() const {
    Matrix g = Matrix::Zero(ipow(n, order), size());
    for (int a = 0; a < size(); ++a) {
        const auto& s = slots[static_cast<std::size_t>(a)];
        for (const auto& p : s.pattern) g(static_cast<Eigen::Index>(flat_index(n, p)), a) = s.inverse_scale;
    }
    return g;
}

Vector VoigtMap::forward(const Vector& flat) const {
    if (flat.size() != ipow(n, order)) throw Error(ErrorKind::Input, name + ": wrong input length");
    const double scale = std::max(1.0, flat.cwiseAbs().maxCoeff());
    Vector out(size());
    for (int a = 0; a < size(); ++a) {
        const auto& s = slots[static_cast<std::size_t>(a)];
        const double v0 = flat(static_cast<Eigen::Index>(flat_index(n, s.pattern.front())));
        for (const auto& p : s.pattern) {
            if (std::fabs(flat(static_cast<Eigen::Index>(flat_index(n, p))) - v0) > 1e-12 * scale) {
                throw Error(ErrorKind::Input, name + ": input lacks the symmetry of slot " + s.tag);
            }
        }
        out(a) = s.forward_scale * v0;
    }
    return out;
}

Vector VoigtMap::inverse(const Vector& v) const {
    if (v.size() != size()) throw Error(ErrorKind::Input, name + ": wrong slot count");
    Vector out = Vector::Zero(ipow(n, order));
    for (int a = 0; a < size(); ++a) {
        const auto& s = slots[static_cast<std::size_t>(a)];
        for (const auto& p : s.pattern) out(static_cast<Eigen::Index>(flat_index(n, p))) = s.inverse_scale * v(a);
    }
    return out;
}

const VoigtMap& voigt_map(const std::string& name) {
    const auto& r = registry();
    auto it = r.find(name);
    if (it == r.end()) throw Error(ErrorKind::Name, "unknown Voigt map '" + name + "'");
    return it->second;
}

const std::vector<std::string>& voigt_map_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> v;
        for (const auto& [k, m] : registry()) v.push_back(k);
        return v;
    }();
    return names;
}

const Rendering& rendering_for(const std::string& space_name) {
    static const std::map<std::string, Rendering> r{
        {"sym2", {"vec2", "vec2", false, true, "C"}},
        {"sym3", {"vec3", "vec3", false, true, "C"}},
        {"ela2", {"voigt2", "voigt2", false, true, "C"}},
        {"ela3", {"voigt3", "voigt3", false, true, "C"}},
        {"major3", {"nine", "nine", false, true, "C"}},
        {"v1", {"n18-left", "voigt3", false, false, "H"}},
        {"v1bar", {"n18-left", "voigt3", true, false, "H"}},
        {"v2", {"n18-left", "n18-left", false, true, "G"}},
        {"v2bar", {"n18", "n18", false, true, "G"}},
        {"high2", {"high2", "high2", false, true, "L"}},
    };
    auto it = r.find(space_name);
    if (it == r.end()) throw Error(ErrorKind::Name, "no Voigt rendering registered for space '" + space_name + "'");
    return it->second;
}

Matrix induced_matrix(const VoigtMap& row, const VoigtMap& col, const FlatTensor& t, bool rows_trailing) {
    if (t.n != row.n || t.n != col.n || t.k != row.order + col.order) {
        std::ostringstream os;
        os << "tensor (n=" << t.n << ", k=" << t.k << ") does not fit maps " << row.name << " x " << col.name;
        throw Error(ErrorKind::Input, os.str());
    }
    using RowMajor = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
    const int nr = ipow(t.n, row.order);
    const int nc = ipow(t.n, col.order);
    const Matrix gr = row.inverse_matrix();
    const Matrix gc = col.inverse_matrix();
    if (!rows_trailing) {
        Eigen::Map<const RowMajor> tm(t.coeffs.data(), nr, nc);
        return gr.transpose() * tm * gc;
    }
    Eigen::Map<const RowMajor> tm(t.coeffs.data(), nc, nr);
    return gr.transpose() * tm.transpose() * gc;
}

Matrix induced_matrix(const Rendering& r, const FlatTensor& t) {
    return induced_matrix(voigt_map(r.row_map), voigt_map(r.col_map), t, r.rows_trailing);
}

namespace {

Vector flat_of(const Matrix& x) {
    Vector v(x.size());
    for (Eigen::Index i = 0; i < x.rows(); ++i)
        for (Eigen::Index j = 0; j < x.cols(); ++j) v(i * x.cols() + j) = x(i, j);
    return v;
}

Matrix square_of(const Vector& v, int n) {
    Matrix x(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) x(i, j) = v(i * n + j);
    return x;
}

void need_3x3(const Matrix& x) {
    if (x.rows() != 3 || x.cols() != 3) throw Error(ErrorKind::Input, "expected a 3x3 matrix");
}

}  // namespace

Vector voigt_forward(const Matrix& x) {
    need_3x3(x);
    return voigt_map("voigt3").forward(flat_of(x));
}

Matrix voigt_inverse(const Vector& v) { return square_of(voigt_map("voigt3").inverse(v), 3); }

Vector mandel_forward(const Matrix& x) {
    need_3x3(x);
    return voigt_map("mandel3").forward(flat_of(x));
}

Matrix mandel_inverse(const Vector& v) { return square_of(voigt_map("mandel3").inverse(v), 3); }

Vector nine_slot_forward(const Matrix& x) {
    need_3x3(x);
    return voigt_map("nine").forward(flat_of(x));
}

Matrix nine_slot_inverse(const Vector& v) { return square_of(voigt_map("nine").inverse(v), 3); }

Vector extended_n_forward(const FlatTensor& t) {
    if (t.n != 3 || t.k != 3) throw Error(ErrorKind::Input, "extended map needs a third-order tensor over R^3");
    return voigt_map("n18").forward(t.coeffs);
}

FlatTensor extended_n_inverse(const Vector& v) { return FlatTensor::from(3, 3, voigt_map("n18").inverse(v)); }

Eigen::Vector3d axl(const Matrix& a) {
    need_3x3(a);
    const double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
    if ((a + a.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale) {
        throw Error(ErrorKind::Input, "axl needs a skew-symmetric matrix");
    }
    // (axl A)_k = -1/2 eps_kij A_ij
    return Eigen::Vector3d(-0.5 * (a(1, 2) - a(2, 1)), -0.5 * (a(2, 0) - a(0, 2)), -0.5 * (a(0, 1) - a(1, 0)));
}

Matrix anti(const Eigen::Vector3d& a) {
    Matrix m(3, 3);
    m << 0.0, -a(2), a(1), a(2), 0.0, -a(0), -a(1), a(0), 0.0;
    return m;
}

}  // namespace symtensor
