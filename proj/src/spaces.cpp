#include "symtensor/spaces.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>
#include <set>
#include <sstream>

namespace symtensor {

namespace {

Permutation identity_perm(int k) {
    Permutation p(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) p[static_cast<std::size_t>(i)] = i;
    return p;
}

Permutation compose(const Permutation& a, const Permutation& b) {
    Permutation c(a.size());
    for (std::size_t m = 0; m < a.size(); ++m) c[m] = b[static_cast<std::size_t>(a[m])];
    return c;
}

bool valid_perm(const Permutation& p, int k) {
    if (static_cast<int>(p.size()) != k) return false;
    std::vector<bool> seen(static_cast<std::size_t>(k), false);
    for (int v : p) {
        if (v < 0 || v >= k || seen[static_cast<std::size_t>(v)]) return false;
        seen[static_cast<std::size_t>(v)] = true;
    }
    return true;
}

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

std::vector<SpaceCatalogEntry> build_catalog() {
    std::vector<SpaceCatalogEntry> c;
    auto add = [&](const std::string& name, int n, int k, std::vector<Permutation> gens, std::string desc,
                   std::optional<ClosedForm> cf, int dim) {
        c.push_back({make_space(name, n, k, std::move(gens)), std::move(desc), std::move(cf), dim});
    };
    add("sym2", 2, 2, {swap_indices(2, 1, 2)}, "symmetric 2x2 matrices", ClosedForm{{-1, 0, 1}, {1, 0, 1}}, 3);
    add("sym3", 3, 2, {swap_indices(2, 1, 2)}, "symmetric 3x3 matrices", ClosedForm{{0, -1, 1}, {}}, 6);
    add("ela2", 2, 4, {swap_indices(4, 1, 2), swap_indices(4, 3, 4), swap_blocks(4, 1, 3, 2)},
        "planar elasticity tensors (minor and major symmetry)", ClosedForm{{2, 0, -3, 0, 1}, {2, 0, 3, 0, 1}}, 6);
    add("ela3", 3, 4, {swap_indices(4, 1, 2), swap_indices(4, 3, 4), swap_blocks(4, 1, 3, 2)},
        "elasticity tensors (minor and major symmetry)", ClosedForm{{0, 1, 2, -3, 1}, {}}, 21);
    add("major3", 3, 4, {swap_blocks(4, 1, 3, 2)}, "fourth-order tensors with major symmetry only",
        ClosedForm{{0, 0, 2, -2, 1}, {}}, 45);
    add("v1", 3, 5, {swap_indices(5, 2, 3), swap_indices(5, 4, 5)}, "H_abcde = H_acbde = H_abced",
        ClosedForm{{0, 0, 0, 1, -2, 1}, {}}, 108);
    add("v1bar", 3, 5, {swap_indices(5, 1, 2), swap_indices(5, 4, 5)}, "H_abcde = H_bacde = H_abced",
        ClosedForm{{0, 0, 0, 1, -2, 1}, {}}, 108);
    add("v2", 3, 6, {swap_indices(6, 2, 3), swap_indices(6, 5, 6), swap_blocks(6, 1, 4, 3)},
        "G_abcdef = G_acbdef = G_abcdfe = G_defabc", ClosedForm{{0, 0, -2, -2, 6, -4, 1}, {}}, 171);
    add("v2bar", 3, 6, {swap_indices(6, 1, 2), swap_indices(6, 4, 5), swap_blocks(6, 1, 4, 3)},
        "G_abcdef = G_bacdef = G_abcedf = G_defabc", ClosedForm{{0, 0, -2, -2, 6, -4, 1}, {}}, 171);
    add("high2", 2, 6, {swap_blocks(6, 1, 4, 3)}, "symmetric maps on third-order planar tensors",
        ClosedForm{{-4, 0, 6, 0, -3, 0, 1}, {4, 0, 6, 0, 3, 0, 1}}, 36);
    return c;
}

const std::vector<SpaceCatalogEntry>& catalog() {
    static const std::vector<SpaceCatalogEntry> c = build_catalog();
    return c;
}

}  // namespace

Permutation swap_indices(int k, int a, int b) {
    Permutation p = identity_perm(k);
    std::swap(p[static_cast<std::size_t>(a - 1)], p[static_cast<std::size_t>(b - 1)]);
    return p;
}

Permutation swap_blocks(int k, int first_a, int first_b, int len) {
    Permutation p = identity_perm(k);
    for (int i = 0; i < len; ++i) {
        std::swap(p[static_cast<std::size_t>(first_a - 1 + i)], p[static_cast<std::size_t>(first_b - 1 + i)]);
    }
    return p;
}

TensorSpace make_space(const std::string& name, int n, int k, std::vector<Permutation> generators) {
    if (n < 1 || k < 1 || k > 6) throw Error(ErrorKind::Input, "space needs n >= 1 and 1 <= k <= 6");
    for (const auto& g : generators) {
        if (!valid_perm(g, k)) throw Error(ErrorKind::Input, "invalid permutation generator for space " + name);
    }
    TensorSpace s;
    s.name = name;
    s.n = n;
    s.k = k;
    s.generators = std::move(generators);
    std::set<Permutation> seen;
    std::vector<Permutation> order{identity_perm(k)};
    seen.insert(order.front());
    for (std::size_t i = 0; i < order.size(); ++i) {
        for (const auto& g : s.generators) {
            Permutation next = compose(order[i], g);
            if (seen.insert(next).second) order.push_back(next);
        }
    }
    s.group = std::move(order);
    return s;
}

const std::vector<std::string>& space_catalog_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> v;
        for (const auto& e : catalog()) v.push_back(e.space.name);
        return v;
    }();
    return names;
}

const SpaceCatalogEntry& catalog_entry(const std::string& raw) {
    const std::string name = lower(raw);
    for (const auto& e : catalog()) {
        if (e.space.name == name) return e;
    }
    throw Error(ErrorKind::Name, "unknown space '" + raw + "'");
}

TensorSpace space_from_name(const std::string& name) { return catalog_entry(name).space; }

FlatOperator permutation_operator(int n, int k, const Permutation& p) {
    if (!valid_perm(p, k)) throw Error(ErrorKind::Input, "invalid permutation");
    const int N = ipow(n, k);
    FlatOperator op;
    op.n = n;
    op.k = k;
    op.matrix = Matrix::Zero(N, N);
    std::vector<int> src(static_cast<std::size_t>(k));
    for (int f = 0; f < N; ++f) {
        const std::vector<int> idx = multi_index(n, k, static_cast<std::size_t>(f));
        for (int m = 0; m < k; ++m) src[static_cast<std::size_t>(m)] = idx[static_cast<std::size_t>(p[static_cast<std::size_t>(m)])];
        op.matrix(f, static_cast<Eigen::Index>(flat_index(n, src))) = 1.0;
    }
    return op;
}

FlatOperator sym_identity(const TensorSpace& space) {
    const int N = ipow(space.n, space.k);
    FlatOperator pi;
    pi.n = space.n;
    pi.k = space.k;
    pi.matrix = Matrix::Zero(N, N);
    const double w = 1.0 / static_cast<double>(space.group.size());
    std::vector<int> src(static_cast<std::size_t>(space.k));
    for (const auto& p : space.group) {
        for (int f = 0; f < N; ++f) {
            const std::vector<int> idx = multi_index(space.n, space.k, static_cast<std::size_t>(f));
            for (int m = 0; m < space.k; ++m) {
                src[static_cast<std::size_t>(m)] = idx[static_cast<std::size_t>(p[static_cast<std::size_t>(m)])];
            }
            pi.matrix(f, static_cast<Eigen::Index>(flat_index(space.n, src))) += w;
        }
    }
    return pi;
}

int space_dim(const TensorSpace& space) {
    const double tr = operator_trace(sym_identity(space));
    const double r = std::round(tr);
    if (std::fabs(tr - r) > 1e-9) throw Error(ErrorKind::Internal, "non-integer trace of symmetrization identity");
    return static_cast<int>(r);
}

double membership_residual(const TensorSpace& space, const FlatTensor& t) {
    if (t.n != space.n || t.k != space.k) {
        std::ostringstream os;
        os << "tensor (n=" << t.n << ", k=" << t.k << ") does not match space " << space.name << " (n=" << space.n
           << ", k=" << space.k << ")";
        throw Error(ErrorKind::Input, os.str());
    }
    t.validate();
    const Vector r = sym_identity(space).matrix * t.coeffs - t.coeffs;
    return r.size() ? r.cwiseAbs().maxCoeff() : 0.0;
}

Matrix space_basis(const TensorSpace& space) {
    // Orbit-sum basis: one normalized vector per orbit of flat indices.
    const int N = ipow(space.n, space.k);
    std::vector<int> rep(static_cast<std::size_t>(N), -1);
    std::vector<std::vector<int>> orbits;
    std::vector<int> src(static_cast<std::size_t>(space.k));
    for (int f = 0; f < N; ++f) {
        if (rep[static_cast<std::size_t>(f)] >= 0) continue;
        const std::vector<int> idx = multi_index(space.n, space.k, static_cast<std::size_t>(f));
        std::set<int> orbit;
        for (const auto& p : space.group) {
            for (int m = 0; m < space.k; ++m) {
                src[static_cast<std::size_t>(m)] = idx[static_cast<std::size_t>(p[static_cast<std::size_t>(m)])];
            }
            orbit.insert(static_cast<int>(flat_index(space.n, src)));
        }
        for (int o : orbit) rep[static_cast<std::size_t>(o)] = static_cast<int>(orbits.size());
        orbits.emplace_back(orbit.begin(), orbit.end());
    }
    Matrix b = Matrix::Zero(N, static_cast<Eigen::Index>(orbits.size()));
    for (std::size_t j = 0; j < orbits.size(); ++j) {
        const double v = 1.0 / std::sqrt(static_cast<double>(orbits[j].size()));
        for (int o : orbits[j]) b(o, static_cast<Eigen::Index>(j)) = v;
    }
    return b;
}

}  // namespace symtensor
