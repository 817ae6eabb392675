#include "symtensor/groups.hpp"

#include <boost/math/quadrature/gauss.hpp>

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <numbers>
#include <sstream>
#include <utility>

namespace symtensor {

namespace {

constexpr double kPi = std::numbers::pi;

// Snap entries that are numerically 0, +-1/2 or +-1 so products of finite
// group elements land exactly on the element list.
Matrix clean(Matrix m) {
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            double& v = m(i, j);
            for (double target : {0.0, 0.5, -0.5, 1.0, -1.0}) {
                if (std::fabs(v - target) < 1e-14) v = target;
            }
        }
    }
    return m;
}

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

std::string angle_label(int j, int n) {
    std::ostringstream os;
    if (j == 0) return "0";
    os << "2π·" << j << "/" << n;
    return os.str();
}

Matrix conj(const Matrix& frame, const Matrix& q) { return clean(frame * q * frame.transpose()); }

Matrix diag3(double a, double b, double c) {
    Matrix m = Matrix::Zero(3, 3);
    m(0, 0) = a;
    m(1, 1) = b;
    m(2, 2) = c;
    return m;
}

Matrix reflection2d() {
    Matrix r = Matrix::Identity(2, 2);
    r(0, 0) = -1.0;
    return r;
}

Matrix rot_e3(double theta) {
    Matrix m = Matrix::Identity(3, 3);
    m.topLeftCorner(2, 2) = rotation2d(theta);
    return m;
}

std::vector<GroupElement> cyclic2d(int n) {
    std::vector<GroupElement> out;
    for (int j = 0; j < n; ++j) out.push_back({clean(rotation2d(2.0 * kPi * j / n)), "rot(" + angle_label(j, n) + ")"});
    return out;
}

std::vector<GroupElement> cyclic3d(int n, const Matrix& frame) {
    std::vector<GroupElement> out;
    for (int j = 0; j < n; ++j) {
        out.push_back({conj(frame, rot_e3(2.0 * kPi * j / n)), "rot(axis, " + angle_label(j, n) + ")"});
    }
    return out;
}

std::vector<GroupElement> cubic_elements(const Matrix& frame) {
    std::vector<GroupElement> out;
    std::array<int, 3> perm{0, 1, 2};
    do {
        for (int signs = 0; signs < 8; ++signs) {
            Matrix m = Matrix::Zero(3, 3);
            for (int r = 0; r < 3; ++r) m(r, perm[static_cast<std::size_t>(r)]) = (signs >> r) & 1 ? -1.0 : 1.0;
            if (m.determinant() > 0.0) {
                std::ostringstream os;
                os << "signed-perm(" << perm[0] + 1 << perm[1] + 1 << perm[2] + 1 << ", s" << signs << ")";
                out.push_back({conj(frame, m), os.str()});
            }
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return out;
}

void verify_finite(const SymmetryGroup& g, std::size_t expected) {
    if (g.elements.size() != expected) {
        std::ostringstream os;
        os << g.catalog_id << ": expected " << expected << " elements, built " << g.elements.size();
        throw Error(ErrorKind::Internal, os.str());
    }
    const ClosureReport rep = closure_check(g);
    if (!rep.pass) throw Error(ErrorKind::Internal, g.catalog_id + ": " + rep.message);
}

// Gauss-Legendre nodes/weights on [-1, 1] for n points.
template <std::size_t N>
void gauss_fill(std::vector<double>& x, std::vector<double>& w) {
    using rule = boost::math::quadrature::gauss<double, N>;
    const auto& a = rule::abscissa();
    const auto& wt = rule::weights();
    x.clear();
    w.clear();
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0.0) {
            x.push_back(0.0);
            w.push_back(wt[i]);
        } else {
            x.push_back(-a[i]);
            w.push_back(wt[i]);
            x.push_back(a[i]);
            w.push_back(wt[i]);
        }
    }
}

template <std::size_t... I>
void gauss_dispatch(std::size_t n, std::vector<double>& x, std::vector<double>& w, std::index_sequence<I...>) {
    bool done = false;
    ((n == I + 1 ? (gauss_fill<I + 1>(x, w), done = true) : false), ...);
    if (!done) throw Error(ErrorKind::Quadrature, "unsupported Gauss-Legendre size " + std::to_string(n));
}

void gauss_legendre(std::size_t n, std::vector<double>& x, std::vector<double>& w) {
    gauss_dispatch(n, x, w, std::make_index_sequence<kMaxHaarDegree + 1>{});
    // Sort ascending so node order is reproducible and readable.
    std::vector<std::size_t> ord(x.size());
    for (std::size_t i = 0; i < ord.size(); ++i) ord[i] = i;
    std::sort(ord.begin(), ord.end(), [&](std::size_t a, std::size_t b) { return x[a] < x[b]; });
    std::vector<double> xs, ws;
    for (std::size_t i : ord) {
        xs.push_back(x[i]);
        ws.push_back(w[i]);
    }
    x.swap(xs);
    w.swap(ws);
}

Matrix cardan(double phi, double theta, double psi) {
    const double cf = std::cos(phi), sf = std::sin(phi);
    const double ct = std::cos(theta), st = std::sin(theta);
    const double cp = std::cos(psi), sp = std::sin(psi);
    Matrix rf(3, 3), rt(3, 3), rp(3, 3);
    rf << 1, 0, 0, 0, cf, sf, 0, -sf, cf;
    rt << ct, 0, -st, 0, 1, 0, st, 0, ct;
    rp << cp, -sp, 0, sp, cp, 0, 0, 0, 1;
    return rf * rt * rp;
}

}  // namespace

Matrix rotation2d(double theta) {
    Matrix m(2, 2);
    const double c = std::cos(theta), s = std::sin(theta);
    m << c, -s, s, c;
    return m;
}

Matrix rotation3d(const Eigen::Vector3d& axis, double theta) {
    return Eigen::AngleAxisd(theta, axis.normalized()).toRotationMatrix();
}

Matrix frame_for_axis(const Eigen::Vector3d& axis) {
    const double norm = axis.norm();
    if (!(norm > 1e-12)) throw Error(ErrorKind::Input, "axis must be a nonzero vector");
    const Eigen::Vector3d a = axis / norm;
    if ((a - Eigen::Vector3d::UnitZ()).norm() < 1e-14) return Matrix::Identity(3, 3);
    if ((a + Eigen::Vector3d::UnitZ()).norm() < 1e-14) return diag3(1.0, -1.0, -1.0);
    Eigen::Quaterniond q = Eigen::Quaterniond::FromTwoVectors(Eigen::Vector3d::UnitZ(), a);
    return q.toRotationMatrix();
}

SymmetryGroup make_finite_group(FiniteKind kind, int order_param, const Eigen::Vector3d& axis) {
    if (order_param < 1) throw Error(ErrorKind::Input, "order parameter must be >= 1");
    if (std::fabs(axis.norm() - 1.0) > 1e-9) throw Error(ErrorKind::Input, "axis must be a unit vector");
    SymmetryGroup g;
    g.finite = true;
    g.frame = frame_for_axis(axis);
    const int n = order_param;
    switch (kind) {
        case FiniteKind::Trivial: {
            // order_param carries the ambient dimension here (2 or 3).
            g.ambient = n == 2 ? 2 : 3;
            g.catalog_id = "trivial";
            g.elements.push_back({Matrix::Identity(g.ambient, g.ambient), "id"});
            if (g.ambient == 2) g.frame = Matrix::Identity(2, 2);
            verify_finite(g, 1);
            break;
        }
        case FiniteKind::Zn2D: {
            g.ambient = 2;
            g.frame = Matrix::Identity(2, 2);
            g.catalog_id = "z" + std::to_string(n);
            g.elements = cyclic2d(n);
            if (n > 1) g.generators.push_back(g.elements[1]);
            verify_finite(g, static_cast<std::size_t>(n));
            break;
        }
        case FiniteKind::Dn2D: {
            g.ambient = 2;
            g.frame = Matrix::Identity(2, 2);
            g.catalog_id = "d" + std::to_string(n);
            const auto rots = cyclic2d(n);
            g.elements = rots;
            for (const auto& e : rots) g.elements.push_back({clean(e.matrix * reflection2d()), e.label + "·R"});
            if (n > 1) g.generators.push_back(rots[1]);
            g.generators.push_back({reflection2d(), "R"});
            verify_finite(g, static_cast<std::size_t>(2 * n));
            break;
        }
        case FiniteKind::Zn3D: {
            g.ambient = 3;
            g.catalog_id = "z" + std::to_string(n);
            g.elements = cyclic3d(n, g.frame);
            if (n > 1) g.generators.push_back(g.elements[1]);
            verify_finite(g, static_cast<std::size_t>(n));
            break;
        }
        case FiniteKind::Dn3D: {
            g.ambient = 3;
            g.catalog_id = "d" + std::to_string(n);
            const auto rots = cyclic3d(n, g.frame);
            const Matrix flip = conj(g.frame, diag3(1.0, -1.0, -1.0));
            g.elements = rots;
            for (const auto& e : rots) g.elements.push_back({clean(e.matrix * flip), e.label + "·flip"});
            if (n > 1) g.generators.push_back(rots[1]);
            g.generators.push_back({flip, "flip"});
            verify_finite(g, static_cast<std::size_t>(2 * n));
            break;
        }
        case FiniteKind::CubicO: {
            g.ambient = 3;
            g.catalog_id = "cubic";
            g.elements = cubic_elements(g.frame);
            Matrix cyc(3, 3);
            cyc << 0, 0, 1, 1, 0, 0, 0, 1, 0;
            g.generators.push_back({conj(g.frame, rot_e3(kPi / 2.0)), "rot(axis, π/2)"});
            g.generators.push_back({conj(g.frame, cyc), "rot(111, 2π/3)"});
            verify_finite(g, 24);
            break;
        }
    }
    return g;
}

SymmetryGroup make_continuous_group(ContinuousId id, const Eigen::Vector3d& axis) {
    if (std::fabs(axis.norm() - 1.0) > 1e-9) throw Error(ErrorKind::Input, "axis must be a unit vector");
    SymmetryGroup g;
    g.finite = false;
    g.continuous = id;
    switch (id) {
        case ContinuousId::SO2_2D:
            g.ambient = 2;
            g.catalog_id = "so2";
            g.frame = Matrix::Identity(2, 2);
            g.generators.push_back({rotation2d(1.0), "rot(1)"});
            break;
        case ContinuousId::O2_2D:
            g.ambient = 2;
            g.catalog_id = "o2";
            g.frame = Matrix::Identity(2, 2);
            g.generators.push_back({rotation2d(1.0), "rot(1)"});
            g.generators.push_back({reflection2d(), "R"});
            break;
        case ContinuousId::SO2_e3:
            g.ambient = 3;
            g.catalog_id = "so2-e3";
            g.frame = frame_for_axis(axis);
            g.generators.push_back({conj(g.frame, rot_e3(1.0)), "rot(axis, 1)"});
            break;
        case ContinuousId::O2_e3:
            g.ambient = 3;
            g.catalog_id = "o2-e3";
            g.frame = frame_for_axis(axis);
            g.generators.push_back({conj(g.frame, rot_e3(1.0)), "rot(axis, 1)"});
            g.generators.push_back({conj(g.frame, diag3(1.0, -1.0, -1.0)), "flip"});
            break;
        case ContinuousId::SO3:
            g.ambient = 3;
            g.catalog_id = "so3";
            g.frame = Matrix::Identity(3, 3);
            g.generators.push_back({rotation3d(Eigen::Vector3d::UnitZ(), 1.0), "rot(e3, 1)"});
            g.generators.push_back({rotation3d(Eigen::Vector3d::UnitX(), 1.0), "rot(e1, 1)"});
            break;
    }
    return g;
}

const std::vector<std::string>& group_catalog_names() {
    static const std::vector<std::string> names{"trivial", "z2", "z3", "z4", "z6", "d2", "d3", "d4",
                                                "d6", "cubic", "so2", "o2", "so2-e3", "o2-e3", "so3",
                                                "orthotropic", "transversely-isotropic", "isotropic"};
    return names;
}

SymmetryGroup group_from_name(const std::string& raw, int ambient, const std::optional<Eigen::Vector3d>& axis,
                              std::optional<int> order_param) {
    const std::string name = lower(raw);
    if (ambient != 2 && ambient != 3) throw Error(ErrorKind::Input, "ambient dimension must be 2 or 3");
    Eigen::Vector3d ax = Eigen::Vector3d::UnitZ();
    if (axis) {
        if (ambient == 2) throw Error(ErrorKind::Input, "an axis only applies to 3D groups");
        if (!(axis->norm() > 1e-12)) throw Error(ErrorKind::Input, "axis must be nonzero");
        ax = axis->normalized();
    }
    auto need = [&](int dim) {
        if (ambient != dim) {
            throw Error(ErrorKind::Name, "group '" + raw + "' acts in " + std::to_string(dim) +
                                             "D but the space is " + std::to_string(ambient) + "D");
        }
    };
    if (name == "orthotropic" || name == "transversely-isotropic" || name == "isotropic") {
        need(3);
        const std::string canon = name == "orthotropic" ? "d2" : name == "isotropic" ? "so3" : "o2-e3";
        return group_from_name(canon, ambient, axis, order_param);
    }
    if (name == "trivial") return make_finite_group(FiniteKind::Trivial, ambient, ax);
    if (name == "cubic") {
        need(3);
        return make_finite_group(FiniteKind::CubicO, 1, ax);
    }
    if (name == "so2") {
        need(2);
        return make_continuous_group(ContinuousId::SO2_2D);
    }
    if (name == "o2") {
        need(2);
        return make_continuous_group(ContinuousId::O2_2D);
    }
    if (name == "so2-e3") {
        need(3);
        return make_continuous_group(ContinuousId::SO2_e3, ax);
    }
    if (name == "o2-e3") {
        need(3);
        return make_continuous_group(ContinuousId::O2_e3, ax);
    }
    if (name == "so3") {
        need(3);
        return make_continuous_group(ContinuousId::SO3);
    }
    if (name.size() >= 2 && (name[0] == 'z' || name[0] == 'd')) {
        int n = 0;
        const std::string tail = name.substr(1);
        if (tail == "n") {
            if (!order_param) throw Error(ErrorKind::Input, "group '" + raw + "' needs an order parameter");
            n = *order_param;
        } else if (std::all_of(tail.begin(), tail.end(), [](unsigned char c) { return std::isdigit(c) != 0; }) &&
                   tail.size() <= 3) {
            n = std::stoi(tail);
        } else {
            throw Error(ErrorKind::Name, "unknown group '" + raw + "'");
        }
        if (n < 1) throw Error(ErrorKind::Input, "group order must be >= 1");
        const bool cyclic = name[0] == 'z';
        if (ambient == 2) return make_finite_group(cyclic ? FiniteKind::Zn2D : FiniteKind::Dn2D, n);
        return make_finite_group(cyclic ? FiniteKind::Zn3D : FiniteKind::Dn3D, n, ax);
    }
    throw Error(ErrorKind::Name, "unknown group '" + raw + "'");
}

ClosureReport closure_check(const std::vector<Matrix>& elements) {
    ClosureReport rep;
    auto find = [&](const Matrix& m) -> int {
        for (std::size_t i = 0; i < elements.size(); ++i) {
            if (elements[i].rows() == m.rows() && (elements[i] - m).cwiseAbs().maxCoeff() < 1e-10) {
                return static_cast<int>(i);
            }
        }
        return -1;
    };
    if (elements.empty()) {
        rep.pass = false;
        rep.has_identity = false;
        rep.message = "empty element list";
        return rep;
    }
    const Eigen::Index n = elements.front().rows();
    if (find(Matrix::Identity(n, n)) < 0) {
        rep.pass = false;
        rep.has_identity = false;
        rep.message = "identity missing";
        return rep;
    }
    for (std::size_t a = 0; a < elements.size(); ++a) {
        if (find(elements[a].transpose()) < 0) {
            rep.pass = false;
            rep.closed_under_inverse = false;
            rep.witness_a = static_cast<int>(a);
            rep.message = "inverse of element " + std::to_string(a) + " missing";
            return rep;
        }
        for (std::size_t b = 0; b < elements.size(); ++b) {
            if (find(elements[a] * elements[b]) < 0) {
                rep.pass = false;
                rep.witness_a = static_cast<int>(a);
                rep.witness_b = static_cast<int>(b);
                rep.message = "product of elements " + std::to_string(a) + " and " + std::to_string(b) +
                              " is not in the set";
                return rep;
            }
        }
    }
    rep.message = "closed";
    return rep;
}

ClosureReport closure_check(const SymmetryGroup& g) {
    if (!g.finite) throw Error(ErrorKind::Input, "closure_check needs a finite group");
    std::vector<Matrix> m;
    m.reserve(g.elements.size());
    for (const auto& e : g.elements) m.push_back(e.matrix);
    return closure_check(m);
}

QuadratureRule haar_rule(const SymmetryGroup& g, int degree) {
    QuadratureRule rule;
    if (g.finite) {
        rule.uniform = true;
        const double w = 1.0 / static_cast<double>(g.elements.size());
        for (const auto& e : g.elements) rule.nodes.push_back({e, w});
        return rule;
    }
    if (degree < 0 || degree > kMaxHaarDegree) {
        throw Error(ErrorKind::Quadrature, "unsupported quadrature degree " + std::to_string(degree) +
                                               " (allowed 0.." + std::to_string(kMaxHaarDegree) + ")");
    }
    const int N = 2 * degree + 2;
    auto circle = [&](const Matrix& rep, const std::string& tag, double w) {
        for (int j = 0; j < N; ++j) {
            const double th = 2.0 * kPi * j / N;
            Matrix q;
            if (g.ambient == 2) {
                q = rotation2d(th) * rep;
            } else {
                q = g.frame * rot_e3(th) * rep * g.frame.transpose();
            }
            rule.nodes.push_back({q, "rot(" + angle_label(j, N) + ")" + tag, w});
        }
    };
    switch (g.continuous) {
        case ContinuousId::SO2_2D:
            circle(Matrix::Identity(2, 2), "", 1.0 / N);
            break;
        case ContinuousId::O2_2D:
            circle(Matrix::Identity(2, 2), "", 0.5 / N);
            circle(reflection2d(), "·R", 0.5 / N);
            break;
        case ContinuousId::SO2_e3:
            circle(Matrix::Identity(3, 3), "", 1.0 / N);
            break;
        case ContinuousId::O2_e3:
            circle(Matrix::Identity(3, 3), "", 0.5 / N);
            circle(diag3(1.0, -1.0, -1.0), "·flip", 0.5 / N);
            break;
        case ContinuousId::SO3: {
            std::vector<double> u, wu;
            gauss_legendre(static_cast<std::size_t>(degree + 1), u, wu);
            const double scale = 0.5 / (static_cast<double>(N) * static_cast<double>(N));
            for (int a = 0; a < N; ++a) {
                const double phi = 2.0 * kPi * a / N - kPi;
                for (std::size_t t = 0; t < u.size(); ++t) {
                    const double theta = std::acos(u[t]) - kPi / 2.0;
                    for (int c = 0; c < N; ++c) {
                        const double psi = 2.0 * kPi * c / N - kPi;
                        std::ostringstream os;
                        os << "cardan(" << a << "," << t << "," << c << ")";
                        rule.nodes.push_back({{cardan(phi, theta, psi), os.str()}, wu[t] * scale});
                    }
                }
            }
            break;
        }
    }
    return rule;
}

double integrate(const QuadratureRule& rule, const std::function<double(const Matrix&)>& f) {
    if (rule.uniform) {
        double s = 0.0;
        for (const auto& node : rule.nodes) s += f(node.element.matrix);
        return s / static_cast<double>(rule.nodes.size());
    }
    double s = 0.0;
    for (const auto& node : rule.nodes) s += node.weight * f(node.element.matrix);
    return s;
}

double integrate(const SymmetryGroup& g, const std::function<double(const Matrix&)>& f, int degree) {
    return integrate(haar_rule(g, degree), f);
}

std::vector<Matrix> generator_matrices(const SymmetryGroup& g) {
    std::vector<Matrix> out;
    for (const auto& e : g.generators) out.push_back(e.matrix);
    if (out.empty()) out.push_back(Matrix::Identity(g.ambient, g.ambient));
    return out;
}

}  // namespace symtensor
