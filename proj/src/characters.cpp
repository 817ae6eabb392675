#include "symtensor/characters.hpp"

#include <cmath>
#include <sstream>

namespace symtensor {

namespace {

void require_ambient(int space_n, const Matrix& q) {
    if (q.rows() != space_n || q.cols() != space_n) {
        std::ostringstream os;
        os << "group element is " << q.rows() << "x" << q.cols() << " but the space lives over R^" << space_n;
        throw Error(ErrorKind::Input, os.str());
    }
}

int det_sign(const Matrix& q) { return q.determinant() < 0.0 ? -1 : 1; }

}  // namespace

double character_direct(const FlatOperator& pi, const Matrix& q) {
    require_ambient(pi.n, q);
    const FlatOperator k = kron_power(q, pi.k);
    // tr(K Pi) = sum_ij K_ij Pi_ji
    return k.matrix.cwiseProduct(pi.matrix.transpose()).sum();
}

double character_direct(const TensorSpace& space, const Matrix& q) {
    return character_direct(sym_identity(space), q);
}

double evaluate_closed_form(const ClosedForm& cf, double t, int sign) {
    const auto& c = (sign < 0 && !cf.improper.empty()) ? cf.improper : cf.proper;
    double v = 0.0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) v = v * t + *it;
    return v;
}

CharacterValue character_closed_form(const TensorSpace& space, const Matrix& q) {
    require_ambient(space.n, q);
    if (orthogonality_defect(q) > 1e-12) throw Error(ErrorKind::Input, "group element is not orthogonal");
    CharacterValue out;
    const SpaceCatalogEntry* entry = nullptr;
    try {
        const SpaceCatalogEntry& e = catalog_entry(space.name);
        if (e.space.n == space.n && e.space.k == space.k && e.space.group == space.group) entry = &e;
    } catch (const Error&) {
        entry = nullptr;
    }
    if (entry == nullptr || !entry->closed_form) {
        out.value = character_direct(space, q);
        out.used_fallback = true;
        out.notice = "no closed form registered for '" + space.name + "'; used direct contraction";
        return out;
    }
    const int s = det_sign(q);
    if (space.n == 3 && s < 0) throw Error(ErrorKind::Input, "3D closed forms assume det Q = +1");
    out.value = evaluate_closed_form(*entry->closed_form, q.trace(), s);
    return out;
}

double trace_power_reduce(int n, int m, double t, int sign) {
    if (m < 2 || m > 4) throw Error(ErrorKind::Input, "trace_power_reduce supports powers 2..4");
    if (n == 3) {
        if (sign != 1) throw Error(ErrorKind::Input, "3D reduction needs det Q = +1");
        switch (m) {
            case 2: return t * t - 2.0 * t;
            case 3: return t * t * t - 3.0 * t * t + 3.0;
            default: return t * t * t * t - 4.0 * t * t * t + 2.0 * t * t + 4.0 * t;
        }
    }
    if (n == 2) {
        const double d = sign < 0 ? -1.0 : 1.0;
        switch (m) {
            case 2: return t * t - 2.0 * d;
            case 3: return t * (t * t - 3.0 * d);
            default: return t * t * t * t - 4.0 * d * t * t + 2.0;
        }
    }
    throw Error(ErrorKind::Input, "trace_power_reduce supports n = 2 or 3");
}

FixDimension fix_dimension_detail(const TensorSpace& space, const SymmetryGroup& group) {
    if (group.ambient != space.n) {
        std::ostringstream os;
        os << "group '" << group.catalog_id << "' acts on R^" << group.ambient << " but space '" << space.name
           << "' lives over R^" << space.n;
        throw Error(ErrorKind::Name, os.str());
    }
    FixDimension fd;
    fd.degree = space.k + 2;
    const QuadratureRule rule = haar_rule(group, fd.degree);
    bool have_closed = false;
    try {
        const SpaceCatalogEntry& e = catalog_entry(space.name);
        have_closed = e.closed_form.has_value() && e.space.group == space.group && e.space.n == space.n;
    } catch (const Error&) {
        have_closed = false;
    }
    if (have_closed) {
        const ClosedForm cf = *catalog_entry(space.name).closed_form;
        fd.raw = integrate(rule, [&](const Matrix& q) { return evaluate_closed_form(cf, q.trace(), det_sign(q)); });
    } else {
        const FlatOperator pi = sym_identity(space);
        fd.raw = integrate(rule, [&](const Matrix& q) { return character_direct(pi, q); });
    }
    const double r = std::round(fd.raw);
    fd.residual = std::fabs(fd.raw - r);
    if (fd.residual >= 1e-6) {
        std::ostringstream os;
        os << "quadrature not converged: integral " << fd.raw << " is " << fd.residual << " away from an integer";
        throw Error(ErrorKind::Quadrature, os.str());
    }
    fd.dim = static_cast<int>(r);
    return fd;
}

int fix_dimension(const TensorSpace& space, const SymmetryGroup& group) {
    return fix_dimension_detail(space, group).dim;
}

}  // namespace symtensor
