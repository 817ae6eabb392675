#include "symtensor/projector.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace symtensor {

namespace {

void require_ambient(const TensorSpace& space, const SymmetryGroup& group) {
    if (group.ambient != space.n) {
        std::ostringstream os;
        os << "group '" << group.catalog_id << "' acts on R^" << group.ambient << " but space '" << space.name
           << "' lives over R^" << space.n;
        throw Error(ErrorKind::Name, os.str());
    }
}

std::string position_label(const std::string& prefix, int r, int c, int rows, int cols) {
    if (std::max(rows, cols) <= 9) return prefix + std::to_string(r + 1) + std::to_string(c + 1);
    return prefix + std::to_string(r + 1) + "_" + std::to_string(c + 1);
}

// "C12", "-C12", "2 C66", "-√2/2 C11"
std::string term_text(const ComboTerm& t, bool leading) {
    const bool neg = t.coefficient < 0.0;
    std::string mag = t.text;
    if (!mag.empty() && mag.front() == '-') mag.erase(0, 1);
    std::string body = (mag == "1") ? t.label : mag + " " + t.label;
    if (leading) return neg ? "-" + body : body;
    return (neg ? " - " : " + ") + body;
}

std::string combo_text(const std::vector<ComboTerm>& combo) {
    std::string s;
    for (std::size_t i = 0; i < combo.size(); ++i) s += term_text(combo[i], i == 0);
    return s.empty() ? "0" : s;
}

ComboTerm make_term(double c, const std::string& label, const TolerancePolicy& tol) {
    const SnapResult s = rational_snap(c, tol);
    ComboTerm t;
    t.coefficient = s.snapped ? s.value : c;
    t.text = s.text;
    t.snapped = s.snapped;
    t.label = label;
    return t;
}

// +1 / -1 when b = ±a termwise, 0 otherwise.
int combo_match(const std::vector<ComboTerm>& a, const std::vector<ComboTerm>& b, double eps) {
    if (a.size() != b.size()) return 0;
    for (int sign : {1, -1}) {
        bool ok = true;
        for (std::size_t i = 0; i < a.size() && ok; ++i) {
            ok = a[i].label == b[i].label && std::fabs(a[i].coefficient - sign * b[i].coefficient) <= eps;
        }
        if (ok) return sign;
    }
    return 0;
}

}  // namespace

FlatOperator averaged_projector(const TensorSpace& space, const SymmetryGroup& group) {
    require_ambient(space, group);
    const QuadratureRule rule = haar_rule(group, space.k + 2);
    const int N = ipow(space.n, space.k);
    Matrix kbar = Matrix::Zero(N, N);
    if (rule.uniform) {
        for (const auto& node : rule.nodes) kbar += kron_power(node.element.matrix, space.k).matrix;
        kbar /= static_cast<double>(rule.nodes.size());
    } else {
        for (const auto& node : rule.nodes) kbar += node.weight * kron_power(node.element.matrix, space.k).matrix;
    }
    FlatOperator a;
    a.n = space.n;
    a.k = space.k;
    a.matrix = kbar * sym_identity(space).matrix;
    return a;
}

FlatTensor project(const FlatOperator& a, const TensorSpace& space, const FlatTensor& t) {
    const double r = membership_residual(space, t);
    if (r >= 1e-9) {
        std::ostringstream os;
        os << "input is not in space '" << space.name << "' (membership residual " << r << ")";
        throw Error(ErrorKind::Input, os.str());
    }
    return FlatTensor::from(t.n, t.k, a.matrix * t.coeffs);
}

FlatTensor project(const TensorSpace& space, const SymmetryGroup& group, const FlatTensor& t) {
    membership_residual(space, t);
    return project(averaged_projector(space, group), space, t);
}

double equivariance_residual(const FlatOperator& a, const SymmetryGroup& group) {
    double worst = 0.0;
    for (const Matrix& q : generator_matrices(group)) {
        const Matrix d = kron_power(q, a.k).matrix * a.matrix - a.matrix;
        worst = std::max(worst, d.cwiseAbs().maxCoeff());
    }
    return worst;
}

double invariance_residual(const FlatTensor& t, const SymmetryGroup& group) {
    double worst = 0.0;
    for (const Matrix& q : generator_matrices(group)) {
        const Vector d = kron_power(q, t.k).matrix * t.coeffs - t.coeffs;
        worst = std::max(worst, d.size() ? d.cwiseAbs().maxCoeff() : 0.0);
    }
    return worst;
}

std::vector<std::string> StructureReport::labels() const {
    std::vector<std::string> out = free_labels;
    for (const auto& n : named) out.push_back(n.label);
    return out;
}

StructureReport structure_report(const TensorSpace& space, const SymmetryGroup& group, const TolerancePolicy& tol) {
    tol.validate();
    const Rendering& rend = rendering_for(space.name);
    const VoigtMap& rmap = voigt_map(rend.row_map);
    const VoigtMap& cmap = voigt_map(rend.col_map);
    const FixDimension fd = fix_dimension_detail(space, group);
    const FlatOperator a = averaged_projector(space, group);

    // Image basis, computed inside the space where A is a symmetric projector.
    const Matrix bs = space_basis(space);
    Matrix as = bs.transpose() * a.matrix * bs;
    as = 0.5 * (as + as.transpose()).eval();
    const int rank = numerical_rank(as, tol);
    if (rank != fd.dim) {
        std::ostringstream os;
        os << "projector rank " << rank << " disagrees with the trace formula dimension " << fd.dim << " for ("
           << space.name << ", " << group.catalog_id << ")";
        throw Error(ErrorKind::Internal, os.str());
    }
    Eigen::SelfAdjointEigenSolver<Matrix> es(as);
    const Matrix y = bs * es.eigenvectors().rightCols(rank);

    StructureReport rep;
    rep.space = space.name;
    rep.group = group.catalog_id;
    rep.dim = rank;
    rep.rows = rmap.size();
    rep.cols = cmap.size();
    rep.entries.assign(static_cast<std::size_t>(rep.rows), std::vector<StructureEntry>(static_cast<std::size_t>(rep.cols)));

    // Row (r * cols + c) of `func` is the entry (r, c) as a functional on the image coordinates.
    Matrix func(rep.rows * rep.cols, rank);
    for (int j = 0; j < rank; ++j) {
        const Matrix mj = induced_matrix(rmap, cmap, FlatTensor::from(space.n, space.k, y.col(j)), rend.rows_trailing);
        for (int r = 0; r < rep.rows; ++r)
            for (int c = 0; c < rep.cols; ++c) func(r * rep.cols + c, j) = mj(r, c);
    }
    const double scale = rank > 0 ? func.cwiseAbs().maxCoeff() : 1.0;
    const double thr = tol.zero_tol * scale;

    Matrix qf(rank, 0);    // orthonormalized free functionals
    Matrix fmat(rank, 0);  // raw free functionals
    std::vector<std::pair<int, int>> free_pos;

    for (int r = 0; r < rep.rows; ++r) {
        for (int c = rend.symmetric ? r : 0; c < rep.cols; ++c) {
            StructureEntry& e = rep.entries[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)];
            const Vector v = func.row(r * rep.cols + c).transpose();
            if (rank == 0 || v.cwiseAbs().maxCoeff() <= thr) {
                e.kind = EntryKind::Zero;
                e.display = "0";
                continue;
            }
            Vector res = v;
            if (qf.cols() > 0) res -= qf * (qf.transpose() * v);
            if (res.norm() > thr && qf.cols() < rank) {
                e.kind = EntryKind::Free;
                e.label = position_label(rend.label_prefix, r, c, rep.rows, rep.cols);
                e.display = e.label;
                qf.conservativeResize(Eigen::NoChange, qf.cols() + 1);
                qf.col(qf.cols() - 1) = res / res.norm();
                fmat.conservativeResize(Eigen::NoChange, fmat.cols() + 1);
                fmat.col(fmat.cols() - 1) = v;
                free_pos.emplace_back(r, c);
                rep.free_labels.push_back(e.label);
                continue;
            }
            const Vector coef = fmat.colPivHouseholderQr().solve(v);
            const double fit = (fmat * coef - v).norm();
            if (fit > 1e-7 * scale) {
                std::ostringstream os;
                os << "entry (" << r + 1 << "," << c + 1 << ") is not a combination of the free labels (residual "
                   << fit << ")";
                throw Error(ErrorKind::Internal, os.str());
            }
            e.kind = EntryKind::Dependent;
            for (Eigen::Index i = 0; i < coef.size(); ++i) {
                if (std::fabs(coef(i)) <= tol.zero_tol) continue;
                e.combo.push_back(make_term(coef(i), rep.free_labels[static_cast<std::size_t>(i)], tol));
            }
            if (e.combo.size() == 1) {
                e.display = combo_text(e.combo);
                continue;
            }
            int sign = 0;
            for (const auto& n : rep.named) {
                sign = combo_match(n.combo, e.combo, tol.equality_tol);
                if (sign != 0) {
                    e.label = n.label;
                    break;
                }
            }
            if (sign == 0) {
                sign = 1;
                e.label = position_label(rend.label_prefix, r, c, rep.rows, rep.cols);
                rep.named.push_back({e.label, e.combo});
            }
            e.display = sign > 0 ? e.label : "-" + e.label;
        }
    }
    if (static_cast<int>(rep.free_labels.size()) != rank) {
        std::ostringstream os;
        os << "rendering exposes " << rep.free_labels.size() << " independent entries but the fixed space has dimension "
           << rank;
        throw Error(ErrorKind::Internal, os.str());
    }
    if (rend.symmetric) {
        for (int r = 0; r < rep.rows; ++r)
            for (int c = 0; c < r; ++c)
                rep.entries[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] =
                    rep.entries[static_cast<std::size_t>(c)][static_cast<std::size_t>(r)];
    }

    // Named symbol L = sum c_i F_i, rewritten with the earliest free label on the left.
    for (const auto& n : rep.named) {
        const ComboTerm& lead = n.combo.front();
        std::vector<ComboTerm> rhs;
        for (std::size_t i = 1; i < n.combo.size(); ++i) {
            rhs.push_back(make_term(-n.combo[i].coefficient / lead.coefficient, n.combo[i].label, tol));
        }
        rhs.push_back(make_term(1.0 / lead.coefficient, n.label, tol));
        rep.constraints.push_back(lead.label + " = " + combo_text(rhs));
    }

    // Label-dual basis: free label i reads 1 on basis[i] and 0 on the others.
    if (rank > 0) {
        const Matrix x = fmat.transpose().inverse();
        for (int i = 0; i < rank; ++i) rep.basis.push_back(FlatTensor::from(space.n, space.k, y * x.col(i)));
    }
    return rep;
}

FlatTensor tensor_from_labels(const StructureReport& report, const std::map<std::string, double>& values) {
    const int d = report.dim;
    if (d == 0) throw Error(ErrorKind::Input, "fixed space is trivial; nothing to assign");
    Matrix eq(static_cast<Eigen::Index>(values.size()), d);
    Vector rhs(static_cast<Eigen::Index>(values.size()));
    eq.setZero();
    Eigen::Index row = 0;
    for (const auto& [label, value] : values) {
        auto it = std::find(report.free_labels.begin(), report.free_labels.end(), label);
        if (it != report.free_labels.end()) {
            eq(row, it - report.free_labels.begin()) = 1.0;
        } else {
            auto nt = std::find_if(report.named.begin(), report.named.end(),
                                   [&](const NamedSymbol& n) { return n.label == label; });
            if (nt == report.named.end()) throw Error(ErrorKind::Input, "label '" + label + "' is not displayed");
            for (const auto& t : nt->combo) {
                auto f = std::find(report.free_labels.begin(), report.free_labels.end(), t.label);
                eq(row, f - report.free_labels.begin()) = t.coefficient;
            }
        }
        rhs(row++) = value;
    }
    const auto qr = eq.colPivHouseholderQr();
    if (qr.rank() < d) throw Error(ErrorKind::Input, "label values do not determine every free parameter");
    const Vector x = qr.solve(rhs);
    const double misfit = (eq * x - rhs).cwiseAbs().maxCoeff();
    if (misfit > 1e-9 * std::max(1.0, rhs.cwiseAbs().maxCoeff())) {
        throw Error(ErrorKind::Input, "label values violate the structure constraints");
    }
    FlatTensor t = FlatTensor::zeros(report.basis.front().n, report.basis.front().k);
    for (int i = 0; i < d; ++i) t.coeffs += x(i) * report.basis[static_cast<std::size_t>(i)].coeffs;
    return t;
}

IsotropicModuli moduli_from_matrix(const Matrix& m9) {
    if (m9.rows() != 9 || m9.cols() != 9) throw Error(ErrorKind::Input, "expected a 9x9 matrix");
    return {m9(0, 1), 0.5 * (m9(3, 3) + m9(3, 4)), 0.5 * (m9(3, 3) - m9(3, 4))};
}

IsotropicModuli extract_isotropic_moduli(const StructureReport& report, const std::map<std::string, double>& values) {
    if (report.space != "major3" || report.group != "so3") {
        throw Error(ErrorKind::Input, "isotropic moduli need the (major3, so3) report, got (" + report.space + ", " +
                                          report.group + ")");
    }
    const FlatTensor t = tensor_from_labels(report, values);
    return moduli_from_matrix(induced_matrix(rendering_for("major3"), t));
}

Matrix isotropic_matrix(const IsotropicModuli& m) {
    Matrix out = Matrix::Zero(9, 9);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) out(i, j) = i == j ? 2.0 * m.mu + m.lambda : m.lambda;
    for (int b = 3; b < 9; b += 2) {
        out(b, b) = out(b + 1, b + 1) = m.mu + m.mu_c;
        out(b, b + 1) = out(b + 1, b) = m.mu - m.mu_c;
    }
    return out;
}

}  // namespace symtensor
