#include "symtensor/tensor_core.hpp"

#include <unsupported/Eigen/KroneckerProduct>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>

namespace symtensor {

void TolerancePolicy::validate() const {
    if (!(zero_tol > 0.0 && zero_tol <= 1e-6)) {
        throw Error(ErrorKind::Input, "zero_tol must lie in (0, 1e-6], got " + std::to_string(zero_tol));
    }
    if (!(equality_tol > 0.0)) throw Error(ErrorKind::Input, "equality_tol must be positive");
    if (snap_denominator_bound < 1) throw Error(ErrorKind::Input, "snap_denominator_bound must be >= 1");
}

TolerancePolicy TolerancePolicy::from_env() {
    TolerancePolicy tol;
    if (const char* env = std::getenv("SYMTENSOR_TOL"); env != nullptr && *env != '\0') {
        char* end = nullptr;
        double v = std::strtod(env, &end);
        if (end == env || *end != '\0') {
            throw Error(ErrorKind::Input, std::string("SYMTENSOR_TOL is not a number: ") + env);
        }
        tol.zero_tol = v;
    }
    tol.validate();
    return tol;
}

int ipow(int base, int exp) {
    int r = 1;
    for (int i = 0; i < exp; ++i) r *= base;
    return r;
}

std::size_t flat_index(int n, const std::vector<int>& idx) {
    std::size_t f = 0;
    for (int i : idx) {
        if (i < 0 || i >= n) throw Error(ErrorKind::Input, "tensor index out of range");
        f = f * static_cast<std::size_t>(n) + static_cast<std::size_t>(i);
    }
    return f;
}

std::vector<int> multi_index(int n, int k, std::size_t flat) {
    std::vector<int> idx(static_cast<std::size_t>(k));
    for (int m = k - 1; m >= 0; --m) {
        idx[static_cast<std::size_t>(m)] = static_cast<int>(flat % static_cast<std::size_t>(n));
        flat /= static_cast<std::size_t>(n);
    }
    return idx;
}

FlatTensor FlatTensor::zeros(int n, int k) {
    FlatTensor t;
    t.n = n;
    t.k = k;
    t.coeffs = Vector::Zero(ipow(n, k));
    return t;
}

FlatTensor FlatTensor::from(int n, int k, Vector coeffs) {
    FlatTensor t;
    t.n = n;
    t.k = k;
    t.coeffs = std::move(coeffs);
    t.validate();
    return t;
}

void FlatTensor::validate() const {
    if (n < 1 || k < 1) throw Error(ErrorKind::Input, "tensor needs n >= 1 and k >= 1");
    if (coeffs.size() != ipow(n, k)) {
        std::ostringstream os;
        os << "tensor has " << coeffs.size() << " coefficients, expected " << ipow(n, k);
        throw Error(ErrorKind::Input, os.str());
    }
    if (!coeffs.allFinite()) throw Error(ErrorKind::Input, "tensor has non-finite coefficients");
}

FlatOperator FlatOperator::identity(int n, int k) {
    FlatOperator a;
    a.n = n;
    a.k = k;
    a.matrix = Matrix::Identity(ipow(n, k), ipow(n, k));
    return a;
}

void FlatOperator::validate() const {
    const int N = ipow(n, k);
    if (matrix.rows() != N || matrix.cols() != N) {
        throw Error(ErrorKind::Input, "operator must be n^k x n^k");
    }
}

double orthogonality_defect(const Matrix& q) {
    if (q.rows() != q.cols()) return INFINITY;
    return (q.transpose() * q - Matrix::Identity(q.rows(), q.cols())).cwiseAbs().maxCoeff();
}

FlatOperator kron_power(const Matrix& q, int k) {
    if (k < 1 || k > 6) throw Error(ErrorKind::Input, "kron_power supports orders 1..6");
    const double defect = orthogonality_defect(q);
    if (!(defect < 1e-12)) {
        std::ostringstream os;
        os << "matrix is not orthogonal: |Q^T Q - I|_max = " << defect;
        throw Error(ErrorKind::Input, os.str());
    }
    Matrix acc = q;
    for (int m = 1; m < k; ++m) {
        Matrix next = Eigen::kroneckerProduct(q, acc).eval();
        acc.swap(next);
    }
    FlatOperator op;
    op.n = static_cast<int>(q.rows());
    op.k = k;
    op.matrix = std::move(acc);
    return op;
}

double operator_trace(const FlatOperator& a) { return a.matrix.trace(); }

double idempotence_defect(const Matrix& a) {
    return (a * a - a).cwiseAbs().maxCoeff();
}

namespace {

bool is_symmetric(const Matrix& a) {
    return a.rows() == a.cols() && (a - a.transpose()).cwiseAbs().maxCoeff() < 1e-10;
}

}  // namespace

int numerical_rank(const Matrix& a, const TolerancePolicy& tol) {
    if (a.size() == 0) return 0;
    Vector sv;
    if (is_symmetric(a)) {
        Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (a + a.transpose()), Eigen::EigenvaluesOnly);
        sv = es.eigenvalues().cwiseAbs();
    } else {
        Eigen::BDCSVD<Matrix> svd(a);
        sv = svd.singularValues();
    }
    const double smax = sv.maxCoeff();
    if (smax == 0.0) return 0;
    int r = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i) r += sv(i) > tol.zero_tol * smax ? 1 : 0;
    return r;
}

Matrix image_basis_matrix(const FlatOperator& a, const TolerancePolicy& tol) {
    const double defect = idempotence_defect(a.matrix);
    if (!(defect < 1e-6)) {
        std::ostringstream os;
        os << "operator is not idempotent: |A^2 - A|_max = " << defect;
        throw Error(ErrorKind::Input, os.str());
    }
    const Matrix& m = a.matrix;
    std::vector<Eigen::Index> keep;
    Matrix vectors;
    if (is_symmetric(m)) {
        Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (m + m.transpose()));
        const Vector ev = es.eigenvalues().cwiseAbs();
        const double emax = ev.size() ? ev.maxCoeff() : 0.0;
        // Descending order keeps the leading directions first.
        for (Eigen::Index i = ev.size() - 1; i >= 0; --i) {
            if (emax > 0.0 && ev(i) > tol.zero_tol * emax) keep.push_back(i);
        }
        vectors = es.eigenvectors();
    } else {
        Eigen::BDCSVD<Matrix> svd(m, Eigen::ComputeThinU);
        const Vector sv = svd.singularValues();
        const double smax = sv.size() ? sv(0) : 0.0;
        for (Eigen::Index i = 0; i < sv.size(); ++i) {
            if (smax > 0.0 && sv(i) > tol.zero_tol * smax) keep.push_back(i);
        }
        vectors = svd.matrixU();
    }
    Matrix basis(m.rows(), static_cast<Eigen::Index>(keep.size()));
    for (std::size_t j = 0; j < keep.size(); ++j) basis.col(static_cast<Eigen::Index>(j)) = vectors.col(keep[j]);
    return basis;
}

std::vector<FlatTensor> image_basis(const FlatOperator& a, const TolerancePolicy& tol) {
    const Matrix b = image_basis_matrix(a, tol);
    std::vector<FlatTensor> out;
    out.reserve(static_cast<std::size_t>(b.cols()));
    for (Eigen::Index j = 0; j < b.cols(); ++j) out.push_back(FlatTensor::from(a.n, a.k, b.col(j)));
    return out;
}

Matrix null_space(const Matrix& stacked, const TolerancePolicy& tol) {
    const Eigen::Index cols = stacked.cols();
    if (stacked.rows() == 0 || stacked.cwiseAbs().maxCoeff() == 0.0) return Matrix::Identity(cols, cols);
    Eigen::BDCSVD<Matrix> svd(stacked, Eigen::ComputeFullV);
    const Vector sv = svd.singularValues();
    const double smax = sv(0);
    Eigen::Index rank = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i) rank += sv(i) > tol.zero_tol * smax ? 1 : 0;
    return svd.matrixV().rightCols(cols - rank);
}

namespace {

std::string fraction_text(long p, long q, int radical) {
    std::ostringstream os;
    if (p < 0) os << '-';
    const long ap = p < 0 ? -p : p;
    if (radical == 1) {
        os << ap;
    } else {
        if (ap != 1) os << ap;
        os << "√" << radical;
    }
    if (q != 1) os << '/' << q;
    return os.str();
}

}  // namespace

SnapResult rational_snap(double x, const TolerancePolicy& tol) {
    SnapResult r;
    r.value = x;
    if (!(std::fabs(x) < 1e6)) {
        std::ostringstream os;
        os.precision(12);
        os << x;
        r.text = os.str();
        return r;
    }
    if (std::fabs(x) < tol.equality_tol) {
        r.value = 0.0;
        r.text = "0";
        r.snapped = true;
        r.numerator = 0;
        return r;
    }
    for (int radical : {1, 2, 3}) {
        const double scale = radical == 1 ? 1.0 : std::sqrt(static_cast<double>(radical));
        const double y = x / scale;
        for (long q = 1; q <= tol.snap_denominator_bound; ++q) {
            const long p = std::lround(y * static_cast<double>(q));
            if (p == 0) continue;
            const double cand = static_cast<double>(p) / static_cast<double>(q) * scale;
            if (std::fabs(cand - x) < tol.equality_tol) {
                r.value = cand;
                r.snapped = true;
                r.numerator = p;
                r.denominator = q;
                r.radical = radical;
                r.text = fraction_text(p, q, radical);
                return r;
            }
        }
    }
    std::ostringstream os;
    os.precision(12);
    os << x;
    r.text = os.str();
    return r;
}

}  // namespace symtensor
