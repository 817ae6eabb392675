#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace symtensor {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

enum class ErrorKind { Name, Quadrature, Internal, Input };

// Every failure surfaced by the library. The kind maps onto CLI exit codes.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const { return kind_; }

private:
    ErrorKind kind_;
};

struct TolerancePolicy {
    double zero_tol = 1e-9;
    double equality_tol = 1e-9;
    int snap_denominator_bound = 64;

    void validate() const;
    // Defaults with zero_tol taken from SYMTENSOR_TOL when set.
    static TolerancePolicy from_env();
};

int ipow(int base, int exp);
std::size_t flat_index(int n, const std::vector<int>& idx);
std::vector<int> multi_index(int n, int k, std::size_t flat);

struct FlatTensor {
    int n = 3;
    int k = 4;
    Vector coeffs;

    static FlatTensor zeros(int n, int k);
    static FlatTensor from(int n, int k, Vector coeffs);
    std::size_t size() const { return static_cast<std::size_t>(coeffs.size()); }
    double operator()(const std::vector<int>& idx) const { return coeffs(flat_index(n, idx)); }
    double& operator()(const std::vector<int>& idx) { return coeffs(flat_index(n, idx)); }
    void validate() const;
};

struct FlatOperator {
    int n = 3;
    int k = 4;
    Matrix matrix;

    static FlatOperator identity(int n, int k);
    Eigen::Index size() const { return matrix.rows(); }
    void validate() const;
};

double orthogonality_defect(const Matrix& q);

// X_{i...} -> Q_{ia} ... X_{a...} as an n^k x n^k matrix.
FlatOperator kron_power(const Matrix& q, int k);

double operator_trace(const FlatOperator& a);

double idempotence_defect(const Matrix& a);

// Count of singular values above zero_tol * sigma_max.
int numerical_rank(const Matrix& a, const TolerancePolicy& tol);

// Orthonormal columns spanning range(A); A must be a projector candidate.
Matrix image_basis_matrix(const FlatOperator& a, const TolerancePolicy& tol);
std::vector<FlatTensor> image_basis(const FlatOperator& a, const TolerancePolicy& tol);

// Orthonormal basis of the joint null space of the stacked blocks.
Matrix null_space(const Matrix& stacked, const TolerancePolicy& tol);

struct SnapResult {
    double value = 0.0;
    std::string text;
    bool snapped = false;
    long numerator = 0;
    long denominator = 1;
    int radical = 1;  // 1, 2 or 3
};

SnapResult rational_snap(double x, const TolerancePolicy& tol);

}  // namespace symtensor
