#pragma once

#include "symtensor/tensor_core.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace symtensor {

struct GroupElement {
    Matrix matrix;
    std::string label;
};

enum class FiniteKind { Trivial, Zn2D, Dn2D, Zn3D, Dn3D, CubicO };
enum class ContinuousId { SO2_2D, O2_2D, SO2_e3, O2_e3, SO3 };

struct SymmetryGroup {
    int ambient = 3;
    std::string catalog_id;
    bool finite = true;
    std::vector<GroupElement> elements;    // finite groups only
    std::vector<GroupElement> generators;  // topological generators for continuous groups
    ContinuousId continuous = ContinuousId::SO3;
    Matrix frame;  // conjugating rotation carrying e3 to the requested axis (3D)

    std::size_t order() const { return elements.size(); }
};

struct QuadratureNode {
    GroupElement element;
    double weight = 0.0;
};

struct QuadratureRule {
    std::vector<QuadratureNode> nodes;
    bool uniform = false;
};

struct ClosureReport {
    bool pass = true;
    bool has_identity = true;
    bool closed_under_inverse = true;
    int witness_a = -1;
    int witness_b = -1;
    std::string message;
};

constexpr int kDefaultHaarDegree = 8;
constexpr int kMaxHaarDegree = 12;

Matrix rotation2d(double theta);
Matrix rotation3d(const Eigen::Vector3d& axis, double theta);
// Rotation taking e3 onto the given unit axis.
Matrix frame_for_axis(const Eigen::Vector3d& axis);

SymmetryGroup make_finite_group(FiniteKind kind, int order_param,
                                const Eigen::Vector3d& axis = Eigen::Vector3d::UnitZ());
SymmetryGroup make_continuous_group(ContinuousId id,
                                    const Eigen::Vector3d& axis = Eigen::Vector3d::UnitZ());

// Catalog lookup. Names are case-insensitive; z*, d* and trivial resolve
// their ambient dimension from the caller.
SymmetryGroup group_from_name(const std::string& name, int ambient,
                              const std::optional<Eigen::Vector3d>& axis = std::nullopt,
                              std::optional<int> order_param = std::nullopt);
const std::vector<std::string>& group_catalog_names();

ClosureReport closure_check(const std::vector<Matrix>& elements);
ClosureReport closure_check(const SymmetryGroup& g);

QuadratureRule haar_rule(const SymmetryGroup& g, int max_poly_degree = kDefaultHaarDegree);

double integrate(const QuadratureRule& rule, const std::function<double(const Matrix&)>& f);
double integrate(const SymmetryGroup& g, const std::function<double(const Matrix&)>& f,
                 int degree = kDefaultHaarDegree);

// Group generators (topological ones for continuous groups); identity for the trivial group.
std::vector<Matrix> generator_matrices(const SymmetryGroup& g);

}  // namespace symtensor
