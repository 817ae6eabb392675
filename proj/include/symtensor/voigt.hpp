#pragma once

#include "symtensor/tensor_core.hpp"

#include <string>
#include <vector>

namespace symtensor {

struct VoigtSlot {
    std::string tag;                        // e.g. "23" or "12;3"
    std::vector<std::vector<int>> pattern;  // 0-based multi-indices sharing this slot
    double forward_scale = 1.0;
    double inverse_scale = 1.0;
};

struct VoigtMap {
    std::string name;
    std::string description;
    int n = 3;
    int order = 2;
    std::vector<VoigtSlot> slots;

    int size() const { return static_cast<int>(slots.size()); }
    // slots x n^order; applied to a tensor that already has the slot symmetries.
    Matrix forward_matrix() const;
    // n^order x slots; columns are map^{-1}(e_alpha).
    Matrix inverse_matrix() const;
    Vector forward(const Vector& flat) const;
    Vector inverse(const Vector& v) const;
};

const VoigtMap& voigt_map(const std::string& name);
const std::vector<std::string>& voigt_map_names();

// How a catalog space is drawn as a matrix.
struct Rendering {
    std::string row_map;
    std::string col_map;
    bool rows_trailing = false;  // row map reads the trailing indices
    bool symmetric = false;      // major symmetry: report walks the upper triangle
    std::string label_prefix = "C";
};

const Rendering& rendering_for(const std::string& space_name);

// <M a, b> = <T map_col^{-1} a, map_row^{-1} b>.
Matrix induced_matrix(const VoigtMap& row, const VoigtMap& col, const FlatTensor& t, bool rows_trailing = false);
Matrix induced_matrix(const Rendering& r, const FlatTensor& t);

Vector voigt_forward(const Matrix& x);
Matrix voigt_inverse(const Vector& v);
Vector mandel_forward(const Matrix& x);
Matrix mandel_inverse(const Vector& v);
Vector nine_slot_forward(const Matrix& x);
Matrix nine_slot_inverse(const Vector& v);
Vector extended_n_forward(const FlatTensor& t);
FlatTensor extended_n_inverse(const Vector& v);

Eigen::Vector3d axl(const Matrix& a);
Matrix anti(const Eigen::Vector3d& a);

}  // namespace symtensor
