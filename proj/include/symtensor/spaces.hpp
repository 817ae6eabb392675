#pragma once

#include "symtensor/tensor_core.hpp"

#include <optional>
#include <string>
#include <vector>

namespace symtensor {

// p[m] is the slot whose index moves into slot m: T_{i_1..i_k} = T_{i_{p(1)}..i_{p(k)}}.
using Permutation = std::vector<int>;

struct TensorSpace {
    std::string name;
    int n = 3;
    int k = 4;
    std::vector<Permutation> generators;
    std::vector<Permutation> group;  // closure of the generators, identity first
};

// Character polynomial in t = tr Q, ascending powers. The improper branch
// is only used in 2D for det Q = -1.
struct ClosedForm {
    std::vector<double> proper;
    std::vector<double> improper;
};

struct SpaceCatalogEntry {
    TensorSpace space;
    std::string description;
    std::optional<ClosedForm> closed_form;
    int expected_dim = 0;
};

TensorSpace make_space(const std::string& name, int n, int k, std::vector<Permutation> generators);

// 1-based swap helpers for building generators.
Permutation swap_indices(int k, int a, int b);
Permutation swap_blocks(int k, int first_a, int first_b, int len);

const std::vector<std::string>& space_catalog_names();
const SpaceCatalogEntry& catalog_entry(const std::string& name);
TensorSpace space_from_name(const std::string& name);

FlatOperator permutation_operator(int n, int k, const Permutation& p);
FlatOperator sym_identity(const TensorSpace& space);
int space_dim(const TensorSpace& space);
double membership_residual(const TensorSpace& space, const FlatTensor& t);

// Orthonormal basis of the space inside the flat tensor space (columns).
Matrix space_basis(const TensorSpace& space);

}  // namespace symtensor
