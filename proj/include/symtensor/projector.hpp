#pragma once

#include "symtensor/characters.hpp"
#include "symtensor/groups.hpp"
#include "symtensor/spaces.hpp"
#include "symtensor/voigt.hpp"

#include <map>
#include <string>
#include <vector>

namespace symtensor {

// A = sum_i w_i kron_power(Q_i, k) * Pi, built from the group's Haar rule.
FlatOperator averaged_projector(const TensorSpace& space, const SymmetryGroup& group);

// A t for t in the space; rejects inputs whose membership residual exceeds 1e-9.
FlatTensor project(const TensorSpace& space, const SymmetryGroup& group, const FlatTensor& t);
FlatTensor project(const FlatOperator& a, const TensorSpace& space, const FlatTensor& t);

// max over generators of ||kron_power(Q, k) A - A||_inf.
double equivariance_residual(const FlatOperator& a, const SymmetryGroup& group);
// max over generators of ||kron_power(Q, k) t - t||_inf.
double invariance_residual(const FlatTensor& t, const SymmetryGroup& group);

struct ComboTerm {
    double coefficient = 0.0;
    std::string text;  // snapped or decimal coefficient
    bool snapped = true;
    std::string label;  // a Free label
};

enum class EntryKind { Zero, Free, Dependent };

struct StructureEntry {
    EntryKind kind = EntryKind::Zero;
    std::string label;              // Free label, or the named symbol a Dependent entry displays
    std::vector<ComboTerm> combo;   // Dependent only, in terms of Free labels
    std::string display;
};

struct NamedSymbol {
    std::string label;
    std::vector<ComboTerm> combo;
};

struct StructureReport {
    std::string space;
    std::string group;
    int dim = 0;
    int rows = 0;
    int cols = 0;
    std::vector<std::vector<StructureEntry>> entries;
    std::vector<std::string> free_labels;   // coordinate order of `basis`
    std::vector<NamedSymbol> named;         // displayed symbols tied to the free ones
    std::vector<std::string> constraints;   // one per named symbol
    std::vector<FlatTensor> basis;          // basis[i] has free label i equal to 1, the others 0

    // All displayed symbols: free labels followed by named ones.
    std::vector<std::string> labels() const;
    const StructureEntry& at(int r, int c) const { return entries[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)]; }
};

StructureReport structure_report(const TensorSpace& space, const SymmetryGroup& group,
                                 const TolerancePolicy& tol = TolerancePolicy{});

// Invariant tensor whose displayed symbols take the given values (least squares over free labels).
FlatTensor tensor_from_labels(const StructureReport& report, const std::map<std::string, double>& values);

struct IsotropicModuli {
    double lambda = 0.0;
    double mu = 0.0;
    double mu_c = 0.0;
};

// lambda = C12, mu = (C44 + C45) / 2, mu_c = (C44 - C45) / 2.
IsotropicModuli extract_isotropic_moduli(const StructureReport& report, const std::map<std::string, double>& values);
IsotropicModuli moduli_from_matrix(const Matrix& m9);
Matrix isotropic_matrix(const IsotropicModuli& m);

}  // namespace symtensor
