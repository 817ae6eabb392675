#pragma once

#include "symtensor/groups.hpp"
#include "symtensor/spaces.hpp"

#include <string>

namespace symtensor {

double character_direct(const TensorSpace& space, const Matrix& q);
// Same contraction with a precomputed symmetrization identity.
double character_direct(const FlatOperator& pi, const Matrix& q);

struct CharacterValue {
    double value = 0.0;
    bool used_fallback = false;
    std::string notice;
};

CharacterValue character_closed_form(const TensorSpace& space, const Matrix& q);
double evaluate_closed_form(const ClosedForm& cf, double trace, int det_sign);

// tr Q^m from t = tr Q by Cayley-Hamilton reduction.
double trace_power_reduce(int n, int m, double t, int det_sign);

struct FixDimension {
    int dim = 0;
    double raw = 0.0;
    double residual = 0.0;
    int degree = 0;
};

// Haar average of the character at degree k + 2, rounded.
FixDimension fix_dimension_detail(const TensorSpace& space, const SymmetryGroup& group);
int fix_dimension(const TensorSpace& space, const SymmetryGroup& group);

}  // namespace symtensor
