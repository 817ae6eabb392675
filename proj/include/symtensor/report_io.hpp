#pragma once

#include "symtensor/projector.hpp"

#include <string>

namespace symtensor {

std::string render_text(const StructureReport& report);
// {space, group, dim, shape, entries: [[{kind, label?, combo?, display}]], constraints}
std::string render_json(const StructureReport& report);
std::string render_latex(const StructureReport& report);

// Inverse of render_json; the basis is not serialized and comes back empty.
StructureReport report_from_json(const std::string& text);

struct TensorFile {
    std::string space;
    FlatTensor tensor;
};

// {"n": 2, "k": 2, "space": "sym2", "coeffs": [...]} with n^k coefficients in row-major flattening.
TensorFile parse_tensor_json(const std::string& text);
std::string tensor_to_json(const TensorFile& file);

// Slot-order tables of every registered Voigt map.
std::string dump_maps_json();

}  // namespace symtensor
