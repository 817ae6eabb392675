#pragma once

#include <string>
#include <vector>

namespace symtensor {

struct VerifyRow {
    std::string category;  // dims, characters, structure, projector, haar, moduli, voigt
    std::string id;
    std::string expected;
    std::string actual;
    bool pass = false;
};

const std::vector<std::string>& verify_categories();

// Runs the reference table. `filter` is empty/"all" or a comma list of categories.
std::vector<VerifyRow> run_reference_table(const std::string& filter = "all");

}  // namespace symtensor
