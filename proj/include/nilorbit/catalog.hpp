#pragma once

#include <optional>

#include "nilorbit/algebra.hpp"

namespace nilorbit {

struct CatalogEntry {
    std::string name;
    std::size_t dim;
    std::size_t params; // 0 for fixed algebras
};

/// Built-in fixtures: abelian1..abelian6, h3, h5, f4 and the one-parameter
/// family beta_h3 with [Z1,Z2] = b1 Z3.
const std::vector<CatalogEntry> &catalog_entries();

bool catalog_has_algebra(const std::string &name);
bool catalog_has_family(const std::string &name);

AlgebraPtr catalog_algebra(const std::string &name);
VariableFamily catalog_family(const std::string &name);

} // namespace nilorbit
