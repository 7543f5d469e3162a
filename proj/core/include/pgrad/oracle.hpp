#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "pgrad/presentation.hpp"

namespace pgrad {

// Independent brute-force cross-check for lattice levels, usable for
// depth <= 2: enumerates every map of the generators into the regular
// representation of each group of order p^j (built by coset enumeration from
// its own presentation), keeps the maps that kill all relators, and collects
// the distinct kernels via standardized coset-table keys. Shares nothing
// with the hyperplane/descent machinery it checks.
std::vector<std::set<std::string>> oracle_kernel_keys(PresentationPtr pres, uint32_t p,
                                                      int depth);

std::vector<size_t> oracle_level_counts(PresentationPtr pres, uint32_t p, int depth);

}  // namespace pgrad
