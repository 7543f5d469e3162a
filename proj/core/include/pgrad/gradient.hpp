#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pgrad/fp_matrix.hpp"
#include "pgrad/lattice.hpp"
#include "pgrad/presentation.hpp"
#include "pgrad/rational.hpp"

namespace pgrad {

// The depth-truncated infimum of (d_p(H) - 1)/[G:H] over the enumerated
// lattice. Always an upper bound for the true p-gradient; `exact` certifies
// equality (the lattice saturated within depth).
struct GradientEstimate {
  Rational value;
  std::string witness_key;  // argmin subgroup, smallest index then smallest key
  int witness_level = 0;
  int depth = 0;
  bool exact = false;
  bool truncated = false;
};

GradientEstimate estimate_from_lattice(const Lattice& l);

GradientEstimate estimate(PresentationPtr pres, uint32_t p, int depth,
                          const LatticeOptions& opts = {});

// Infimum over a user-supplied chain of subgroups, each given as a path of
// invariant functionals descending from the whole group (an empty path names
// the whole group). Rejects non-invariant functionals, naming the offending
// path and step. Always >= estimate() at the depth of the longest path.
Rational relative_estimate(PresentationPtr pres, uint32_t p,
                           const std::vector<std::vector<Functional>>& chain,
                           const LatticeOptions& opts = {});

// Exact p-gradient of a group whose p-quotient tower terminates: -1/p^L with
// p^L the order of the largest p-quotient. Fails with ResourceError when
// saturation cannot be certified within the depth/node budget.
struct ExactPGradient {
  Rational value;
  int tower_height = 0;  // L
  bool saturated = true;
};

ExactPGradient finite_p_gradient(PresentationPtr pres, uint32_t p, int max_depth = 24,
                                 const LatticeOptions& opts = {});

// Exact rank gradient of a finite group: enumerates every subgroup from the
// regular representation, computes d(H) by brute-force minimal generating
// sets (d <= 3, loud failure beyond), and minimizes (d(H) - 1)/[G:H]. The
// result is verified to equal -1/|G| before returning.
struct ExactRankGradient {
  Rational value;
  uint64_t order = 0;
  size_t subgroup_count = 0;
};

ExactRankGradient finite_rank_gradient(PresentationPtr pres, uint64_t order_bound = 200,
                                       uint32_t max_cosets = 1u << 20);

// p^k as an exact integer.
BigInt p_power(uint32_t p, int k);

}  // namespace pgrad
