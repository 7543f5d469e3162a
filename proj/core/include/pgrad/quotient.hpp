#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "pgrad/gradient.hpp"
#include "pgrad/lattice.hpp"
#include "pgrad/presentation.hpp"
#include "pgrad/rational.hpp"

namespace pgrad {

// G / <<x^e>>: the presentation with the relator x^e appended. Rejects the
// identity (degenerate quotient).
Presentation quotient_by_power(const Presentation& pres, const Word& x, int64_t e);

// The bookkeeping of one quotient step applied below a normal subgroup H:
// m is the order of xH in G/H, the transversal has [G:H]/m entries, and the
// subgroup presentation of the image acquires exactly that many relators, so
// with q(H) = d_p(H)/[G:H] the drop is bounded by q(image) >= q(H) - 1/m.
struct QuotientReport {
  Word x;
  uint32_t m = 1;
  uint64_t index = 1;  // [G:H]
  std::vector<Word> transversal;
  size_t added_relator_count = 0;
  int dp_before = 0;
  int dp_after = 0;
  Rational q_before;
  Rational q_after;
};

// Presentation of the image of H in G/<<x^m>>: the subgroup presentation of
// H plus the rewritten conjugates t x^m t^-1, one per transversal word.
std::pair<Presentation, QuotientReport> pi_h_presentation(const LatticeNode& h, const Word& x,
                                                          uint32_t p);

// Provenance of an exact p-gradient value fed to the quotient checker. Bare
// numbers are refused so the check cannot be made circular.
enum class Certificate {
  kFreeRank,        // free group: rank - 1
  kFiniteSaturated, // saturated lattice: -1/|largest p-quotient|
  kIndexFormula,    // derived through RG_p(H)/[G:H] from another certificate
};

struct CertifiedValue {
  Rational value;
  Certificate how;
};

std::string certificate_name(Certificate c);

// Checks the quotient lower bound: with RG_p(G) certified, the estimate of
// G/<<x^(p^k)>> must stay >= RG_p(G) - 1/p^k at every depth (estimates are
// upper bounds of the quotient's true p-gradient). The hypothesis that some
// finite p-quotient gives x order >= p^k is certified by a lattice witness
// first; without one the check is skipped, not failed.
struct QuotientBoundReport {
  bool skipped = false;
  bool passed = false;
  int witness_level = -1;
  uint32_t witness_order = 0;
  Rational bound;
  Rational quotient_estimate;
  std::string detail;
};

QuotientBoundReport check_quotient_bound(PresentationPtr pres, const Word& x, uint32_t p, int k,
                                         int depth, const CertifiedValue& certified,
                                         const LatticeOptions& opts = {});

}  // namespace pgrad
