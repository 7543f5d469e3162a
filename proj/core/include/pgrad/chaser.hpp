#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pgrad/gradient.hpp"
#include "pgrad/presentation.hpp"
#include "pgrad/rational.hpp"

namespace pgrad {

// One quotient step of a chase: the group was divided by <<x^(p^k)>>,
// spending 1/p^k of the budget. The certified lower bound is what the
// iterated quotient inequality guarantees for the true p-gradient of every
// later group in the chain; the estimate is the usual truncated upper bound.
struct ChaseStep {
  Word x;
  int k = 0;
  int witness_level = 0;
  uint32_t witness_order = 0;
  Rational spent;            // running total of 1/p^k penalties
  Rational certified_lower;  // (rank - 1) - spent
  Rational estimate_after;
};

struct Trajectory {
  uint32_t p = 2;
  Rational alpha;
  int rank = 0;
  Rational initial;  // rank - 1
  int depth = 0;
  uint64_t seed = 0;
  Rational initial_estimate;
  std::vector<Presentation> presentations;  // presentations[i+1] = step i applied
  std::vector<ChaseStep> steps;
  std::string stop_reason;
};

struct ChaseOptions {
  int depth = 2;            // estimate depth per step
  int max_steps = 16;
  uint64_t seed = 0;
  int max_word_length = 2;  // candidate words are positive products up to this length
  int max_k = 8;            // largest step size; witnesses need p^(k+1)-coset tables
  LatticeOptions lattice;
};

// Replays the torsion-quotient construction at finite depth: starting from
// the free group on ceil(alpha)+1 generators, repeatedly quotient by
// x^(p^k) where k is the smallest exponent with 1/p^k inside the remaining
// budget (rank-1) - alpha - spent, and x is a word certified in a finite
// p-quotient to have order strictly greater than p^k (so x^(p^k) != 1).
// Order witnesses live at lattice level k+1 or deeper, so the witness search
// runs to depth k+1 regardless of the estimate depth. Stops cleanly when the
// budget is exhausted, no candidate word is witnessed, or max_steps is hit.
// Throughout, spent <= (rank-1) - alpha and every estimate stays >= the
// certified lower bound; violations raise IntegrityError.
Trajectory chase(const Rational& alpha, uint32_t p, const ChaseOptions& opts = {});

// Re-verifies the sandwich along an eventually-constant chain: certified
// lower bounds are non-increasing, each group's estimate dominates its own
// certified lower bound, and every estimate dominates the final group's
// certified lower bound.
struct LimitCheckLine {
  bool passed = false;
  std::string what;
};

struct LimitCheck {
  bool passed = true;
  std::vector<LimitCheckLine> lines;
};

LimitCheck check_limit_chain(const Trajectory& t);

}  // namespace pgrad
