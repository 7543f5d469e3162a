#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pgrad/coset_table.hpp"
#include "pgrad/presentation.hpp"
#include "pgrad/word.hpp"

namespace pgrad {

// One normal subgroup of p-power index: a node of the quotient lattice.
struct LatticeNode {
  CosetTablePtr table;  // standardized; size() == p^level
  std::string key;
  int level = 0;
  int dp_value = 0;
  std::vector<std::string> parent_keys;  // sorted; empty only at the root
};

// Breadth-first enumeration of all normal subgroups of index p^k, k <= depth,
// deduplicated across parents by standardized key. `saturated` certifies that
// the lattice is complete: some level at or before `depth` admits no further
// descent, so the p-quotient tower is finite and fully enumerated.
struct Lattice {
  uint32_t p = 2;
  int depth = 0;
  std::vector<std::vector<LatticeNode>> levels;  // levels[k] sorted by key
  bool saturated = false;
  bool truncated = false;

  size_t node_count() const {
    size_t n = 0;
    for (const auto& l : levels) n += l.size();
    return n;
  }
};

struct LatticeOptions {
  size_t node_budget = 50000;
  int threads = 0;  // 0 = hardware parallelism
};

// d_p of the subgroup behind a (normal) coset table.
int node_dp(const CosetTablePtr& table, uint32_t p);

// One child per G-invariant hyperplane of the node's V = H/[H,H]H^p. The
// children are normal in G of index p^(level+1); dp_value is not yet filled.
std::vector<LatticeNode> node_children(const LatticeNode& node, uint32_t p);

// Every finite p-group quotient is reached by a chain of index-p steps, each
// normal in the whole group, so expanding each level through its invariant
// hyperplanes enumerates every normal subgroup of p-power index exactly once.
Lattice enumerate_lattice(PresentationPtr pres, uint32_t p, int depth,
                          const LatticeOptions& opts = {});

// One line per node: "level index key-hash dp".
std::string dump_lattice(const Lattice& l);

// A finite-quotient certificate that x has order m at a lattice node.
struct OrderWitness {
  int level = 0;
  uint32_t order = 1;
};

// Greedy search for a node where the image of x has order > `exceed`:
// starting from the whole group, repeatedly descend through an invariant
// hyperplane that does not kill the class of x^(current order), which
// multiplies the order by p each level. Returns nothing when the class dies
// in every direction first; a found witness is always genuine.
std::optional<OrderWitness> find_order_witness(PresentationPtr pres, const Word& x, uint32_t p,
                                               const BigInt& exceed, int max_level);

}  // namespace pgrad
