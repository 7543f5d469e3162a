#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <map>
#include <set>

#include "pgrad/errors.hpp"
#include "pgrad/lattice.hpp"
#include "pgrad/oracle.hpp"
#include "pgrad/schreier.hpp"
#include "test_util.hpp"

using namespace pgrad;
using namespace pgrad::test;

namespace {

std::vector<size_t> level_sizes(const Lattice& l) {
  std::vector<size_t> v;
  for (const auto& lvl : l.levels) v.push_back(lvl.size());
  return v;
}

}  // namespace

TEST_CASE("children counts") {
  auto f2 = pres("gens: a b\n");
  Lattice l = enumerate_lattice(f2, 2, 0);
  REQUIRE(l.levels.size() == 1);
  CHECK(node_children(l.levels[0][0], 2).size() == 3);

  auto z4 = pres("gens: a\nrel: a^4\n");
  Lattice lz = enumerate_lattice(z4, 2, 1);
  REQUIRE(lz.levels.size() == 2);
  CHECK(lz.levels[1][0].dp_value == 1);
  CHECK(node_children(lz.levels[1][0], 2).size() == 1);

  auto z3 = pres("gens: a\nrel: a^3\n");
  Lattice l3 = enumerate_lattice(z3, 2, 1);
  CHECK(l3.levels[0][0].dp_value == 0);
  CHECK(node_children(l3.levels[0][0], 2).empty());
}

TEST_CASE("level counts on known instances") {
  CHECK(level_sizes(enumerate_lattice(pres("gens: a b\n"), 2, 2)) ==
        std::vector<size_t>{1, 3, 7});

  Lattice lz4 = enumerate_lattice(pres("gens: a\nrel: a^4\n"), 2, 3);
  CHECK(level_sizes(lz4) == std::vector<size_t>{1, 1, 1});
  CHECK(lz4.saturated);

  Lattice lz3 = enumerate_lattice(pres("gens: a\nrel: a^3\n"), 2, 2);
  CHECK(level_sizes(lz3) == std::vector<size_t>{1});
  CHECK(lz3.saturated);
}

TEST_CASE("oracle equivalence at depth 2") {
  for (const char* src : {"gens: a b\n", "gens: a b\nrel: a^2\n"}) {
    for (uint32_t p : {2u, 3u}) {
      Lattice l = enumerate_lattice(pres(src), p, 2);
      CHECK(level_sizes(l) == oracle_level_counts(pres(src), p, 2));
    }
  }
}

TEST_CASE("lattice nodes are exactly the oracle's kernels") {
  // Not just matching counts: the standardized keys agree set for set.
  for (const char* src :
       {"gens: a b\n", "gens: a b\nrel: a^2\n", "gens: x y z\nrel: z^2\nrel: [x,z]\nrel: [y,z]\n",
        "gens: a\nrel: a^12\n", "gens: a t\nrel: t a t^-1 a^-2\n"}) {
    for (uint32_t p : {2u, 3u}) {
      Lattice l = enumerate_lattice(pres(src), p, 2);
      auto oracle = oracle_kernel_keys(pres(src), p, 2);
      REQUIRE(l.levels.size() == oracle.size());
      for (size_t k = 0; k < oracle.size(); ++k) {
        std::set<std::string> got;
        for (const LatticeNode& n : l.levels[k]) got.insert(n.key);
        CHECK(got == oracle[k]);
      }
    }
  }
}

TEST_CASE("every node passes the invariant suite") {
  Lattice l = enumerate_lattice(pres("gens: a b\nrel: a^2\n"), 2, 3);
  std::set<std::string> all_keys;
  for (const auto& level : l.levels)
    for (const LatticeNode& n : level) {
      n.table->validate();
      CHECK(is_normal(*n.table));
      CHECK(n.table->size() == size_t(1) << n.level);
      CHECK(all_keys.insert(n.key).second);  // keys unique across the lattice
    }

  // Monotone containment: each node descends from at least one parent, and
  // its subgroup is contained in every parent (trace the Schreier words).
  for (size_t k = 1; k < l.levels.size(); ++k) {
    std::map<std::string, const LatticeNode*> parents;
    for (const LatticeNode& n : l.levels[k - 1]) parents[n.key] = &n;
    for (const LatticeNode& n : l.levels[k]) {
      CHECK(!n.parent_keys.empty());
      SchreierData sd = make_schreier(n.table);
      for (const std::string& pk : n.parent_keys) {
        REQUIRE(parents.count(pk));
        const CosetTable& pt = *parents.at(pk)->table;
        for (const Word& s : sd.sgen_word) CHECK(pt.trace(s, 0) == 0);
      }
    }
  }
}

TEST_CASE("results are independent of thread count") {
  for (const char* src : {"gens: a b\n", "gens: a b c\nrel: a^4\n"}) {
    LatticeOptions one, many;
    one.threads = 1;
    many.threads = 4;
    Lattice l1 = enumerate_lattice(pres(src), 2, 3, one);
    Lattice l4 = enumerate_lattice(pres(src), 2, 3, many);
    CHECK(dump_lattice(l1) == dump_lattice(l4));
  }
}

TEST_CASE("node budget truncates loudly") {
  LatticeOptions tight;
  tight.node_budget = 5;
  Lattice l = enumerate_lattice(pres("gens: a b\n"), 2, 3, tight);
  CHECK(l.truncated);
  CHECK(!l.saturated);
  CHECK(l.node_count() >= 5);

  LatticeOptions roomy;
  Lattice full = enumerate_lattice(pres("gens: a b\n"), 2, 3, roomy);
  CHECK(!full.truncated);
}

TEST_CASE("dump format is one sorted line per node") {
  Lattice l = enumerate_lattice(pres("gens: a\nrel: a^4\n"), 2, 2);
  CHECK(dump_lattice(l) ==
        "0 1 " + key_hash_hex(l.levels[0][0].key) + " 1\n" +
        "1 2 " + key_hash_hex(l.levels[1][0].key) + " 1\n" +
        "2 4 " + key_hash_hex(l.levels[2][0].key) + " 0\n");
}

TEST_CASE("invalid arguments") {
  CHECK_THROWS_AS(enumerate_lattice(pres("gens: a\n"), 4, 1), UsageError);
  CHECK_THROWS_AS(enumerate_lattice(pres("gens: a\n"), 2, -1), UsageError);
}
