#include "pgrad/oracle.hpp"

#include <algorithm>
#include <memory>
#include <set>
#include <string>

#include "pgrad/coset_table.hpp"
#include "pgrad/errors.hpp"

namespace pgrad {

namespace {

// Element-by-element multiplication table of a finite group from the regular
// representation of its presentation.
struct SmallGroup {
  uint32_t order = 1;
  std::vector<std::vector<uint32_t>> mult;  // mult[i][j] = element i * element j
  std::vector<uint32_t> inv;
};

SmallGroup regular_group(const Presentation& pres) {
  auto pp = std::make_shared<const Presentation>(pres);
  CosetTable t = todd_coxeter(pp, {}, 1 << 16);
  SmallGroup g;
  g.order = t.size();
  g.mult.assign(g.order, std::vector<uint32_t>(g.order));
  for (uint32_t i = 0; i < g.order; ++i)
    for (uint32_t j = 0; j < g.order; ++j) g.mult[i][j] = t.trace(t.rep(j), i);
  g.inv.assign(g.order, 0);
  for (uint32_t i = 0; i < g.order; ++i)
    for (uint32_t j = 0; j < g.order; ++j)
      if (g.mult[i][j] == 0) g.inv[i] = j;
  return g;
}

// Image of a word under the assignment gens[g] -> target elements, as an
// element of the target (0 = identity).
uint32_t evaluate(const SmallGroup& t, const std::vector<uint32_t>& assign, const Word& w) {
  uint32_t e = 0;
  for (const Syllable& s : w.syllables()) {
    uint32_t x = s.exp < 0 ? t.inv[assign[s.gen]] : assign[s.gen];
    uint64_t k = s.exp < 0 ? uint64_t(-(s.exp + 1)) + 1 : uint64_t(s.exp);
    // Powers via the element's cycle, so huge exponents stay cheap.
    uint32_t start = e;
    uint64_t steps = 0;
    while (steps < k) {
      e = t.mult[e][x];
      ++steps;
      if (e == start) break;
    }
    if (steps < k) {
      for (uint64_t r = k % steps; r > 0; --r) e = t.mult[e][x];
    }
  }
  return e;
}

}  // namespace

std::vector<std::set<std::string>> oracle_kernel_keys(PresentationPtr pres, uint32_t p,
                                                      int depth) {
  if (depth < 0 || depth > 2)
    throw UsageError("oracle supports depth <= 2 (groups of order p^2 at most)");

  // Target groups per level: all isomorphism types of order p and p^2.
  std::vector<Presentation> targets;
  {
    int64_t p2 = int64_t(p) * p;
    Presentation zp = parse_presentation("gens: a\nrel: a^" + std::to_string(p));
    Presentation zp2 = parse_presentation("gens: a\nrel: a^" + std::to_string(p2));
    Presentation zpzp = parse_presentation("gens: a b\nrel: a^" + std::to_string(p) +
                                           "\nrel: b^" + std::to_string(p) + "\nrel: [a,b]");
    if (depth >= 1) targets.push_back(zp);
    if (depth >= 2) {
      targets.push_back(zp2);
      targets.push_back(zpzp);
    }
  }

  const int ng = pres->ngens();
  std::vector<std::set<std::string>> kernels(depth + 1);

  // The whole group is the kernel of the trivial map.
  kernels[0].insert(standardize(whole_group_table(pres)).key);

  for (const Presentation& tp : targets) {
    SmallGroup target = regular_group(tp);
    std::vector<uint32_t> assign(ng, 0);
    for (;;) {
      bool is_hom = true;
      for (const Word& r : pres->relators)
        if (evaluate(target, assign, r) != 0) {
          is_hom = false;
          break;
        }
      if (is_hom) {
        // Elements of the image subgroup = orbit of the identity under right
        // multiplication by the assigned elements.
        std::vector<bool> seen(target.order, false);
        std::vector<uint32_t> members{0};
        seen[0] = true;
        for (size_t i = 0; i < members.size(); ++i)
          for (int g = 0; g < ng; ++g) {
            uint32_t m = target.mult[members[i]][assign[g]];
            if (!seen[m]) {
              seen[m] = true;
              members.push_back(m);
            }
          }
        std::sort(members.begin(), members.end());
        size_t image_order = members.size();
        int level = 0;
        for (size_t q = image_order; q > 1; q /= p) ++level;
        if (level <= depth) {
          std::vector<uint32_t> pos(target.order, 0);
          for (size_t i = 0; i < members.size(); ++i) pos[members[i]] = static_cast<uint32_t>(i);
          std::vector<std::vector<uint32_t>> images(ng,
                                                    std::vector<uint32_t>(image_order));
          for (int g = 0; g < ng; ++g)
            for (size_t i = 0; i < image_order; ++i)
              images[g][i] = pos[target.mult[members[i]][assign[g]]];
          CosetTable kt = from_action(pres, images);
          kernels[level].insert(standardize(kt).key);
        }
      }
      // Next assignment.
      int g = ng - 1;
      while (g >= 0 && ++assign[g] == target.order) assign[g--] = 0;
      if (g < 0) break;
    }
  }

  while (!kernels.empty() && kernels.back().empty()) kernels.pop_back();
  return kernels;
}

std::vector<size_t> oracle_level_counts(PresentationPtr pres, uint32_t p, int depth) {
  std::vector<size_t> counts;
  for (const auto& level : oracle_kernel_keys(std::move(pres), p, depth))
    counts.push_back(level.size());
  return counts;
}

}  // namespace pgrad
