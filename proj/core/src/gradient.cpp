#include "pgrad/gradient.hpp"

#include <algorithm>
#include <set>

#include "pgrad/errors.hpp"
#include "pgrad/schreier.hpp"

namespace pgrad {

BigInt p_power(uint32_t p, int k) {
  return boost::multiprecision::pow(BigInt(p), static_cast<unsigned>(k));
}

GradientEstimate estimate_from_lattice(const Lattice& l) {
  GradientEstimate est;
  est.depth = l.depth;
  est.exact = l.saturated;
  est.truncated = l.truncated;
  bool first = true;
  for (size_t k = 0; k < l.levels.size(); ++k) {
    BigInt index = p_power(l.p, static_cast<int>(k));
    for (const LatticeNode& n : l.levels[k]) {
      Rational v(BigInt(n.dp_value) - 1, index);
      // Levels ascend and nodes are key-sorted, so the first strict
      // improvement realizes the smallest-index, smallest-key tie-break.
      if (first || v < est.value) {
        first = false;
        est.value = v;
        est.witness_key = n.key;
        est.witness_level = static_cast<int>(k);
      }
    }
  }
  return est;
}

GradientEstimate estimate(PresentationPtr pres, uint32_t p, int depth,
                          const LatticeOptions& opts) {
  Lattice l = enumerate_lattice(std::move(pres), p, depth, opts);
  return estimate_from_lattice(l);
}

Rational relative_estimate(PresentationPtr pres, uint32_t p,
                           const std::vector<std::vector<Functional>>& chain,
                           const LatticeOptions& opts) {
  (void)opts;
  if (chain.empty()) throw UsageError("empty chain");
  StandardizedTable root = standardize(whole_group_table(pres));

  bool first = true;
  Rational best;
  for (size_t pi = 0; pi < chain.size(); ++pi) {
    CosetTablePtr cur = std::make_shared<const CosetTable>(root.table);
    for (size_t step = 0; step < chain[pi].size(); ++step) {
      const Functional& lam = chain[pi][step];
      SchreierData sd = make_schreier(cur);
      ModPAbelianization md = mod_p_data(sd, p);
      std::string where = "path " + std::to_string(pi + 1) + " step " + std::to_string(step + 1);
      if (lam.p != p || lam.coeffs.size() != size_t(md.dim))
        throw UsageError(where + ": functional has wrong dimension (expected " +
                         std::to_string(md.dim) + ")");
      std::vector<Functional> inv = invariant_hyperplanes(md.dim, p, md.action);
      Functional canon = canonical_functional(p, lam.coeffs);
      if (std::find(inv.begin(), inv.end(), canon) == inv.end())
        throw UsageError(where + ": functional is not invariant under the ambient action");
      std::vector<uint32_t> val(md.n_sgens, 0);
      for (int i = 0; i < md.n_sgens; ++i) {
        std::vector<uint32_t> row(md.sgen_coords.row(i), md.sgen_coords.row(i) + md.dim);
        val[i] = canon.apply(row);
      }
      CosetTable child = descend(*cur, p, [&](uint32_t c, int g) {
        int id = sd.id_at(c, g);
        return id < 0 ? 0u : val[id];
      });
      cur = std::make_shared<const CosetTable>(std::move(child));
    }
    Rational v(BigInt(node_dp(cur, p)) - 1, BigInt(cur->size()));
    if (first || v < best) {
      first = false;
      best = v;
    }
  }
  return best;
}

ExactPGradient finite_p_gradient(PresentationPtr pres, uint32_t p, int max_depth,
                                 const LatticeOptions& opts) {
  Lattice l = enumerate_lattice(std::move(pres), p, max_depth, opts);
  if (!l.saturated)
    throw ResourceError("cannot certify finiteness of the p-quotient tower within depth " +
                        std::to_string(max_depth) +
                        (l.truncated ? " (node budget exhausted)" : ""));
  int height = static_cast<int>(l.levels.size()) - 1;
  const std::vector<LatticeNode>& deepest = l.levels[height];
  if (deepest.size() != 1 || deepest[0].dp_value != 0)
    throw IntegrityError("saturated lattice does not end in a unique d_p=0 node");

  ExactPGradient out;
  out.tower_height = height;
  out.value = Rational(-1, p_power(p, height));
  GradientEstimate est = estimate_from_lattice(l);
  if (est.value != out.value)
    throw IntegrityError("saturated estimate disagrees with -1/|largest p-quotient|");
  return out;
}

// ---------------------------------------------------------------------------
// Finite rank gradient.
// ---------------------------------------------------------------------------

namespace {

// Right-multiplication closure of a subset (with the identity); in a finite
// group this is the generated subgroup.
std::vector<uint32_t> closure(const std::vector<std::vector<uint32_t>>& mult,
                              const std::vector<uint32_t>& gens) {
  std::vector<bool> seen(mult.size(), false);
  std::vector<uint32_t> members{0};
  seen[0] = true;
  for (size_t i = 0; i < members.size(); ++i)
    for (uint32_t g : gens) {
      uint32_t m = mult[members[i]][g];
      if (!seen[m]) {
        seen[m] = true;
        members.push_back(m);
      }
    }
  std::sort(members.begin(), members.end());
  return members;
}

int brute_force_d(const std::vector<std::vector<uint32_t>>& mult,
                  const std::vector<uint32_t>& h) {
  if (h.size() == 1) return 0;
  for (uint32_t e : h) {
    if (e == 0) continue;
    if (closure(mult, {e}).size() == h.size()) return 1;
  }
  for (size_t i = 0; i < h.size(); ++i)
    for (size_t j = i + 1; j < h.size(); ++j)
      if (closure(mult, {h[i], h[j]}).size() == h.size()) return 2;
  for (size_t i = 0; i < h.size(); ++i)
    for (size_t j = i + 1; j < h.size(); ++j)
      for (size_t k = j + 1; k < h.size(); ++k)
        if (closure(mult, {h[i], h[j], h[k]}).size() == h.size()) return 3;
  throw ResourceError("minimal generating set exceeds brute-force bound d <= 3");
}

}  // namespace

ExactRankGradient finite_rank_gradient(PresentationPtr pres, uint64_t order_bound,
                                       uint32_t max_cosets) {
  CosetTable reg = todd_coxeter(pres, {}, max_cosets);
  const uint32_t n = reg.size();
  if (n > order_bound)
    throw ResourceError("group order " + std::to_string(n) + " exceeds bound " +
                        std::to_string(order_bound));

  std::vector<std::vector<uint32_t>> mult(n, std::vector<uint32_t>(n));
  for (uint32_t i = 0; i < n; ++i)
    for (uint32_t j = 0; j < n; ++j) mult[i][j] = reg.trace(reg.rep(j), i);

  // All subgroups, grown by closing each found subgroup with one more element.
  std::set<std::vector<uint32_t>> subgroups;
  std::vector<std::vector<uint32_t>> queue{{0}};
  subgroups.insert(queue[0]);
  for (size_t qi = 0; qi < queue.size(); ++qi) {
    std::vector<uint32_t> base = queue[qi];
    for (uint32_t e = 1; e < n; ++e) {
      if (std::binary_search(base.begin(), base.end(), e)) continue;
      std::vector<uint32_t> gens = base;
      gens.push_back(e);
      std::vector<uint32_t> sub = closure(mult, gens);
      if (subgroups.insert(sub).second) queue.push_back(std::move(sub));
    }
  }

  bool first = true;
  Rational best;
  for (const std::vector<uint32_t>& h : subgroups) {
    int d = brute_force_d(mult, h);
    Rational v(BigInt(d) - 1, BigInt(n / h.size()));
    if (first || v < best) {
      first = false;
      best = v;
    }
  }

  if (best != Rational(-1, BigInt(n)))
    throw IntegrityError("finite rank gradient does not equal -1/|G|");

  ExactRankGradient out;
  out.value = best;
  out.order = n;
  out.subgroup_count = subgroups.size();
  return out;
}

}  // namespace pgrad
