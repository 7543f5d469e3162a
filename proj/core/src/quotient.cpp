#include "pgrad/quotient.hpp"

#include <memory>

#include "pgrad/errors.hpp"
#include "pgrad/schreier.hpp"

namespace pgrad {

Presentation quotient_by_power(const Presentation& pres, const Word& x, int64_t e) {
  if (x.is_identity()) throw UsageError("quotient by the identity is degenerate");
  if (x.ngens() != pres.ngens()) throw UsageError("word over a different alphabet");
  if (e <= 0) throw UsageError("exponent must be positive");
  Presentation out = pres;
  out.relators.push_back(power(x, e));
  return out;
}

std::pair<Presentation, QuotientReport> pi_h_presentation(const LatticeNode& h, const Word& x,
                                                          uint32_t p) {
  const CosetTable& t = *h.table;
  OrbitTransversal ot = orbit_transversal(t, x);

  SchreierData sd = make_schreier(h.table);
  SubgroupPresentation sp = subgroup_presentation(sd);

  QuotientReport rep;
  rep.x = x;
  rep.m = ot.order;
  rep.index = t.size();
  rep.transversal = ot.transversal;
  rep.added_relator_count = ot.transversal.size();
  rep.dp_before = dp(sp.pres, p);
  if (rep.dp_before != h.dp_value)
    throw IntegrityError("subgroup presentation d_p disagrees with the node's");

  Presentation out = sp.pres;
  Word xm = power(x, ot.order);
  for (const Word& tw : ot.transversal) {
    Word conj = multiply(multiply(tw, xm), invert(tw));
    if (t.trace(conj, 0) != 0)
      throw IntegrityError("transversal conjugate of x^m left the subgroup");
    Word projected = sp.project(rewrite(sd, conj));
    if (!projected.is_identity()) out.relators.push_back(std::move(projected));
  }

  rep.dp_after = dp(out, p);
  rep.q_before = Rational(BigInt(rep.dp_before), BigInt(rep.index));
  rep.q_after = Rational(BigInt(rep.dp_after), BigInt(rep.index));
  return {std::move(out), std::move(rep)};
}

std::string certificate_name(Certificate c) {
  switch (c) {
    case Certificate::kFreeRank:
      return "free-rank";
    case Certificate::kFiniteSaturated:
      return "finite-saturated";
    case Certificate::kIndexFormula:
      return "index-formula";
  }
  return "?";
}

QuotientBoundReport check_quotient_bound(PresentationPtr pres, const Word& x, uint32_t p, int k,
                                         int depth, const CertifiedValue& certified,
                                         const LatticeOptions& opts) {
  if (k < 0) throw UsageError("k must be nonnegative");
  QuotientBoundReport out;
  out.bound = certified.value - Rational(1, p_power(p, k));

  // Witness search: a node where the image of x has order >= p^k. Orders at
  // level j cannot exceed p^j, so search at least to level k. The default
  // witness is the deepest node of maximal order.
  BigInt need = p_power(p, k);
  int witness_depth = std::max(depth, k);
  Lattice lat = enumerate_lattice(pres, p, witness_depth, opts);
  uint32_t best_order = 0;
  int best_level = -1;
  for (size_t lvl = 0; lvl < lat.levels.size(); ++lvl) {
    for (const LatticeNode& n : lat.levels[lvl]) {
      uint32_t m = 1;
      const CosetTable& t = *n.table;
      for (uint32_t c = t.trace(x, 0); c != 0; c = t.trace(x, c)) ++m;
      if (m > best_order || (m == best_order && static_cast<int>(lvl) > best_level)) {
        best_order = m;
        best_level = static_cast<int>(lvl);
      }
    }
  }
  if (BigInt(best_order) >= need) {
    out.witness_level = best_level;
    out.witness_order = best_order;
  }
  if (out.witness_level < 0) {
    out.skipped = true;
    out.detail = "no finite quotient witnesses order(x) >= p^k up to depth " +
                 std::to_string(witness_depth) + "; check skipped";
    return out;
  }

  BigInt pk = p_power(p, k);
  if (pk > BigInt(int64_t(1) << 40)) throw ResourceError("p^k too large");
  Presentation q = quotient_by_power(*pres, x, pk.convert_to<int64_t>());
  GradientEstimate est = estimate(std::make_shared<const Presentation>(std::move(q)), p, depth, opts);
  out.quotient_estimate = est.value;
  out.passed = est.value >= out.bound;
  out.detail = "estimate=" + est.value.str() + " bound=" + out.bound.str() +
               " witness-order=" + std::to_string(out.witness_order) + " (" +
               certificate_name(certified.how) + " certificate)";
  return out;
}

}  // namespace pgrad
