#include "pgrad/verify.hpp"

#include <map>
#include <memory>
#include <sstream>

#include "pgrad/chaser.hpp"
#include "pgrad/errors.hpp"
#include "pgrad/gradient.hpp"
#include "pgrad/oracle.hpp"
#include "pgrad/quotient.hpp"
#include "pgrad/schreier.hpp"

namespace pgrad {

namespace {

const std::map<std::string, const char*>& corpus_sources() {
  static const std::map<std::string, const char*> corpus = {
      {"f1", "gens: a\n"},
      {"f2", "gens: a b\n"},
      {"f3", "gens: a b c\n"},
      {"z3", "gens: a\nrel: a^3\n"},
      {"z4", "gens: a\nrel: a^4\n"},
      {"z6", "gens: a\nrel: a^6\n"},
      {"v4", "gens: a b\nrel: a^2\nrel: b^2\nrel: [a,b]\n"},
      {"s3", "gens: a b\nrel: a^2\nrel: b^3\nrel: (a b)^2\n"},
      {"d4", "gens: a b\nrel: a^4\nrel: b^2\nrel: (a b)^2\n"},
      {"q8", "gens: a b\nrel: a^4\nrel: b^2 a^-2\nrel: b^-1 a b a\n"},
      {"a4", "gens: a b\nrel: a^2\nrel: b^3\nrel: (a b)^3\n"},
      {"z2xz4", "gens: a b\nrel: a^2\nrel: b^4\nrel: [a,b]\n"},
      {"s3xz2",
       "gens: a b c\nrel: a^2\nrel: b^3\nrel: (a b)^2\nrel: c^2\nrel: [a,c]\nrel: [b,c]\n"},
      {"fa2", "gens: a b\nrel: a^2\n"},
      {"f2xz2", "gens: x y z\nrel: z^2\nrel: [x,z]\nrel: [y,z]\n"},
      {"bs12", "gens: a t\nrel: t a t^-1 a^-2\n"},
  };
  return corpus;
}

PresentationPtr corpus_ptr(const std::string& name) {
  return std::make_shared<const Presentation>(corpus_presentation(name));
}

std::string level_sizes(const Lattice& l) {
  std::string out = "[";
  for (size_t i = 0; i < l.levels.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(l.levels[i].size());
  }
  return out + "]";
}

std::string counts_str(const std::vector<size_t>& v) {
  std::string out = "[";
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(v[i]);
  }
  return out + "]";
}

LatticeOptions lattice_opts(const VerifyOptions& v) {
  LatticeOptions o;
  o.threads = v.threads;
  o.node_budget = v.node_budget;
  return o;
}

void add(SuiteResult& r, bool ok, const std::string& id, const std::string& instance,
         const std::string& details) {
  r.lines.push_back({ok ? "PASS" : "FAIL", id, instance, details});
}

// --- schreier: d_p(H)-1 = (d_p(G)-1)[G:H] on free groups, flat estimates ---

SuiteResult suite_schreier(const VerifyOptions& vo) {
  SuiteResult r{"schreier", {}};
  const LatticeOptions lo = lattice_opts(vo);
  struct Case {
    const char* name;
    int rank;
  };
  for (const Case& c : {Case{"f2", 2}, Case{"f3", 3}}) {
    for (uint32_t p : {2u, 3u}) {
      PresentationPtr pres = corpus_ptr(c.name);
      Lattice lat = enumerate_lattice(pres, p, 3, lo);
      bool formula = true;
      size_t nodes = 0;
      for (size_t k = 0; k < lat.levels.size(); ++k) {
        BigInt index = p_power(p, static_cast<int>(k));
        for (const LatticeNode& n : lat.levels[k]) {
          ++nodes;
          if (BigInt(n.dp_value) - 1 != BigInt(c.rank - 1) * index) formula = false;
        }
      }
      bool flat = true;
      Rational expect(BigInt(c.rank) - 1);
      for (int d = 0; d <= 3; ++d)
        if (estimate(pres, p, d, lo).value != expect) flat = false;
      std::string inst = std::string(c.name) + ",p=" + std::to_string(p);
      add(r, formula, "schreier-index", inst,
          "nodes=" + std::to_string(nodes) + " exact d_p(H)-1=(d_p(G)-1)[G:H] to depth 3");
      add(r, flat, "free-estimate", inst, "estimate=" + expect.str() + " at depths 0..3");
    }
  }
  return r;
}

// --- lattice: BFS level counts vs the epimorphism-kernel oracle ---

SuiteResult suite_lattice(const VerifyOptions& vo) {
  SuiteResult r{"lattice", {}};
  const LatticeOptions lo = lattice_opts(vo);

  Lattice lat = enumerate_lattice(corpus_ptr("f2"), 2, 2, lo);
  std::vector<size_t> got;
  for (const auto& lvl : lat.levels) got.push_back(lvl.size());
  std::vector<size_t> oracle = oracle_level_counts(corpus_ptr("f2"), 2, 2);
  bool ok = got == std::vector<size_t>{1, 3, 7} && oracle == got;
  add(r, ok, "lattice-counts", "f2,p=2",
      "levels=" + level_sizes(lat) + " oracle=" + counts_str(oracle) + " expected=[1,3,7]");

  for (const char* name : {"f2", "fa2"}) {
    for (uint32_t p : {2u, 3u}) {
      Lattice l2 = enumerate_lattice(corpus_ptr(name), p, 2, lo);
      std::vector<size_t> sizes;
      for (const auto& lvl : l2.levels) sizes.push_back(lvl.size());
      std::vector<size_t> oc = oracle_level_counts(corpus_ptr(name), p, 2);
      add(r, sizes == oc, "lattice-oracle", std::string(name) + ",p=" + std::to_string(p),
          "levels=" + counts_str(sizes) + " oracle=" + counts_str(oc));
    }
  }
  return r;
}

// --- finite-p: exact values via saturation ---

SuiteResult suite_finite_p(const VerifyOptions& vo) {
  SuiteResult r{"finite-p", {}};
  const LatticeOptions lo = lattice_opts(vo);
  struct Case {
    const char* name;
    const char* expect;
  };
  for (const Case& c : {Case{"z4", "-1/4"}, Case{"z6", "-1/2"}, Case{"z3", "-1/1"}}) {
    std::string inst = std::string(c.name) + ",p=2";
    try {
      ExactPGradient g = finite_p_gradient(corpus_ptr(c.name), 2, 24, lo);
      bool ok = g.value == Rational::parse(c.expect) && g.saturated;
      add(r, ok, "finite-p-exact", inst,
          "value=" + g.value.str() + " expected=" + std::string(c.expect) + " exact=saturated");
    } catch (const std::exception& e) {
      add(r, false, "finite-p-exact", inst, std::string("error: ") + e.what());
    }
  }
  return r;
}

// --- rank-gradient: -1/|G| on the finite corpus ---

SuiteResult suite_rank_gradient(const VerifyOptions& vo) {
  (void)vo;
  SuiteResult r{"rank-gradient", {}};
  for (const char* name : {"z4", "v4", "s3", "d4", "q8", "a4", "z2xz4", "s3xz2"}) {
    try {
      ExactRankGradient g = finite_rank_gradient(corpus_ptr(name));
      bool ok = g.value == Rational(-1, BigInt(g.order));
      add(r, ok, "finite-rank-gradient", name,
          "value=" + g.value.str() + " order=" + std::to_string(g.order) +
              " subgroups=" + std::to_string(g.subgroup_count));
    } catch (const std::exception& e) {
      add(r, false, "finite-rank-gradient", name, std::string("error: ") + e.what());
    }
  }
  return r;
}

// --- multiplicativity: RG_p(G) = RG_p(H)/[G:H] over all lattice nodes ---

SuiteResult suite_multiplicativity(const VerifyOptions& vo) {
  SuiteResult r{"multiplicativity", {}};
  const LatticeOptions lo = lattice_opts(vo);
  for (const char* name : {"z4", "v4", "s3", "d4", "q8", "a4", "z2xz4", "s3xz2"}) {
    for (uint32_t p : {2u, 3u}) {
      std::string inst = std::string(name) + ",p=" + std::to_string(p);
      try {
        PresentationPtr pres = corpus_ptr(name);
        ExactPGradient whole = finite_p_gradient(pres, p, 24, lo);
        Lattice lat = enumerate_lattice(pres, p, 24, lo);
        bool ok = true;
        size_t checked = 0;
        for (size_t k = 0; k < lat.levels.size(); ++k) {
          for (const LatticeNode& n : lat.levels[k]) {
            SubgroupPresentation sp = subgroup_presentation(make_schreier(n.table));
            ExactPGradient sub = finite_p_gradient(
                std::make_shared<const Presentation>(sp.pres), p, 24, lo);
            if (whole.value != sub.value / Rational(p_power(p, static_cast<int>(k)))) ok = false;
            ++checked;
          }
        }
        add(r, ok, "index-multiplicativity", inst,
            "nodes=" + std::to_string(checked) + " RG_p(G)=RG_p(H)/[G:H] exactly");
      } catch (const std::exception& e) {
        add(r, false, "index-multiplicativity", inst, std::string("error: ") + e.what());
      }
    }
  }
  return r;
}

// --- quotient-step: |T| m = [G:H] and the d_p drop bound ---

SuiteResult suite_quotient_step(const VerifyOptions& vo) {
  SuiteResult r{"quotient-step", {}};
  const LatticeOptions lo = lattice_opts(vo);
  const uint32_t p = 2;
  for (const char* name : {"f2", "fa2"}) {
    PresentationPtr pres = corpus_ptr(name);
    std::vector<Word> xs = {
        parse_word("a", *pres),
        parse_word("b", *pres),
        parse_word("a b", *pres),
        parse_word("[a,b]", *pres),
    };
    Lattice lat = enumerate_lattice(pres, p, 2, lo);
    size_t pairs = 0;
    bool counts_ok = true, drop_ok = true;
    for (const auto& level : lat.levels) {
      for (const LatticeNode& n : level) {
        for (const Word& x : xs) {
          auto [pi, rep] = pi_h_presentation(n, x, p);
          ++pairs;
          if (uint64_t(rep.m) * rep.transversal.size() != rep.index) counts_ok = false;
          if (rep.added_relator_count * rep.m != rep.index) counts_ok = false;
          BigInt drop = BigInt(rep.index) / rep.m;
          if (BigInt(rep.dp_after) < BigInt(rep.dp_before) - drop) drop_ok = false;
          if (!(rep.q_after >= rep.q_before - Rational(1, BigInt(rep.m)))) drop_ok = false;
        }
      }
    }
    std::string inst = std::string(name) + ",p=2";
    add(r, counts_ok, "transversal-count", inst,
        "pairs=" + std::to_string(pairs) + " |T|*m=[G:H] exactly");
    add(r, drop_ok, "dp-drop-bound", inst,
        "pairs=" + std::to_string(pairs) + " d_p(pi(H)) >= d_p(H) - [G:H]/m exactly");
  }
  return r;
}

// --- quotient-bound: estimates of p-power torsion quotients ---

SuiteResult suite_quotient_bound(const VerifyOptions& vo) {
  SuiteResult r{"quotient-bound", {}};
  const LatticeOptions lo = lattice_opts(vo);

  {
    PresentationPtr f2 = corpus_ptr("f2");
    Word a = parse_word("a", *f2);
    CertifiedValue cert{Rational(1), Certificate::kFreeRank};
    QuotientBoundReport q = check_quotient_bound(f2, a, 2, 1, 3, cert, lo);
    bool ok = !q.skipped && q.passed && q.quotient_estimate == Rational(1, 2);
    add(r, ok, "quotient-bound", "f2/<<a^2>>,p=2,k=1", q.detail + " expected-estimate=1/2");

    QuotientBoundReport q0 = check_quotient_bound(f2, a, 2, 0, 2, cert, lo);
    add(r, !q0.skipped && q0.passed, "quotient-bound", "f2/<<a>>,p=2,k=0", q0.detail);
  }
  {
    PresentationPtr f3 = corpus_ptr("f3");
    Word a = parse_word("a", *f3);
    CertifiedValue cert{Rational(2), Certificate::kFreeRank};
    QuotientBoundReport q = check_quotient_bound(f3, a, 2, 2, 3, cert, lo);
    bool ok = !q.skipped && q.passed && q.quotient_estimate >= Rational(7, 4);
    add(r, ok, "quotient-bound", "f3/<<a^4>>,p=2,k=2", q.detail + " expected>=7/4");
  }
  return r;
}

// --- chaser: ledger and sandwich invariants ---

SuiteResult suite_chaser(const VerifyOptions& vo) {
  SuiteResult r{"chaser", {}};
  ChaseOptions co;
  co.depth = 2;
  co.lattice = lattice_opts(vo);

  {
    Trajectory t = chase(Rational(3, 4), 2, co);
    LimitCheck lc = check_limit_chain(t);
    bool ok = lc.passed && !t.steps.empty() &&
              t.steps.back().certified_lower == Rational(3, 4);
    add(r, ok, "chase-ledger", "alpha=3/4,p=2",
        "steps=" + std::to_string(t.steps.size()) + " certified=" +
            (t.steps.empty() ? t.initial.str() : t.steps.back().certified_lower.str()) +
            " stop=\"" + t.stop_reason + "\"");
    add(r, lc.passed, "chain-sandwich", "alpha=3/4,p=2",
        std::to_string(lc.lines.size()) + " inequalities certified-lower<=estimate");
  }
  {
    Trajectory t = chase(Rational(1, 2), 2, co);
    LimitCheck lc = check_limit_chain(t);
    bool terminal = !t.steps.empty() && t.steps.back().estimate_after == Rational(1, 2) &&
                    t.steps.back().certified_lower == Rational(1, 2);
    add(r, lc.passed && terminal, "chase-ledger", "alpha=1/2,p=2",
        "steps=" + std::to_string(t.steps.size()) +
            " terminal estimate equals certified lower bound 1/2");
  }
  {
    Trajectory t = chase(Rational(1), 2, co);
    bool ok = t.steps.empty() && t.initial_estimate == Rational(1);
    add(r, ok, "chase-ledger", "alpha=1/1,p=2",
        "steps=0 budget=0 estimate=" + t.initial_estimate.str() + " equals alpha");
  }
  return r;
}

}  // namespace

Presentation corpus_presentation(const std::string& name) {
  auto it = corpus_sources().find(name);
  if (it == corpus_sources().end()) throw UsageError("unknown corpus presentation '" + name + "'");
  return parse_presentation(it->second);
}

std::vector<std::string> corpus_names() {
  std::vector<std::string> names;
  for (const auto& [k, v] : corpus_sources()) names.push_back(k);
  return names;
}

std::vector<std::string> suite_names() {
  return {"schreier",         "lattice",       "finite-p",       "rank-gradient",
          "multiplicativity", "quotient-step", "quotient-bound", "chaser"};
}

SuiteResult run_suite(const std::string& name, const VerifyOptions& opts) {
  if (name == "schreier") return suite_schreier(opts);
  if (name == "lattice") return suite_lattice(opts);
  if (name == "finite-p") return suite_finite_p(opts);
  if (name == "rank-gradient") return suite_rank_gradient(opts);
  if (name == "multiplicativity") return suite_multiplicativity(opts);
  if (name == "quotient-step") return suite_quotient_step(opts);
  if (name == "quotient-bound") return suite_quotient_bound(opts);
  if (name == "chaser") return suite_chaser(opts);
  throw UsageError("unknown suite '" + name + "'");
}

std::vector<SuiteResult> run_suites(const std::string& name, const VerifyOptions& opts) {
  std::vector<SuiteResult> out;
  if (name == "all") {
    for (const std::string& s : suite_names()) out.push_back(run_suite(s, opts));
  } else {
    out.push_back(run_suite(name, opts));
  }
  return out;
}

}  // namespace pgrad
