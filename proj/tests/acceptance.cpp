// Acceptance suite: one criterion per check, each printed as a PASS/FAIL
// line with its runtime. Criteria 1-8 drive the library directly; criterion
// 9 runs the installed pg binary twice and byte-compares the output.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "pgrad/chaser.hpp"
#include "pgrad/gradient.hpp"
#include "pgrad/lattice.hpp"
#include "pgrad/oracle.hpp"
#include "pgrad/quotient.hpp"
#include "pgrad/schreier.hpp"
#include "pgrad/verify.hpp"

using namespace pgrad;

namespace {

int failures = 0;

void criterion(int number, const std::string& name, double budget_seconds,
               const std::function<bool(std::string&)>& body) {
  std::string details;
  bool ok = false;
  auto start = std::chrono::steady_clock::now();
  try {
    ok = body(details);
  } catch (const std::exception& e) {
    details = std::string("exception: ") + e.what();
  }
  double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (elapsed > budget_seconds) {
    ok = false;
    details += " [over runtime budget]";
  }
  if (!ok) ++failures;
  char timing[64];
  std::snprintf(timing, sizeof(timing), "%.2fs/%.0fs", elapsed, budget_seconds);
  std::cout << (ok ? "PASS" : "FAIL") << " criterion-" << number << " " << name << " (" << timing
            << ")" << (details.empty() ? "" : " " + details) << "\n";
}

PresentationPtr cp(const std::string& name) {
  return std::make_shared<const Presentation>(corpus_presentation(name));
}

std::string run_tool(const std::string& args, int& exit_code) {
  std::string cmd = std::string(PG_TOOL_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) {
    exit_code = -1;
    return "";
  }
  std::string out;
  char buf[4096];
  size_t n;
  while ((n = fread(buf, 1, sizeof(buf), pipe)) > 0) out.append(buf, n);
  exit_code = pclose(pipe);
  return out;
}

}  // namespace

int main() {
  criterion(1, "free-group-exactness", 30, [](std::string& d) {
    bool ok = true;
    size_t nodes = 0;
    for (const char* name : {"f2", "f3"}) {
      int rank = cp(name)->ngens();
      for (uint32_t p : {2u, 3u}) {
        Lattice lat = enumerate_lattice(cp(name), p, 3);
        for (size_t k = 0; k < lat.levels.size(); ++k) {
          BigInt index = p_power(p, int(k));
          for (const LatticeNode& n : lat.levels[k]) {
            ++nodes;
            if (BigInt(n.dp_value) - 1 != BigInt(rank - 1) * index) ok = false;
          }
        }
        for (int depth = 0; depth <= 3; ++depth)
          if (estimate(cp(name), p, depth).value != Rational(rank - 1)) ok = false;
      }
    }
    d = "nodes=" + std::to_string(nodes) + " index formula exact, estimates flat";
    return ok;
  });

  criterion(2, "lattice-counts-vs-oracle", 10, [](std::string& d) {
    Lattice lat = enumerate_lattice(cp("f2"), 2, 2);
    std::vector<size_t> got;
    for (const auto& l : lat.levels) got.push_back(l.size());
    std::vector<size_t> oracle = oracle_level_counts(cp("f2"), 2, 2);
    d = "levels/oracle/expected all [1,3,7]";
    return got == std::vector<size_t>{1, 3, 7} && oracle == got;
  });

  criterion(3, "finite-p-gradient-exact", 5, [](std::string& d) {
    ExactPGradient a = finite_p_gradient(cp("z4"), 2);
    ExactPGradient b = finite_p_gradient(cp("z6"), 2);
    ExactPGradient c = finite_p_gradient(cp("z3"), 2);
    bool ok = a.value == Rational(-1, 4) && b.value == Rational(-1, 2) &&
              c.value == Rational(-1) && a.saturated && b.saturated && c.saturated;
    bool exact_flags = estimate(cp("z4"), 2, 2).exact && estimate(cp("z6"), 2, 1).exact &&
                       estimate(cp("z3"), 2, 0).exact;
    d = "-1/4, -1/2, -1/1 all flagged exact via saturation";
    return ok && exact_flags;
  });

  criterion(4, "finite-rank-gradient", 60, [](std::string& d) {
    bool ok = true;
    int count = 0;
    for (const char* name : {"z4", "s3", "d4", "q8", "a4", "v4", "z2xz4", "s3xz2"}) {
      ExactRankGradient g = finite_rank_gradient(cp(name));
      if (g.value != Rational(-1, BigInt(g.order))) ok = false;
      ++count;
    }
    d = "groups=" + std::to_string(count) + " all equal -1/|G|";
    return ok;
  });

  criterion(5, "index-multiplicativity", 60, [](std::string& d) {
    bool ok = true;
    size_t checked = 0;
    for (const char* name : {"z4", "s3", "d4", "q8", "a4", "v4", "z2xz4", "s3xz2"}) {
      for (uint32_t p : {2u, 3u}) {
        ExactPGradient whole = finite_p_gradient(cp(name), p);
        Lattice lat = enumerate_lattice(cp(name), p, 24);
        for (size_t k = 0; k < lat.levels.size(); ++k)
          for (const LatticeNode& n : lat.levels[k]) {
            SubgroupPresentation sp = subgroup_presentation(make_schreier(n.table));
            ExactPGradient sub =
                finite_p_gradient(std::make_shared<const Presentation>(sp.pres), p);
            if (whole.value != sub.value / Rational(p_power(p, int(k)))) ok = false;
            ++checked;
          }
      }
    }
    d = "pairs=" + std::to_string(checked) + " RG_p(G)=RG_p(H)/[G:H] exact";
    return ok;
  });

  criterion(6, "quotient-step-counts", 60, [](std::string& d) {
    bool ok = true;
    size_t pairs = 0;
    for (const char* name : {"f2", "fa2"}) {
      PresentationPtr pres = cp(name);
      std::vector<Word> xs = {parse_word("a", *pres), parse_word("b", *pres),
                              parse_word("a b", *pres), parse_word("[a,b]", *pres)};
      Lattice lat = enumerate_lattice(pres, 2, 2);
      for (const auto& level : lat.levels)
        for (const LatticeNode& n : level)
          for (const Word& x : xs) {
            auto [pi, rep] = pi_h_presentation(n, x, 2);
            ++pairs;
            if (uint64_t(rep.m) * rep.transversal.size() != rep.index) ok = false;
            if (BigInt(rep.dp_after) < BigInt(rep.dp_before) - BigInt(rep.index) / rep.m)
              ok = false;
          }
    }
    d = "pairs=" + std::to_string(pairs) + " (need >= 50) counts and drop bounds exact";
    return ok && pairs >= 50;
  });

  criterion(7, "quotient-bound", 120, [](std::string& d) {
    CertifiedValue one{Rational(1), Certificate::kFreeRank};
    CertifiedValue two{Rational(2), Certificate::kFreeRank};
    QuotientBoundReport a = check_quotient_bound(cp("f2"), parse_word("a", *cp("f2")), 2, 1, 3, one);
    bool ok = !a.skipped && a.passed && a.quotient_estimate == Rational(1, 2) &&
              a.bound == Rational(1, 2);
    QuotientBoundReport b = check_quotient_bound(cp("f3"), parse_word("a", *cp("f3")), 2, 2, 3, two);
    if (b.skipped || !b.passed || !(b.quotient_estimate >= Rational(7, 4))) ok = false;
    d = "F2/<<a^2>> estimate 1/2 >= 1/2; F3/<<a^4>> estimate " + b.quotient_estimate.str() +
        " >= 7/4";
    return ok;
  });

  criterion(8, "chaser-ledger", 120, [](std::string& d) {
    ChaseOptions co;
    co.depth = 2;
    Trajectory t34 = chase(Rational(3, 4), 2, co);
    Trajectory t12 = chase(Rational(1, 2), 2, co);
    bool ok = check_limit_chain(t34).passed && check_limit_chain(t12).passed;
    Rational budget34 = t34.initial - t34.alpha;
    for (const ChaseStep& s : t34.steps) {
      if (s.spent > budget34) ok = false;
      if (s.estimate_after < s.certified_lower) ok = false;
    }
    if (t12.steps.empty() || t12.steps.back().estimate_after != Rational(1, 2) ||
        t12.steps.back().certified_lower != Rational(1, 2))
      ok = false;
    d = "ledger and sandwich hold; alpha=1/2 terminates at estimate = certified = 1/2";
    return ok;
  });

  criterion(9, "determinism-across-threads", 120, [](std::string& d) {
    int code1 = 0, code8 = 0;
    std::string out1 = run_tool("verify --suite all --threads 1", code1);
    std::string out8 = run_tool("verify --suite all --threads 8", code8);
    d = "verify --suite all byte-identical with --threads 1 and 8 (" +
        std::to_string(out1.size()) + " bytes)";
    return code1 == 0 && code8 == 0 && !out1.empty() && out1 == out8;
  });

  std::cout << (failures == 0 ? "acceptance: all criteria passed"
                              : "acceptance: " + std::to_string(failures) + " criteria FAILED")
            << "\n";
  return failures == 0 ? 0 : 1;
}
