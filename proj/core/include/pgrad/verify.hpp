#pragma once

#include <string>
#include <vector>

#include "pgrad/lattice.hpp"
#include "pgrad/presentation.hpp"

namespace pgrad {

// One verification check: "PASS|SKIP|FAIL <id> <instance> <details>".
struct CheckLine {
  std::string status;
  std::string id;
  std::string instance;
  std::string details;

  std::string str() const { return status + " " + id + " " + instance + " " + details; }
};

struct SuiteResult {
  std::string name;
  std::vector<CheckLine> lines;

  bool all_ok() const {
    for (const CheckLine& l : lines)
      if (l.status == "FAIL") return false;
    return true;
  }
};

struct VerifyOptions {
  int threads = 0;
  size_t node_budget = 50000;
};

// Suites, in `all` order:
//   schreier         exact index formula and flat estimates on free groups
//   lattice          level counts against the epimorphism-kernel oracle
//   finite-p         exact p-gradients of finite cyclic groups via saturation
//   rank-gradient    exact -1/|G| rank gradients on the finite corpus
//   multiplicativity exact RG_p(G) = RG_p(H)/[G:H] across lattice nodes
//   quotient-step    transversal counts and d_p drop bounds for quotient steps
//   quotient-bound   estimate lower bounds for quotients by p-power torsion
//   chaser           budget ledger and sandwich invariants of chase runs
std::vector<std::string> suite_names();

SuiteResult run_suite(const std::string& name, const VerifyOptions& opts = {});

// `name` may be a suite name or "all".
std::vector<SuiteResult> run_suites(const std::string& name, const VerifyOptions& opts = {});

// The presentation corpus shipped with the tool, by short name (f2, z4, s3,
// ...); throws UsageError for unknown names.
Presentation corpus_presentation(const std::string& name);
std::vector<std::string> corpus_names();

}  // namespace pgrad
