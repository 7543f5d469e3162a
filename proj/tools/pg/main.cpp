// pg: p-gradient toolkit for finitely presented groups.
//
// Subcommands compute d_p, enumerate the normal lattice of p-power-index
// subgroups, estimate p-gradients (exactly on saturation), compute exact
// rank gradients of finite groups, build quotients and subgroup
// presentations, run the verification suites, and chase a target gradient
// value by iterated p-power torsion quotients.
//
// Results go to stdout (JSON by default, plain text with --human);
// diagnostics go to stderr. Exit codes: 0 success, 1 input error,
// 2 resource truncation where exactness was demanded, 3 internal invariant
// violation (always a bug).

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "pgrad/chaser.hpp"
#include "pgrad/errors.hpp"
#include "pgrad/gradient.hpp"
#include "pgrad/lattice.hpp"
#include "pgrad/oracle.hpp"
#include "pgrad/quotient.hpp"
#include "pgrad/schreier.hpp"
#include "pgrad/verify.hpp"

using json = nlohmann::ordered_json;
using namespace pgrad;

namespace {

std::string read_input(const std::string& path) {
  if (path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot open input file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

PresentationPtr load_presentation(const std::string& path) {
  Presentation p = parse_presentation(read_input(path));
  std::vector<size_t> dup = p.duplicate_relators();
  if (!dup.empty())
    std::cerr << "note: " << dup.size() << " duplicate relator(s) in " << path << "\n";
  return std::make_shared<const Presentation>(std::move(p));
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot write '" + path + "'");
  out << content;
}

size_t env_node_budget() {
  const char* v = std::getenv("PG_NODE_BUDGET");
  if (!v) return 50000;
  char* end = nullptr;
  unsigned long long n = std::strtoull(v, &end, 10);
  if (end == v || n == 0) return 50000;
  return static_cast<size_t>(n);
}

struct CommonOpts {
  std::string input;
  uint32_t p = 2;
  int depth = 4;
  uint32_t max_cosets = 1u << 20;
  size_t node_budget = env_node_budget();
  int threads = 0;
  bool human = false;

  LatticeOptions lattice() const {
    LatticeOptions o;
    o.node_budget = node_budget;
    o.threads = threads;
    return o;
  }
};

void add_input(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("input", o.input, "presentation file ('-' for stdin)")->required();
}
void add_p(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("-p,--prime", o.p, "prime p")->required();
}
void add_depth(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("-k,--depth", o.depth, "lattice depth (index up to p^depth)");
}
void add_budgets(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("--node-budget", o.node_budget,
                  "max lattice nodes (env PG_NODE_BUDGET overrides the default)");
  cmd->add_option("--threads", o.threads, "worker threads for lattice expansion (0 = auto)");
}
void add_human(CLI::App* cmd, CommonOpts& o) {
  cmd->add_flag("--human", o.human, "plain text instead of JSON");
}

std::string witness_index_str(uint32_t p, int level) {
  return std::to_string(p) + "^" + std::to_string(level);
}

json estimate_json(const GradientEstimate& est, uint32_t p) {
  return json{{"value", est.value.str()},
              {"depth", est.depth},
              {"exact", est.exact},
              {"truncated", est.truncated},
              {"witness_index", witness_index_str(p, est.witness_level)},
              {"witness_key_hash", key_hash_hex(est.witness_key)}};
}

// Chain file: one subgroup per line as a path of functionals separated by
// ';', each functional a comma-separated list of residues. A line holding
// only '.' names the whole group. '#' starts a comment.
std::vector<std::vector<Functional>> parse_chain(const std::string& text, uint32_t p) {
  std::vector<std::vector<Functional>> chain;
  std::istringstream in(text);
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    size_t hash = raw.find('#');
    if (hash != std::string::npos) raw = raw.substr(0, hash);
    std::string line;
    for (char ch : raw)
      if (!std::isspace(static_cast<unsigned char>(ch))) line += ch;
    if (line.empty()) continue;
    std::vector<Functional> path;
    if (line != ".") {
      std::istringstream steps(line);
      std::string step;
      while (std::getline(steps, step, ';')) {
        std::vector<uint32_t> coeffs;
        std::istringstream cs(step);
        std::string c;
        while (std::getline(cs, c, ',')) {
          try {
            coeffs.push_back(static_cast<uint32_t>(std::stoul(c)));
          } catch (const std::exception&) {
            throw ParseError("invalid residue '" + c + "' in chain", line_no, 1);
          }
        }
        path.push_back(canonical_functional(p, std::move(coeffs)));
      }
    }
    chain.push_back(std::move(path));
  }
  if (chain.empty()) throw UsageError("chain file names no subgroups");
  return chain;
}

int cmd_dp(const CommonOpts& o) {
  PresentationPtr pres = load_presentation(o.input);
  int d = dp(*pres, o.p);
  if (o.human)
    std::cout << "d_" << o.p << " = " << d << "\n";
  else
    std::cout << json{{"p", o.p}, {"dp", d}}.dump() << "\n";
  return 0;
}

int cmd_enum(const CommonOpts& o, const std::string& dump_path) {
  PresentationPtr pres = load_presentation(o.input);
  Lattice lat = enumerate_lattice(pres, o.p, o.depth, o.lattice());
  if (!dump_path.empty()) write_file(dump_path, dump_lattice(lat));
  std::vector<size_t> sizes;
  for (const auto& l : lat.levels) sizes.push_back(l.size());
  if (o.human) {
    std::cout << "levels:";
    for (size_t s : sizes) std::cout << " " << s;
    std::cout << "\nnodes: " << lat.node_count() << "\nsaturated: " << std::boolalpha
              << lat.saturated << "\ntruncated: " << lat.truncated << "\n";
  } else {
    std::cout << json{{"p", o.p},
                      {"depth", o.depth},
                      {"levels", sizes},
                      {"nodes", lat.node_count()},
                      {"saturated", lat.saturated},
                      {"truncated", lat.truncated}}
                     .dump()
              << "\n";
  }
  return 0;
}

int cmd_gradient(const CommonOpts& o, const std::string& chain_path,
                 const std::string& dump_path) {
  PresentationPtr pres = load_presentation(o.input);
  if (!chain_path.empty()) {
    auto chain = parse_chain(read_input(chain_path), o.p);
    Rational v = relative_estimate(pres, o.p, chain, o.lattice());
    if (o.human)
      std::cout << "relative estimate = " << v.str() << " over " << chain.size()
                << " subgroup(s)\n";
    else
      std::cout << json{{"value", v.str()}, {"relative", true}, {"paths", chain.size()}}.dump()
                << "\n";
    return 0;
  }
  Lattice lat = enumerate_lattice(pres, o.p, o.depth, o.lattice());
  if (!dump_path.empty()) write_file(dump_path, dump_lattice(lat));
  GradientEstimate est = estimate_from_lattice(lat);
  if (o.human) {
    std::cout << "estimate = " << est.value.str() << " (depth " << est.depth
              << (est.exact ? ", exact" : ", upper bound")
              << (est.truncated ? ", truncated by budget" : "") << ")\nwitness index "
              << witness_index_str(o.p, est.witness_level) << ", key hash "
              << key_hash_hex(est.witness_key) << "\n";
  } else {
    std::cout << estimate_json(est, o.p).dump() << "\n";
  }
  return 0;
}

int cmd_finite(const CommonOpts& o, int max_depth) {
  PresentationPtr pres = load_presentation(o.input);
  ExactPGradient g = finite_p_gradient(pres, o.p, max_depth, o.lattice());
  if (o.human)
    std::cout << "RG_" << o.p << " = " << g.value.str() << " (largest p-quotient has order "
              << o.p << "^" << g.tower_height << ")\n";
  else
    std::cout << json{{"value", g.value.str()},
                      {"exact", true},
                      {"tower_height", g.tower_height}}
                     .dump()
              << "\n";
  return 0;
}

int cmd_rank_gradient(const CommonOpts& o, uint64_t order_bound) {
  PresentationPtr pres = load_presentation(o.input);
  ExactRankGradient g = finite_rank_gradient(pres, order_bound, o.max_cosets);
  if (o.human)
    std::cout << "RG = " << g.value.str() << " (|G| = " << g.order << ", "
              << g.subgroup_count << " subgroups)\n";
  else
    std::cout << json{{"value", g.value.str()},
                      {"order", g.order},
                      {"subgroups", g.subgroup_count}}
                     .dump()
              << "\n";
  return 0;
}

int cmd_quotient(const CommonOpts& o, const std::string& word_text, int64_t e) {
  PresentationPtr pres = load_presentation(o.input);
  Word x = parse_word(word_text, *pres);
  Presentation q = quotient_by_power(*pres, x, e);
  std::cout << print_presentation(q);
  return 0;
}

int cmd_schreier(const CommonOpts& o, const std::vector<std::string>& sub_words, bool with_dp,
                 const std::string& dump_path) {
  PresentationPtr pres = load_presentation(o.input);
  std::vector<Word> gens;
  for (const std::string& s : sub_words) gens.push_back(parse_word(s, *pres));
  CosetTable t = todd_coxeter(pres, gens, o.max_cosets);
  if (!dump_path.empty()) write_file(dump_path, t.dump());
  auto table = std::make_shared<const CosetTable>(standardize(t).table);
  SubgroupPresentation sp = subgroup_presentation(make_schreier(table));
  if (o.human) {
    std::cout << "index: " << table->size() << "\n" << print_presentation(sp.pres);
    if (with_dp) std::cout << "d_" << o.p << " = " << dp(sp.pres, o.p) << "\n";
  } else {
    json j{{"index", table->size()},
           {"generators", sp.pres.ngens()},
           {"relators", sp.pres.relators.size()},
           {"presentation", print_presentation(sp.pres)}};
    if (with_dp) j["dp"] = dp(sp.pres, o.p);
    std::cout << j.dump() << "\n";
  }
  return 0;
}

int cmd_verify(const CommonOpts& o, const std::string& suite) {
  VerifyOptions vo;
  vo.threads = o.threads;
  vo.node_budget = o.node_budget;
  std::vector<SuiteResult> results = run_suites(suite, vo);
  size_t passed = 0, failed = 0, skipped = 0;
  for (const SuiteResult& r : results)
    for (const CheckLine& l : r.lines) {
      std::cout << l.str() << "\n";
      if (l.status == "PASS") ++passed;
      if (l.status == "FAIL") ++failed;
      if (l.status == "SKIP") ++skipped;
    }
  std::cout << "checks: " << passed << " passed, " << failed << " failed, " << skipped
            << " skipped\n";
  return failed == 0 ? 0 : 3;
}

int cmd_chase(const CommonOpts& o, const std::string& alpha_text, int max_steps, uint64_t seed) {
  ChaseOptions co;
  co.depth = o.depth;
  co.max_steps = max_steps;
  co.seed = seed;
  co.lattice = o.lattice();
  Rational alpha = Rational::parse(alpha_text);
  Trajectory t = chase(alpha, o.p, co);
  LimitCheck lc = check_limit_chain(t);

  if (o.human) {
    std::cout << "alpha = " << t.alpha.str() << ", seed rank " << t.rank << ", budget "
              << (t.initial - t.alpha).str() << "\n";
    for (size_t i = 0; i < t.steps.size(); ++i) {
      const ChaseStep& s = t.steps[i];
      std::cout << "step " << (i + 1) << ": x = "
                << print_word(s.x, t.presentations[i]) << ", k = " << s.k << ", spent "
                << s.spent.str() << ", certified >= " << s.certified_lower.str()
                << ", estimate " << s.estimate_after.str() << "\n";
    }
    std::cout << "stop: " << t.stop_reason << "\nchain checks: "
              << (lc.passed ? "all hold" : "VIOLATED") << "\n";
    std::cout << print_presentation(t.presentations.back());
    return lc.passed ? 0 : 3;
  }

  json steps = json::array();
  for (size_t i = 0; i < t.steps.size(); ++i) {
    const ChaseStep& s = t.steps[i];
    steps.push_back(json{{"x", print_word(s.x, t.presentations[i])},
                         {"k", s.k},
                         {"spent", s.spent.str()},
                         {"certified_lower", s.certified_lower.str()},
                         {"estimate", s.estimate_after.str()},
                         {"witness_order", s.witness_order},
                         {"witness_level", s.witness_level}});
  }
  json out{{"alpha", t.alpha.str()},
           {"p", t.p},
           {"rank", t.rank},
           {"initial", t.initial.str()},
           {"depth", t.depth},
           {"seed", t.seed},
           {"note",
            "order witnesses are certificates in finite p-quotients; the certified lower "
            "bound is exact arithmetic, the estimate a truncated upper bound"},
           {"initial_estimate", t.initial_estimate.str()},
           {"steps", steps},
           {"stop_reason", t.stop_reason},
           {"chain_checks_passed", lc.passed},
           {"final_presentation", print_presentation(t.presentations.back())}};
  std::cout << out.dump() << "\n";
  return lc.passed ? 0 : 3;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"p-gradient computations for finitely presented groups"};
  app.require_subcommand(1);

  CommonOpts o;

  auto* c_dp = app.add_subcommand("dp", "d_p of a presentation");
  add_input(c_dp, o);
  add_p(c_dp, o);
  add_human(c_dp, o);

  std::string dump_path;
  auto* c_enum = app.add_subcommand("enum", "enumerate the normal p-power-index lattice");
  add_input(c_enum, o);
  add_p(c_enum, o);
  add_depth(c_enum, o);
  add_budgets(c_enum, o);
  add_human(c_enum, o);
  c_enum->add_option("--dump-lattice", dump_path, "write 'level index key-hash dp' lines");

  std::string chain_path;
  auto* c_grad = app.add_subcommand("gradient", "depth-truncated p-gradient estimate");
  add_input(c_grad, o);
  add_p(c_grad, o);
  add_depth(c_grad, o);
  add_budgets(c_grad, o);
  add_human(c_grad, o);
  c_grad->add_option("--chain", chain_path, "relative estimate over a chain file");
  c_grad->add_option("--dump-lattice", dump_path, "write 'level index key-hash dp' lines");

  int finite_max_depth = 24;
  auto* c_fin = app.add_subcommand("finite", "exact p-gradient via lattice saturation");
  add_input(c_fin, o);
  add_p(c_fin, o);
  add_budgets(c_fin, o);
  add_human(c_fin, o);
  c_fin->add_option("--max-depth", finite_max_depth, "saturation search depth");

  uint64_t order_bound = 200;
  auto* c_rank = app.add_subcommand("rank-gradient", "exact rank gradient of a finite group");
  add_input(c_rank, o);
  add_human(c_rank, o);
  c_rank->add_option("--order-bound", order_bound, "refuse groups larger than this");
  c_rank->add_option("--max-cosets", o.max_cosets, "coset enumeration bound");

  std::string quot_word;
  int64_t quot_exp = 1;
  auto* c_quot = app.add_subcommand("quotient", "append the relator x^e");
  add_input(c_quot, o);
  c_quot->add_option("-x,--word", quot_word, "the word x")->required();
  c_quot->add_option("-e,--exponent", quot_exp, "the exponent e")->required();

  std::vector<std::string> sub_words;
  bool schreier_dp = false;
  auto* c_sch = app.add_subcommand("schreier", "subgroup presentation via coset enumeration");
  add_input(c_sch, o);
  c_sch->add_option("--sub", sub_words, "subgroup generator word (repeatable; none = trivial)");
  c_sch->add_option("--max-cosets", o.max_cosets, "coset enumeration bound");
  c_sch->add_option("-p,--prime", o.p, "also report d_p of the subgroup")
      ->trigger_on_parse();
  c_sch->add_flag("--with-dp", schreier_dp, "include d_p in the report");
  c_sch->add_option("--dump-table", dump_path, "write the coset table dump");
  add_human(c_sch, o);

  std::string suite = "all";
  auto* c_ver = app.add_subcommand("verify", "run verification suites");
  c_ver->add_option("--suite", suite, "suite name or 'all'");
  c_ver->add_option("--threads", o.threads, "worker threads (0 = auto)");
  c_ver->add_option("--node-budget", o.node_budget, "max lattice nodes");

  std::string alpha_text;
  int chase_steps = 16;
  uint64_t seed = 0;
  auto* c_chase = app.add_subcommand("chase", "descend toward a target p-gradient");
  c_chase->add_option("--alpha", alpha_text, "target value num/den")->required();
  add_p(c_chase, o);
  add_depth(c_chase, o);
  add_budgets(c_chase, o);
  add_human(c_chase, o);
  c_chase->add_option("--steps", chase_steps, "maximum quotient steps");
  c_chase->add_option("--seed", seed, "word-selection shuffle seed");

  try {
    app.parse(argc, argv);
    if (c_dp->parsed()) return cmd_dp(o);
    if (c_enum->parsed()) return cmd_enum(o, dump_path);
    if (c_grad->parsed()) return cmd_gradient(o, chain_path, dump_path);
    if (c_fin->parsed()) return cmd_finite(o, finite_max_depth);
    if (c_rank->parsed()) return cmd_rank_gradient(o, order_bound);
    if (c_quot->parsed()) return cmd_quotient(o, quot_word, quot_exp);
    if (c_sch->parsed())
      return cmd_schreier(o, sub_words, schreier_dp || c_sch->count("--prime") > 0, dump_path);
    if (c_ver->parsed()) return cmd_verify(o, suite);
    if (c_chase->parsed()) return cmd_chase(o, alpha_text, chase_steps, seed);
    return 1;
  } catch (const CLI::ParseError& e) {
    if (e.get_name() == "CallForHelp" || e.get_name() == "CallForAllHelp" ||
        e.get_name() == "CallForVersion")
      return app.exit(e);
    std::cerr << e.what() << "\n";
    return 1;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const ResourceError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const IntegrityError& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 3;
  }
}
