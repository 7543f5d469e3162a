#include "pgrad/lattice.hpp"

#include <algorithm>
#include <map>

#include "pgrad/errors.hpp"
#include "pgrad/parallel.hpp"
#include "pgrad/schreier.hpp"

namespace pgrad {

int node_dp(const CosetTablePtr& table, uint32_t p) {
  SchreierData sd = make_schreier(table);
  const int ns = sd.n_sgens();
  FpMatrix rows(p, 0, ns);
  for (const Word& r : table->presentation().relators) {
    for (uint32_t c = 0; c < table->size(); ++c) {
      std::vector<BigInt> sums(ns);
      add_rewrite_exponent_sums(sd, r, c, sums);
      std::vector<uint32_t> row(ns);
      for (int i = 0; i < ns; ++i) row[i] = mod_p(sums[i], p);
      rows.append_row(row);
    }
  }
  return ns - static_cast<int>(rank(rows));
}

std::vector<LatticeNode> node_children(const LatticeNode& node, uint32_t p) {
  std::vector<LatticeNode> out;
  if (node.dp_value == 0) return out;

  SchreierData sd = make_schreier(node.table);
  ModPAbelianization md = mod_p_data(sd, p);
  std::vector<Functional> lams = invariant_hyperplanes(md.dim, p, md.action);
  out.reserve(lams.size());
  for (const Functional& lam : lams) {
    // Value of the functional on each Schreier generator's class in V.
    std::vector<uint32_t> val(md.n_sgens, 0);
    for (int i = 0; i < md.n_sgens; ++i) {
      std::vector<uint32_t> row(md.sgen_coords.row(i), md.sgen_coords.row(i) + md.dim);
      val[i] = lam.apply(row);
    }
    auto sgen_value = [&](uint32_t c, int g) -> uint32_t {
      int id = sd.id_at(c, g);
      return id < 0 ? 0 : val[id];
    };
    CosetTable child = descend(*node.table, p, sgen_value);
    StandardizedTable st = standardize(child);
    LatticeNode n;
    n.table = std::make_shared<const CosetTable>(std::move(st.table));
    n.key = std::move(st.key);
    n.level = node.level + 1;
    n.parent_keys = {node.key};
    out.push_back(std::move(n));
  }
  return out;
}

Lattice enumerate_lattice(PresentationPtr pres, uint32_t p, int depth,
                          const LatticeOptions& opts) {
  if (!is_prime(p)) throw UsageError("p must be prime");
  if (depth < 0) throw UsageError("depth must be nonnegative");
  if (opts.node_budget == 0) throw UsageError("node budget must be positive");

  Lattice lat;
  lat.p = p;
  lat.depth = depth;

  StandardizedTable root = standardize(whole_group_table(pres));
  LatticeNode root_node;
  root_node.table = std::make_shared<const CosetTable>(std::move(root.table));
  root_node.key = std::move(root.key);
  root_node.level = 0;
  root_node.dp_value = node_dp(root_node.table, p);
  lat.levels.push_back({std::move(root_node)});

  for (int k = 0;; ++k) {
    const std::vector<LatticeNode>& parents = lat.levels[k];
    bool any_descent = false;
    for (const LatticeNode& n : parents)
      if (n.dp_value > 0) any_descent = true;
    if (!any_descent) {
      // No node admits an index-p step; the tower ends here and the
      // enumeration is complete regardless of the requested depth.
      lat.saturated = true;
      break;
    }
    if (k == depth) break;
    if (lat.node_count() > opts.node_budget) {
      lat.truncated = true;
      break;
    }

    std::vector<std::vector<LatticeNode>> produced(parents.size());
    parallel_for(parents.size(), opts.threads,
                 [&](size_t i) { produced[i] = node_children(parents[i], p); });

    // Deterministic merge: parents in key order, children in functional order.
    std::map<std::string, LatticeNode> merged;
    for (std::vector<LatticeNode>& batch : produced) {
      for (LatticeNode& child : batch) {
        auto it = merged.find(child.key);
        if (it == merged.end()) {
          merged.emplace(child.key, std::move(child));
        } else {
          std::vector<std::string>& pk = it->second.parent_keys;
          if (std::find(pk.begin(), pk.end(), child.parent_keys[0]) == pk.end())
            pk.push_back(child.parent_keys[0]);
        }
      }
    }
    if (merged.empty()) {
      lat.saturated = true;
      break;
    }

    std::vector<LatticeNode> next;
    next.reserve(merged.size());
    for (auto& [key, node] : merged) next.push_back(std::move(node));
    parallel_for(next.size(), opts.threads,
                 [&](size_t i) { next[i].dp_value = node_dp(next[i].table, p); });
    for (LatticeNode& n : next) std::sort(n.parent_keys.begin(), n.parent_keys.end());
    lat.levels.push_back(std::move(next));
  }
  return lat;
}

std::optional<OrderWitness> find_order_witness(PresentationPtr pres, const Word& x, uint32_t p,
                                               const BigInt& exceed, int max_level) {
  auto cur = std::make_shared<const CosetTable>(standardize(whole_group_table(pres)).table);
  for (int level = 0; level <= max_level; ++level) {
    uint32_t m = 1;
    for (uint32_t c = cur->trace(x, 0); c != 0; c = cur->trace(x, c)) ++m;
    if (BigInt(m) > exceed) return OrderWitness{level, m};
    if (level == max_level) break;

    SchreierData sd = make_schreier(cur);
    ModPAbelianization md = mod_p_data(sd, p);
    if (md.dim == 0) break;
    std::vector<BigInt> sums(md.n_sgens);
    add_rewrite_exponent_sums(sd, power(x, m), 0, sums);
    std::vector<uint32_t> xm_coords = md.coords(sums);

    std::optional<Functional> lam;
    for (const Functional& f : invariant_hyperplanes(md.dim, p, md.action))
      if (f.apply(xm_coords) != 0) {
        lam = f;
        break;
      }
    if (!lam) break;  // the class of x^m dies in every invariant direction

    std::vector<uint32_t> val(md.n_sgens, 0);
    for (int i = 0; i < md.n_sgens; ++i) {
      std::vector<uint32_t> row(md.sgen_coords.row(i), md.sgen_coords.row(i) + md.dim);
      val[i] = lam->apply(row);
    }
    cur = std::make_shared<const CosetTable>(descend(*cur, p, [&](uint32_t c, int g) {
      int id = sd.id_at(c, g);
      return id < 0 ? 0u : val[id];
    }));
  }
  return std::nullopt;
}

std::string dump_lattice(const Lattice& l) {
  std::string out;
  for (size_t k = 0; k < l.levels.size(); ++k) {
    BigInt index = boost::multiprecision::pow(BigInt(l.p), static_cast<unsigned>(k));
    for (const LatticeNode& n : l.levels[k]) {
      out += std::to_string(k) + ' ' + index.str() + ' ' + key_hash_hex(n.key) + ' ' +
             std::to_string(n.dp_value) + '\n';
    }
  }
  return out;
}

}  // namespace pgrad
