#include "pgrad/schreier.hpp"

#include <algorithm>

#include "pgrad/errors.hpp"

namespace pgrad {

uint32_t mod_p(const BigInt& v, uint32_t p) {
  BigInt r = v % p;
  if (r < 0) r += p;
  return r.convert_to<uint32_t>();
}

SchreierData make_schreier(CosetTablePtr table) {
  SchreierData sd;
  sd.table = std::move(table);
  const CosetTable& t = *sd.table;
  const int ng = t.ngens();
  sd.sgen_id.assign(size_t(t.size()) * ng, -1);
  for (uint32_t c = 0; c < t.size(); ++c) {
    for (int g = 0; g < ng; ++g) {
      Word s = multiply(multiply(t.rep(c), Word::generator(ng, g)), invert(t.rep(t.apply(c, g, false))));
      if (s.is_identity()) continue;
      sd.sgen_id[size_t(c) * ng + g] = sd.n_sgens();
      sd.sgen_word.push_back(std::move(s));
    }
  }
  if (sd.n_sgens() != int(size_t(t.size()) * ng - (t.size() - 1)))
    throw IntegrityError("Schreier generator count does not match transversal size");
  return sd;
}

Word rewrite(const SchreierData& sd, const Word& w) {
  const CosetTable& t = *sd.table;
  if (t.trace(w, 0) != 0) throw UsageError("word is not in the subgroup");
  if (w.letter_length() > (int64_t(1) << 22))
    throw ResourceError("word too long to rewrite explicitly");
  std::vector<Syllable> raw;
  uint32_t c = 0;
  for (const Syllable& s : w.syllables()) {
    int64_t k = s.exp < 0 ? -s.exp : s.exp;
    for (int64_t i = 0; i < k; ++i) {
      if (s.exp > 0) {
        int id = sd.id_at(c, s.gen);
        if (id >= 0) raw.push_back({id, 1});
        c = t.apply(c, s.gen, false);
      } else {
        c = t.apply(c, s.gen, true);
        int id = sd.id_at(c, s.gen);
        if (id >= 0) raw.push_back({id, -1});
      }
    }
  }
  return Word::reduced(sd.n_sgens(), raw);
}

uint32_t add_rewrite_exponent_sums(const SchreierData& sd, const Word& w, uint32_t start,
                                   std::vector<BigInt>& sums) {
  const CosetTable& t = *sd.table;
  uint32_t c = start;
  for (const Syllable& s : w.syllables()) {
    const bool inv = s.exp < 0;
    const uint64_t k = inv ? uint64_t(-(s.exp + 1)) + 1 : uint64_t(s.exp);
    // Walk at most one full generator cycle, recording crossed generators.
    std::vector<int32_t> edges;
    uint32_t cur = c;
    while (edges.size() < k) {
      if (inv) {
        cur = t.apply(cur, s.gen, true);
        edges.push_back(sd.id_at(cur, s.gen));
      } else {
        edges.push_back(sd.id_at(cur, s.gen));
        cur = t.apply(cur, s.gen, false);
      }
      if (cur == c) break;
    }
    const int64_t sign = inv ? -1 : 1;
    if (edges.size() < k) {
      const uint64_t cycle = edges.size();
      const uint64_t q = k / cycle, r = k % cycle;
      for (int32_t id : edges)
        if (id >= 0) sums[id] += BigInt(sign) * BigInt(q);
      for (uint64_t i = 0; i < r; ++i)
        if (edges[i] >= 0) sums[edges[i]] += sign;
      cur = c;
      for (uint64_t i = 0; i < r; ++i) cur = t.apply(cur, s.gen, inv);
    } else {
      for (int32_t id : edges)
        if (id >= 0) sums[id] += sign;
    }
    c = cur;
  }
  return c;
}

Word SubgroupPresentation::project(const Word& sgen_word) const {
  std::vector<Syllable> raw;
  for (const Syllable& s : sgen_word.syllables()) {
    int32_t g = sgen_to_gen[s.gen];
    if (g >= 0) raw.push_back({g, s.exp});
  }
  return Word::reduced(pres.ngens(), raw);
}

SubgroupPresentation subgroup_presentation(const SchreierData& sd) {
  const CosetTable& t = *sd.table;
  const int ns = sd.n_sgens();

  std::vector<Word> rels;
  for (const Word& r : t.presentation().relators) {
    for (uint32_t c = 0; c < t.size(); ++c) {
      Word conj = multiply(multiply(t.rep(c), r), invert(t.rep(c)));
      Word rw = rewrite(sd, conj);
      if (!rw.is_identity() && std::find(rels.begin(), rels.end(), rw) == rels.end())
        rels.push_back(std::move(rw));
    }
  }

  // A relator consisting of a single letter forces its generator to be
  // trivial in the subgroup; substitute it away everywhere.
  std::vector<bool> alive(ns, true);
  for (;;) {
    int killed = -1;
    for (const Word& r : rels) {
      if (r.syllables().size() == 1 && (r.syllables()[0].exp == 1 || r.syllables()[0].exp == -1)) {
        killed = r.syllables()[0].gen;
        break;
      }
    }
    if (killed < 0) break;
    alive[killed] = false;
    std::vector<Word> next;
    for (const Word& r : rels) {
      std::vector<Syllable> raw;
      for (const Syllable& s : r.syllables())
        if (s.gen != killed) raw.push_back(s);
      Word reduced = Word::reduced(ns, raw);
      if (!reduced.is_identity() && std::find(next.begin(), next.end(), reduced) == next.end())
        next.push_back(std::move(reduced));
    }
    rels = std::move(next);
  }

  SubgroupPresentation out;
  out.sgen_to_gen.assign(ns, -1);
  int idx = 0;
  for (int i = 0; i < ns; ++i)
    if (alive[i]) {
      out.sgen_to_gen[i] = idx++;
      out.pres.generators.push_back("s" + std::to_string(idx));
    }
  for (const Word& r : rels) out.pres.relators.push_back(out.project(r));
  return out;
}

int dp(const Presentation& pres, uint32_t p) {
  const int ng = pres.ngens();
  FpMatrix m(p, 0, ng);
  for (const Word& r : pres.relators) {
    std::vector<BigInt> sums = exponent_sums(r);
    std::vector<uint32_t> row(ng);
    for (int g = 0; g < ng; ++g) row[g] = mod_p(sums[g], p);
    m.append_row(row);
  }
  return ng - static_cast<int>(rank(m));
}

std::vector<uint32_t> ModPAbelianization::coords(const std::vector<BigInt>& sums) const {
  std::vector<uint32_t> v(n_sgens);
  for (int i = 0; i < n_sgens; ++i) v[i] = mod_p(sums[i], p);
  return quotient_coords(relator_rows, std::move(v), basis_cols);
}

ModPAbelianization mod_p_data(const SchreierData& sd, uint32_t p) {
  const CosetTable& t = *sd.table;
  const int ng = t.ngens();
  const int ns = sd.n_sgens();

  ModPAbelianization out;
  out.p = p;
  out.n_sgens = ns;

  // Rewritten relator matrix, rows ordered by (relator, coset).
  FpMatrix rows(p, 0, ns);
  {
    std::vector<std::vector<uint32_t>> seen;
    for (const Word& r : t.presentation().relators) {
      for (uint32_t c = 0; c < t.size(); ++c) {
        std::vector<BigInt> sums(ns);
        uint32_t endc = add_rewrite_exponent_sums(sd, r, c, sums);
        if (endc != c) throw IntegrityError("relator does not fix coset during rewriting");
        std::vector<uint32_t> row(ns);
        for (int i = 0; i < ns; ++i) row[i] = mod_p(sums[i], p);
        if (std::find(seen.begin(), seen.end(), row) == seen.end()) {
          seen.push_back(row);
          rows.append_row(row);
        }
      }
    }
  }

  out.relator_rows = row_reduce(rows);
  out.basis_cols = out.relator_rows.nonpivot_cols(ns);
  out.dim = static_cast<int>(out.basis_cols.size());

  out.sgen_coords = FpMatrix(p, 0, out.dim);
  for (int i = 0; i < ns; ++i) {
    std::vector<uint32_t> e(ns, 0);
    e[i] = 1;
    out.sgen_coords.append_row(quotient_coords(out.relator_rows, std::move(e), out.basis_cols));
  }

  // Conjugation action of each generator of G on the chosen basis of V.
  for (int g = 0; g < ng; ++g) {
    Word gw = Word::generator(ng, g);
    FpMatrix a(p, 0, out.dim);
    for (size_t k = 0; k < out.basis_cols.size(); ++k) {
      const Word& s = sd.sgen_word[out.basis_cols[k]];
      Word conj = multiply(multiply(gw, s), invert(gw));
      if (t.trace(conj, 0) != 0)
        throw UsageError("conjugate left the subgroup; table is not of a normal subgroup");
      std::vector<BigInt> sums(ns);
      add_rewrite_exponent_sums(sd, conj, 0, sums);
      a.append_row(out.coords(sums));
    }
    if (out.dim > 0 && rank(a) != size_t(out.dim))
      throw IntegrityError("conjugation action is singular");
    out.action.push_back(std::move(a));
  }
  return out;
}

}  // namespace pgrad
