#pragma once

#include <cstdint>
#include <vector>

#include "pgrad/coset_table.hpp"
#include "pgrad/fp_matrix.hpp"
#include "pgrad/presentation.hpp"
#include "pgrad/word.hpp"

namespace pgrad {

// Schreier generators of the subgroup behind a coset table. The generator at
// (coset c, generator g) is rep(c) g rep(c*g)^-1; it is trivial exactly when
// that word freely reduces to the identity, which happens precisely on the
// transversal tree, so n_cosets*ngens - (n_cosets - 1) generators survive.
struct SchreierData {
  CosetTablePtr table;
  std::vector<int32_t> sgen_id;  // (c * ngens + g) -> id, or -1 when trivial
  std::vector<Word> sgen_word;   // id -> the word over G's alphabet

  int n_sgens() const { return static_cast<int>(sgen_word.size()); }
  int id_at(uint32_t c, int g) const { return sgen_id[size_t(c) * table->ngens() + g]; }
};

SchreierData make_schreier(CosetTablePtr table);

// Reidemeister rewriting of w (an element of H) into the Schreier generator
// alphabet: scan w letter by letter from coset 0, emitting the Schreier
// generator (or its inverse) crossed at each step. Rejects words outside H.
Word rewrite(const SchreierData& sd, const Word& w);

// Adds the exponent sums of the rewriting of w, scanned from `start`, into
// `sums` (one slot per Schreier generator). Syllables are processed by
// walking generator cycles, so powers like a^(2^30) cost O(cycle length).
// Returns the final coset.
uint32_t add_rewrite_exponent_sums(const SchreierData& sd, const Word& w, uint32_t start,
                                   std::vector<BigInt>& sums);

struct SubgroupPresentation {
  Presentation pres;
  // Schreier generator id -> generator index in `pres`, or -1 when the
  // generator was eliminated by a single-letter relator.
  std::vector<int32_t> sgen_to_gen;

  // Rewrites a word over the full Schreier alphabet into `pres`'s alphabet.
  Word project(const Word& sgen_word) const;
};

// Presentation of the subgroup: generators are the nontrivial Schreier
// generators, relators the rewritings of rep(c) r rep(c)^-1 over all
// relators r and cosets c. Exact duplicates are dropped and generators
// forced trivial by single-letter relators are eliminated.
SubgroupPresentation subgroup_presentation(const SchreierData& sd);

// d_p of a finitely presented group: number of generators minus the F_p-rank
// of the relators' exponent-sum matrix. Exponent sums are accumulated in
// arbitrary precision before reduction mod p.
int dp(const Presentation& pres, uint32_t p);

// The F_p vector space V = H/[H,H]H^p presented on the Schreier generators,
// together with the conjugation action of G's generators on it.
struct ModPAbelianization {
  uint32_t p = 2;
  int dim = 0;  // d_p(H)
  int n_sgens = 0;
  Rref relator_rows;               // RREF of the rewritten relator matrix
  std::vector<size_t> basis_cols;  // non-pivot Schreier generators spanning V
  FpMatrix sgen_coords;            // n_sgens x dim images of the generators
  std::vector<FpMatrix> action;    // per generator of G: v -> class of g h g^-1

  // Coordinates in V of a vector of exponent sums over the Schreier alphabet.
  std::vector<uint32_t> coords(const std::vector<BigInt>& sums) const;
};

// Requires the table of a subgroup normal in G.
ModPAbelianization mod_p_data(const SchreierData& sd, uint32_t p);

uint32_t mod_p(const BigInt& v, uint32_t p);

}  // namespace pgrad
