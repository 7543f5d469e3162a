#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "pgrad/presentation.hpp"
#include "pgrad/word.hpp"

namespace pgrad {

// Complete right-coset table of a finite-index subgroup H of the group
// presented by `presentation`. Coset 0 is H itself. For each generator the
// table stores the images under the generator and its inverse as a pair of
// mutually inverse columns; every relator fixes every coset. `rep(c)` is a
// Schreier (prefix-closed) transversal word with trace(rep(c), 0) == c.
//
// Tables are immutable after construction and cheap to share.
class CosetTable {
public:
  static constexpr uint32_t kUndef = UINT32_MAX;

  static int column(int gen, bool inverse) { return 2 * gen + (inverse ? 1 : 0); }

  CosetTable(PresentationPtr pres, uint32_t n_cosets, std::vector<uint32_t> action,
             std::vector<Word> reps);

  const Presentation& presentation() const { return *pres_; }
  const PresentationPtr& presentation_ptr() const { return pres_; }

  uint32_t size() const { return n_; }
  int ngens() const { return pres_->ngens(); }
  int ncols() const { return 2 * pres_->ngens(); }

  uint32_t at(uint32_t coset, int col) const { return act_[size_t(coset) * ncols() + col]; }
  uint32_t apply(uint32_t coset, int gen, bool inverse) const {
    return at(coset, column(gen, inverse));
  }

  // coset * gen^(sign k), walking the generator cycle so huge exponents cost
  // O(cycle length).
  uint32_t apply_power(uint32_t coset, int col, uint64_t k) const;

  // Image of `start` under right multiplication by w.
  uint32_t trace(const Word& w, uint32_t start) const;

  const Word& rep(uint32_t coset) const { return reps_[coset]; }
  const std::vector<Word>& reps() const { return reps_; }

  // Debug dump: one line per coset, tab-separated images in column order
  // g1, g1^-1, g2, g2^-1, ...
  std::string dump() const;

  // Full invariant suite; throws IntegrityError on any violation.
  void validate() const;

private:
  PresentationPtr pres_;
  uint32_t n_;
  std::vector<uint32_t> act_;
  std::vector<Word> reps_;
};

using CosetTablePtr = std::shared_ptr<const CosetTable>;

// The one-coset table of H = G.
CosetTable whole_group_table(PresentationPtr pres);

// Coset enumeration over the subgroup generated by `subgroup_gens` (the
// trivial subgroup when empty, giving the regular representation). Fails
// with ResourceError if more than `max_cosets` cosets are alive at once;
// that distinguishes resource exhaustion from mathematical failure, since
// enumeration may legitimately never terminate for infinite index.
CosetTable todd_coxeter(PresentationPtr pres, const std::vector<Word>& subgroup_gens,
                        uint32_t max_cosets);

// Builds a table from an explicit transitive action: gen_images[g][c] is the
// image of point c under generator g. The action must be by permutations,
// transitive, and satisfy the relators. The result is standardized.
CosetTable from_action(PresentationPtr pres, const std::vector<std::vector<uint32_t>>& gen_images);

struct StandardizedTable {
  CosetTable table;
  std::string key;  // canonical byte serialization; equal keys <=> equal subgroups
};

// Renumbers cosets by first appearance, scanning rows in increasing coset
// order and columns in order g1, g1^-1, g2, g2^-1, ... The result is the
// unique canonical table for the subgroup; the key is its serialization.
StandardizedTable standardize(const CosetTable& t);

uint64_t key_hash(const std::string& key);
std::string key_hash_hex(const std::string& key);

// True iff the subgroup is normal: every conjugate g^-1 s g of a Schreier
// generator s stays in the subgroup.
bool is_normal(const CosetTable& t);

struct OrbitTransversal {
  uint32_t order;                 // least m > 0 with x^m in H
  std::vector<Word> transversal;  // one coset rep per <x>-orbit
};

// Orbits of <x> on the cosets of a normal subgroup H. All orbits share the
// same size m (that is exactly normality); the chosen representatives give a
// transversal of <x>H in G with |T| = [G:H]/m.
OrbitTransversal orbit_transversal(const CosetTable& t, const Word& x);

// One index-p descent step: given the table of H and a G-invariant
// functional on V = H/[H,H]H^p (supplied as `sgen_value`, the functional
// evaluated on the Schreier generator at (coset, gen)), builds the table of
// the preimage of the functional's kernel. Cosets of the new subgroup are
// pairs (coset of H, residue); generator g sends (c, v) to
// (c*g, v + sgen_value(c, g)). The result is standardized and has p times
// as many cosets. Throws IntegrityError if a relator fails to close, which
// signals an inconsistent evaluation.
CosetTable descend(const CosetTable& h, uint32_t p,
                   const std::function<uint32_t(uint32_t coset, int gen)>& sgen_value);

}  // namespace pgrad
