#include "pgrad/coset_table.hpp"

#include <algorithm>
#include <deque>
#include <limits>

#include "pgrad/errors.hpp"

namespace pgrad {

namespace {

constexpr uint32_t kUndef = CosetTable::kUndef;

int inverse_col(int col) { return col ^ 1; }

Word column_letter(int ngens, int col) {
  return Word::generator(ngens, col / 2, (col & 1) ? -1 : 1);
}

// A word as a flat sequence of table columns. Guarded so pathological
// exponents cannot blow up enumeration-side expansions.
std::vector<int> word_to_columns(const Word& w, int64_t max_letters) {
  if (w.letter_length() > max_letters)
    throw ResourceError("word too long to expand for coset enumeration");
  std::vector<int> cols;
  cols.reserve(static_cast<size_t>(w.letter_length()));
  for (const Syllable& s : w.syllables()) {
    int col = CosetTable::column(s.gen, s.exp < 0);
    int64_t k = s.exp < 0 ? -s.exp : s.exp;
    for (int64_t i = 0; i < k; ++i) cols.push_back(col);
  }
  return cols;
}

}  // namespace

CosetTable::CosetTable(PresentationPtr pres, uint32_t n_cosets, std::vector<uint32_t> action,
                       std::vector<Word> reps)
    : pres_(std::move(pres)), n_(n_cosets), act_(std::move(action)), reps_(std::move(reps)) {
  if (n_ == 0) throw IntegrityError("empty coset table");
  if (act_.size() != size_t(n_) * ncols() || reps_.size() != n_)
    throw IntegrityError("coset table shape mismatch");
}

uint32_t CosetTable::apply_power(uint32_t coset, int col, uint64_t k) const {
  uint32_t cur = coset;
  uint64_t steps = 0;
  while (steps < k) {
    cur = at(cur, col);
    ++steps;
    if (cur == coset) break;
  }
  if (steps < k) {
    // Completed a cycle of length `steps`; only the remainder matters.
    uint64_t r = k % steps;
    for (; r > 0; --r) cur = at(cur, col);
  }
  return cur;
}

uint32_t CosetTable::trace(const Word& w, uint32_t start) const {
  if (w.ngens() != ngens()) throw UsageError("word over a different alphabet");
  if (start >= n_) throw UsageError("start coset out of range");
  uint32_t c = start;
  for (const Syllable& s : w.syllables()) {
    int col = column(s.gen, s.exp < 0);
    uint64_t k = s.exp < 0 ? uint64_t(-(s.exp + 1)) + 1 : uint64_t(s.exp);
    c = apply_power(c, col, k);
  }
  return c;
}

std::string CosetTable::dump() const {
  std::string out;
  for (uint32_t c = 0; c < n_; ++c) {
    for (int col = 0; col < ncols(); ++col) {
      if (col) out += '\t';
      out += std::to_string(at(c, col));
    }
    out += '\n';
  }
  return out;
}

void CosetTable::validate() const {
  for (uint32_t c = 0; c < n_; ++c)
    for (int col = 0; col < ncols(); ++col) {
      uint32_t d = at(c, col);
      if (d >= n_) throw IntegrityError("incomplete or out-of-range table entry");
      if (at(d, inverse_col(col)) != c)
        throw IntegrityError("generator and inverse columns are not mutually inverse");
    }
  for (const Word& r : pres_->relators)
    for (uint32_t c = 0; c < n_; ++c)
      if (trace(r, c) != c) throw IntegrityError("relator does not fix every coset");
  if (!reps_[0].is_identity()) throw IntegrityError("rep of coset 0 is not the identity");
  for (uint32_t c = 0; c < n_; ++c) {
    if (trace(reps_[c], 0) != c) throw IntegrityError("rep does not reach its coset");
    if (reps_[c].is_identity()) continue;
    // Prefix closure: dropping the last letter must give another rep.
    std::vector<Syllable> pre = reps_[c].syllables();
    Syllable& last = pre.back();
    last.exp += last.exp > 0 ? -1 : 1;
    if (last.exp == 0) pre.pop_back();
    Word parent = Word::reduced(ngens(), pre);
    if (reps_[trace(parent, 0)] != parent)
      throw IntegrityError("transversal is not prefix-closed");
  }
}

CosetTable whole_group_table(PresentationPtr pres) {
  int ncols = 2 * pres->ngens();
  std::vector<uint32_t> act(ncols, 0);
  std::vector<Word> reps{Word::identity(pres->ngens())};
  return CosetTable(std::move(pres), 1, std::move(act), std::move(reps));
}

// ---------------------------------------------------------------------------
// Coset enumeration.
//
// Relator-table style: every relator is scanned at every live coset;
// deductions (one-gap scans) and coincidences are applied immediately and
// sweeps repeat until nothing changes; only then is a new coset defined at
// the first undefined slot, in (coset, column) order. Coincidences follow
// the classic queue/union-find procedure: the dying coset's row is
// dismantled fact by fact and each fact is re-installed at the surviving
// representatives, possibly triggering further merges. Definition and
// processing order are fixed, so enumeration is fully deterministic.
// ---------------------------------------------------------------------------

namespace {

class Enumerator {
public:
  Enumerator(PresentationPtr pres, const std::vector<Word>& subgroup_gens, uint32_t max_cosets)
      : pres_(std::move(pres)), ncols_(2 * pres_->ngens()), max_cosets_(max_cosets) {
    if (max_cosets_ == 0) throw UsageError("max_cosets must be positive");
    constexpr int64_t kMaxLetters = 1 << 20;
    for (const Word& r : pres_->relators) {
      std::vector<int> cols = word_to_columns(r, kMaxLetters);
      if (!cols.empty()) relators_.push_back(std::move(cols));
    }
    for (const Word& w : subgroup_gens) {
      if (w.ngens() != pres_->ngens())
        throw UsageError("subgroup generator over a different alphabet");
      std::vector<int> cols = word_to_columns(w, kMaxLetters);
      if (!cols.empty()) subgens_.push_back(std::move(cols));
    }
    new_coset();
  }

  CosetTable run() {
    for (const std::vector<int>& w : subgens_) scan_and_fill(0, w);
    for (;;) {
      while (sweep()) {
      }
      uint32_t c, col;
      if (!first_undefined(c, col)) break;
      uint32_t d = new_coset();
      set_pair(c, col, d);
    }
    return compact();
  }

private:
  uint32_t find(uint32_t c) {
    uint32_t root = c;
    while (parent_[root] != root) root = parent_[root];
    while (parent_[c] != root) {
      uint32_t next = parent_[c];
      parent_[c] = root;
      c = next;
    }
    return root;
  }

  bool dead(uint32_t c) { return parent_[c] != c; }

  uint32_t& slot(uint32_t c, int col) { return tab_[size_t(c) * ncols_ + col]; }

  // Raw slots are never rewritten on read: a stale entry pointing at a dead
  // coset is exactly the mirror of a fact in that coset's queued row, and
  // the dismantling step finds and deletes it by equality. Reads just
  // resolve through the union-find.
  uint32_t get(uint32_t c, int col) {
    uint32_t d = slot(c, col);
    if (d == kUndef) return kUndef;
    return find(d);
  }

  void set_pair(uint32_t c, int col, uint32_t d) {
    slot(c, col) = d;
    slot(d, inverse_col(col)) = c;
    changed_ = true;
  }

  uint32_t new_coset() {
    if (live_ >= max_cosets_)
      throw ResourceError("coset enumeration did not close within " +
                          std::to_string(max_cosets_) + " cosets");
    uint32_t c = static_cast<uint32_t>(parent_.size());
    parent_.push_back(c);
    tab_.resize(tab_.size() + ncols_, kUndef);
    ++live_;
    return c;
  }

  void merge(uint32_t a, uint32_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (a > b) std::swap(a, b);
    parent_[b] = a;
    --live_;
    dead_queue_.push_back(b);
    changed_ = true;
  }

  void process_coincidences() {
    while (!dead_queue_.empty()) {
      uint32_t e = dead_queue_.front();
      dead_queue_.pop_front();
      for (int col = 0; col < ncols_; ++col) {
        uint32_t f = slot(e, col);
        if (f == kUndef) continue;
        slot(e, col) = kUndef;
        if (slot(f, inverse_col(col)) == e) slot(f, inverse_col(col)) = kUndef;
        uint32_t mu = find(e), nu = find(f);
        uint32_t mu_img = get(mu, col);
        if (mu_img != kUndef) {
          merge(nu, mu_img);
        } else {
          uint32_t nu_pre = get(nu, inverse_col(col));
          if (nu_pre != kUndef)
            merge(mu, nu_pre);
          else
            set_pair(mu, col, nu);
        }
      }
    }
  }

  // Scans word `w` as a cycle at live coset c; applies a deduction on a
  // one-entry gap and a coincidence on a mismatch.
  void scan(uint32_t c, const std::vector<int>& w) {
    size_t i = 0;
    uint32_t f = c;
    while (i < w.size()) {
      uint32_t d = get(f, w[i]);
      if (d == kUndef) break;
      f = d;
      ++i;
    }
    if (i == w.size()) {
      if (f != c) {
        merge(f, c);
        process_coincidences();
      }
      return;
    }
    size_t j = w.size();
    uint32_t b = c;
    while (j > i) {
      uint32_t d = get(b, inverse_col(w[j - 1]));
      if (d == kUndef) break;
      b = d;
      --j;
    }
    if (j == i) {
      // Both scans cover the word but disagree about position i.
      merge(f, b);
      process_coincidences();
    } else if (j == i + 1) {
      // One missing entry; both slots of the pair are undefined here.
      set_pair(f, w[i], b);
    }
  }

  // As scan, but fills gaps with fresh cosets; used to seed the subgroup
  // generator cycles at coset 0.
  void scan_and_fill(uint32_t c, const std::vector<int>& w) {
    for (;;) {
      c = find(c);
      size_t i = 0;
      uint32_t f = c;
      while (i < w.size()) {
        uint32_t d = get(f, w[i]);
        if (d == kUndef) break;
        f = d;
        ++i;
      }
      if (i == w.size()) {
        if (f != c) {
          merge(f, c);
          process_coincidences();
        }
        return;
      }
      size_t j = w.size();
      uint32_t b = c;
      while (j > i) {
        uint32_t d = get(b, inverse_col(w[j - 1]));
        if (d == kUndef) break;
        b = d;
        --j;
      }
      if (j == i) {
        merge(f, b);
        process_coincidences();
        return;
      }
      if (j == i + 1) {
        set_pair(f, w[i], b);
        return;
      }
      uint32_t d = new_coset();
      set_pair(f, w[i], d);
    }
  }

  bool sweep() {
    changed_ = false;
    for (const std::vector<int>& w : subgens_) scan(0, w);
    for (uint32_t c = 0; c < parent_.size(); ++c) {
      if (dead(c)) continue;
      for (const std::vector<int>& w : relators_) {
        scan(c, w);
        if (dead(c)) break;
      }
    }
    return changed_;
  }

  bool first_undefined(uint32_t& out_c, uint32_t& out_col) {
    for (uint32_t c = 0; c < parent_.size(); ++c) {
      if (dead(c)) continue;
      for (int col = 0; col < ncols_; ++col)
        if (get(c, col) == kUndef) {
          out_c = c;
          out_col = col;
          return true;
        }
    }
    return false;
  }

  CosetTable compact() {
    std::vector<uint32_t> new_id(parent_.size(), kUndef);
    uint32_t n = 0;
    for (uint32_t c = 0; c < parent_.size(); ++c)
      if (!dead(c)) new_id[c] = n++;

    std::vector<uint32_t> act(size_t(n) * ncols_, kUndef);
    for (uint32_t c = 0; c < parent_.size(); ++c) {
      if (dead(c)) continue;
      for (int col = 0; col < ncols_; ++col) {
        uint32_t d = get(c, col);
        if (d == kUndef) throw IntegrityError("incomplete table after enumeration");
        act[size_t(new_id[c]) * ncols_ + col] = new_id[d];
      }
    }

    // Schreier transversal from a breadth-first tree rooted at coset 0.
    int ng = pres_->ngens();
    std::vector<Word> reps(n);
    std::vector<bool> seen(n, false);
    reps[0] = Word::identity(ng);
    seen[0] = true;
    std::deque<uint32_t> queue{0};
    while (!queue.empty()) {
      uint32_t c = queue.front();
      queue.pop_front();
      for (int col = 0; col < ncols_; ++col) {
        uint32_t d = act[size_t(c) * ncols_ + col];
        if (seen[d]) continue;
        seen[d] = true;
        reps[d] = multiply(reps[c], column_letter(ng, col));
        queue.push_back(d);
      }
    }
    return CosetTable(pres_, n, std::move(act), std::move(reps));
  }

  PresentationPtr pres_;
  int ncols_;
  uint32_t max_cosets_;
  std::vector<std::vector<int>> relators_;
  std::vector<std::vector<int>> subgens_;
  std::vector<uint32_t> tab_;
  std::vector<uint32_t> parent_;
  std::deque<uint32_t> dead_queue_;
  size_t live_ = 0;
  bool changed_ = false;
};

}  // namespace

CosetTable todd_coxeter(PresentationPtr pres, const std::vector<Word>& subgroup_gens,
                        uint32_t max_cosets) {
  Enumerator e(std::move(pres), subgroup_gens, max_cosets);
  return e.run();
}

CosetTable from_action(PresentationPtr pres,
                       const std::vector<std::vector<uint32_t>>& gen_images) {
  int ng = pres->ngens();
  if (static_cast<int>(gen_images.size()) != ng)
    throw UsageError("one image list per generator required");
  size_t n = ng == 0 ? 1 : gen_images[0].size();
  if (n == 0) throw UsageError("empty action");
  std::vector<uint32_t> act(n * 2 * ng, kUndef);
  for (int g = 0; g < ng; ++g) {
    const std::vector<uint32_t>& img = gen_images[g];
    if (img.size() != n) throw UsageError("generator images have inconsistent sizes");
    std::vector<bool> hit(n, false);
    for (uint32_t c = 0; c < n; ++c) {
      if (img[c] >= n || hit[img[c]]) throw UsageError("generator image is not a permutation");
      hit[img[c]] = true;
      act[size_t(c) * 2 * ng + CosetTable::column(g, false)] = img[c];
      act[size_t(img[c]) * 2 * ng + CosetTable::column(g, true)] = c;
    }
  }

  // Transitivity.
  std::vector<bool> seen(n, false);
  seen[0] = true;
  std::deque<uint32_t> queue{0};
  size_t reached = 1;
  while (!queue.empty()) {
    uint32_t c = queue.front();
    queue.pop_front();
    for (int col = 0; col < 2 * ng; ++col) {
      uint32_t d = act[size_t(c) * 2 * ng + col];
      if (!seen[d]) {
        seen[d] = true;
        ++reached;
        queue.push_back(d);
      }
    }
  }
  if (reached != n) throw UsageError("action is not transitive");

  std::vector<Word> reps(n, Word::identity(ng));
  CosetTable raw(pres, static_cast<uint32_t>(n), std::move(act), std::move(reps));
  CosetTable table = standardize(raw).table;
  for (const Word& r : pres->relators)
    for (uint32_t c = 0; c < table.size(); ++c)
      if (table.trace(r, c) != c) throw UsageError("action does not satisfy the relators");
  return table;
}

StandardizedTable standardize(const CosetTable& t) {
  const uint32_t n = t.size();
  const int ncols = t.ncols();
  const int ng = t.ngens();

  std::vector<uint32_t> new_of_old(n, kUndef);
  std::vector<uint32_t> old_of_new(n, kUndef);
  new_of_old[0] = 0;
  old_of_new[0] = 0;
  uint32_t next = 1;
  std::vector<Word> reps(n);
  reps[0] = Word::identity(ng);
  for (uint32_t ni = 0; ni < n; ++ni) {
    uint32_t o = old_of_new[ni];
    for (int col = 0; col < ncols; ++col) {
      uint32_t d = t.at(o, col);
      if (new_of_old[d] == kUndef) {
        new_of_old[d] = next;
        old_of_new[next] = d;
        reps[next] = multiply(reps[ni], column_letter(ng, col));
        ++next;
      }
    }
  }
  if (next != n) throw IntegrityError("table is not transitive");

  std::vector<uint32_t> act(size_t(n) * ncols);
  for (uint32_t ni = 0; ni < n; ++ni)
    for (int col = 0; col < ncols; ++col)
      act[size_t(ni) * ncols + col] = new_of_old[t.at(old_of_new[ni], col)];

  std::string key;
  key.reserve(8 + act.size() * 4);
  auto put_u32 = [&key](uint32_t v) {
    for (int i = 0; i < 4; ++i) key.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
  };
  put_u32(n);
  put_u32(static_cast<uint32_t>(ng));
  for (uint32_t v : act) put_u32(v);

  return StandardizedTable{CosetTable(t.presentation_ptr(), n, std::move(act), std::move(reps)),
                           std::move(key)};
}

uint64_t key_hash(const std::string& key) {
  uint64_t h = 1469598103934665603ull;
  for (unsigned char c : key) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string key_hash_hex(const std::string& key) {
  static const char* digits = "0123456789abcdef";
  uint64_t h = key_hash(key);
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[i] = digits[h & 0xf];
    h >>= 4;
  }
  return out;
}

bool is_normal(const CosetTable& t) {
  const int ng = t.ngens();
  for (uint32_t c = 0; c < t.size(); ++c) {
    for (int g = 0; g < ng; ++g) {
      uint32_t cg = t.apply(c, g, false);
      // Schreier generator s = rep(c) g rep(cg)^-1; test h^-1 s h in H for
      // every generator h by tracing the pieces.
      for (int h = 0; h < ng; ++h) {
        uint32_t x = t.apply(0, h, true);
        x = t.trace(t.rep(c), x);
        x = t.apply(x, g, false);
        x = t.trace(invert(t.rep(cg)), x);
        x = t.apply(x, h, false);
        if (x != 0) return false;
      }
    }
  }
  return true;
}

OrbitTransversal orbit_transversal(const CosetTable& t, const Word& x) {
  const uint32_t n = t.size();
  std::vector<uint32_t> image(n);
  for (uint32_t c = 0; c < n; ++c) image[c] = t.trace(x, c);

  uint32_t m = 1;
  for (uint32_t c = image[0]; c != 0; c = image[c]) ++m;

  OrbitTransversal out;
  out.order = m;
  std::vector<bool> seen(n, false);
  for (uint32_t c = 0; c < n; ++c) {
    if (seen[c]) continue;
    uint32_t len = 0;
    for (uint32_t d = c; !seen[d]; d = image[d]) {
      seen[d] = true;
      ++len;
    }
    if (len != m)
      throw UsageError("orbit sizes are not uniform; table is not of a normal subgroup");
    out.transversal.push_back(t.rep(c));
  }
  return out;
}

CosetTable descend(const CosetTable& h, uint32_t p,
                   const std::function<uint32_t(uint32_t coset, int gen)>& sgen_value) {
  const uint32_t n = h.size();
  const int ng = h.ngens();
  const int ncols = 2 * ng;
  if (uint64_t(n) * p > (uint64_t(1) << 31)) throw ResourceError("descended table too large");
  const uint32_t np = n * p;

  std::vector<uint32_t> act(size_t(np) * ncols, kUndef);
  for (uint32_t c = 0; c < n; ++c) {
    for (int g = 0; g < ng; ++g) {
      uint32_t cg = h.apply(c, g, false);
      uint32_t inc = sgen_value(c, g) % p;
      for (uint32_t v = 0; v < p; ++v) {
        uint32_t from = c * p + v;
        uint32_t to = cg * p + (v + inc) % p;
        act[size_t(from) * ncols + CosetTable::column(g, false)] = to;
        act[size_t(to) * ncols + CosetTable::column(g, true)] = from;
      }
    }
  }

  std::vector<Word> reps(np, Word::identity(ng));
  CosetTable raw(h.presentation_ptr(), np, std::move(act), std::move(reps));
  CosetTable table = standardize(raw).table;
  for (const Word& r : h.presentation().relators)
    for (uint32_t c = 0; c < table.size(); ++c)
      if (table.trace(r, c) != c)
        throw IntegrityError("descended table failed relator closure: inconsistent evaluation");
  return table;
}

}  // namespace pgrad
