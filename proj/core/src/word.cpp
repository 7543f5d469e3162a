#include "pgrad/word.hpp"

#include <limits>

#include "pgrad/errors.hpp"

namespace pgrad {

namespace {

int64_t checked_mul(int64_t a, int64_t b) {
  int64_t r;
  if (__builtin_mul_overflow(a, b, &r))
    throw UsageError("word exponent overflow");
  return r;
}

int64_t checked_add(int64_t a, int64_t b) {
  int64_t r;
  if (__builtin_add_overflow(a, b, &r))
    throw UsageError("word exponent overflow");
  return r;
}

// Appends one syllable to a reduced suffix, merging and cancelling as needed.
void push_reduced(std::vector<Syllable>& out, int32_t gen, int64_t exp) {
  if (exp == 0) return;
  if (!out.empty() && out.back().gen == gen) {
    int64_t e = checked_add(out.back().exp, exp);
    if (e == 0)
      out.pop_back();
    else
      out.back().exp = e;
  } else {
    out.push_back({gen, exp});
  }
}

}  // namespace

Word Word::generator(int ngens, int gen, int64_t exp) {
  if (gen < 0 || gen >= ngens)
    throw UsageError("generator index out of range");
  if (exp == 0) return identity(ngens);
  return Word(ngens, {Syllable{gen, exp}});
}

Word Word::reduced(int ngens, const std::vector<Syllable>& raw) {
  std::vector<Syllable> out;
  out.reserve(raw.size());
  for (const Syllable& s : raw) {
    if (s.gen < 0 || s.gen >= ngens)
      throw UsageError("generator index out of range");
    push_reduced(out, s.gen, s.exp);
  }
  return Word(ngens, std::move(out));
}

int64_t Word::letter_length() const {
  int64_t total = 0;
  for (const Syllable& s : syl_) {
    int64_t a = s.exp < 0 ? -s.exp : s.exp;
    if (total > std::numeric_limits<int64_t>::max() - a)
      return std::numeric_limits<int64_t>::max();
    total += a;
  }
  return total;
}

Word multiply(const Word& u, const Word& v) {
  if (u.ngens() != v.ngens())
    throw UsageError("words over different alphabets");
  std::vector<Syllable> raw = u.syllables();
  raw.insert(raw.end(), v.syllables().begin(), v.syllables().end());
  return Word::reduced(u.ngens(), raw);
}

Word invert(const Word& u) {
  std::vector<Syllable> raw;
  raw.reserve(u.syllables().size());
  for (auto it = u.syllables().rbegin(); it != u.syllables().rend(); ++it)
    raw.push_back({it->gen, -it->exp});
  return Word::reduced(u.ngens(), raw);
}

Word power(const Word& u, int64_t n) {
  if (n == 0 || u.is_identity()) return Word::identity(u.ngens());
  if (n < 0) return power(invert(u), -n);
  if (u.syllables().size() == 1) {
    const Syllable& s = u.syllables().front();
    return Word::generator(u.ngens(), s.gen, checked_mul(s.exp, n));
  }
  // Square-and-multiply; single-syllable factors stay compact, everything
  // else is desk scale.
  Word acc = Word::identity(u.ngens());
  Word base = u;
  uint64_t k = static_cast<uint64_t>(n);
  while (k != 0) {
    if (k & 1) acc = multiply(acc, base);
    k >>= 1;
    if (k != 0) base = multiply(base, base);
  }
  return acc;
}

Word commutator(const Word& u, const Word& v) {
  return multiply(multiply(invert(u), invert(v)), multiply(u, v));
}

std::vector<BigInt> exponent_sums(const Word& w) {
  std::vector<BigInt> sums(w.ngens());
  for (const Syllable& s : w.syllables()) sums[s.gen] += s.exp;
  return sums;
}

}  // namespace pgrad
