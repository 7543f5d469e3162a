#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace pgrad {

using BigInt = boost::multiprecision::cpp_int;

// One run of a single generator: gen^exp with exp != 0.
struct Syllable {
  int32_t gen;
  int64_t exp;

  friend bool operator==(const Syllable&, const Syllable&) = default;
  friend auto operator<=>(const Syllable&, const Syllable&) = default;
};

// A freely reduced word over a fixed alphabet of `ngens` generators.
//
// Words are stored in run-length (syllable) form so that powers like a^(2^30)
// occupy one syllable. Adjacent syllables always have distinct generators and
// no syllable has exponent zero; the empty syllable list is the identity.
// Instances are immutable after construction and safe to share across threads.
class Word {
public:
  Word() = default;

  static Word identity(int ngens) { return Word(ngens, {}); }

  static Word generator(int ngens, int gen, int64_t exp = 1);

  // Builds the unique freely reduced form of an arbitrary syllable list.
  static Word reduced(int ngens, const std::vector<Syllable>& raw);

  int ngens() const { return ngens_; }
  const std::vector<Syllable>& syllables() const { return syl_; }
  bool is_identity() const { return syl_.empty(); }

  // Number of letters counted with multiplicity (saturating).
  int64_t letter_length() const;

  friend bool operator==(const Word&, const Word&) = default;
  friend auto operator<=>(const Word&, const Word&) = default;

private:
  Word(int ngens, std::vector<Syllable> syl) : ngens_(ngens), syl_(std::move(syl)) {}

  int ngens_ = 0;
  std::vector<Syllable> syl_;
};

Word multiply(const Word& u, const Word& v);
Word invert(const Word& u);
Word power(const Word& u, int64_t n);

// [u, v] = u^-1 v^-1 u v
Word commutator(const Word& u, const Word& v);

// Per-generator exponent sums, accumulated without overflow.
std::vector<BigInt> exponent_sums(const Word& w);

}  // namespace pgrad
