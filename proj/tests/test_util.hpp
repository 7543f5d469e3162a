#pragma once

#include <memory>
#include <random>
#include <string>
#include <vector>

#include "pgrad/presentation.hpp"
#include "pgrad/word.hpp"

namespace pgrad::test {

inline PresentationPtr pres(const std::string& text) {
  return std::make_shared<const Presentation>(parse_presentation(text));
}

inline Word w(const std::string& text, const Presentation& p) { return parse_word(text, p); }

// Unreduced random syllable list, for reduction/round-trip properties.
inline std::vector<Syllable> random_syllables(std::mt19937& rng, int ngens, int len) {
  std::uniform_int_distribution<int> gen(0, ngens - 1);
  std::uniform_int_distribution<int> exp(-3, 3);
  std::vector<Syllable> out;
  for (int i = 0; i < len; ++i) {
    int e = exp(rng);
    out.push_back({gen(rng), e == 0 ? 1 : e});
  }
  return out;
}

inline Word random_word(std::mt19937& rng, int ngens, int len) {
  return Word::reduced(ngens, random_syllables(rng, ngens, len));
}

}  // namespace pgrad::test
