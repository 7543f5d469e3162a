#pragma once

#include <memory>
#include <string>
#include <vector>

#include "pgrad/word.hpp"

namespace pgrad {

// A finite presentation <generators | relators>. Relators are stored freely
// reduced; duplicates are permitted and reported by duplicate_relators().
struct Presentation {
  std::vector<std::string> generators;
  std::vector<Word> relators;

  int ngens() const { return static_cast<int>(generators.size()); }

  // Index of a generator name, or -1.
  int generator_index(const std::string& name) const;

  // Indices of relators that duplicate an earlier relator verbatim.
  std::vector<size_t> duplicate_relators() const;

  friend bool operator==(const Presentation&, const Presentation&) = default;
};

using PresentationPtr = std::shared_ptr<const Presentation>;

// Parses the line-oriented text format:
//
//   gens: a b
//   rel: a^4
//   rel: [a,b] (a b)^-2
//
// Word grammar: a word is a sequence of terms separated by whitespace (or
// adjacency); a term is an atom with an optional ^<nonzero int>; an atom is
// a generator name, a parenthesised word, or a commutator [w1,w2].
// '#' starts a comment running to end of line.
Presentation parse_presentation(const std::string& text);

// Inverse of parse_presentation up to structural equality.
std::string print_presentation(const Presentation& p);

// Renders a word over the presentation's generator names, e.g. "a^2 b^-1".
// The identity renders as "1" (print-only shorthand; the parser does not
// accept it inside relators, which must be nonempty when given).
std::string print_word(const Word& w, const Presentation& p);

// Convenience: parse a single word over an existing presentation's alphabet.
Word parse_word(const std::string& text, const Presentation& p);

// A free presentation on `rank` generators named a, b, c, ...
Presentation free_presentation(int rank);

}  // namespace pgrad
