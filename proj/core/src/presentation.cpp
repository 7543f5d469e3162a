#include "pgrad/presentation.hpp"

#include <algorithm>
#include <cctype>
#include <limits>
#include <sstream>

#include "pgrad/errors.hpp"

namespace pgrad {

int Presentation::generator_index(const std::string& name) const {
  for (size_t i = 0; i < generators.size(); ++i)
    if (generators[i] == name) return static_cast<int>(i);
  return -1;
}

std::vector<size_t> Presentation::duplicate_relators() const {
  std::vector<size_t> dup;
  for (size_t i = 0; i < relators.size(); ++i)
    for (size_t j = 0; j < i; ++j)
      if (relators[i] == relators[j]) {
        dup.push_back(i);
        break;
      }
  return dup;
}

namespace {

bool is_name_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool is_name_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

// Recursive-descent parser for one word, over one source line.
class WordParser {
public:
  WordParser(const std::string& line, int line_no, size_t start_col, const Presentation& pres)
      : s_(line), line_(line_no), pos_(start_col), pres_(pres) {}

  // word := term+
  Word parse_word() {
    std::vector<Syllable> acc;
    skip_ws();
    if (!starts_atom())
      fail("expected a word");
    while (starts_atom()) {
      append(acc, parse_term());
      skip_ws();
    }
    return Word::reduced(pres_.ngens(), acc);
  }

  void expect_end() {
    skip_ws();
    if (pos_ < s_.size()) fail("unexpected trailing input");
  }

  size_t pos() const { return pos_; }

private:
  // term := atom ('^' int)?
  Word parse_term() {
    Word atom = parse_atom();
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] == '^') {
      ++pos_;
      skip_ws();
      return power(atom, parse_int());
    }
    return atom;
  }

  // atom := name | '1' | '(' word ')' | '[' word ',' word ']'
  Word parse_atom() {
    skip_ws();
    if (pos_ >= s_.size()) fail("expected an atom");
    char c = s_[pos_];
    if (c == '1') {
      ++pos_;
      return Word::identity(pres_.ngens());
    }
    if (c == '(') {
      ++pos_;
      Word w = parse_word();
      expect(')');
      return w;
    }
    if (c == '[') {
      ++pos_;
      Word u = parse_word();
      expect(',');
      Word v = parse_word();
      expect(']');
      return commutator(u, v);
    }
    if (is_name_start(c)) {
      size_t start = pos_;
      while (pos_ < s_.size() && is_name_char(s_[pos_])) ++pos_;
      std::string name = s_.substr(start, pos_ - start);
      int g = pres_.generator_index(name);
      if (g < 0) fail("unknown generator '" + name + "'", start);
      return Word::generator(pres_.ngens(), g);
    }
    fail(std::string("unexpected character '") + c + "'");
    return Word();  // unreachable
  }

  int64_t parse_int() {
    size_t start = pos_;
    bool neg = false;
    if (pos_ < s_.size() && (s_[pos_] == '-' || s_[pos_] == '+')) {
      neg = s_[pos_] == '-';
      ++pos_;
    }
    if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_])))
      fail("expected an integer exponent");
    int64_t v = 0;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
      int digit = s_[pos_] - '0';
      if (v > (std::numeric_limits<int64_t>::max() - digit) / 10)
        fail("exponent out of range", start);
      v = v * 10 + digit;
      ++pos_;
    }
    if (v == 0) fail("zero exponent", start);
    return neg ? -v : v;
  }

  bool starts_atom() {
    return pos_ < s_.size() &&
           (s_[pos_] == '(' || s_[pos_] == '[' || s_[pos_] == '1' || is_name_start(s_[pos_]));
  }

  void expect(char c) {
    skip_ws();
    if (pos_ >= s_.size() || s_[pos_] != c)
      fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  static void append(std::vector<Syllable>& acc, const Word& w) {
    acc.insert(acc.end(), w.syllables().begin(), w.syllables().end());
  }

  [[noreturn]] void fail(const std::string& msg) { fail(msg, pos_); }
  [[noreturn]] void fail(const std::string& msg, size_t col) {
    throw ParseError(msg, line_, static_cast<int>(col) + 1);
  }

  const std::string& s_;
  int line_;
  size_t pos_;
  const Presentation& pres_;
};

std::string strip_comment(const std::string& line) {
  size_t h = line.find('#');
  std::string out = h == std::string::npos ? line : line.substr(0, h);
  while (!out.empty() && out.back() == '\r') out.pop_back();
  return out;
}

}  // namespace

Presentation parse_presentation(const std::string& text) {
  Presentation p;
  bool seen_gens = false;
  std::istringstream in(text);
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string line = strip_comment(raw);
    size_t i = 0;
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    if (i == line.size()) continue;

    size_t key_start = i;
    while (i < line.size() && is_name_char(line[i])) ++i;
    std::string key = line.substr(key_start, i - key_start);
    if (i >= line.size() || line[i] != ':')
      throw ParseError("expected 'gens:' or 'rel:'", line_no, static_cast<int>(key_start) + 1);
    ++i;

    if (key == "gens") {
      if (seen_gens)
        throw ParseError("duplicate 'gens:' line", line_no, static_cast<int>(key_start) + 1);
      seen_gens = true;
      while (i < line.size()) {
        while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
        if (i == line.size()) break;
        if (!is_name_start(line[i]))
          throw ParseError("invalid generator name", line_no, static_cast<int>(i) + 1);
        size_t start = i;
        while (i < line.size() && is_name_char(line[i])) ++i;
        std::string name = line.substr(start, i - start);
        if (p.generator_index(name) >= 0)
          throw ParseError("duplicate generator '" + name + "'", line_no,
                           static_cast<int>(start) + 1);
        p.generators.push_back(name);
      }
    } else if (key == "rel") {
      if (!seen_gens)
        throw ParseError("'rel:' before 'gens:'", line_no, static_cast<int>(key_start) + 1);
      WordParser wp(line, line_no, i, p);
      p.relators.push_back(wp.parse_word());
      wp.expect_end();
    } else {
      throw ParseError("unknown directive '" + key + ":'", line_no,
                       static_cast<int>(key_start) + 1);
    }
  }
  if (!seen_gens) throw ParseError("missing 'gens:' line", line_no == 0 ? 1 : line_no, 1);
  return p;
}

std::string print_word(const Word& w, const Presentation& p) {
  if (w.is_identity()) return "1";
  std::string out;
  for (const Syllable& s : w.syllables()) {
    if (!out.empty()) out += ' ';
    out += p.generators[s.gen];
    if (s.exp != 1) out += "^" + std::to_string(s.exp);
  }
  return out;
}

std::string print_presentation(const Presentation& p) {
  std::string out = "gens:";
  for (const std::string& g : p.generators) out += ' ' + g;
  out += '\n';
  for (const Word& r : p.relators) out += "rel: " + print_word(r, p) + '\n';
  return out;
}

Word parse_word(const std::string& text, const Presentation& p) {
  WordParser wp(text, 1, 0, p);
  Word w = wp.parse_word();
  wp.expect_end();
  return w;
}

Presentation free_presentation(int rank) {
  if (rank < 0) throw UsageError("negative rank");
  Presentation p;
  for (int i = 0; i < rank; ++i) {
    std::string name;
    if (rank <= 26) {
      name = std::string(1, static_cast<char>('a' + i));
    } else {
      name = "g" + std::to_string(i + 1);
    }
    p.generators.push_back(name);
  }
  return p;
}

}  // namespace pgrad
