#include "pgrad/chaser.hpp"

#include <algorithm>
#include <memory>
#include <random>

#include "pgrad/errors.hpp"
#include "pgrad/quotient.hpp"

namespace pgrad {

namespace {

// Positive products of generators of the given length, in lexicographic
// order. All of them are freely reduced.
std::vector<Word> positive_words(int ngens, int length) {
  std::vector<Word> out;
  if (ngens == 0) return out;
  std::vector<int> digits(length, 0);
  for (;;) {
    std::vector<Syllable> raw;
    raw.reserve(length);
    for (int d : digits) raw.push_back({d, 1});
    out.push_back(Word::reduced(ngens, raw));
    int i = length - 1;
    while (i >= 0 && ++digits[i] == ngens) digits[i--] = 0;
    if (i < 0) break;
  }
  return out;
}

}  // namespace

Trajectory chase(const Rational& alpha, uint32_t p, const ChaseOptions& opts) {
  if (!is_prime(p)) throw UsageError("p must be prime");
  if (!(alpha > Rational(0))) throw UsageError("alpha must be positive");

  Trajectory tr;
  tr.p = p;
  tr.alpha = alpha;
  tr.rank = static_cast<int>(alpha.ceil()) + 1;
  tr.initial = Rational(BigInt(tr.rank) - 1);
  tr.depth = opts.depth;
  tr.seed = opts.seed;

  auto pres = std::make_shared<const Presentation>(free_presentation(tr.rank));
  tr.presentations.push_back(*pres);
  tr.initial_estimate = estimate(pres, p, opts.depth, opts.lattice).value;

  const Rational budget = tr.initial - alpha;
  Rational spent(0);
  std::mt19937_64 rng(opts.seed);

  while (static_cast<int>(tr.steps.size()) < opts.max_steps) {
    Rational remaining = budget - spent;
    if (!(remaining > Rational(0))) {
      tr.stop_reason = "budget exhausted; certified lower bound equals alpha";
      break;
    }
    int k = 0;
    while (k <= opts.max_k && Rational(1, p_power(p, k)) > remaining) ++k;
    if (k > opts.max_k) {
      tr.stop_reason = "remaining budget needs a step beyond the order-witness search limit";
      break;
    }

    // Order witnesses of order > p^k need index >= p^(k+1), so search there.
    BigInt strict = p_power(p, k);

    Word chosen;
    int witness_level = -1;
    uint32_t witness_order = 0;
    for (int len = 1; len <= opts.max_word_length && witness_level < 0; ++len) {
      std::vector<Word> cands = positive_words(pres->ngens(), len);
      std::shuffle(cands.begin(), cands.end(), rng);
      for (const Word& x : cands) {
        std::optional<OrderWitness> ow = find_order_witness(pres, x, p, strict, k + 1);
        if (ow) {
          chosen = x;
          witness_level = ow->level;
          witness_order = ow->order;
          break;
        }
      }
    }
    if (witness_level < 0) {
      tr.stop_reason = "no candidate word has a certified order above p^" + std::to_string(k);
      break;
    }

    Presentation next = quotient_by_power(*pres, chosen, p_power(p, k).convert_to<int64_t>());
    pres = std::make_shared<const Presentation>(std::move(next));
    spent = spent + Rational(1, p_power(p, k));

    ChaseStep step;
    step.x = chosen;
    step.k = k;
    step.witness_level = witness_level;
    step.witness_order = witness_order;
    step.spent = spent;
    step.certified_lower = tr.initial - spent;
    step.estimate_after = estimate(pres, p, opts.depth, opts.lattice).value;

    if (spent > budget) throw IntegrityError("budget overspent");
    if (step.estimate_after < step.certified_lower)
      throw IntegrityError("estimate fell below the certified lower bound");

    tr.presentations.push_back(*pres);
    tr.steps.push_back(std::move(step));
  }
  if (tr.stop_reason.empty()) tr.stop_reason = "max steps reached";
  return tr;
}

LimitCheck check_limit_chain(const Trajectory& t) {
  LimitCheck out;
  auto add = [&out](bool ok, std::string what) {
    out.passed = out.passed && ok;
    out.lines.push_back({ok, std::move(what)});
  };

  Rational prev_lower = t.initial;
  Rational final_lower = t.steps.empty() ? t.initial : t.steps.back().certified_lower;
  add(t.initial_estimate >= t.initial,
      "seed estimate " + t.initial_estimate.str() + " >= certified " + t.initial.str());
  for (size_t i = 0; i < t.steps.size(); ++i) {
    const ChaseStep& s = t.steps[i];
    std::string tag = "step " + std::to_string(i + 1);
    add(s.certified_lower <= prev_lower, tag + ": certified lower bound non-increasing");
    add(s.estimate_after >= s.certified_lower,
        tag + ": estimate " + s.estimate_after.str() + " >= certified " +
            s.certified_lower.str());
    add(s.estimate_after >= final_lower,
        tag + ": estimate dominates the final certified bound " + final_lower.str());
    prev_lower = s.certified_lower;
  }
  return out;
}

}  // namespace pgrad
