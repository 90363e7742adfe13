#pragma once

#include <cstdint>
#include <string>

#include "sqpack/rational.hpp"

namespace sqpack {

// Subgrid substitution with n1 = k^2 + 1, n2 = k^2, a1 = a2 = k and grid n,
// under the hypothesis f(n^2 + 1) = n. Every quantity is exact.
struct Theorem1Instance {
  std::int64_t k = 0;
  std::int64_t n = 0;
  // b^2 - a1^2 - a2^2 + n1 + n2 with the values above; always n^2 + 1.
  std::int64_t target_index = 0;
  // a1^2 + a2^2 - b^2 = 2k^2 - n^2.
  Rational lemma_constant;
  // lemma_constant + n * f(n^2 + 1) with f(n^2 + 1) = n; always 2k^2.
  Rational rhs_under_hypothesis;
  // k * f(k^2) = k^2 by the grid identity.
  Rational known_term;
  // Bound on k * f(k^2 + 1); always k^2.
  Rational scaled_bound;
  // Bound on f(k^2 + 1); always k, so epsilon(k) = 0.
  Rational conditional_ub;

  std::string statement() const;
};

// Requires n >= 2k.
Theorem1Instance theorem1_implication(std::int64_t k, std::int64_t n);

// Lower-bound chain for epsilon(k) assuming f(N^2 + 1) = N + alpha, with
// b = k - 1, n1 = a^2 + 2b + 1, n2 = N^2 + 1, and the Halasz estimate
// f(n1) >= a + b/a taken as given. Hypothetical: never enters a Ledger.
struct Theorem2Chain {
  std::int64_t big_n = 0;
  Rational alpha;
  std::int64_t a = 0;
  std::int64_t k = 0;
  std::int64_t b = 0;
  std::int64_t n1 = 0;
  std::int64_t n2 = 0;
  // b^2 - a^2 - N^2 + n1 + n2; always (b + 1)^2 + 1 = k^2 + 1.
  std::int64_t target_index = 0;
  // a + b/a.
  Rational halasz_estimate;
  // a * (a + b/a) + N * (N + alpha) = a^2 + b + N^2 + N alpha.
  Rational lhs_lower;
  // a^2 + N^2 - b^2 + b (b + 1): the right side with epsilon(b + 1) = 0.
  Rational rhs_constant;
  // Coefficient b of epsilon(b + 1) on the right side.
  Rational rhs_coefficient;
  // (lhs_lower - rhs_constant) / rhs_coefficient = N alpha / b.
  Rational epsilon_lower_bound;
  // N alpha / (b + 1), the weaker bound as typeset in the original chain.
  Rational printed_chain_bound;
  bool conditional = true;

  std::string statement() const;
};

// Requires alpha > 0, N >= 1, a >= 1 and k >= a + N + 1.
Theorem2Chain theorem2_chain(std::int64_t big_n, const Rational& alpha, std::int64_t a,
                             std::int64_t k);

// epsilon(k) >= N alpha / (k - 1), conditional on the hypothesis above.
Rational theorem2_epsilon_rule(std::int64_t big_n, const Rational& alpha, std::int64_t a,
                               std::int64_t k);

// sum_{j = k0}^{k_max} c / j with Neumaier compensated summation.
double divergence_partial_sum(const Rational& c, std::int64_t k0, std::int64_t k_max);

}  // namespace sqpack
