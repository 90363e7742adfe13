#include "sqpack/theorems.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace sqpack {

std::string Theorem1Instance::statement() const {
  std::ostringstream os;
  os << "if f(" << target_index << ") = " << n << " then " << k << " f(" << k * k + 1
     << ") <= " << rhs_under_hypothesis << " - " << known_term << " = " << scaled_bound
     << ", so f(" << k * k + 1 << ") <= " << conditional_ub << " and epsilon(" << k
     << ") = 0";
  return os.str();
}

Theorem1Instance theorem1_implication(std::int64_t k, std::int64_t n) {
  if (k < 1) throw std::invalid_argument("k must be >= 1");
  if (n < 2 * k) {
    throw std::invalid_argument("n = " + std::to_string(n) + " < 2k = " + std::to_string(2 * k) +
                                ": subgrids do not fit");
  }
  Theorem1Instance t;
  t.k = k;
  t.n = n;
  const std::int64_t n1 = k * k + 1;
  const std::int64_t n2 = k * k;
  t.target_index = n * n - k * k - k * k + n1 + n2;
  t.lemma_constant = Rational(k * k + k * k - n * n);
  t.rhs_under_hypothesis = t.lemma_constant + Rational(n) * Rational(n);
  t.known_term = Rational(k) * Rational(k);
  t.scaled_bound = t.rhs_under_hypothesis - t.known_term;
  t.conditional_ub = t.scaled_bound / Rational(k);
  return t;
}

std::string Theorem2Chain::statement() const {
  std::ostringstream os;
  os << "[conditional on f(" << big_n * big_n + 1 << ") = " << big_n << " + " << alpha << "] "
     << lhs_lower << " <= " << rhs_constant << " + " << rhs_coefficient << " epsilon(" << k
     << "), so epsilon(" << k << ") >= " << epsilon_lower_bound;
  return os.str();
}

Theorem2Chain theorem2_chain(std::int64_t big_n, const Rational& alpha, std::int64_t a,
                             std::int64_t k) {
  if (big_n < 1) throw std::invalid_argument("N must be >= 1");
  if (a < 1) throw std::invalid_argument("a must be >= 1");
  if (alpha.sign() <= 0) throw std::invalid_argument("alpha must be positive");
  if (k < a + big_n + 1) {
    throw std::invalid_argument("k = " + std::to_string(k) + " below threshold a + N + 1 = " +
                                std::to_string(a + big_n + 1));
  }
  Theorem2Chain t;
  t.big_n = big_n;
  t.alpha = alpha;
  t.a = a;
  t.k = k;
  t.b = k - 1;
  const std::int64_t b = t.b;
  t.n1 = a * a + 2 * b + 1;
  t.n2 = big_n * big_n + 1;
  t.target_index = b * b - a * a - big_n * big_n + t.n1 + t.n2;
  t.halasz_estimate = Rational(a) + Rational(b, a);
  t.lhs_lower = Rational(a) * t.halasz_estimate + Rational(big_n) * (Rational(big_n) + alpha);
  t.rhs_constant = Rational(a * a + big_n * big_n - b * b) + Rational(b) * Rational(b + 1);
  t.rhs_coefficient = Rational(b);
  t.epsilon_lower_bound = (t.lhs_lower - t.rhs_constant) / t.rhs_coefficient;
  t.printed_chain_bound = Rational(big_n) * alpha / Rational(b + 1);
  return t;
}

Rational theorem2_epsilon_rule(std::int64_t big_n, const Rational& alpha, std::int64_t a,
                               std::int64_t k) {
  return theorem2_chain(big_n, alpha, a, k).epsilon_lower_bound;
}

double divergence_partial_sum(const Rational& c, std::int64_t k0, std::int64_t k_max) {
  if (k0 < 1) throw std::invalid_argument("k0 must be >= 1");
  if (k_max < k0) throw std::invalid_argument("K must be >= k0");
  const double scale = c.to_double();
  double sum = 0.0;
  double compensation = 0.0;
  for (std::int64_t j = k0; j <= k_max; ++j) {
    const double term = scale / static_cast<double>(j);
    const double t = sum + term;
    if (std::fabs(sum) >= std::fabs(term)) {
      compensation += (sum - t) + term;
    } else {
      compensation += (term - t) + sum;
    }
    sum = t;
  }
  return sum + compensation;
}

}  // namespace sqpack
