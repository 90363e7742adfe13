#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sqpack/geometry.hpp"
#include "sqpack/rational.hpp"

namespace sqpack {

// Declaration order is the tie-break order between equal-value derivations
// of equal trace size (alphabetical by tag name).
enum class RuleKind { kCombine, kGrid, kHalasz, kMonotone, kWitness };

struct Derivation {
  RuleKind kind = RuleKind::kGrid;
  // Grid: {m}; Halasz: {k, c}; Monotone: {n-1}; Combine: {a1, a2, b, n1, n2};
  // Witness: {} with `witness_digest` set.
  std::vector<std::int64_t> args;
  std::string witness_digest;
  // Number of rule applications in the full derivation tree.
  std::uint64_t trace_size = 1;

  // "Grid", "Monotone", "Halasz(2,1)", "Combine(2,1,3,4,1)", "Witness(<digest>)".
  std::string tag() const;

  friend bool operator==(const Derivation&, const Derivation&) = default;
};

struct LowerBound {
  std::int64_t n = 0;
  Rational value;
  Derivation derivation;

  friend bool operator==(const LowerBound&, const LowerBound&) = default;
};

// offset + sqrt(radicand), compared against rationals by exact squaring.
struct Surd {
  Rational offset;
  std::int64_t radicand = 0;

  std::strong_ordering compare(const Rational& r) const;
  double approx() const;
  // "sqrt(10)-3", "sqrt(7)", "sqrt(2)+1/2".
  std::string str() const;
};

// f(n) <= sqrt(n).
class UpperBound {
 public:
  explicit UpperBound(std::int64_t n);

  std::int64_t n() const { return n_; }
  // Ordering of sqrt(n) relative to r.
  std::strong_ordering compare(const Rational& r) const;
  bool equals(const Rational& r) const { return compare(r) == 0; }
  Surd as_surd() const { return {Rational(0), n_}; }
  std::string str() const { return "sqrt(" + std::to_string(n_) + ")"; }

 private:
  std::int64_t n_;
};

// Bounds on f(k^2 + 1) - k: lb is rational, ub = sqrt(k^2 + 1) - k.
struct EpsilonInterval {
  std::int64_t k = 0;
  Rational lb;
  Surd ub;

  bool lb_within_ub() const { return ub.compare(lb) >= 0; }
  // ub < 1/(2k), by exact squaring.
  bool ub_below_half_reciprocal() const { return ub.compare(Rational(1, 2 * k)) < 0; }
  // "[0, sqrt(2)-1]"
  std::string str() const;
};

// A verified certificate imported as a lower bound.
struct Witness {
  std::int64_t n = 0;
  Rational total;
  std::string digest;

  // Throws std::invalid_argument if the packing does not verify.
  static Witness from_packing(const Packing& p);

  friend bool operator==(const Witness&, const Witness&) = default;
};

struct RuleSet {
  bool grid = true;
  bool halasz = true;
  bool monotone = true;
  bool combine = true;

  friend bool operator==(const RuleSet&, const RuleSet&) = default;
};

struct PropagationParams {
  // Combine search considers grids up to b_cap.
  std::int64_t b_cap = 32;
  // Combine inputs for an a-subgrid are drawn from n in
  // [(a - w)^2 + 1, (a + w)^2]; 0 searches every n <= max_n.
  std::int64_t combine_window = 2;
  std::vector<Witness> witnesses;

  friend bool operator==(const PropagationParams&, const PropagationParams&) = default;
};

class Ledger {
 public:
  Ledger(std::int64_t max_n, RuleSet rules, PropagationParams params);

  std::int64_t max_n() const { return max_n_; }
  const RuleSet& rules() const { return rules_; }
  const PropagationParams& params() const { return params_; }

  bool has_lower(std::int64_t n) const;
  // Throws std::out_of_range when no bound is known for n.
  const LowerBound& lower(std::int64_t n) const;
  UpperBound upper(std::int64_t n) const;

  // Installs `candidate` when it beats the current entry: larger value, then
  // smaller trace, then smaller (rule, args, digest). Returns true if installed.
  bool offer(LowerBound candidate);

  // Expanded derivation tree of LB(n), one line per rule application.
  std::vector<std::string> trace(std::int64_t n) const;

  friend bool operator==(const Ledger&, const Ledger&) = default;

 private:
  std::int64_t max_n_;
  RuleSet rules_;
  PropagationParams params_;
  std::vector<std::optional<LowerBound>> entries_;
};

UpperBound ub_cauchy_schwarz(std::int64_t n);

// LB(m^2) = m. Throws unless n is a positive perfect square.
LowerBound lb_grid(std::int64_t n);

// LB(k^2 + 2c + 1) = k + c/k, for 1 <= c <= k.
LowerBound lb_halasz(std::int64_t k, std::int64_t c);

// LB(n) = LB(n - 1); bound only, no certificate.
LowerBound lb_monotone(const Ledger& ledger, std::int64_t n);

// LB(b^2 - a1^2 - a2^2 + n1 + n2) = (a1 LB(n1) + a2 LB(n2) + b^2 - a1^2 - a2^2) / b.
LowerBound lb_combine(const Ledger& ledger, std::int64_t a1, std::int64_t a2, std::int64_t b,
                      std::int64_t n1, std::int64_t n2);

LowerBound lb_witness(const Witness& w);

// Closes the rule set over n <= max_n to a fixpoint.
Ledger propagate(std::int64_t max_n, const RuleSet& rules = {},
                 const PropagationParams& params = {});
// Re-runs the closure starting from an existing ledger's entries.
Ledger propagate(const Ledger& seed);

// Requires k^2 + 1 <= ledger.max_n().
EpsilonInterval epsilon_interval(const Ledger& ledger, std::int64_t k);

// Integer square root when n is a perfect square.
std::optional<std::int64_t> exact_sqrt(std::int64_t n);

}  // namespace sqpack
