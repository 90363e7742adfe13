#include "sqpack/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <tuple>

#include "sqpack/constructions.hpp"

namespace sqpack {

namespace {

std::uint64_t saturating_add(std::uint64_t a, std::uint64_t b) {
  const std::uint64_t sum = a + b;
  return sum < a ? std::numeric_limits<std::uint64_t>::max() : sum;
}

const char* rule_name(RuleKind kind) {
  switch (kind) {
    case RuleKind::kCombine: return "Combine";
    case RuleKind::kGrid: return "Grid";
    case RuleKind::kHalasz: return "Halasz";
    case RuleKind::kMonotone: return "Monotone";
    case RuleKind::kWitness: return "Witness";
  }
  return "?";
}

// Strictly better derivation: larger value, then smaller trace, then the
// lexicographically smaller (rule, args, digest).
bool better(const LowerBound& a, const LowerBound& b) {
  if (a.value != b.value) return a.value > b.value;
  if (a.derivation.trace_size != b.derivation.trace_size) {
    return a.derivation.trace_size < b.derivation.trace_size;
  }
  return std::tie(a.derivation.kind, a.derivation.args, a.derivation.witness_digest) <
         std::tie(b.derivation.kind, b.derivation.args, b.derivation.witness_digest);
}

}  // namespace

std::string Derivation::tag() const {
  std::string out = rule_name(kind);
  switch (kind) {
    case RuleKind::kGrid:
    case RuleKind::kMonotone:
      return out;
    case RuleKind::kWitness:
      return out + "(" + witness_digest + ")";
    case RuleKind::kHalasz:
    case RuleKind::kCombine:
      break;
  }
  out += "(";
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (i > 0) out += ",";
    out += std::to_string(args[i]);
  }
  return out + ")";
}

std::strong_ordering Surd::compare(const Rational& r) const {
  // offset + sqrt(R) <=> r  iff  sqrt(R) <=> r - offset.
  const Rational d = r - offset;
  if (d.sign() < 0) return std::strong_ordering::greater;
  return Rational(radicand) <=> d.square();
}

double Surd::approx() const {
  return offset.to_double() + std::sqrt(static_cast<double>(radicand));
}

std::string Surd::str() const {
  std::string out = "sqrt(" + std::to_string(radicand) + ")";
  if (offset.sign() < 0) out += "-" + offset.abs().str();
  if (offset.sign() > 0) out += "+" + offset.str();
  return out;
}

UpperBound::UpperBound(std::int64_t n) : n_(n) {
  if (n < 1) throw std::invalid_argument("upper bound needs n >= 1");
}

std::strong_ordering UpperBound::compare(const Rational& r) const {
  return as_surd().compare(r);
}

std::string EpsilonInterval::str() const { return "[" + lb.str() + ", " + ub.str() + "]"; }

Witness Witness::from_packing(const Packing& p) {
  const auto report = verify(p);
  if (!report.valid()) {
    throw std::invalid_argument("witness packing does not verify: " + report.describe());
  }
  if (p.empty()) throw std::invalid_argument("witness packing is empty");
  return {static_cast<std::int64_t>(p.size()), p.total(), sqpack::digest(p)};
}

Ledger::Ledger(std::int64_t max_n, RuleSet rules, PropagationParams params)
    : max_n_(max_n),
      rules_(rules),
      params_(std::move(params)),
      entries_(static_cast<std::size_t>(std::max<std::int64_t>(max_n, 0))) {
  if (max_n < 1) throw std::invalid_argument("ledger needs max_n >= 1");
}

bool Ledger::has_lower(std::int64_t n) const {
  return n >= 1 && n <= max_n_ && entries_[static_cast<std::size_t>(n - 1)].has_value();
}

const LowerBound& Ledger::lower(std::int64_t n) const {
  if (!has_lower(n)) throw std::out_of_range("no lower bound recorded for n = " + std::to_string(n));
  return *entries_[static_cast<std::size_t>(n - 1)];
}

UpperBound Ledger::upper(std::int64_t n) const {
  if (n < 1 || n > max_n_) throw std::out_of_range("n outside ledger range");
  return UpperBound(n);
}

bool Ledger::offer(LowerBound candidate) {
  if (candidate.n < 1 || candidate.n > max_n_) return false;
  auto& slot = entries_[static_cast<std::size_t>(candidate.n - 1)];
  if (slot && !better(candidate, *slot)) return false;
  slot = std::move(candidate);
  return true;
}

std::vector<std::string> Ledger::trace(std::int64_t n) const {
  std::vector<std::string> lines;
  struct Frame {
    std::int64_t n;
    int depth;
  };
  std::vector<Frame> stack{{n, 0}};
  while (!stack.empty()) {
    const Frame f = stack.back();
    stack.pop_back();
    const LowerBound& lb = lower(f.n);
    lines.push_back(std::string(static_cast<std::size_t>(2 * f.depth), ' ') + "LB(" +
                    std::to_string(f.n) + ") >= " + lb.value.str() + " by " +
                    lb.derivation.tag());
    const auto& args = lb.derivation.args;
    switch (lb.derivation.kind) {
      case RuleKind::kMonotone:
        stack.push_back({args[0], f.depth + 1});
        break;
      case RuleKind::kCombine:
        stack.push_back({args[4], f.depth + 1});
        stack.push_back({args[3], f.depth + 1});
        break;
      default:
        break;
    }
  }
  return lines;
}

UpperBound ub_cauchy_schwarz(std::int64_t n) { return UpperBound(n); }

std::optional<std::int64_t> exact_sqrt(std::int64_t n) {
  if (n < 0) return std::nullopt;
  auto r = static_cast<std::int64_t>(std::sqrt(static_cast<double>(n)));
  while (r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  if (r * r != n) return std::nullopt;
  return r;
}

LowerBound lb_grid(std::int64_t n) {
  const auto m = exact_sqrt(n);
  if (n < 1 || !m) {
    throw std::invalid_argument("grid bound needs a positive perfect square, got " +
                                std::to_string(n));
  }
  return {n, Rational(*m), {RuleKind::kGrid, {*m}, {}, 1}};
}

LowerBound lb_halasz(std::int64_t k, std::int64_t c) {
  if (k < 1) throw std::invalid_argument("Halasz bound needs k >= 1");
  if (c < 1) throw std::invalid_argument("Halasz bound needs c >= 1");
  if (c > k) {
    throw std::invalid_argument("Halasz bound needs c <= k; k + c/k would exceed sqrt(n)");
  }
  return {k * k + 2 * c + 1, Rational(k) + Rational(c, k), {RuleKind::kHalasz, {k, c}, {}, 1}};
}

LowerBound lb_monotone(const Ledger& ledger, std::int64_t n) {
  if (n < 2) throw std::invalid_argument("monotone rule needs n >= 2");
  const LowerBound& prev = ledger.lower(n - 1);
  return {n, prev.value,
          {RuleKind::kMonotone, {n - 1}, {}, saturating_add(1, prev.derivation.trace_size)}};
}

LowerBound lb_combine(const Ledger& ledger, std::int64_t a1, std::int64_t a2, std::int64_t b,
                      std::int64_t n1, std::int64_t n2) {
  const LowerBound& first = ledger.lower(n1);
  const LowerBound& second = ledger.lower(n2);
  const LemmaImage image = lemma_rhs(n1, first.value, n2, second.value, a1, a2, b);
  const std::uint64_t size = saturating_add(
      1, saturating_add(first.derivation.trace_size, second.derivation.trace_size));
  return {image.count, image.total, {RuleKind::kCombine, {a1, a2, b, n1, n2}, {}, size}};
}

LowerBound lb_witness(const Witness& w) {
  if (w.n < 1 || w.total.sign() <= 0) throw std::invalid_argument("witness must be nonempty");
  return {w.n, w.total, {RuleKind::kWitness, {}, w.digest, 1}};
}

namespace {

class Closure {
 public:
  explicit Closure(Ledger& ledger)
      : ledger_(ledger),
        approx_(static_cast<std::size_t>(ledger.max_n() + 1), 0.0),
        small_(static_cast<std::size_t>(ledger.max_n() + 1)) {
    for (std::int64_t n = 1; n <= ledger.max_n(); ++n) refresh(n);
  }

  bool offer(LowerBound candidate) {
    const std::int64_t n = candidate.n;
    if (!ledger_.offer(std::move(candidate))) return false;
    refresh(n);
    return true;
  }

  void seed() {
    const RuleSet& rules = ledger_.rules();
    const std::int64_t max_n = ledger_.max_n();
    if (rules.grid) {
      for (std::int64_t m = 1; m * m <= max_n; ++m) offer(lb_grid(m * m));
    }
    if (rules.halasz) {
      for (std::int64_t k = 1; k * k + 3 <= max_n; ++k) {
        for (std::int64_t c = 1; c <= k && k * k + 2 * c + 1 <= max_n; ++c) {
          offer(lb_halasz(k, c));
        }
      }
    }
    for (const Witness& w : ledger_.params().witnesses) {
      if (w.n <= max_n) offer(lb_witness(w));
    }
  }

  void run() {
    const RuleSet& rules = ledger_.rules();
    bool changed = true;
    while (changed) {
      changed = false;
      if (rules.monotone) changed |= monotone_pass();
      if (rules.combine) changed |= combine_pass();
    }
  }

 private:
  // Exact value as p/q when both fit comfortably in 128-bit products.
  struct SmallValue {
    bool ok = false;
    std::int64_t p = 0;
    std::int64_t q = 1;
    std::uint64_t trace_size = 0;
  };

  void refresh(std::int64_t n) {
    const auto i = static_cast<std::size_t>(n);
    small_[i] = {};
    if (!ledger_.has_lower(n)) {
      approx_[i] = -1.0;
      return;
    }
    const LowerBound& lb = ledger_.lower(n);
    approx_[i] = lb.value.to_double();
    const BigInt num = lb.value.numerator();
    const BigInt den = lb.value.denominator();
    constexpr long kLimit = 1L << 31;
    if (abs(num) < kLimit * 64 && den < kLimit) {
      small_[i] = {true, num.get_si(), den.get_si(), lb.derivation.trace_size};
    }
  }

  // Settles a combine candidate without big-number arithmetic when it
  // provably cannot replace the current bound: strictly smaller, or equal
  // with a longer trace. Returns false when the full comparison is needed.
  bool cannot_win(std::int64_t a1, std::int64_t a2, std::int64_t b, std::int64_t rest,
                  std::int64_t n1, std::int64_t n2, std::int64_t target) const {
    const SmallValue& v1 = small_[static_cast<std::size_t>(n1)];
    const SmallValue& v2 = small_[static_cast<std::size_t>(n2)];
    const SmallValue& cur = small_[static_cast<std::size_t>(target)];
    if (!v1.ok || !v2.ok || !cur.ok) return false;
    using i128 = __int128;
    const i128 den = static_cast<i128>(b) * v1.q * v2.q;
    const i128 num = static_cast<i128>(a1) * v1.p * v2.q + static_cast<i128>(a2) * v2.p * v1.q +
                     static_cast<i128>(rest) * v1.q * v2.q;
    const i128 lhs = num * cur.q;
    const i128 rhs = static_cast<i128>(cur.p) * den;
    if (lhs < rhs) return true;
    if (lhs > rhs) return false;
    const std::uint64_t size = saturating_add(1, saturating_add(v1.trace_size, v2.trace_size));
    return size > cur.trace_size;
  }

  double approx(std::int64_t n) const { return approx_[static_cast<std::size_t>(n)]; }

  bool monotone_pass() {
    bool changed = false;
    for (std::int64_t n = 2; n <= ledger_.max_n(); ++n) {
      if (ledger_.has_lower(n - 1)) changed |= offer(lb_monotone(ledger_, n));
    }
    return changed;
  }

  // With the monotone rule saturated, an input n whose bound equals LB(n-1)
  // is dominated by n-1, so only strict increase points need enumerating.
  std::vector<std::int64_t> combine_inputs() const {
    std::vector<std::int64_t> out;
    for (std::int64_t n = 1; n <= ledger_.max_n(); ++n) {
      if (!ledger_.has_lower(n)) continue;
      if (ledger_.rules().monotone && ledger_.has_lower(n - 1) &&
          ledger_.lower(n).value == ledger_.lower(n - 1).value) {
        continue;
      }
      out.push_back(n);
    }
    return out;
  }

  std::pair<std::int64_t, std::int64_t> window(std::int64_t a) const {
    const std::int64_t w = ledger_.params().combine_window;
    if (w <= 0) return {1, ledger_.max_n()};
    const std::int64_t below = a - w;
    const std::int64_t lo = below >= 1 ? below * below + 1 : 1;
    return {lo, (a + w) * (a + w)};
  }

  bool combine_pass() {
    constexpr double kSlack = 1e-9;
    const std::int64_t max_n = ledger_.max_n();
    const std::vector<std::int64_t> inputs = combine_inputs();
    auto slice = [&](std::int64_t a) {
      const auto [lo, hi] = window(a);
      return std::pair{std::lower_bound(inputs.begin(), inputs.end(), lo),
                       std::upper_bound(inputs.begin(), inputs.end(), hi)};
    };

    bool changed = false;
    for (std::int64_t b = 2; b <= ledger_.params().b_cap; ++b) {
      for (std::int64_t a1 = 1; a1 < b; ++a1) {
        for (std::int64_t a2 = 1; a1 + a2 <= b; ++a2) {
          const std::int64_t rest = b * b - a1 * a1 - a2 * a2;
          if (rest + 2 > max_n) continue;
          const auto [first_begin, first_end] = slice(a1);
          const auto [second_begin, second_end] = slice(a2);
          for (auto i1 = first_begin; i1 != first_end; ++i1) {
            const std::int64_t n1 = *i1;
            if (rest + n1 + 1 > max_n) break;
            for (auto i2 = second_begin; i2 != second_end; ++i2) {
              const std::int64_t n2 = *i2;
              const std::int64_t target = rest + n1 + n2;
              if (target > max_n) break;
              const double estimate =
                  (static_cast<double>(a1) * approx(n1) + static_cast<double>(a2) * approx(n2) +
                   static_cast<double>(rest)) /
                  static_cast<double>(b);
              if (estimate < approx(target) - kSlack) continue;
              if (cannot_win(a1, a2, b, rest, n1, n2, target)) continue;
              changed |= offer(lb_combine(ledger_, a1, a2, b, n1, n2));
            }
          }
        }
      }
    }
    return changed;
  }

  Ledger& ledger_;
  std::vector<double> approx_;
  std::vector<SmallValue> small_;
};

void check_invariants(const Ledger& ledger) {
  for (std::int64_t n = 1; n <= ledger.max_n(); ++n) {
    if (!ledger.has_lower(n)) continue;
    const LowerBound& lb = ledger.lower(n);
    if (lb.value.sign() <= 0 || ledger.upper(n).compare(lb.value) < 0) {
      throw std::logic_error("lower bound " + lb.value.str() + " for n = " + std::to_string(n) +
                             " violates 0 < LB <= sqrt(n)");
    }
  }
}

}  // namespace

Ledger propagate(std::int64_t max_n, const RuleSet& rules, const PropagationParams& params) {
  Ledger ledger(max_n, rules, params);
  Closure closure(ledger);
  closure.seed();
  closure.run();
  check_invariants(ledger);
  return ledger;
}

Ledger propagate(const Ledger& seed) {
  Ledger ledger = seed;
  Closure closure(ledger);
  closure.seed();
  closure.run();
  check_invariants(ledger);
  return ledger;
}

EpsilonInterval epsilon_interval(const Ledger& ledger, std::int64_t k) {
  if (k < 1) throw std::invalid_argument("epsilon interval needs k >= 1");
  const std::int64_t n = k * k + 1;
  if (n > ledger.max_n()) {
    throw std::out_of_range("k = " + std::to_string(k) + " needs a ledger covering n = " +
                            std::to_string(n));
  }
  Rational lb;
  if (ledger.has_lower(n)) lb = max(Rational(0), ledger.lower(n).value - Rational(k));
  return {k, lb, Surd{Rational(-k), n}};
}

}  // namespace sqpack
