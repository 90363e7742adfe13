#include <map>
#include <stdexcept>

#include <doctest.h>

#include "sqpack/bounds.hpp"
#include "sqpack/constructions.hpp"

using namespace sqpack;

namespace {

Packing three_halves() {
  const Rational h(1, 2);
  return Packing({Square(0, 0, h), Square(h, 0, h), Square(0, h, h)});
}

// Eight cells of the 3-grid: total 8/3.
Packing grid3_minus_one() {
  auto squares = grid(3).squares();
  squares.pop_back();
  return Packing(squares);
}

// Value-only closure of the same rules, enumerating every input pair with no
// pruning, windows or tie-breaking.
std::map<std::int64_t, Rational> closure_oracle(std::int64_t max_n, std::int64_t b_cap,
                                                const std::vector<Witness>& witnesses) {
  std::map<std::int64_t, Rational> lb;
  auto raise = [&](std::int64_t n, const Rational& v) {
    if (n < 1 || n > max_n) return false;
    auto it = lb.find(n);
    if (it == lb.end()) {
      lb.emplace(n, v);
      return true;
    }
    if (v > it->second) {
      it->second = v;
      return true;
    }
    return false;
  };
  for (std::int64_t m = 1; m * m <= max_n; ++m) raise(m * m, Rational(m));
  for (std::int64_t k = 1; k <= max_n; ++k) {
    for (std::int64_t c = 1; c <= k; ++c) raise(k * k + 2 * c + 1, Rational(k) + Rational(c, k));
  }
  for (const auto& w : witnesses) raise(w.n, w.total);
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::int64_t n = 2; n <= max_n; ++n) {
      if (lb.count(n - 1)) changed |= raise(n, lb.at(n - 1));
    }
    for (std::int64_t b = 2; b <= b_cap; ++b) {
      for (std::int64_t a1 = 1; a1 < b; ++a1) {
        for (std::int64_t a2 = 1; a1 + a2 <= b; ++a2) {
          for (const auto& [n1, v1] : lb) {
            for (const auto& [n2, v2] : lb) {
              const std::int64_t target = b * b - a1 * a1 - a2 * a2 + n1 + n2;
              if (target > max_n) continue;
              changed |= raise(target, (Rational(a1) * v1 + Rational(a2) * v2 +
                                        Rational(b * b - a1 * a1 - a2 * a2)) /
                                           Rational(b));
            }
          }
        }
      }
    }
  }
  return lb;
}

}  // namespace

TEST_SUITE("bounds") {
  TEST_CASE("ub_cauchy_schwarz compares by squaring") {
    CHECK(ub_cauchy_schwarz(9).equals(Rational(3)));
    CHECK(ub_cauchy_schwarz(1).equals(Rational(1)));
    const UpperBound two = ub_cauchy_schwarz(2);
    CHECK(two.compare(Rational(1)) > 0);
    CHECK(two.compare(Rational(3, 2)) < 0);
    CHECK(two.compare(Rational(-5)) > 0);
    CHECK_THROWS(ub_cauchy_schwarz(0));
  }

  TEST_CASE("lb_grid") {
    CHECK(lb_grid(16).value == Rational(4));
    CHECK(lb_grid(1).value == Rational(1));
    CHECK(lb_grid(2500).value == Rational(50));
    CHECK(lb_grid(16).derivation.tag() == "Grid");
    CHECK_THROWS_AS(lb_grid(15), std::invalid_argument);
    CHECK_THROWS_AS(lb_grid(0), std::invalid_argument);
  }

  TEST_CASE("lb_halasz") {
    const LowerBound seven = lb_halasz(2, 1);
    CHECK(seven.n == 7);
    CHECK(seven.value == Rational(5, 2));
    CHECK(seven.derivation.tag() == "Halasz(2,1)");
    CHECK(lb_halasz(1, 1).n == 4);
    CHECK(lb_halasz(1, 1).value == Rational(2));
    CHECK(lb_halasz(3, 2).n == 14);
    CHECK(lb_halasz(3, 2).value == Rational(11, 3));
    CHECK_THROWS_AS(lb_halasz(3, 0), std::invalid_argument);
    CHECK_THROWS_AS(lb_halasz(2, 3), std::invalid_argument);
    CHECK_THROWS_AS(lb_halasz(0, 1), std::invalid_argument);
  }

  TEST_CASE("lb_halasz stays under sqrt(n) for every admissible c") {
    for (std::int64_t k = 1; k <= 60; ++k) {
      for (std::int64_t c = 1; c <= k; ++c) {
        const LowerBound lb = lb_halasz(k, c);
        CHECK(lb.value.square() <= Rational(lb.n));
      }
    }
  }

  TEST_CASE("lb_monotone") {
    const Ledger ledger = propagate(10);
    CHECK(lb_monotone(ledger, 5).value == Rational(2));
    CHECK(lb_monotone(ledger, 10).value == Rational(3));
    CHECK(lb_monotone(ledger, 8).value == Rational(5, 2));
    CHECK(lb_monotone(ledger, 8).derivation.tag() == "Monotone");
    CHECK_THROWS_AS(lb_monotone(ledger, 1), std::invalid_argument);
  }

  TEST_CASE("lb_combine") {
    const Ledger ledger = propagate(20);
    const LowerBound weak = lb_combine(ledger, 1, 1, 2, 7, 7);
    CHECK(weak.n == 16);
    CHECK(weak.value == Rational(7, 2));
    CHECK(ledger.lower(16).value == Rational(4));

    const LowerBound nine = lb_combine(ledger, 2, 1, 3, 4, 1);
    CHECK(nine.n == 9);
    CHECK(nine.value == Rational(3));
    CHECK(nine.derivation.tag() == "Combine(2,1,3,4,1)");

    CHECK_THROWS_AS(lb_combine(ledger, 2, 2, 3, 1, 1), std::invalid_argument);
  }

  TEST_CASE("propagate small ledgers") {
    const Ledger nine = propagate(9);
    CHECK(nine.lower(1).value == Rational(1));
    CHECK(nine.lower(4).value == Rational(2));
    CHECK(nine.lower(9).value == Rational(3));
    CHECK(nine.lower(7).value == Rational(5, 2));
    CHECK(nine.lower(3).value == Rational(1));
    CHECK(nine.lower(9).derivation.tag() == "Grid");
    CHECK(nine.lower(7).derivation.tag() == "Halasz(2,1)");

    const Ledger one = propagate(1);
    CHECK(one.lower(1).value == Rational(1));
    CHECK(one.upper(1).equals(one.lower(1).value));
  }

  TEST_CASE("witnesses enter the ledger and feed the combine rule") {
    PropagationParams params;
    params.witnesses.push_back(Witness::from_packing(three_halves()));
    const Ledger ledger = propagate(40, {}, params);
    CHECK(ledger.lower(3).value == Rational(3, 2));
    CHECK(ledger.lower(3).derivation.kind == RuleKind::kWitness);
    // Top-left 2-block holding three squares: f(b^2 - 1) >= b - 1/b.
    CHECK(ledger.lower(8).value == Rational(8, 3));
    CHECK(ledger.lower(8).derivation.kind == RuleKind::kCombine);
    CHECK(ledger.lower(15).value == Rational(15, 4));

    const Ledger rules_only = propagate(40);
    CHECK(rules_only.lower(8).value == Rational(5, 2));
  }

  TEST_CASE("propagate matches an unpruned closure oracle") {
    const std::vector<std::vector<Witness>> witness_sets = {
        {}, {Witness::from_packing(three_halves())}, {Witness::from_packing(grid3_minus_one())}};
    for (const auto& witnesses : witness_sets) {
      const auto oracle = closure_oracle(30, 8, witnesses);
      for (std::int64_t window : {0, 1, 2}) {
        PropagationParams params;
        params.b_cap = 8;
        params.combine_window = window;
        params.witnesses = witnesses;
        const Ledger ledger = propagate(30, {}, params);
        for (const auto& [n, value] : oracle) {
          CAPTURE(n);
          CAPTURE(window);
          // A one-wide window only ever loses bounds; two-wide loses none this small.
          if (window == 1) {
            CHECK(ledger.lower(n).value <= value);
          } else {
            CHECK(ledger.lower(n).value == value);
          }
        }
      }
    }
  }

  TEST_CASE("ledger invariants") {
    PropagationParams params;
    params.witnesses.push_back(Witness::from_packing(three_halves()));
    for (const Ledger& ledger : {propagate(300), propagate(300, {}, params)}) {
      for (std::int64_t n = 1; n <= ledger.max_n(); ++n) {
        const Rational& v = ledger.lower(n).value;
        CHECK(v.sign() > 0);
        CHECK(v.square() <= Rational(n));
        CHECK(ledger.upper(n).compare(v) >= 0);
        if (n > 1) CHECK(ledger.lower(n - 1).value <= v);
        if (const auto m = exact_sqrt(n)) {
          CHECK(v == Rational(*m));
          CHECK(ledger.upper(n).equals(v));
        }
      }
      CHECK(propagate(ledger) == ledger);
    }
  }

  TEST_CASE("derivation traces replay to the recorded value") {
    const Ledger ledger = propagate(60);
    for (std::int64_t n = 1; n <= 60; ++n) {
      const LowerBound& lb = ledger.lower(n);
      const auto& args = lb.derivation.args;
      switch (lb.derivation.kind) {
        case RuleKind::kGrid: CHECK(lb == lb_grid(n)); break;
        case RuleKind::kHalasz: CHECK(lb.value == lb_halasz(args[0], args[1]).value); break;
        case RuleKind::kMonotone: CHECK(lb.value == ledger.lower(n - 1).value); break;
        case RuleKind::kCombine:
          CHECK(lb.value == lb_combine(ledger, args[0], args[1], args[2], args[3], args[4]).value);
          break;
        case RuleKind::kWitness: FAIL("no witnesses loaded"); break;
      }
      CHECK_FALSE(ledger.trace(n).empty());
    }
    CHECK(ledger.trace(8).size() == 2);
  }

  TEST_CASE("rule switches") {
    RuleSet no_halasz;
    no_halasz.halasz = false;
    const Ledger ledger = propagate(20, no_halasz);
    for (std::int64_t n = 1; n <= 20; ++n) CHECK(ledger.lower(n).derivation.kind != RuleKind::kHalasz);
    // Two 1-blocks in the 2-grid, one holding the 2-grid itself.
    CHECK(ledger.lower(7).value == Rational(5, 2));
    CHECK(ledger.lower(7).derivation.kind == RuleKind::kCombine);

    RuleSet no_combine;
    no_combine.combine = false;
    CHECK(propagate(20, no_combine).lower(6).value == Rational(2));
    CHECK(propagate(20).lower(6).value == Rational(7, 3));

    RuleSet grid_only;
    grid_only.halasz = grid_only.monotone = grid_only.combine = false;
    const Ledger sparse = propagate(10, grid_only);
    CHECK_FALSE(sparse.has_lower(2));
    CHECK(sparse.lower(9).value == Rational(3));
    CHECK_THROWS_AS(sparse.lower(2), std::out_of_range);
  }

  TEST_CASE("epsilon_interval") {
    const Ledger ledger = propagate(26);
    const EpsilonInterval e1 = epsilon_interval(ledger, 1);
    CHECK(e1.lb == Rational(0));
    CHECK(e1.str() == "[0, sqrt(2)-1]");
    const EpsilonInterval e3 = epsilon_interval(ledger, 3);
    CHECK(e3.str() == "[0, sqrt(10)-3]");
    for (std::int64_t k = 1; k <= 5; ++k) {
      const EpsilonInterval e = epsilon_interval(ledger, k);
      CHECK(e.lb == Rational(0));
      CHECK(e.lb_within_ub());
      CHECK(e.ub_below_half_reciprocal());
    }
    CHECK_THROWS_AS(epsilon_interval(ledger, 6), std::out_of_range);
    CHECK_THROWS_AS(epsilon_interval(ledger, 0), std::invalid_argument);
  }

  TEST_CASE("surd comparisons") {
    const Surd s{Rational(-1), 2};  // sqrt(2) - 1 ~ 0.41421
    CHECK(s.compare(Rational(2, 5)) > 0);
    CHECK(s.compare(Rational(1, 2)) < 0);
    CHECK(s.compare(Rational(-3)) > 0);
    CHECK(Surd{Rational(-3), 9}.compare(Rational(0)) == 0);
    CHECK(Surd{Rational(1, 2), 7}.str() == "sqrt(7)+1/2");
  }
}
