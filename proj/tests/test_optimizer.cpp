#include <array>
#include <cmath>
#include <random>
#include <set>
#include <stdexcept>
#include <vector>

#include <doctest.h>

#include "sqpack/constructions.hpp"
#include "sqpack/optimizer.hpp"

using namespace sqpack;

namespace {

constexpr double kTol = 1e-6;

// Dense constraint rows a.v <= b over v = (x_0, y_0, s_0, x_1, ...), plus v >= 0.
struct Inequalities {
  std::vector<std::vector<double>> a;
  std::vector<double> b;
};

Inequalities build(std::size_t n, const SeparationAssignment& sep) {
  Inequalities ineq;
  const std::size_t vars = 3 * n;
  auto row = [&] { return std::vector<double>(vars, 0.0); };
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t axis = 0; axis < 2; ++axis) {
      auto r = row();
      r[3 * i + axis] = 1.0;
      r[3 * i + 2] = 1.0;
      ineq.a.push_back(r);
      ineq.b.push_back(1.0);
    }
  }
  for (std::size_t p = 0; p < sep.pair_count(); ++p) {
    const auto [i, j] = sep.pair_of(p);
    auto r = row();
    switch (sep.at(p)) {
      case Separation::kLeftOf: r[3 * i] = 1; r[3 * i + 2] = 1; r[3 * j] = -1; break;
      case Separation::kRightOf: r[3 * j] = 1; r[3 * j + 2] = 1; r[3 * i] = -1; break;
      case Separation::kBelow: r[3 * i + 1] = 1; r[3 * i + 2] = 1; r[3 * j + 1] = -1; break;
      case Separation::kAbove: r[3 * j + 1] = 1; r[3 * j + 2] = 1; r[3 * i + 1] = -1; break;
    }
    ineq.a.push_back(r);
    ineq.b.push_back(0.0);
  }
  for (std::size_t v = 0; v < vars; ++v) {
    auto r = row();
    r[v] = -1.0;
    ineq.a.push_back(r);
    ineq.b.push_back(0.0);
  }
  return ineq;
}

// Solves the square system picked by `rows`; false when singular.
bool solve_square(const Inequalities& ineq, const std::vector<std::size_t>& rows, std::vector<double>& out) {
  const std::size_t m = rows.size();
  std::vector<std::vector<double>> aug(m, std::vector<double>(m + 1));
  for (std::size_t r = 0; r < m; ++r) {
    for (std::size_t c = 0; c < m; ++c) aug[r][c] = ineq.a[rows[r]][c];
    aug[r][m] = ineq.b[rows[r]];
  }
  for (std::size_t c = 0; c < m; ++c) {
    std::size_t piv = c;
    for (std::size_t r = c + 1; r < m; ++r) {
      if (std::fabs(aug[r][c]) > std::fabs(aug[piv][c])) piv = r;
    }
    if (std::fabs(aug[piv][c]) < 1e-12) return false;
    std::swap(aug[c], aug[piv]);
    for (std::size_t r = 0; r < m; ++r) {
      if (r == c) continue;
      const double f = aug[r][c] / aug[c][c];
      for (std::size_t k = c; k <= m; ++k) aug[r][k] -= f * aug[c][k];
    }
  }
  out.assign(m, 0.0);
  for (std::size_t r = 0; r < m; ++r) out[r] = aug[r][m] / aug[r][r];
  return true;
}

// Vertex enumeration: the LP optimum is attained at a basic feasible point.
double vertex_oracle(std::size_t n, const SeparationAssignment& sep) {
  const Inequalities ineq = build(n, sep);
  const std::size_t vars = 3 * n;
  const std::size_t total = ineq.a.size();
  double best = -1.0;
  std::vector<std::size_t> pick(vars);
  for (std::size_t i = 0; i < vars; ++i) pick[i] = i;
  std::vector<double> v;
  while (true) {
    if (solve_square(ineq, pick, v)) {
      bool feasible = true;
      for (std::size_t r = 0; r < total && feasible; ++r) {
        double lhs = 0.0;
        for (std::size_t c = 0; c < vars; ++c) lhs += ineq.a[r][c] * v[c];
        feasible = lhs <= ineq.b[r] + 1e-9;
      }
      if (feasible) {
        double obj = 0.0;
        for (std::size_t i = 0; i < n; ++i) obj += v[3 * i + 2];
        best = std::max(best, obj);
      }
    }
    // Next combination.
    std::size_t k = vars;
    while (k > 0 && pick[k - 1] == total - vars + k - 1) --k;
    if (k == 0) break;
    ++pick[k - 1];
    for (std::size_t i = k; i < vars; ++i) pick[i] = pick[i - 1] + 1;
  }
  return best;
}

SeparationAssignment grid2_assignment() {
  // Cells 0 (0,0), 1 (1,0), 2 (0,1), 3 (1,1).
  SeparationAssignment a(4);
  a.set(0, 1, Separation::kLeftOf);
  a.set(0, 2, Separation::kBelow);
  a.set(0, 3, Separation::kLeftOf);
  a.set(1, 2, Separation::kRightOf);
  a.set(1, 3, Separation::kBelow);
  a.set(2, 3, Separation::kLeftOf);
  return a;
}

Candidate float_grid(std::int64_t b) {
  Candidate c;
  c.assignment = SeparationAssignment(static_cast<std::size_t>(b * b));
  for (std::int64_t j = 0; j < b; ++j) {
    for (std::int64_t i = 0; i < b; ++i) {
      c.squares.push_back({static_cast<double>(i) / b, static_cast<double>(j) / b, 1.0 / b});
    }
  }
  for (std::size_t p = 0; p < c.assignment.pair_count(); ++p) {
    const auto [u, w] = c.assignment.pair_of(p);
    const auto bu = static_cast<std::int64_t>(u), bw = static_cast<std::int64_t>(w);
    c.assignment.set_at(p, bu % b < bw % b ? Separation::kLeftOf
                          : bu % b > bw % b ? Separation::kRightOf
                                            : Separation::kBelow);
  }
  c.objective = static_cast<double>(b);
  return c;
}

}  // namespace

TEST_SUITE("optimizer") {
  TEST_CASE("pair indexing covers every unordered pair once") {
    for (std::size_t n = 0; n <= 9; ++n) {
      const SeparationAssignment a(n);
      CHECK(a.pair_count() == n * (n > 0 ? n - 1 : 0) / 2);
      std::set<std::pair<std::size_t, std::size_t>> seen;
      for (std::size_t p = 0; p < a.pair_count(); ++p) {
        const auto [i, j] = a.pair_of(p);
        CHECK(i < j);
        CHECK(j < n);
        seen.insert({i, j});
      }
      CHECK(seen.size() == a.pair_count());
    }
    SeparationAssignment a(4);
    a.set(1, 3, Separation::kAbove);
    CHECK(a.get(1, 3) == Separation::kAbove);
    CHECK(a.pair_of(0) == std::pair<std::size_t, std::size_t>{0, 1});
  }

  TEST_CASE("xoshiro streams are deterministic and seed dependent") {
    Xoshiro256 a(42), b(42), c(43);
    bool differs = false;
    for (int i = 0; i < 100; ++i) {
      const auto va = a.next();
      CHECK(va == b.next());
      differs |= va != c.next();
    }
    CHECK(differs);
    Xoshiro256 r(1);
    std::array<int, 4> counts{};
    for (int i = 0; i < 4000; ++i) ++counts[r.below(4)];
    for (int count : counts) CHECK(count > 800);
  }

  TEST_CASE("solve_assignment examples") {
    const auto one = solve_assignment(1, SeparationAssignment(1));
    REQUIRE(one);
    CHECK(one->objective == doctest::Approx(1.0).epsilon(kTol));

    const auto two = solve_assignment(2, SeparationAssignment(2, Separation::kLeftOf));
    REQUIRE(two);
    CHECK(two->objective == doctest::Approx(1.0).epsilon(kTol));

    const auto four = solve_assignment(4, grid2_assignment());
    REQUIRE(four);
    CHECK(four->objective == doctest::Approx(2.0).epsilon(kTol));
  }

  TEST_CASE("solve_assignment matches vertex enumeration") {
    std::mt19937_64 rng(17);
    for (std::size_t n : {2u, 3u}) {
      for (int trial = 0; trial < (n == 2 ? 16 : 12); ++trial) {
        SeparationAssignment sep(n);
        for (std::size_t p = 0; p < sep.pair_count(); ++p) {
          sep.set_at(p, static_cast<Separation>(rng() % 4));
        }
        const auto got = solve_assignment(n, sep);
        REQUIRE(got);
        CAPTURE(n);
        CAPTURE(trial);
        CHECK(std::fabs(got->objective - vertex_oracle(n, sep)) <= kTol);
      }
    }
  }

  TEST_CASE("solve_assignment solutions satisfy their constraints") {
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 40; ++trial) {
      const std::size_t n = 2 + static_cast<std::size_t>(trial % 5);
      SeparationAssignment sep(n);
      for (std::size_t p = 0; p < sep.pair_count(); ++p) sep.set_at(p, static_cast<Separation>(rng() % 4));
      const auto got = solve_assignment(n, sep);
      REQUIRE(got);
      double sum = 0.0;
      for (const auto& s : got->squares) {
        CHECK(s.x >= -kTol);
        CHECK(s.y >= -kTol);
        CHECK(s.s >= -kTol);
        CHECK(s.x + s.s <= 1 + kTol);
        CHECK(s.y + s.s <= 1 + kTol);
        sum += s.s;
      }
      CHECK(std::fabs(sum - got->objective) <= kTol);
      CHECK(got->objective <= std::sqrt(static_cast<double>(n)) + kTol);
    }
  }

  TEST_CASE("search reaches known optima for small n") {
    SearchConfig cfg;
    cfg.n = 1;
    CHECK(search(cfg).best.objective == doctest::Approx(1.0).epsilon(kTol));
    cfg.n = 3;
    CHECK(search(cfg).best.objective >= 1.5 - kTol);
    cfg.n = 4;
    const SearchResult four = search(cfg);
    CHECK(four.best.objective >= 2.0 - kTol);
    CHECK(four.hit_upper_bound);
  }

  TEST_CASE("search is deterministic for a fixed seed") {
    SearchConfig cfg;
    cfg.n = 5;
    cfg.restarts = 3;
    const SearchResult a = search(cfg);
    const SearchResult b = search(cfg);
    CHECK(a.best.objective == b.best.objective);
    CHECK(a.best.assignment == b.best.assignment);
    CHECK(a.lp_solves == b.lp_solves);
    CHECK(a.best_restart == b.best_restart);
  }

  TEST_CASE("rationalize examples") {
    const Packing g2 = rationalize(float_grid(2), 1000);
    CHECK(g2.squares() == grid(2).squares());
    CHECK(g2.total() == Rational(2));
    REQUIRE(g2.provenance().size() == 1);
    CHECK(g2.provenance()[0].rule == "optimizer");

    Candidate near_half;
    near_half.assignment = SeparationAssignment(1);
    near_half.squares = {{0.0, 0.0, 0.49999999}};
    CHECK(rationalize(near_half, 64).total() == Rational(1, 2));

    Candidate with_zero = float_grid(1);
    with_zero.squares.push_back({1.0, 0.0, 0.0});
    with_zero.assignment = SeparationAssignment(2, Separation::kLeftOf);
    // Square 1 sits on the right wall with no room, so it is dropped.
    const Packing dropped = rationalize(with_zero, 1000);
    CHECK(dropped.size() == 1);
    CHECK(dropped.total() == Rational(1));

    // Rounding pushes the left square past its neighbour; its side is trimmed.
    Candidate crowded;
    crowded.assignment = SeparationAssignment(2, Separation::kLeftOf);
    crowded.squares = {{0.0, 0.0, 0.5004}, {0.5, 0.0, 0.5}};
    const Packing trimmed = rationalize(crowded, 1000);
    CHECK(trimmed.squares()[0].side() == Rational(1, 2));
    CHECK(verify(trimmed).valid());

    CHECK_THROWS_AS(rationalize(float_grid(1), 0), std::invalid_argument);
  }

  TEST_CASE("rationalize always verifies on noisy candidates") {
    std::mt19937_64 rng(29);
    std::uniform_real_distribution<double> noise(-1e-3, 1e-3);
    for (int trial = 0; trial < 200; ++trial) {
      const std::int64_t b = 1 + trial % 4;
      Candidate c = float_grid(b);
      for (auto& s : c.squares) {
        s.x += noise(rng);
        s.y += noise(rng);
        s.s += noise(rng);
      }
      const std::int64_t denom = 1 + static_cast<std::int64_t>(rng() % 200);
      const Packing p = rationalize(c, denom);
      CHECK(verify(p).valid());
      CHECK(p.total().square() <= Rational(static_cast<std::int64_t>(p.size())));
      for (const auto& s : p.squares()) {
        CHECK(s.x().denominator() <= denom);
        CHECK(s.y().denominator() <= denom);
      }
    }
  }
}
