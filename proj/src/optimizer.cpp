#include "sqpack/optimizer.hpp"

#include <chrono>
#include <cmath>
#include <stdexcept>
#include <string>
#include <unordered_map>

#include "sqpack/simplex.hpp"

namespace sqpack {

SeparationAssignment::SeparationAssignment(std::size_t n, Separation fill)
    : n_(n), choices_(n < 2 ? 0 : n * (n - 1) / 2, fill) {}

std::size_t SeparationAssignment::index(std::size_t i, std::size_t j) const {
  if (i >= j || j >= n_) throw std::out_of_range("pair index must satisfy i < j < n");
  // Pairs ordered (0,1), (0,2), ..., (0,n-1), (1,2), ...
  return i * (2 * n_ - i - 1) / 2 + (j - i - 1);
}

std::pair<std::size_t, std::size_t> SeparationAssignment::pair_of(std::size_t pair) const {
  std::size_t i = 0;
  std::size_t row = n_ - 1;
  while (pair >= row) {
    pair -= row;
    ++i;
    --row;
  }
  return {i, i + 1 + pair};
}

namespace {

std::uint64_t splitmix64(std::uint64_t& x) {
  std::uint64_t z = (x += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

}  // namespace

Xoshiro256::Xoshiro256(std::uint64_t seed) {
  for (auto& word : state_) word = splitmix64(seed);
}

std::uint64_t Xoshiro256::next() {
  const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
  const std::uint64_t t = state_[1] << 17;
  state_[2] ^= state_[0];
  state_[3] ^= state_[1];
  state_[1] ^= state_[2];
  state_[0] ^= state_[3];
  state_[2] ^= t;
  state_[3] = rotl(state_[3], 45);
  return result;
}

std::uint64_t Xoshiro256::below(std::uint64_t bound) {
  if (bound == 0) throw std::invalid_argument("bound must be positive");
  const std::uint64_t limit = -bound % bound;  // 2^64 mod bound
  for (;;) {
    const std::uint64_t r = next();
    if (r >= limit) return r % bound;
  }
}

std::optional<Candidate> solve_assignment(std::size_t n, const SeparationAssignment& assignment,
                                          double lp_tolerance) {
  if (assignment.n() != n) throw std::invalid_argument("assignment size does not match n");
  const std::size_t vars = 3 * n;
  LpProblem lp;
  lp.cols = vars;
  lp.rows = 2 * n + assignment.pair_count();
  lp.a.assign(lp.rows * lp.cols, 0.0);
  lp.rhs.assign(lp.rows, 0.0);
  lp.objective.assign(vars, 0.0);
  auto xv = [](std::size_t i) { return 3 * i; };
  auto yv = [](std::size_t i) { return 3 * i + 1; };
  auto sv = [](std::size_t i) { return 3 * i + 2; };

  std::size_t row = 0;
  for (std::size_t i = 0; i < n; ++i) {
    lp.objective[sv(i)] = 1.0;
    lp.at(row, xv(i)) = 1.0;
    lp.at(row, sv(i)) = 1.0;
    lp.rhs[row++] = 1.0;
    lp.at(row, yv(i)) = 1.0;
    lp.at(row, sv(i)) = 1.0;
    lp.rhs[row++] = 1.0;
  }
  for (std::size_t p = 0; p < assignment.pair_count(); ++p, ++row) {
    const auto [i, j] = assignment.pair_of(p);
    // lower + side_lower - upper <= 0
    auto separate = [&](std::size_t lo_pos, std::size_t lo_side, std::size_t hi_pos) {
      lp.at(row, lo_pos) += 1.0;
      lp.at(row, lo_side) += 1.0;
      lp.at(row, hi_pos) -= 1.0;
    };
    switch (assignment.at(p)) {
      case Separation::kLeftOf: separate(xv(i), sv(i), xv(j)); break;
      case Separation::kRightOf: separate(xv(j), sv(j), xv(i)); break;
      case Separation::kBelow: separate(yv(i), sv(i), yv(j)); break;
      case Separation::kAbove: separate(yv(j), sv(j), yv(i)); break;
    }
  }

  const LpResult result = maximize(lp, lp_tolerance);
  if (result.status != LpStatus::kOptimal) return std::nullopt;

  Candidate c;
  c.assignment = assignment;
  c.squares.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    c.squares[i] = {result.solution[xv(i)], result.solution[yv(i)], result.solution[sv(i)]};
    c.objective += c.squares[i].s;
  }
  return c;
}

namespace {

struct AssignmentHash {
  std::size_t operator()(const std::vector<Separation>& v) const {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (auto s : v) {
      h ^= static_cast<std::uint64_t>(s);
      h *= 0x100000001b3ULL;
    }
    return static_cast<std::size_t>(h);
  }
};

class CachedSolver {
 public:
  CachedSolver(std::size_t n, double tolerance) : n_(n), tolerance_(tolerance) {}

  // Objective of the assignment; -1 when the LP fails.
  double objective(const SeparationAssignment& a) {
    auto it = cache_.find(a.choices());
    if (it != cache_.end()) return it->second;
    ++solves_;
    const auto c = solve_assignment(n_, a, tolerance_);
    const double value = c ? c->objective : -1.0;
    cache_.emplace(a.choices(), value);
    return value;
  }

  std::uint64_t solves() const { return solves_; }

 private:
  std::size_t n_;
  double tolerance_;
  std::uint64_t solves_ = 0;
  std::unordered_map<std::vector<Separation>, double, AssignmentHash> cache_;
};

}  // namespace

SearchResult search(const SearchConfig& config) {
  if (config.n < 1) throw std::invalid_argument("search needs n >= 1");
  if (config.restarts < 1) throw std::invalid_argument("search needs restarts >= 1");
  if (config.denom_bound < 2) throw std::invalid_argument("denom_bound must be >= 2");

  const auto n = static_cast<std::size_t>(config.n);
  const double ceiling = std::sqrt(static_cast<double>(n));
  const std::size_t pairs = n * (n - 1) / 2;
  const std::uint64_t stagnation_limit = 50 * static_cast<std::uint64_t>(pairs);
  const auto start = std::chrono::steady_clock::now();
  auto out_of_time = [&] {
    const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
    return elapsed.count() > config.time_budget_seconds;
  };

  CachedSolver solver(n, config.lp_tolerance);
  SearchResult result;
  double best = -1.0;
  SeparationAssignment best_assignment(n);

  for (int restart = 0; restart < config.restarts; ++restart) {
    Xoshiro256 rng(config.seed + static_cast<std::uint64_t>(restart));
    SeparationAssignment current(n);
    for (std::size_t p = 0; p < pairs; ++p) {
      current.set_at(p, static_cast<Separation>(rng.below(4)));
    }
    double value = solver.objective(current);

    std::uint64_t stale = 0;
    while (stale < stagnation_limit && value < ceiling - config.lp_tolerance) {
      const std::size_t p = rng.below(pairs);
      const Separation old = current.at(p);
      const auto shift = 1 + rng.below(3);
      current.set_at(p, static_cast<Separation>((static_cast<std::uint64_t>(old) + shift) % 4));
      const double trial = solver.objective(current);
      if (trial > value + config.lp_tolerance) {
        value = trial;
        stale = 0;
      } else {
        ++stale;
        // Sideways moves keep the walk moving across plateaus.
        if (trial < value - config.lp_tolerance) current.set_at(p, old);
      }
      if ((stale & 0xFF) == 0 && out_of_time()) break;
    }

    result.restarts_run = restart + 1;
    if (value > best + config.lp_tolerance) {
      best = value;
      best_assignment = current;
      result.best_restart = restart;
    }
    if (best >= ceiling - config.lp_tolerance) {
      result.hit_upper_bound = true;
      break;
    }
    if (out_of_time()) {
      result.hit_time_budget = true;
      break;
    }
  }

  auto candidate = solve_assignment(n, best_assignment, config.lp_tolerance);
  if (!candidate) throw std::runtime_error("LP failed on the best assignment");
  result.best = std::move(*candidate);
  result.lp_solves = solver.solves() + 1;
  return result;
}

Packing rationalize(const Candidate& candidate, std::int64_t denom_bound) {
  if (denom_bound < 1) throw std::invalid_argument("denom_bound must be >= 1");
  const std::size_t n = candidate.squares.size();
  if (candidate.assignment.n() != n) {
    throw std::invalid_argument("candidate assignment does not match its squares");
  }
  const Rational zero(0);
  const Rational one(1);
  auto round = [&](double v) {
    return min(one, max(zero, best_rational_approximation(v, denom_bound)));
  };

  std::vector<Rational> xs(n), ys(n), sides(n);
  for (std::size_t i = 0; i < n; ++i) {
    xs[i] = round(candidate.squares[i].x);
    ys[i] = round(candidate.squares[i].y);
    sides[i] = round(candidate.squares[i].s);
  }

  // With positions fixed, every constraint reads position + side <= bound,
  // so capping each side at its tightest slack is the minimal correction.
  std::size_t trimmed = 0;
  auto cap = [&](std::size_t i, const Rational& limit) {
    if (limit < sides[i]) {
      sides[i] = limit;
      ++trimmed;
    }
  };
  for (std::size_t i = 0; i < n; ++i) {
    cap(i, one - xs[i]);
    cap(i, one - ys[i]);
  }
  for (std::size_t p = 0; p < candidate.assignment.pair_count(); ++p) {
    const auto [i, j] = candidate.assignment.pair_of(p);
    switch (candidate.assignment.at(p)) {
      case Separation::kLeftOf: cap(i, xs[j] - xs[i]); break;
      case Separation::kRightOf: cap(j, xs[i] - xs[j]); break;
      case Separation::kBelow: cap(i, ys[j] - ys[i]); break;
      case Separation::kAbove: cap(j, ys[i] - ys[j]); break;
    }
  }

  std::vector<Square> squares;
  std::size_t dropped = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (sides[i].sign() <= 0) {
      ++dropped;
      continue;
    }
    squares.emplace_back(xs[i], ys[i], sides[i]);
  }

  ProvenanceRecord record{"optimizer",
                          {{"requested_n", std::to_string(n)},
                           {"dropped", std::to_string(dropped)},
                           {"trimmed", std::to_string(trimmed)},
                           {"denom_bound", std::to_string(denom_bound)}}};
  Packing packing(std::move(squares), {std::move(record)});
  const auto report = verify(packing);
  if (!report.valid()) {
    throw std::logic_error("rationalized packing failed verification: " + report.describe());
  }
  return packing;
}

}  // namespace sqpack
