#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "sqpack/geometry.hpp"

namespace sqpack {

// How a pair (i, j), i < j, is kept apart.
enum class Separation : std::uint8_t {
  kLeftOf,   // x_i + s_i <= x_j
  kRightOf,  // x_j + s_j <= x_i
  kBelow,    // y_i + s_i <= y_j
  kAbove,    // y_j + s_j <= y_i
};

// One separation per unordered pair of n squares.
class SeparationAssignment {
 public:
  explicit SeparationAssignment(std::size_t n, Separation fill = Separation::kLeftOf);

  std::size_t n() const { return n_; }
  std::size_t pair_count() const { return choices_.size(); }
  Separation get(std::size_t i, std::size_t j) const { return choices_[index(i, j)]; }
  void set(std::size_t i, std::size_t j, Separation s) { choices_[index(i, j)] = s; }
  Separation at(std::size_t pair) const { return choices_[pair]; }
  void set_at(std::size_t pair, Separation s) { choices_[pair] = s; }
  std::pair<std::size_t, std::size_t> pair_of(std::size_t pair) const;

  const std::vector<Separation>& choices() const { return choices_; }

  friend bool operator==(const SeparationAssignment&, const SeparationAssignment&) = default;

 private:
  std::size_t index(std::size_t i, std::size_t j) const;

  std::size_t n_;
  std::vector<Separation> choices_;
};

struct FloatSquare {
  double x = 0.0;
  double y = 0.0;
  double s = 0.0;
};

struct Candidate {
  std::vector<FloatSquare> squares;
  double objective = 0.0;
  SeparationAssignment assignment{0};
};

struct SearchConfig {
  int n = 1;
  int restarts = 100;
  std::uint64_t seed = 42;
  double lp_tolerance = 1e-9;
  std::int64_t denom_bound = 1000;
  double time_budget_seconds = 60.0;
};

struct SearchResult {
  Candidate best;
  int best_restart = 0;
  int restarts_run = 0;
  std::uint64_t lp_solves = 0;
  bool hit_upper_bound = false;
  bool hit_time_budget = false;
};

// xoshiro256** seeded through splitmix64.
class Xoshiro256 {
 public:
  explicit Xoshiro256(std::uint64_t seed);
  std::uint64_t next();
  // Uniform in [0, bound) by rejection.
  std::uint64_t below(std::uint64_t bound);

 private:
  std::uint64_t state_[4];
};

// LP over (x, y, s) for the fixed separation pattern, maximizing sum s.
// Returns nullopt when the LP solver fails to reach an optimum.
std::optional<Candidate> solve_assignment(std::size_t n, const SeparationAssignment& assignment,
                                          double lp_tolerance = 1e-9);

// Multi-start local search over assignments. Deterministic for a fixed
// config unless the time budget cuts it short.
SearchResult search(const SearchConfig& config);

// Rounds to rationals with denominators <= denom_bound, drops squares whose
// side rounds to zero, and trims sides so the assignment's separations and
// containment hold exactly. The result always verifies.
Packing rationalize(const Candidate& candidate, std::int64_t denom_bound);

}  // namespace sqpack
