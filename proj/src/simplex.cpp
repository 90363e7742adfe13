#include "sqpack/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace sqpack {

LpResult maximize(const LpProblem& problem, double tolerance) {
  const std::size_t m = problem.rows;
  const std::size_t n = problem.cols;
  if (problem.a.size() != m * n || problem.rhs.size() != m || problem.objective.size() != n) {
    throw std::invalid_argument("inconsistent LP dimensions");
  }
  for (double b : problem.rhs) {
    if (b < 0) throw std::invalid_argument("LP right-hand side must be nonnegative");
  }

  const std::size_t width = n + m + 1;
  const std::size_t rhs_col = n + m;
  std::vector<double> t((m + 1) * width, 0.0);
  auto cell = [&](std::size_t r, std::size_t c) -> double& { return t[r * width + c]; };
  std::vector<std::size_t> basis(m);
  for (std::size_t r = 0; r < m; ++r) {
    for (std::size_t c = 0; c < n; ++c) cell(r, c) = problem.a[r * n + c];
    cell(r, n + r) = 1.0;
    cell(r, rhs_col) = problem.rhs[r];
    basis[r] = n + r;
  }
  for (std::size_t c = 0; c < n; ++c) cell(m, c) = -problem.objective[c];

  const std::size_t max_iterations = 50 * (m + n) + 1000;
  constexpr int kDegenerateRunBeforeBland = 20;
  int degenerate_run = 0;
  LpResult result;

  for (std::size_t iter = 0; iter < max_iterations; ++iter) {
    const bool bland = degenerate_run >= kDegenerateRunBeforeBland;
    std::size_t enter = width;
    double most_negative = -tolerance;
    for (std::size_t c = 0; c < rhs_col; ++c) {
      const double reduced = cell(m, c);
      if (reduced < most_negative) {
        enter = c;
        if (bland) break;
        most_negative = reduced;
      }
    }
    if (enter == width) {
      result.status = LpStatus::kOptimal;
      break;
    }

    std::size_t leave = m;
    double best_ratio = std::numeric_limits<double>::infinity();
    for (std::size_t r = 0; r < m; ++r) {
      const double coef = cell(r, enter);
      if (coef <= tolerance) continue;
      const double ratio = cell(r, rhs_col) / coef;
      if (ratio < best_ratio - tolerance ||
          (ratio <= best_ratio + tolerance && leave < m && basis[r] < basis[leave])) {
        best_ratio = std::min(best_ratio, ratio);
        leave = r;
      }
    }
    if (leave == m) {
      result.status = LpStatus::kUnbounded;
      return result;
    }
    degenerate_run = best_ratio <= tolerance ? degenerate_run + 1 : 0;

    const double pivot = cell(leave, enter);
    for (std::size_t c = 0; c < width; ++c) cell(leave, c) /= pivot;
    for (std::size_t r = 0; r <= m; ++r) {
      if (r == leave) continue;
      const double factor = cell(r, enter);
      if (factor == 0.0) continue;
      for (std::size_t c = 0; c < width; ++c) cell(r, c) -= factor * cell(leave, c);
      cell(r, enter) = 0.0;
    }
    basis[leave] = enter;
  }

  result.solution.assign(n, 0.0);
  for (std::size_t r = 0; r < m; ++r) {
    if (basis[r] < n) result.solution[basis[r]] = std::max(0.0, cell(r, rhs_col));
  }
  result.objective = 0.0;
  for (std::size_t c = 0; c < n; ++c) result.objective += problem.objective[c] * result.solution[c];
  return result;
}

}  // namespace sqpack
