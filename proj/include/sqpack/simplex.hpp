#pragma once

#include <cstddef>
#include <vector>

namespace sqpack {

enum class LpStatus { kOptimal, kUnbounded, kIterationLimit };

struct LpResult {
  LpStatus status = LpStatus::kIterationLimit;
  double objective = 0.0;
  std::vector<double> solution;
};

// Dense row-major constraint matrix.
struct LpProblem {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> a;  // rows * cols
  std::vector<double> rhs;
  std::vector<double> objective;

  double& at(std::size_t r, std::size_t c) { return a[r * cols + c]; }
};

// Maximizes objective . x subject to A x <= rhs and x >= 0, for rhs >= 0
// (the origin is feasible, so no phase one is needed). Dantzig pricing with
// a switch to Bland's rule after a run of degenerate pivots.
LpResult maximize(const LpProblem& problem, double tolerance);

}  // namespace sqpack
