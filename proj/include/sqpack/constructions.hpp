#pragma once

#include <cstdint>

#include "sqpack/geometry.hpp"
#include "sqpack/rational.hpp"

namespace sqpack {

// b*b squares of side 1/b tiling the unit square, emitted row by row from
// the bottom: cell (i, j) sits at (i/b, j/b). Throws if b < 1.
Packing grid(std::int64_t b);

struct LemmaImage {
  std::int64_t count;
  Rational total;

  friend bool operator==(const LemmaImage&, const LemmaImage&) = default;
};

// Count and total of the subgrid-substitution construction: two packings with
// n1, n2 squares and totals t1, t2 placed into a1- and a2-subgrids of the
// b-grid. count = b^2 - a1^2 - a2^2 + n1 + n2,
// total = (a1*t1 + a2*t2 + b^2 - a1^2 - a2^2) / b.
// Requires a1, a2 >= 1 and a1 + a2 <= b.
LemmaImage lemma_rhs(std::int64_t n1, const Rational& t1, std::int64_t n2, const Rational& t2,
                     std::int64_t a1, std::int64_t a2, std::int64_t b);

// Builds the subgrid substitution. p1 is scaled by a1/b into the top-left
// block (columns [0, a1), rows [b-a1, b)), p2 by a2/b into the bottom-right
// block (columns [b-a2, b), rows [0, a2)); every other cell of the b-grid
// holds one 1/b square, emitted row by row. Both inputs must verify.
Packing combine(const Packing& p1, const Packing& p2, std::int64_t a1, std::int64_t a2,
                std::int64_t b);

}  // namespace sqpack
