#include "sqpack/constructions.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace sqpack {

namespace {

void check_lemma_hypothesis(std::int64_t a1, std::int64_t a2, std::int64_t b) {
  if (a1 < 1 || a2 < 1) throw std::invalid_argument("subgrid sizes must be >= 1");
  if (a1 + a2 > b) {
    throw std::invalid_argument("subgrids do not fit: a1 + a2 = " + std::to_string(a1 + a2) +
                                " > b = " + std::to_string(b));
  }
}

}  // namespace

Packing grid(std::int64_t b) {
  if (b < 1) throw std::invalid_argument("grid size must be >= 1");
  const Rational side(1, b);
  std::vector<Square> squares;
  squares.reserve(static_cast<std::size_t>(b * b));
  for (std::int64_t j = 0; j < b; ++j) {
    for (std::int64_t i = 0; i < b; ++i) {
      squares.emplace_back(Rational(i, b), Rational(j, b), side);
    }
  }
  return Packing(std::move(squares), {{"grid", {{"b", std::to_string(b)}}}});
}

LemmaImage lemma_rhs(std::int64_t n1, const Rational& t1, std::int64_t n2, const Rational& t2,
                     std::int64_t a1, std::int64_t a2, std::int64_t b) {
  check_lemma_hypothesis(a1, a2, b);
  const std::int64_t cells_left = b * b - a1 * a1 - a2 * a2;
  return {cells_left + n1 + n2,
          (Rational(a1) * t1 + Rational(a2) * t2 + Rational(cells_left)) / Rational(b)};
}

Packing combine(const Packing& p1, const Packing& p2, std::int64_t a1, std::int64_t a2,
                std::int64_t b) {
  check_lemma_hypothesis(a1, a2, b);
  for (const Packing* p : {&p1, &p2}) {
    const auto report = verify(*p);
    if (!report.valid()) {
      throw std::invalid_argument("combine input is not a valid packing: " + report.describe());
    }
  }

  const Packing top_left = scale_translate(p1, Rational(a1, b), Rational(0), Rational(b - a1, b));
  const Packing bottom_right =
      scale_translate(p2, Rational(a2, b), Rational(b - a2, b), Rational(0));

  std::vector<Square> squares;
  squares.reserve(p1.size() + p2.size() + static_cast<std::size_t>(b * b));
  squares.insert(squares.end(), top_left.squares().begin(), top_left.squares().end());
  squares.insert(squares.end(), bottom_right.squares().begin(), bottom_right.squares().end());

  const Rational side(1, b);
  for (std::int64_t j = 0; j < b; ++j) {
    for (std::int64_t i = 0; i < b; ++i) {
      const bool in_top_left = i < a1 && j >= b - a1;
      const bool in_bottom_right = i >= b - a2 && j < a2;
      if (in_top_left || in_bottom_right) continue;
      squares.emplace_back(Rational(i, b), Rational(j, b), side);
    }
  }

  ProvenanceRecord record{"combine",
                          {{"a1", std::to_string(a1)},
                           {"a2", std::to_string(a2)},
                           {"b", std::to_string(b)},
                           {"n1", std::to_string(p1.size())},
                           {"n2", std::to_string(p2.size())},
                           {"p1", digest(p1)},
                           {"p2", digest(p2)}}};
  return Packing(std::move(squares), {std::move(record)});
}

}  // namespace sqpack
