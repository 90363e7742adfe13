#include "sqpack/geometry.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace sqpack {

Square::Square(Rational x, Rational y, Rational side)
    : x_(std::move(x)), y_(std::move(y)), side_(std::move(side)) {
  if (side_.sign() <= 0) {
    throw std::invalid_argument("square side must be positive, got " + side_.str());
  }
}

bool Square::inside_unit_square() const {
  return x_.sign() >= 0 && y_.sign() >= 0 && right() <= Rational(1) && top() <= Rational(1);
}

Packing::Packing(std::vector<Square> squares, std::vector<ProvenanceRecord> provenance)
    : squares_(std::move(squares)), provenance_(std::move(provenance)) {
  for (const auto& sq : squares_) total_ += sq.side();
}

Packing Packing::with_claimed_total(std::vector<Square> squares, Rational claimed_total,
                                    std::vector<ProvenanceRecord> provenance) {
  Packing p(std::move(squares), std::move(provenance));
  p.total_ = std::move(claimed_total);
  return p;
}

Packing Packing::with_provenance(ProvenanceRecord record) const {
  Packing p = *this;
  p.provenance_.push_back(std::move(record));
  return p;
}

std::string VerificationReport::describe() const {
  std::ostringstream os;
  if (valid()) {
    os << "valid, total = " << recomputed_total;
    return os.str();
  }
  os << "invalid";
  for (auto i : containment_violations) os << "; square " << i << " outside unit square";
  for (const auto& [i, j] : overlapping_pairs) os << "; squares " << i << " and " << j << " overlap";
  if (total_mismatch) os << "; stored total differs from recomputed " << recomputed_total;
  return os.str();
}

bool squares_disjoint(const Square& a, const Square& b) {
  return a.right() <= b.x() || b.right() <= a.x() || a.top() <= b.y() || b.top() <= a.y();
}

VerificationReport verify(const Packing& p) {
  VerificationReport report;
  const auto& squares = p.squares();
  for (std::size_t i = 0; i < squares.size(); ++i) {
    if (!squares[i].inside_unit_square()) report.containment_violations.push_back(i);
  }

  // Sweep over squares sorted by left edge; a later square can only overlap
  // an earlier one if it starts strictly before the earlier one's right edge.
  std::vector<std::size_t> order(squares.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return squares[a].x() < squares[b].x();
  });
  for (std::size_t u = 0; u < order.size(); ++u) {
    const Square& a = squares[order[u]];
    const Rational a_right = a.right();
    for (std::size_t v = u + 1; v < order.size(); ++v) {
      const Square& b = squares[order[v]];
      if (b.x() >= a_right) break;
      if (!squares_disjoint(a, b)) {
        report.overlapping_pairs.emplace_back(std::min(order[u], order[v]),
                                              std::max(order[u], order[v]));
      }
    }
  }
  std::sort(report.overlapping_pairs.begin(), report.overlapping_pairs.end());

  report.recomputed_total = total_side(p);
  report.total_mismatch = report.recomputed_total != p.total();
  return report;
}

Rational total_side(const Packing& p) {
  Rational total;
  for (const auto& sq : p.squares()) total += sq.side();
  return total;
}

Packing scale_translate(const Packing& p, const Rational& factor, const Rational& dx,
                        const Rational& dy) {
  if (factor.sign() <= 0) {
    throw std::invalid_argument("scale factor must be positive, got " + factor.str());
  }
  std::vector<Square> out;
  out.reserve(p.size());
  for (const auto& sq : p.squares()) {
    out.emplace_back(factor * sq.x() + dx, factor * sq.y() + dy, factor * sq.side());
  }
  return Packing(std::move(out), p.provenance());
}

std::string digest(const Packing& p) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto mix = [&h](const std::string& s) {
    for (unsigned char c : s) {
      h ^= c;
      h *= 0x100000001b3ULL;
    }
  };
  for (const auto& sq : p.squares()) {
    mix(sq.x().str());
    mix(",");
    mix(sq.y().str());
    mix(",");
    mix(sq.side().str());
    mix(";");
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[static_cast<std::size_t>(i)] = kHex[h & 0xF];
    h >>= 4;
  }
  return out;
}

}  // namespace sqpack
