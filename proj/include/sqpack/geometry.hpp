#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "sqpack/rational.hpp"

namespace sqpack {

// Axis-aligned square with lower-left corner (x, y) and side s > 0.
// Coordinates are in unit-square space with y growing upward.
class Square {
 public:
  Square(Rational x, Rational y, Rational side);

  const Rational& x() const { return x_; }
  const Rational& y() const { return y_; }
  const Rational& side() const { return side_; }
  Rational right() const { return x_ + side_; }
  Rational top() const { return y_ + side_; }

  bool inside_unit_square() const;

  friend bool operator==(const Square&, const Square&) = default;

 private:
  Rational x_;
  Rational y_;
  Rational side_;
};

// One step of a derivation: a rule name plus ordered key/value fields.
struct ProvenanceRecord {
  std::string rule;
  std::vector<std::pair<std::string, std::string>> fields;

  friend bool operator==(const ProvenanceRecord&, const ProvenanceRecord&) = default;
};

// An ordered list of squares together with the claimed total side length.
// The claimed total equals the exact sum unless the packing was built from
// external data with an explicit claim (see `with_claimed_total`).
class Packing {
 public:
  Packing() = default;
  explicit Packing(std::vector<Square> squares,
                   std::vector<ProvenanceRecord> provenance = {});

  static Packing with_claimed_total(std::vector<Square> squares, Rational claimed_total,
                                    std::vector<ProvenanceRecord> provenance);

  const std::vector<Square>& squares() const { return squares_; }
  std::size_t size() const { return squares_.size(); }
  bool empty() const { return squares_.empty(); }
  const Rational& total() const { return total_; }
  const std::vector<ProvenanceRecord>& provenance() const { return provenance_; }

  Packing with_provenance(ProvenanceRecord record) const;

  friend bool operator==(const Packing&, const Packing&) = default;

 private:
  std::vector<Square> squares_;
  Rational total_;
  std::vector<ProvenanceRecord> provenance_;
};

struct VerificationReport {
  std::vector<std::size_t> containment_violations;
  // Overlapping index pairs (i < j), sorted lexicographically.
  std::vector<std::pair<std::size_t, std::size_t>> overlapping_pairs;
  Rational recomputed_total;
  bool total_mismatch = false;

  bool valid() const {
    return containment_violations.empty() && overlapping_pairs.empty() && !total_mismatch;
  }
  std::string describe() const;
};

// True iff the interiors are disjoint; touching boundaries count as disjoint.
bool squares_disjoint(const Square& a, const Square& b);

// Exhaustive check of containment, pairwise overlap and the stored total.
VerificationReport verify(const Packing& p);

Rational total_side(const Packing& p);

// Maps each square (x, y, s) to (f*x + dx, f*y + dy, f*s). Requires f > 0.
Packing scale_translate(const Packing& p, const Rational& factor, const Rational& dx,
                        const Rational& dy);

// Stable 64-bit FNV-1a digest of the square list, as 16 hex digits.
std::string digest(const Packing& p);

}  // namespace sqpack
