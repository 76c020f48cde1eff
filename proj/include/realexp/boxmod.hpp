#pragma once

// Box modules k[B]: B a product of intervals with open, closed, or infinite
// ends.  Free modules R(-b), orthant ideals, and the quotient fixtures are all
// of this form.  Evaluation happens on the cells of the arrangement cut out by
// the endpoints, symbolically by endpoint position.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "realexp/exponents.hpp"

namespace realexp {

/// Bit i set ⇔ coordinate i belongs to the subset.
using CoordMask = std::uint32_t;

struct IntervalSpec {
  ExponentValue lo;
  bool lo_closed = true;
  std::optional<ExponentValue> hi;  // nullopt = +∞
  bool hi_closed = false;

  /// Rejects empty intervals (lo > hi, or lo = hi with an open end).
  static IntervalSpec make(ExponentValue lo, bool lo_closed,
                           std::optional<ExponentValue> hi, bool hi_closed);
  static IntervalSpec ray(ExponentValue lo, bool lo_closed = true) {
    return make(std::move(lo), lo_closed, std::nullopt, false);
  }
  static IntervalSpec point(ExponentValue v) { return make(v, true, v, true); }

  bool bounded() const { return hi.has_value(); }
  /// Direct membership test of a single real value.
  bool contains(const ExponentValue& x) const;
  std::string to_string() const;

  friend bool operator==(const IntervalSpec& a, const IntervalSpec& b) {
    return a.lo == b.lo && a.lo_closed == b.lo_closed && a.hi == b.hi &&
           (!a.hi || a.hi_closed == b.hi_closed);
  }
};

class BoxModule {
 public:
  BoxModule() = default;  // the 0-variable box (support = the single point)
  explicit BoxModule(std::vector<IntervalSpec> intervals)
      : intervals_(std::move(intervals)) {}

  /// R(-b): support b + R^n_+.
  static BoxModule free(const ExponentVector& corner);
  /// Orthant ideal shifted to `corner`: open lower faces on `open_mask`.
  static BoxModule orthant(const ExponentVector& corner, CoordMask open_mask);
  static BoxModule point(const ExponentVector& p);

  std::size_t dimension() const { return intervals_.size(); }
  const std::vector<IntervalSpec>& intervals() const { return intervals_; }
  const IntervalSpec& operator[](std::size_t i) const { return intervals_[i]; }

  ExponentVector lower_corner() const;
  /// Closed lower faces and no upper bounds.
  bool is_free() const;
  /// No upper bounds (an orthant ideal, possibly shifted).
  bool is_orthant() const;
  CoordMask open_lower_mask() const;
  bool contains(const ExponentVector& degree) const;
  BoxModule product(const BoxModule& other) const;
  std::string to_string() const;

  friend bool operator==(const BoxModule& a, const BoxModule& b) {
    return a.intervals_ == b.intervals_;
  }

 private:
  std::vector<IntervalSpec> intervals_;
};

/// True iff identity-on-overlap is a graded module map k[B_s] → k[B_t]:
/// the overlap is up-closed inside B_t and down-closed inside B_s.
bool can_map(const BoxModule& source, const BoxModule& target);

/// B + O_σ, where O_σ is the full orthant open on σ and closed elsewhere.
BoxModule minkowski_orthant(const BoxModule& box, CoordMask sigma);

/// Per coordinate, sorted critical values c_0 < … < c_{m-1}; coordinate i has
/// 2m+1 pieces: (−∞,c_0), {c_0}, (c_0,c_1), …, {c_{m-1}}, (c_{m-1},+∞).
/// Piece 2j+1 is the point {c_j}.  Cells are products of pieces, numbered
/// lexicographically with coordinate 0 most significant.
class CellArrangement {
 public:
  CellArrangement() = default;
  explicit CellArrangement(std::vector<std::vector<ExponentValue>> critical);

  std::size_t dimension() const { return critical_.size(); }
  const std::vector<ExponentValue>& critical(std::size_t coord) const {
    return critical_[coord];
  }
  std::size_t pieces(std::size_t coord) const { return 2 * critical_[coord].size() + 1; }
  std::size_t cell_count() const;
  std::vector<std::size_t> cell(std::size_t flat) const;
  std::size_t flat_index(const std::vector<std::size_t>& pieces) const;

  std::optional<std::size_t> position(std::size_t coord, const ExponentValue& v) const;
  /// Piece of coordinate `coord` containing v.
  std::size_t locate(std::size_t coord, const ExponentValue& v) const;
  std::size_t locate(const ExponentVector& degree) const;

  std::string piece_to_string(std::size_t coord, std::size_t piece) const;
  std::string cell_to_string(std::size_t flat) const;

  /// Adds critical values; cells of the result refine cells of this one.
  CellArrangement refined(const std::vector<std::vector<ExponentValue>>& extra) const;
  /// Cell of this arrangement containing cell `flat` of a refinement.
  std::size_t coarsen(const CellArrangement& fine, std::size_t flat) const;

  friend bool operator==(const CellArrangement& a, const CellArrangement& b) {
    return a.critical_ == b.critical_;
  }

 private:
  std::vector<std::vector<ExponentValue>> critical_;
};

/// Sorted, deduplicated endpoint lists of all boxes (plus `extra` values).
CellArrangement build_arrangement(const std::vector<BoxModule>& boxes, std::size_t n,
                                  const std::vector<std::vector<ExponentValue>>& extra = {});

/// Endpoint positions of a box relative to an arrangement.
struct BoxPlacement {
  struct Coord {
    std::size_t lo_piece;
    bool lo_closed;
    std::optional<std::size_t> hi_piece;
    bool hi_closed;
  };
  std::vector<Coord> coords;

  bool contains_piece(std::size_t coord, std::size_t piece) const;
  bool contains_cell(const std::vector<std::size_t>& pieces) const;
};

/// Throws ArrangementMismatch when an endpoint is not a critical value.
BoxPlacement place(const BoxModule& box, const CellArrangement& arrangement);

/// Dimension (0 or 1) of k[B] on a cell.
int evaluate(const BoxModule& box, const CellArrangement& arrangement, std::size_t cell);

class CanonicalMorphism {
 public:
  /// Throws IllegalMorphism unless can_map(source, target).
  CanonicalMorphism(BoxModule source, BoxModule target, Rational scalar);

  const BoxModule& source() const { return source_; }
  const BoxModule& target() const { return target_; }
  const Rational& scalar() const { return scalar_; }
  /// The scalar on cells inside both supports, 0 elsewhere.
  Rational act(const CellArrangement& arrangement, std::size_t cell) const;

 private:
  BoxModule source_;
  BoxModule target_;
  Rational scalar_;
};

struct FieldConfig {
  enum class Kind { Rationals, Prime };
  Kind kind = Kind::Rationals;
  std::uint64_t prime = 0;

  static FieldConfig rationals() { return {}; }
  /// Throws InvalidInput unless p is a prime below 2^31.
  static FieldConfig prime_field(std::uint64_t p);
  /// "Q" or "GF(p)"; parse accepts the same spellings plus "p:<prime>".
  std::string name() const;
  static FieldConfig parse(std::string_view text);

  friend bool operator==(const FieldConfig&, const FieldConfig&) = default;
};

}  // namespace realexp
