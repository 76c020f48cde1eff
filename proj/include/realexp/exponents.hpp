#pragma once

// Exact arithmetic on exponents drawn from finitely generated ordered subgroups
// of R.  A value is a rational part plus integer multiples of declared real
// constants; ordering is decided by refining certified enclosures.

#include <gmpxx.h>

#include <cstddef>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "realexp/errors.hpp"

namespace realexp {

using Integer = mpz_class;
using Rational = mpq_class;

/// Parses "3", "-7/4", "0.125", "-1.5e-3".  Throws InvalidInput.
Rational parse_rational(std::string_view text);
std::string rational_to_string(const Rational& q);

struct Enclosure {
  Rational lo;
  Rational hi;
};

inline constexpr int kDefaultPrecisionCap = 256;

/// The real constants exponents may use.  Symbols whose enclosure has zero
/// width are exact rationals and must sit in independence class 0; every
/// other symbol is treated as a ℚ-independent direction.  Known constants
/// (pi, e, sqrt2, sqrt3, ln2) refine past their declared enclosure.
class ConstantBasis {
 public:
  struct Symbol {
    std::string name;
    Rational lo;
    Rational hi;
    int independence_class = 1;
    bool exact() const { return lo == hi; }
  };

  explicit ConstantBasis(std::vector<Symbol> symbols,
                         int precision_cap = kDefaultPrecisionCap);

  /// pi and e with wide enclosures that refine on demand.
  static std::shared_ptr<const ConstantBasis> standard();

  const std::vector<Symbol>& symbols() const { return symbols_; }
  std::optional<std::size_t> find(std::string_view name) const;
  const Symbol& symbol(std::size_t index) const { return symbols_.at(index); }
  int precision_cap() const { return precision_cap_; }

  /// Enclosure of symbol `index` with width at most 10^-digits when the
  /// constant is refinable; otherwise the declared enclosure.
  Enclosure enclosure(std::size_t index, int digits) const;

 private:
  std::vector<Symbol> symbols_;
  int precision_cap_;
  mutable std::mutex cache_mutex_;
  mutable std::map<std::pair<std::size_t, int>, Enclosure> cache_;
};

using BasisPtr = std::shared_ptr<const ConstantBasis>;

/// Rational part + Σ coeff·symbol.  Symbolic coefficients are integers and are
/// stored sorted by symbol index with zeros removed, so equality is
/// coefficientwise.
class ExponentValue {
 public:
  using Term = std::pair<std::size_t, Integer>;

  ExponentValue() = default;
  ExponentValue(const Rational& q) : rational_(q) { rational_.canonicalize(); }
  ExponentValue(long v) : rational_(v) {}
  ExponentValue(int v) : rational_(v) {}

  static ExponentValue symbol(BasisPtr basis, std::string_view name,
                              const Integer& coeff = 1);
  static ExponentValue from_terms(BasisPtr basis, Rational rational,
                                  std::vector<Term> terms);

  const Rational& rational_part() const { return rational_; }
  const std::vector<Term>& symbolic_part() const { return terms_; }
  const BasisPtr& basis() const { return basis_; }
  bool is_rational() const { return terms_.empty(); }
  bool is_zero() const { return terms_.empty() && rational_ == 0; }

  ExponentValue operator-() const;
  ExponentValue& operator+=(const ExponentValue& other);
  ExponentValue& operator-=(const ExponentValue& other);
  friend ExponentValue operator+(ExponentValue a, const ExponentValue& b) {
    return a += b;
  }
  friend ExponentValue operator-(ExponentValue a, const ExponentValue& b) {
    return a -= b;
  }
  ExponentValue scaled(const Integer& k) const;
  /// Throws InvalidInput if a symbolic coefficient would become non-integral.
  ExponentValue scaled(const Rational& k) const;

  Enclosure enclose(int digits) const;
  std::string to_string() const;

  friend bool operator==(const ExponentValue& a, const ExponentValue& b);
  friend bool operator!=(const ExponentValue& a, const ExponentValue& b) {
    return !(a == b);
  }

 private:
  Rational rational_{0};
  std::vector<Term> terms_;
  BasisPtr basis_;
};

enum class Ordering { Less, Equal, Greater };

/// Equal iff coefficients agree; otherwise refines enclosures of a−b,
/// doubling the digit count up to the basis precision cap.
Ordering compare(const ExponentValue& a, const ExponentValue& b);
int sign(const ExponentValue& v);
inline bool less(const ExponentValue& a, const ExponentValue& b) {
  return compare(a, b) == Ordering::Less;
}
inline bool less_equal(const ExponentValue& a, const ExponentValue& b) {
  return compare(a, b) != Ordering::Greater;
}
const char* ordering_name(Ordering o);

/// A rational strictly between a < b (used for sampling degrees).
Rational rational_between(const ExponentValue& a, const ExponentValue& b);

/// Parses "2", "1/3", "pi", "2+e", "pi-3", "3*e-8", "-2pi+7".  Symbol names
/// resolve against `basis` (the standard basis when null).
ExponentValue parse_exponent(std::string_view text, BasisPtr basis = nullptr);

class ExponentVector {
 public:
  ExponentVector() = default;
  explicit ExponentVector(std::vector<ExponentValue> entries)
      : entries_(std::move(entries)) {}
  ExponentVector(std::initializer_list<ExponentValue> entries)
      : entries_(entries) {}
  static ExponentVector zero(std::size_t n) {
    return ExponentVector(std::vector<ExponentValue>(n));
  }
  /// Value `v` in coordinate `axis`, zero elsewhere.
  static ExponentVector axis(std::size_t n, std::size_t axis,
                             const ExponentValue& v);

  std::size_t size() const { return entries_.size(); }
  const ExponentValue& operator[](std::size_t i) const { return entries_[i]; }
  ExponentValue& operator[](std::size_t i) { return entries_[i]; }
  const std::vector<ExponentValue>& entries() const { return entries_; }
  auto begin() const { return entries_.begin(); }
  auto end() const { return entries_.end(); }

  ExponentVector& operator+=(const ExponentVector& other);
  ExponentVector& operator-=(const ExponentVector& other);
  friend ExponentVector operator+(ExponentVector a, const ExponentVector& b) {
    return a += b;
  }
  friend ExponentVector operator-(ExponentVector a, const ExponentVector& b) {
    return a -= b;
  }
  ExponentVector operator-() const;
  ExponentVector scaled(const Rational& k) const;
  /// Keeps coordinates whose bit is set in `mask`, zeroes the rest.
  ExponentVector restricted(unsigned mask) const;

  std::string to_string() const;

  friend bool operator==(const ExponentVector& a, const ExponentVector& b) {
    return a.entries_ == b.entries_;
  }

 private:
  std::vector<ExponentValue> entries_;
};

/// Coordinatewise a ≤ b.
bool leq(const ExponentVector& a, const ExponentVector& b);
bool is_nonnegative(const ExponentVector& v);
bool is_strictly_positive(const ExponentVector& v);
/// Coordinatewise minimum.
ExponentVector meet(const ExponentVector& a, const ExponentVector& b);

/// Subgroup of R^n generated over ℤ by finitely many vectors.
struct ExponentGroup {
  std::size_t n = 0;
  std::vector<ExponentVector> generators;
  BasisPtr basis;

  /// (1/d)ℤ^n.
  static ExponentGroup rational_lattice(std::size_t n, const Integer& d);
};

struct Membership {
  bool member = false;
  std::vector<Integer> witness;  // integer coefficients on the generators
};

Membership is_member(const ExponentVector& v, const ExponentGroup& g);

/// ℤ-basis (in Hermite normal form, positive pivots) of the values t with
/// t·e_axis ∈ G.  Empty when the intersection is trivial.
std::vector<ExponentValue> ray_intersection(const ExponentGroup& g,
                                            std::size_t axis);

/// v ∈ G₊ whose projections to every coordinate ray are strictly positive
/// and lie in G.  Throws NotInGroup when v ∉ G₊.
bool in_open_cone(const ExponentVector& v, const ExponentGroup& g);

/// Projection of v to ray `axis` lies in G.
bool ray_projection_in_group(const ExponentVector& v, std::size_t axis,
                             const ExponentGroup& g);

}  // namespace realexp
