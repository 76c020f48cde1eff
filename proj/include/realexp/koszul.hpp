#pragma once

#include <map>
#include <optional>
#include <vector>

#include "realexp/complexes.hpp"
#include "realexp/linalg.hpp"

namespace realexp {

class GroupContext;

/// Strictly decreasing e_0 > e_1 > … > e_K.  Coordinates outside σ are
/// identically zero; coordinates in σ are positive and strictly decrease.
struct TruncationSequence {
  std::vector<ExponentVector> entries;

  std::size_t depth() const { return entries.empty() ? 0 : entries.size() - 1; }
  std::size_t variables() const { return entries.empty() ? 0 : entries.front().size(); }
  /// Throws BadSequence.
  void validate(CoordMask sigma) const;

  /// e_k = base·2^-k on σ, zero elsewhere, for k = 0..K.
  static TruncationSequence geometric(const ExponentVector& base, CoordMask sigma,
                                      std::size_t K);
  /// First K+1 entries.
  TruncationSequence truncated(std::size_t K) const;
};

/// Subsets of size m in the order produced by iterated tensoring, coordinate 0
/// first: ascending when coordinate 0 is read as the most significant bit.
std::vector<CoordMask> koszul_subsets(std::size_t n, std::size_t m);

/// ε_σ: ε on σ, zero elsewhere.
ExponentVector face_vector(const ExponentVector& eps, CoordMask sigma);

/// K(x^[ε]): ⊕_{|σ|=i} R(−ε_σ) in degree i.
BoxComplex ordinary_koszul(const ExponentVector& eps, const GroupContext* group = nullptr);

/// Two-term K̊¹: R₁ ↩ 𝔪₁.
BoxComplex open_koszul_1d();
/// n-fold tensor of K̊¹: I_σ in degree |σ|.
BoxComplex open_koszul(std::size_t n);

struct TorReport {
  std::size_t n = 0;
  int degree = 0;
  long dimension = 0;
  bool differentials_vanish = false;
};

/// dim Tor_i^R(k, B_n^ε) from k ⊗ K(x^[ε]).  Throws NonzeroDifferential if an
/// induced entry survives.
TorReport tor_of_power_quotient(const ExponentVector& eps, int i);

struct OrthantResolution {
  BoxComplex complex;
  CoordMask sigma = 0;
  ExponentVector corner;
  TruncationSequence sequence;
  /// H₀ at this level: R(−(corner + e_K)).
  BoxModule h0;
  /// Colimit: orthant at `corner` open on σ.
  BoxModule limit;

  /// Cell where no σ-coordinate piece lies strictly between corner_i and
  /// corner_i + e_K,i; there H₀ agrees with `limit`.
  bool stabilized(const CellArrangement& arrangement, std::size_t cell) const;
};

/// 0 ← ⊕_{k≤K} R(−c−e_k) ← ⊕_{k<K} R(−c−e_k) ← 0, 1_k ↦ 1_k − 1_{k+1}.
OrthantResolution orthant_resolution(CoordMask sigma, const TruncationSequence& seq,
                                     const ExponentVector& corner = {},
                                     const GroupContext* group = nullptr);

struct TotalKoszulTerm {
  CoordMask sigma;
  std::size_t box;
  BoxModule module;  // 2n variables: x first, then y
};

struct TotalKoszulTerms {
  std::size_t n = 0;
  ExponentVector eps;
  std::map<int, std::vector<TotalKoszulTerm>> terms;
};

/// Finite free complex K(x^ε − y^ε) ⊗ M^y over the lattice with step ε/2^m,
/// graded by per-coordinate sum degree a + b, in integer lattice units.
class DiscretizedComplex {
 public:
  struct Generator {
    CoordMask sigma;
    std::size_t box;
    std::vector<long> b;  // y-degree
  };
  struct UnitBox {
    std::vector<long> lo;                  // least lattice point per coordinate
    std::vector<std::optional<long>> hi;   // greatest, nullopt = unbounded
    bool contains(const std::vector<long>& b) const;
  };

  DiscretizedComplex(std::size_t n, std::vector<long> eps_units, std::vector<long> window,
                     std::vector<UnitBox> boxes);

  std::size_t variables() const { return n_; }
  const std::vector<long>& eps_units() const { return eps_; }
  const std::vector<long>& window() const { return window_; }
  const std::vector<UnitBox>& boxes() const { return boxes_; }

  /// Every sum degree c with 0 ≤ c ≤ window, lexicographic.
  std::vector<std::vector<long>> degrees() const;
  std::vector<Generator> basis(int i, const std::vector<long>& c) const;
  /// d_i : C_i → C_{i−1} at sum degree c, in basis() order.
  linalg::SparseMatrix matrix(int i, const std::vector<long>& c) const;
  /// dim H_0..H_n at sum degree c.
  std::vector<int> homology(const std::vector<long>& c, const FieldConfig& field = {}) const;
  /// Σ_j d_{i}∘d_{i+1} entries at c are zero for every i.
  bool square_zero(const std::vector<long>& c) const;

 private:
  std::size_t n_;
  std::vector<long> eps_;
  std::vector<long> window_;
  std::vector<UnitBox> boxes_;
};

/// Symbolic term list of K^ε(M): (x-free box at ε_σ) ⊗ M^y.
TotalKoszulTerms total_koszul_terms(const std::vector<BoxModule>& m, const ExponentVector& eps,
                                    const GroupContext* group = nullptr);

/// Lattice step ε/2^refine; window in multiples of ε.  Throws WindowTooSmall
/// when a finite endpoint of M lies beyond the window and InvalidInput when
/// an endpoint is off the lattice.
DiscretizedComplex total_koszul_truncated(const std::vector<BoxModule>& m,
                                          const ExponentVector& eps, unsigned refine,
                                          long window_multiple);

struct FlatSummand {
  CoordMask sigma;
  std::size_t box;
  BoxModule x_part;  // I_σ in x-variables
  BoxModule y_part;  // minkowski_orthant(box, σ) in y-variables
};

/// Orthant summands of the open total Koszul complex, per homological degree.
std::map<int, std::vector<FlatSummand>> flat_decomposition(const std::vector<BoxModule>& m);

/// Exponent group whose rays are nontrivial; gatekeeps constructor inputs.
class GroupContext {
 public:
  /// Throws InvalidInput if some ray intersection is trivial.
  explicit GroupContext(ExponentGroup group);

  const ExponentGroup& group() const { return group_; }
  const std::vector<ExponentValue>& ray(std::size_t axis) const { return rays_.at(axis); }

  /// NotInGroup unless v ∈ G₊.
  void require_exponent(const ExponentVector& v) const;
  /// Entries in G₊ with σ-projections positive and in G (G̊₊ when σ is full).
  void require_sequence(const TruncationSequence& seq, CoordMask sigma) const;
  /// Coordinatewise minimum, checked to stay in G̊₊.
  ExponentVector common_refinement(const ExponentVector& a, const ExponentVector& b) const;

 private:
  ExponentGroup group_;
  std::vector<std::vector<ExponentValue>> rays_;
};

}  // namespace realexp
