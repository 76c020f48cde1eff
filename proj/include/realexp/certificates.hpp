#pragma once

// Finite certificates for the nonvanishing Ext computations and the
// length-(n+1) projective resolution constructor.

#include <optional>
#include <string>
#include <vector>

#include "realexp/koszul.hpp"

namespace realexp {

namespace fixtures {

/// k = k[{0}^n].
std::vector<BoxModule> residue_field(std::size_t n);
/// R/I with I = ⟨x_1,…,x_{n−1}⟩ + 𝔪₁: support [0,1)^{n−1} × {0}.
std::vector<BoxModule> quotient_i(std::size_t n);
/// R/I′ with I′ = ⟨x_1,…,x_{n−1}⟩ + ⟨x_n^ε : ε > 1⟩: support [0,1)^{n−1} × [0,1].
std::vector<BoxModule> quotient_i_prime(std::size_t n);
/// B_n^ε = R/⟨x^[ε]⟩: support [0,ε).
std::vector<BoxModule> power_quotient(const ExponentVector& eps);
/// F_K = ⊕_{k≤K} R₁(−e_k) in one variable.
std::vector<BoxModule> truncated_f(const TruncationSequence& seq);
/// Named fixture: "k", "R/I", "R/I'", "B" (with ε = 1).
std::vector<BoxModule> by_name(const std::string& name, std::size_t n);

}  // namespace fixtures

struct SupportEscapeCertificate {
  std::size_t depth = 0;  // K
  Rational scalar;        // c
  /// Unknowns u_{jk} (k ≥ j), ordered by j then k.
  std::vector<std::pair<std::size_t, std::size_t>> unknowns;
  std::vector<Rational> particular;
  std::size_t nullity = 0;
  /// Indices k with some u_{jk} fixed and nonzero in every solution.
  std::vector<std::size_t> forced_indices;
  std::optional<std::size_t> min_forced_index;
  bool zero_solution = false;
};

/// Degree-0 maps φ: ⟨x^{e_K}⟩ → F_K compatible with the generators x^{e_j}
/// and with α∘φ = c·id.  Throws Infeasible when no solution exists.
SupportEscapeCertificate support_escape(std::size_t K, const Rational& c,
                                        const TruncationSequence& seq);

/// 0 ← R₁ ← F_K ← F_{K−1} ← 0 resolving k below truncation level K.
BoxComplex k_resolution(const TruncationSequence& seq);

/// Throws EscapeViolated unless `resolution` is a complex whose homology is k
/// in degree 0 and vanishes elsewhere on cells outside (0, e_K).
void check_k_resolution(const BoxComplex& resolution, const TruncationSequence& seq);

struct DualKoszulRanks {
  std::size_t n = 0;
  /// ranks[q] = rank of cohomological degree q after collapsing x_1..x_{n−1}.
  std::vector<long> ranks;
  bool differentials_vanish = false;
};

/// Dual of K(x_1,…,x_{n−1}) tensored down to R₁.  Throws NonzeroDifferential.
DualKoszulRanks dual_koszul_collapse(std::size_t n, const ExponentValue& exponent = 1);

struct DecompositionEntry {
  int i = 0;
  int p = 0;
  int q = 0;
  long multiplicity = 0;  // C(n−1, q)
  bool witness = false;   // the certified nonzero summand
};

struct ExtCertificate {
  std::string claim;
  std::size_t n = 0;
  int degree = 0;
  int witness_p = 2;
  int witness_q = 0;
  std::size_t k_max = 0;
  FieldConfig field;
  TruncationSequence sequence;
  std::vector<SupportEscapeCertificate> escapes;
  DualKoszulRanks dual;
  std::vector<DecompositionEntry> table;
  /// Free ranks of Tot(𝔽 ⊗ K) per degree and the matching tensor-formula ranks.
  std::vector<long> total_ranks;
  std::vector<long> formula_ranks;
  std::vector<std::string> notes;
  std::string status;
};

/// n = 1: Ext²_{R₁}(k, F) ≠ 0, verified for K = 1..K_max.  `resolution`
/// replaces the internally built k-resolution (for mutation tests).
ExtCertificate ext2_certificate(std::size_t k_max, const TruncationSequence& seq,
                                const std::optional<BoxComplex>& resolution = std::nullopt);

/// Ext^{n+1}_R(R/I, F) ≠ 0, verified up to K_max.
ExtCertificate ext_n_plus_1(std::size_t n, std::size_t k_max,
                            const std::optional<TruncationSequence>& seq = std::nullopt);

/// Default sequence used by the certificates: e_k = 2^-k in one variable.
TruncationSequence default_escape_sequence(std::size_t K);

struct ProjectiveOptions {
  std::size_t depth = 8;  // K
  /// Per-coordinate schedule over all coordinates (open on every coordinate);
  /// defaults to t_{i,k} = g_i·2^-(k+1), g_i the least gap between corners.
  std::optional<TruncationSequence> schedule;
};

struct ProjectiveResolution {
  BoxComplex flat;
  BoxComplex complex;
  TruncationSequence schedule;
  int length = 0;
  /// Origin of each total summand: flat degree p, column degree q, flat
  /// summand a, truncation index k.
  struct Origin {
    int p;
    int q;
    std::size_t a;
    std::size_t k;
  };
  std::map<int, std::vector<Origin>> origin;
  /// (coordinate, corner value) of every open orthant face in the flat resolution.
  std::vector<std::pair<std::size_t, ExponentValue>> open_corners;
  /// Values to refine the arrangement with so that stabilization is decidable.
  std::vector<std::vector<ExponentValue>> refine;

  /// No coordinate piece of the cell lies in (c, c + t_K) for an open corner c.
  bool stabilized(const CellArrangement& arrangement, std::size_t cell) const;
};

/// Flat resolution of a box sum: per box, the tensor over coordinates of
/// [lower orthant] ← [upper orthant].
BoxComplex box_flat_resolution(const std::vector<BoxModule>& m);

/// Replaces every orthant of the flat resolution by its truncated free
/// resolution, lifts the flat differentials, and totalizes.  Throws LiftFailed.
ProjectiveResolution projective_resolution(const std::vector<BoxModule>& m,
                                           const ProjectiveOptions& options = {});

struct ResolutionCheck {
  bool square_zero = false;
  std::string violation;
  std::size_t cells = 0;
  std::size_t stabilized_cells = 0;
  std::vector<std::size_t> unstabilized_cells;
  /// Stabilized cells where H₀ ≠ M or some H_{i>0} ≠ 0.
  std::vector<std::size_t> mismatched_cells;
  CellHomologyTable table;

  bool passed() const { return square_zero && mismatched_cells.empty(); }
};

ResolutionCheck check_projective_resolution(const ProjectiveResolution& res,
                                            const std::vector<BoxModule>& m,
                                            const HomologyOptions& options = {});

}  // namespace realexp
