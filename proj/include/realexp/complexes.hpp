#pragma once

// Finite chain complexes whose terms are direct sums of box modules and whose
// differentials are scalar matrices of canonical morphisms.  Homology is
// computed degreewise, one arrangement cell at a time.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "realexp/boxmod.hpp"

namespace realexp {

/// Entry of d_i : C_i → C_{i-1}: summand `col` of C_i to summand `row` of C_{i-1}.
struct DifferentialEntry {
  std::size_t row;
  std::size_t col;
  Rational scalar;

  friend bool operator==(const DifferentialEntry&, const DifferentialEntry&) = default;
};

class BoxComplex {
 public:
  explicit BoxComplex(std::size_t variables = 0) : n_(variables) {}

  std::size_t variables() const { return n_; }

  /// Appends a summand to C_degree and returns its index.
  std::size_t add_term(int degree, BoxModule box);
  /// Adds `scalar` to the (row, col) entry of d_degree; entries summing to 0 vanish.
  void add_entry(int degree, std::size_t row, std::size_t col, const Rational& scalar);

  const std::vector<BoxModule>& term(int degree) const;
  /// Entries sorted by (col, row).
  const std::vector<DifferentialEntry>& differential(int degree) const;
  Rational entry(int degree, std::size_t row, std::size_t col) const;

  /// Degrees carrying at least one summand, ascending.
  std::vector<int> degrees() const;
  std::optional<int> min_degree() const;
  std::optional<int> max_degree() const;
  /// max − min degree over nonzero terms; 0 for a complex concentrated in one degree.
  int length() const;
  bool empty() const { return degrees().empty(); }
  std::size_t rank(int degree) const { return term(degree).size(); }
  std::vector<BoxModule> all_boxes() const;

  friend bool operator==(const BoxComplex& a, const BoxComplex& b);

 private:
  std::size_t n_;
  std::map<int, std::vector<BoxModule>> terms_;
  std::map<int, std::vector<DifferentialEntry>> diffs_;
};

struct Violation {
  enum class Kind { EntryOutOfRange, IllegalEntry, SquareNonzero };
  Kind kind;
  int degree;
  std::size_t row = 0;
  std::size_t col = 0;
  std::optional<std::size_t> cell;
  std::string message;
};

/// Checks that every entry is a legal canonical morphism and that d∘d = 0 on
/// every cell of the joint arrangement; reports the first offence.
std::optional<Violation> verify_complex(const BoxComplex& c);

struct HomologyOptions {
  FieldConfig field;
  /// Extra per-coordinate critical values refining the joint arrangement.
  std::vector<std::vector<ExponentValue>> refine;
  /// Use this arrangement instead of the joint one (must contain every endpoint).
  std::optional<CellArrangement> arrangement;
  std::size_t workers = 1;
};

struct CellHomologyTable {
  CellArrangement arrangement;
  FieldConfig field;
  int min_degree = 0;
  /// dims[cell][degree − min_degree]; empty rows when the complex is zero.
  std::vector<std::vector<int>> dims;
  /// Prime-field mode only: sampled cells whose ℚ recomputation disagreed.
  std::vector<std::size_t> field_mismatch_cells;

  std::size_t cell_count() const { return dims.size(); }
  int degree_count() const { return dims.empty() ? 0 : static_cast<int>(dims.front().size()); }
  bool empty() const { return degree_count() == 0; }
  int max_degree() const { return min_degree + degree_count() - 1; }
  int at(std::size_t cell, int degree) const;
  /// Σ over cells of dim H_degree.
  long total(int degree) const;
};

CellHomologyTable homology(const BoxComplex& c, const HomologyOptions& options = {});

/// Dimensions of C_i at one cell.
std::vector<int> term_dimensions(const BoxComplex& c, const CellArrangement& arrangement,
                                 std::size_t cell, int min_degree, int max_degree);

/// Σ(−1)^i dim C_i = Σ(−1)^i dim H_i on every cell.
bool euler_consistent(const BoxComplex& c, const CellHomologyTable& table);

struct TotalComplex {
  struct Origin {
    int p;          // degree in the left factor
    int q;          // degree in the right factor
    std::size_t i;  // summand index in the left term
    std::size_t j;  // summand index in the right term
  };
  BoxComplex complex;
  std::map<int, std::vector<Origin>> origin;  // per total degree, per summand
};

/// Tot(C ⊗_k D) for complexes in disjoint variable blocks: left variables
/// first, d(c⊗e) = dc⊗e + (−1)^p c⊗de.  Summands of total degree m are
/// ordered by p ascending, then left index, then right index.
TotalComplex tensor_total(const BoxComplex& left, const BoxComplex& right);
BoxComplex tensor(const BoxComplex& left, const BoxComplex& right);

/// The unit for tensor: k in degree 0 over zero variables.
BoxComplex point_complex();

/// C ⊕ D over the same variables; D's summands follow C's in each degree.
BoxComplex direct_sum(const BoxComplex& c, const BoxComplex& d);

/// Free dual Hom_R(−, R): R(−b) in degree i becomes R(+b) in degree −i and
/// differentials are transposed.  Throws NotFree on a non-free summand.
BoxComplex dualize_free(const BoxComplex& c);

/// C ⊗_R R/⟨x_i^ε : i ∈ killed, ε > 0⟩ for a free complex C: coordinates in
/// `killed` collapse to the point at each summand's corner.
BoxComplex collapse_free(const BoxComplex& c, CoordMask killed);

}  // namespace realexp
