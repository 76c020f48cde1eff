#include "realexp/complexes.hpp"

#include <algorithm>
#include <unordered_map>

#include "realexp/linalg.hpp"
#include "realexp/parallel.hpp"

namespace realexp {

// ---------------------------------------------------------------------------
// BoxComplex

namespace {
const std::vector<BoxModule> kNoTerms;
const std::vector<DifferentialEntry> kNoEntries;
}  // namespace

std::size_t BoxComplex::add_term(int degree, BoxModule box) {
  if (box.dimension() != n_)
    fail(ErrorCode::InvalidInput, "summand " + box.to_string() + " is not in " +
                                      std::to_string(n_) + " variables");
  auto& t = terms_[degree];
  t.push_back(std::move(box));
  return t.size() - 1;
}

void BoxComplex::add_entry(int degree, std::size_t row, std::size_t col,
                           const Rational& scalar) {
  if (scalar == 0) return;
  auto& entries = diffs_[degree];
  auto key = [](const DifferentialEntry& e) { return std::make_pair(e.col, e.row); };
  DifferentialEntry probe{row, col, 0};
  auto it = std::lower_bound(entries.begin(), entries.end(), probe,
                             [&](const auto& a, const auto& b) { return key(a) < key(b); });
  if (it != entries.end() && it->row == row && it->col == col) {
    it->scalar += scalar;
    if (it->scalar == 0) entries.erase(it);
  } else {
    entries.insert(it, {row, col, scalar});
  }
  if (entries.empty()) diffs_.erase(degree);
}

const std::vector<BoxModule>& BoxComplex::term(int degree) const {
  auto it = terms_.find(degree);
  return it == terms_.end() ? kNoTerms : it->second;
}

const std::vector<DifferentialEntry>& BoxComplex::differential(int degree) const {
  auto it = diffs_.find(degree);
  return it == diffs_.end() ? kNoEntries : it->second;
}

Rational BoxComplex::entry(int degree, std::size_t row, std::size_t col) const {
  for (const auto& e : differential(degree))
    if (e.row == row && e.col == col) return e.scalar;
  return 0;
}

std::vector<int> BoxComplex::degrees() const {
  std::vector<int> out;
  for (const auto& [d, t] : terms_)
    if (!t.empty()) out.push_back(d);
  return out;
}

std::optional<int> BoxComplex::min_degree() const {
  auto d = degrees();
  if (d.empty()) return std::nullopt;
  return d.front();
}

std::optional<int> BoxComplex::max_degree() const {
  auto d = degrees();
  if (d.empty()) return std::nullopt;
  return d.back();
}

int BoxComplex::length() const {
  auto d = degrees();
  return d.empty() ? 0 : d.back() - d.front();
}

std::vector<BoxModule> BoxComplex::all_boxes() const {
  std::vector<BoxModule> out;
  for (const auto& [d, t] : terms_) out.insert(out.end(), t.begin(), t.end());
  return out;
}

bool operator==(const BoxComplex& a, const BoxComplex& b) {
  if (a.n_ != b.n_ || a.degrees() != b.degrees()) return false;
  for (int d : a.degrees())
    if (a.term(d) != b.term(d)) return false;
  std::vector<int> da, db;
  for (const auto& [d, e] : a.diffs_) da.push_back(d);
  for (const auto& [d, e] : b.diffs_) db.push_back(d);
  if (da != db) return false;
  for (int d : da)
    if (a.differential(d) != b.differential(d)) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Cellwise evaluation

namespace {

// Summand activity per cell; cells with equal activity have equal homology.
class CellEvaluator {
 public:
  CellEvaluator(const BoxComplex& c, CellArrangement arrangement)
      : complex_(c), arrangement_(std::move(arrangement)) {
    auto degs = c.degrees();
    if (!degs.empty()) {
      min_ = degs.front();
      max_ = degs.back();
    }
    std::size_t offset = 0;
    for (int d = min_; d <= max_ && !degs.empty(); ++d) {
      offsets_[d] = offset;
      for (const auto& box : c.term(d)) placements_.push_back(place(box, arrangement_));
      offset += c.term(d).size();
    }
  }

  const CellArrangement& arrangement() const { return arrangement_; }
  int min_degree() const { return min_; }
  int max_degree() const { return max_; }

  std::string signature(std::size_t cell) const {
    auto pieces = arrangement_.cell(cell);
    std::string sig(placements_.size(), '0');
    for (std::size_t k = 0; k < placements_.size(); ++k)
      if (placements_[k].contains_cell(pieces)) sig[k] = '1';
    return sig;
  }

  bool active(const std::string& sig, int degree, std::size_t idx) const {
    return sig[offsets_.at(degree) + idx] == '1';
  }

  // Restriction of d_degree to the summands alive on the cell.
  linalg::SparseMatrix local_matrix(const std::string& sig, int degree) const {
    std::vector<std::size_t> row_index(complex_.rank(degree - 1), SIZE_MAX);
    std::vector<std::size_t> col_index(complex_.rank(degree), SIZE_MAX);
    std::size_t rows = 0, cols = 0;
    for (std::size_t r = 0; r < row_index.size(); ++r)
      if (active(sig, degree - 1, r)) row_index[r] = rows++;
    for (std::size_t c = 0; c < col_index.size(); ++c)
      if (active(sig, degree, c)) col_index[c] = cols++;
    linalg::SparseMatrix m(rows, cols);
    for (const auto& e : complex_.differential(degree))
      if (row_index[e.row] != SIZE_MAX && col_index[e.col] != SIZE_MAX)
        m.add(row_index[e.row], col_index[e.col], e.scalar);
    return m;
  }

  std::vector<int> dims(const std::string& sig) const {
    std::vector<int> out;
    for (int d = min_; d <= max_; ++d) {
      int count = 0;
      for (std::size_t k = 0; k < complex_.rank(d); ++k) count += active(sig, d, k);
      out.push_back(count);
    }
    return out;
  }

  std::vector<int> homology_dims(const std::string& sig, const FieldConfig& field) const {
    auto dim = dims(sig);
    std::vector<std::size_t> ranks(dim.size() + 1, 0);  // ranks[k] = rank d_{min+k}
    for (int d = min_ + 1; d <= max_; ++d)
      ranks[d - min_] = linalg::rank(local_matrix(sig, d), field);
    std::vector<int> out(dim.size());
    for (std::size_t k = 0; k < dim.size(); ++k)
      out[k] = dim[k] - static_cast<int>(ranks[k] + ranks[k + 1]);
    return out;
  }

 private:
  const BoxComplex& complex_;
  CellArrangement arrangement_;
  int min_ = 0, max_ = -1;
  std::map<int, std::size_t> offsets_;
  std::vector<BoxPlacement> placements_;
};

CellArrangement joint_arrangement(const BoxComplex& c,
                                  const std::vector<std::vector<ExponentValue>>& refine = {}) {
  return build_arrangement(c.all_boxes(), c.variables(), refine);
}

}  // namespace

std::optional<Violation> verify_complex(const BoxComplex& c) {
  for (int d : c.degrees()) {
    for (const auto& e : c.differential(d)) {
      if (e.col >= c.rank(d) || e.row >= c.rank(d - 1))
        return Violation{Violation::Kind::EntryOutOfRange, d, e.row, e.col, std::nullopt,
                         "entry outside the terms of d_" + std::to_string(d)};
      if (!can_map(c.term(d)[e.col], c.term(d - 1)[e.row]))
        return Violation{Violation::Kind::IllegalEntry, d, e.row, e.col, std::nullopt,
                         "no canonical map " + c.term(d)[e.col].to_string() + " -> " +
                             c.term(d - 1)[e.row].to_string()};
    }
  }
  // Entries attached to degrees without a source term.
  for (int d = (c.min_degree().value_or(0)) - 1; d <= c.max_degree().value_or(0) + 1; ++d)
    if (c.rank(d) == 0 && !c.differential(d).empty()) {
      const auto& e = c.differential(d).front();
      return Violation{Violation::Kind::EntryOutOfRange, d, e.row, e.col, std::nullopt,
                       "entry outside the terms of d_" + std::to_string(d)};
    }
  if (c.empty()) return std::nullopt;

  CellEvaluator eval(c, joint_arrangement(c));
  std::unordered_map<std::string, bool> seen;
  for (std::size_t cell = 0; cell < eval.arrangement().cell_count(); ++cell) {
    auto sig = eval.signature(cell);
    if (!seen.emplace(sig, true).second) continue;
    for (int d = eval.min_degree() + 2; d <= eval.max_degree(); ++d) {
      // (d_{d-1} ∘ d_d)(row, col) restricted to live summands.
      std::map<std::pair<std::size_t, std::size_t>, Rational> composite;
      for (const auto& e1 : c.differential(d)) {
        if (!eval.active(sig, d, e1.col) || !eval.active(sig, d - 1, e1.row)) continue;
        for (const auto& e2 : c.differential(d - 1)) {
          if (e2.col != e1.row || !eval.active(sig, d - 2, e2.row)) continue;
          composite[{e2.row, e1.col}] += e1.scalar * e2.scalar;
        }
      }
      for (const auto& [rc, v] : composite)
        if (v != 0)
          return Violation{Violation::Kind::SquareNonzero, d, rc.first, rc.second, cell,
                           "d^2 != 0 on cell " + eval.arrangement().cell_to_string(cell)};
    }
  }
  return std::nullopt;
}

int CellHomologyTable::at(std::size_t cell, int degree) const {
  if (empty() || degree < min_degree || degree > max_degree()) return 0;
  return dims.at(cell)[degree - min_degree];
}

long CellHomologyTable::total(int degree) const {
  long sum = 0;
  for (std::size_t cell = 0; cell < cell_count(); ++cell) sum += at(cell, degree);
  return sum;
}

CellHomologyTable homology(const BoxComplex& c, const HomologyOptions& options) {
  CellArrangement arrangement =
      options.arrangement ? options.arrangement->refined(options.refine)
                          : joint_arrangement(c, options.refine);
  CellEvaluator eval(c, arrangement);
  CellHomologyTable table;
  table.arrangement = eval.arrangement();
  table.field = options.field;
  table.min_degree = eval.min_degree();
  const std::size_t cells = table.arrangement.cell_count();
  table.dims.assign(cells, {});
  if (c.empty()) return table;

  std::vector<std::string> sigs(cells);
  for (std::size_t cell = 0; cell < cells; ++cell) sigs[cell] = eval.signature(cell);
  std::vector<std::string> distinct = sigs;
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());

  std::vector<std::vector<int>> results(distinct.size());
  parallel_for(distinct.size(), options.workers, [&](std::size_t k) {
    results[k] = eval.homology_dims(distinct[k], options.field);
  });
  auto lookup = [&](const std::string& sig) {
    auto it = std::lower_bound(distinct.begin(), distinct.end(), sig);
    return static_cast<std::size_t>(it - distinct.begin());
  };
  for (std::size_t cell = 0; cell < cells; ++cell) table.dims[cell] = results[lookup(sigs[cell])];

  if (options.field.kind == FieldConfig::Kind::Prime) {
    // Cross-check every tenth distinct cell class over ℚ.
    for (std::size_t k = 0; k < distinct.size(); k += 10) {
      if (eval.homology_dims(distinct[k], FieldConfig::rationals()) == results[k]) continue;
      for (std::size_t cell = 0; cell < cells; ++cell)
        if (sigs[cell] == distinct[k]) table.field_mismatch_cells.push_back(cell);
    }
    std::sort(table.field_mismatch_cells.begin(), table.field_mismatch_cells.end());
  }
  return table;
}

std::vector<int> term_dimensions(const BoxComplex& c, const CellArrangement& arrangement,
                                 std::size_t cell, int min_degree, int max_degree) {
  auto pieces = arrangement.cell(cell);
  std::vector<int> out;
  for (int d = min_degree; d <= max_degree; ++d) {
    int count = 0;
    for (const auto& box : c.term(d)) count += place(box, arrangement).contains_cell(pieces);
    out.push_back(count);
  }
  return out;
}

bool euler_consistent(const BoxComplex& c, const CellHomologyTable& table) {
  if (table.empty()) return c.empty();
  for (std::size_t cell = 0; cell < table.cell_count(); ++cell) {
    auto dims = term_dimensions(c, table.arrangement, cell, table.min_degree,
                                table.max_degree());
    long chi_terms = 0, chi_homology = 0;
    for (int k = 0; k < table.degree_count(); ++k) {
      int s = (table.min_degree + k) % 2 == 0 ? 1 : -1;
      chi_terms += s * dims[k];
      chi_homology += s * table.dims[cell][k];
    }
    if (chi_terms != chi_homology) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Constructions

TotalComplex tensor_total(const BoxComplex& left, const BoxComplex& right) {
  TotalComplex out;
  out.complex = BoxComplex(left.variables() + right.variables());
  auto ldeg = left.degrees();
  auto rdeg = right.degrees();
  if (ldeg.empty() || rdeg.empty()) return out;

  // Index of (p, q, i, j) inside total degree p+q.
  std::map<std::pair<int, int>, std::size_t> block_offset;
  for (int m = ldeg.front() + rdeg.front(); m <= ldeg.back() + rdeg.back(); ++m) {
    for (int p : ldeg) {
      int q = m - p;
      if (right.rank(q) == 0) continue;
      block_offset[{p, q}] = out.complex.rank(m);
      for (std::size_t i = 0; i < left.rank(p); ++i)
        for (std::size_t j = 0; j < right.rank(q); ++j) {
          out.complex.add_term(m, left.term(p)[i].product(right.term(q)[j]));
          out.origin[m].push_back({p, q, i, j});
        }
    }
  }
  auto index = [&](int p, int q, std::size_t i, std::size_t j) {
    return block_offset.at({p, q}) + i * right.rank(q) + j;
  };
  for (int p : ldeg)
    for (const auto& e : left.differential(p))
      for (int q : rdeg)
        for (std::size_t j = 0; j < right.rank(q); ++j)
          out.complex.add_entry(p + q, index(p - 1, q, e.row, j), index(p, q, e.col, j),
                                e.scalar);
  for (int q : rdeg)
    for (const auto& e : right.differential(q))
      for (int p : ldeg) {
        Rational s = p % 2 == 0 ? e.scalar : Rational(-e.scalar);
        for (std::size_t i = 0; i < left.rank(p); ++i)
          out.complex.add_entry(p + q, index(p, q - 1, i, e.row), index(p, q, i, e.col), s);
      }
  return out;
}

BoxComplex tensor(const BoxComplex& left, const BoxComplex& right) {
  return tensor_total(left, right).complex;
}

BoxComplex point_complex() {
  BoxComplex c(0);
  c.add_term(0, BoxModule{});
  return c;
}

BoxComplex direct_sum(const BoxComplex& c, const BoxComplex& d) {
  if (c.variables() != d.variables())
    fail(ErrorCode::InvalidInput, "direct sum of complexes in different variables");
  BoxComplex out = c;
  std::map<int, std::size_t> offset;
  for (int deg : d.degrees()) {
    offset[deg] = out.rank(deg);
    for (const auto& box : d.term(deg)) out.add_term(deg, box);
  }
  for (int deg : d.degrees())
    for (const auto& e : d.differential(deg))
      out.add_entry(deg, offset[deg - 1] + e.row, offset[deg] + e.col, e.scalar);
  return out;
}

BoxComplex dualize_free(const BoxComplex& c) {
  BoxComplex out(c.variables());
  for (int d : c.degrees())
    for (const auto& box : c.term(d)) {
      if (!box.is_free()) fail(ErrorCode::NotFree, box.to_string() + " is not free");
      out.add_term(-d, BoxModule::free(-box.lower_corner()));
    }
  for (int d : c.degrees())
    for (const auto& e : c.differential(d)) out.add_entry(1 - d, e.col, e.row, e.scalar);
  return out;
}

BoxComplex collapse_free(const BoxComplex& c, CoordMask killed) {
  BoxComplex out(c.variables());
  for (int d : c.degrees())
    for (const auto& box : c.term(d)) {
      if (!box.is_free()) fail(ErrorCode::NotFree, box.to_string() + " is not free");
      std::vector<IntervalSpec> ivs = box.intervals();
      for (std::size_t i = 0; i < ivs.size(); ++i)
        if (killed >> i & 1u) ivs[i] = IntervalSpec::point(ivs[i].lo);
      out.add_term(d, BoxModule(std::move(ivs)));
    }
  for (int d : c.degrees())
    for (const auto& e : c.differential(d)) out.add_entry(d, e.row, e.col, e.scalar);
  return out;
}

}  // namespace realexp
