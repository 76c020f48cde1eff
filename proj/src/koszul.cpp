#include "realexp/koszul.hpp"

#include <algorithm>
#include <functional>
#include <tuple>

namespace realexp {

// ---------------------------------------------------------------------------
// Truncation sequences

void TruncationSequence::validate(CoordMask sigma) const {
  if (entries.empty()) fail(ErrorCode::BadSequence, "empty truncation sequence");
  const std::size_t n = entries.front().size();
  if (n < 32 && (sigma >> n) != 0)
    fail(ErrorCode::BadSequence, "subset refers to a coordinate beyond " + std::to_string(n));
  for (std::size_t k = 0; k < entries.size(); ++k) {
    const auto& e = entries[k];
    if (e.size() != n) fail(ErrorCode::BadSequence, "entries of different length");
    for (std::size_t i = 0; i < n; ++i) {
      if (!(sigma >> i & 1u)) {
        if (!e[i].is_zero())
          fail(ErrorCode::BadSequence, "entry " + std::to_string(k) + " is nonzero in closed coordinate " +
                                           std::to_string(i));
        continue;
      }
      if (sign(e[i]) <= 0)
        fail(ErrorCode::BadSequence,
             "entry " + std::to_string(k) + " is not positive in coordinate " + std::to_string(i));
      if (k > 0 && !less(e[i], entries[k - 1][i]))
        fail(ErrorCode::BadSequence, "sequence does not strictly decrease at entry " +
                                         std::to_string(k) + ", coordinate " + std::to_string(i));
    }
  }
}

TruncationSequence TruncationSequence::geometric(const ExponentVector& base, CoordMask sigma,
                                                 std::size_t K) {
  TruncationSequence s;
  ExponentVector face = base.restricted(sigma);
  Rational factor = 1;
  for (std::size_t k = 0; k <= K; ++k) {
    s.entries.push_back(face.scaled(factor));
    factor /= 2;
  }
  s.validate(sigma);
  return s;
}

TruncationSequence TruncationSequence::truncated(std::size_t K) const {
  if (K >= entries.size()) fail(ErrorCode::BadSequence, "sequence shorter than requested depth");
  TruncationSequence s;
  s.entries.assign(entries.begin(), entries.begin() + static_cast<long>(K + 1));
  return s;
}

// ---------------------------------------------------------------------------
// Koszul complexes

std::vector<CoordMask> koszul_subsets(std::size_t n, std::size_t m) {
  if (m > n) return {};
  if (n == 0) return {0};
  std::vector<CoordMask> out;
  const CoordMask last = CoordMask{1} << (n - 1);
  if (m > 0)
    for (CoordMask s : koszul_subsets(n - 1, m - 1)) out.push_back(s | last);
  for (CoordMask s : koszul_subsets(n - 1, m)) out.push_back(s);
  return out;
}

ExponentVector face_vector(const ExponentVector& eps, CoordMask sigma) {
  return eps.restricted(sigma);
}

namespace {

BoxComplex fold_tensor(std::size_t n, const std::function<BoxComplex(std::size_t)>& factor) {
  BoxComplex out = point_complex();
  for (std::size_t i = 0; i < n; ++i) out = tensor(out, factor(i));
  return out;
}

}  // namespace

BoxComplex ordinary_koszul(const ExponentVector& eps, const GroupContext* group) {
  if (!is_strictly_positive(eps))
    fail(ErrorCode::InvalidInput, "Koszul exponent " + eps.to_string() + " is not strictly positive");
  if (group && !in_open_cone(eps, group->group()))
    fail(ErrorCode::NotInOpenCone, eps.to_string() + " has a ray projection outside the group");
  return fold_tensor(eps.size(), [&](std::size_t i) {
    BoxComplex k(1);
    k.add_term(0, BoxModule::free(ExponentVector::zero(1)));
    k.add_term(1, BoxModule::free(ExponentVector{eps[i]}));
    k.add_entry(1, 0, 0, 1);
    return k;
  });
}

BoxComplex open_koszul_1d() {
  BoxComplex k(1);
  k.add_term(0, BoxModule::orthant(ExponentVector::zero(1), 0));
  k.add_term(1, BoxModule::orthant(ExponentVector::zero(1), 1));
  k.add_entry(1, 0, 0, 1);
  return k;
}

BoxComplex open_koszul(std::size_t n) {
  return fold_tensor(n, [](std::size_t) { return open_koszul_1d(); });
}

TorReport tor_of_power_quotient(const ExponentVector& eps, int i) {
  const std::size_t n = eps.size();
  BoxComplex reduced = collapse_free(ordinary_koszul(eps), n >= 32 ? ~CoordMask{0} : (CoordMask{1} << n) - 1);
  for (int d : reduced.degrees())
    for (const auto& e : reduced.differential(d)) {
      const auto& src = reduced.term(d)[e.col];
      const auto& dst = reduced.term(d - 1)[e.row];
      if (dst.contains(src.lower_corner()))
        fail(ErrorCode::NonzeroDifferential,
             "k ⊗ K(x^[ε]) keeps the entry " + src.to_string() + " -> " + dst.to_string());
    }
  TorReport report;
  report.n = n;
  report.degree = i;
  report.differentials_vanish = true;
  report.dimension = homology(reduced).total(i);
  return report;
}

// ---------------------------------------------------------------------------
// Orthant resolutions

OrthantResolution orthant_resolution(CoordMask sigma, const TruncationSequence& seq,
                                     const ExponentVector& corner, const GroupContext* group) {
  seq.validate(sigma);
  const std::size_t n = seq.variables();
  ExponentVector c = corner.size() == 0 ? ExponentVector::zero(n) : corner;
  if (c.size() != n) fail(ErrorCode::InvalidInput, "corner and sequence differ in length");
  if (group) {
    group->require_sequence(seq, sigma);
    if (!is_member(c, group->group()).member)
      fail(ErrorCode::NotInGroup, "corner " + c.to_string() + " is not in the group");
  }
  OrthantResolution out;
  out.sigma = sigma;
  out.corner = c;
  out.sequence = seq;
  out.complex = BoxComplex(n);
  const std::size_t K = seq.depth();
  for (std::size_t k = 0; k <= K; ++k) out.complex.add_term(0, BoxModule::free(c + seq.entries[k]));
  for (std::size_t k = 0; k < K; ++k) {
    out.complex.add_term(1, BoxModule::free(c + seq.entries[k]));
    out.complex.add_entry(1, k, k, 1);
    out.complex.add_entry(1, k + 1, k, -1);
  }
  out.h0 = BoxModule::free(c + seq.entries[K]);
  out.limit = BoxModule::orthant(c, sigma);
  return out;
}

bool OrthantResolution::stabilized(const CellArrangement& arrangement, std::size_t cell) const {
  auto pieces = arrangement.cell(cell);
  const auto& last = sequence.entries.back();
  for (std::size_t i = 0; i < corner.size(); ++i) {
    if (!(sigma >> i & 1u)) continue;
    std::size_t lo = arrangement.locate(i, corner[i]);
    std::size_t hi = arrangement.locate(i, corner[i] + last[i]);
    std::size_t p = pieces[i];
    bool after_lo = lo % 2 == 1 ? p > lo : p >= lo;
    bool before_hi = hi % 2 == 1 ? p < hi : p <= hi;
    if (after_lo && before_hi) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Open total Koszul complex

TotalKoszulTerms total_koszul_terms(const std::vector<BoxModule>& m, const ExponentVector& eps,
                                    const GroupContext* group) {
  const std::size_t n = eps.size();
  if (!is_strictly_positive(eps))
    fail(ErrorCode::InvalidInput, "Koszul exponent " + eps.to_string() + " is not strictly positive");
  if (group && !in_open_cone(eps, group->group()))
    fail(ErrorCode::NotInOpenCone, eps.to_string() + " has a ray projection outside the group");
  TotalKoszulTerms out;
  out.n = n;
  out.eps = eps;
  for (const auto& box : m)
    if (box.dimension() != n) fail(ErrorCode::InvalidInput, "module box in the wrong number of variables");
  for (std::size_t i = 0; i <= n; ++i)
    for (CoordMask sigma : koszul_subsets(n, i))
      for (std::size_t b = 0; b < m.size(); ++b)
        out.terms[static_cast<int>(i)].push_back(
            {sigma, b, BoxModule::free(face_vector(eps, sigma)).product(m[b])});
  return out;
}

namespace {

// v = k·step with k an integer; nullopt otherwise.
std::optional<long> lattice_units(const ExponentValue& v, const ExponentValue& step) {
  Rational ratio;
  if (step.is_rational()) {
    if (!v.is_rational()) return std::nullopt;
    ratio = v.rational_part() / step.rational_part();
  } else {
    const auto& [sym, coeff] = step.symbolic_part().front();
    Integer vc = 0;
    for (const auto& [s, c] : v.symbolic_part())
      if (s == sym) vc = c;
    ratio = Rational(vc, coeff);
    ratio.canonicalize();
  }
  if (ratio.get_den() != 1 || !ratio.get_num().fits_slong_p()) return std::nullopt;
  ExponentValue back;
  try {
    back = step.scaled(ratio);
  } catch (const Error&) {
    return std::nullopt;
  }
  if (back != v) return std::nullopt;
  return ratio.get_num().get_si();
}

}  // namespace

bool DiscretizedComplex::UnitBox::contains(const std::vector<long>& b) const {
  for (std::size_t i = 0; i < b.size(); ++i)
    if (b[i] < lo[i] || (hi[i] && b[i] > *hi[i])) return false;
  return true;
}

DiscretizedComplex::DiscretizedComplex(std::size_t n, std::vector<long> eps_units,
                                       std::vector<long> window, std::vector<UnitBox> boxes)
    : n_(n), eps_(std::move(eps_units)), window_(std::move(window)), boxes_(std::move(boxes)) {
  if (eps_.size() != n_ || window_.size() != n_)
    fail(ErrorCode::InvalidInput, "lattice data in the wrong number of variables");
}

std::vector<std::vector<long>> DiscretizedComplex::degrees() const {
  std::vector<std::vector<long>> out;
  std::vector<long> c(n_, 0);
  while (true) {
    out.push_back(c);
    std::size_t i = n_;
    while (i > 0) {
      --i;
      if (c[i] < window_[i]) {
        ++c[i];
        std::fill(c.begin() + static_cast<long>(i) + 1, c.end(), 0);
        break;
      }
      if (i == 0) return out;
    }
    if (n_ == 0) return out;
  }
}

std::vector<DiscretizedComplex::Generator> DiscretizedComplex::basis(
    int i, const std::vector<long>& c) const {
  std::vector<Generator> out;
  if (i < 0 || static_cast<std::size_t>(i) > n_) return out;
  for (CoordMask sigma : koszul_subsets(n_, static_cast<std::size_t>(i)))
    for (std::size_t bi = 0; bi < boxes_.size(); ++bi) {
      const auto& box = boxes_[bi];
      std::vector<long> lo(n_), hi(n_);
      bool empty = false;
      for (std::size_t j = 0; j < n_; ++j) {
        lo[j] = box.lo[j];
        hi[j] = c[j] - ((sigma >> j & 1u) ? eps_[j] : 0);
        if (box.hi[j]) hi[j] = std::min(hi[j], *box.hi[j]);
        if (hi[j] < lo[j]) empty = true;
      }
      if (empty) continue;
      std::vector<long> b = lo;
      while (true) {
        out.push_back({sigma, bi, b});
        std::size_t j = n_;
        bool done = true;
        while (j > 0) {
          --j;
          if (b[j] < hi[j]) {
            ++b[j];
            for (std::size_t t = j + 1; t < n_; ++t) b[t] = lo[t];
            done = false;
            break;
          }
        }
        if (done) break;
      }
    }
  return out;
}

linalg::SparseMatrix DiscretizedComplex::matrix(int i, const std::vector<long>& c) const {
  auto cols = basis(i, c);
  auto rows = basis(i - 1, c);
  std::map<std::tuple<CoordMask, std::size_t, std::vector<long>>, std::size_t> row_index;
  for (std::size_t r = 0; r < rows.size(); ++r)
    row_index[{rows[r].sigma, rows[r].box, rows[r].b}] = r;
  linalg::SparseMatrix m(rows.size(), cols.size());
  for (std::size_t col = 0; col < cols.size(); ++col) {
    const auto& g = cols[col];
    int below = 0;
    for (std::size_t j = 0; j < n_; ++j) {
      if (!(g.sigma >> j & 1u)) continue;
      Rational s = below % 2 == 0 ? 1 : -1;
      ++below;
      CoordMask rest = g.sigma & ~(CoordMask{1} << j);
      m.add(row_index.at({rest, g.box, g.b}), col, s);
      std::vector<long> shifted = g.b;
      shifted[j] += eps_[j];
      if (boxes_[g.box].contains(shifted)) m.add(row_index.at({rest, g.box, shifted}), col, -s);
    }
  }
  return m;
}

std::vector<int> DiscretizedComplex::homology(const std::vector<long>& c,
                                              const FieldConfig& field) const {
  std::vector<std::size_t> ranks(n_ + 2, 0);
  std::vector<int> dims(n_ + 1);
  for (std::size_t i = 0; i <= n_; ++i) dims[i] = static_cast<int>(basis(static_cast<int>(i), c).size());
  for (std::size_t i = 1; i <= n_; ++i) ranks[i] = linalg::rank(matrix(static_cast<int>(i), c), field);
  std::vector<int> out(n_ + 1);
  for (std::size_t i = 0; i <= n_; ++i)
    out[i] = dims[i] - static_cast<int>(ranks[i] + ranks[i + 1]);
  return out;
}

bool DiscretizedComplex::square_zero(const std::vector<long>& c) const {
  for (std::size_t i = 2; i <= n_; ++i) {
    auto upper = matrix(static_cast<int>(i), c);
    auto lower = matrix(static_cast<int>(i) - 1, c);
    for (std::size_t col = 0; col < upper.cols(); ++col) {
      std::map<std::size_t, Rational> acc;
      for (const auto& [mid, v] : upper.column(col))
        for (const auto& [row, w] : lower.column(mid)) acc[row] += v * w;
      for (const auto& [row, v] : acc)
        if (v != 0) return false;
    }
  }
  return true;
}

DiscretizedComplex total_koszul_truncated(const std::vector<BoxModule>& m,
                                          const ExponentVector& eps, unsigned refine,
                                          long window_multiple) {
  const std::size_t n = eps.size();
  total_koszul_terms(m, eps);  // validates inputs
  if (refine > 20 || window_multiple < 1)
    fail(ErrorCode::InvalidInput, "lattice refinement or window out of range");
  const long units = 1L << refine;
  std::vector<long> eps_units(n, units), window(n, units * window_multiple);
  std::vector<DiscretizedComplex::UnitBox> boxes;
  for (const auto& box : m) {
    DiscretizedComplex::UnitBox ub;
    for (std::size_t i = 0; i < n; ++i) {
      const auto& iv = box[i];
      auto lo = lattice_units(iv.lo.scaled(Integer(units)), eps[i]);
      if (!lo)
        fail(ErrorCode::InvalidInput, "endpoint " + iv.lo.to_string() + " is off the lattice with step (" +
                                          eps[i].to_string() + ")/" + std::to_string(units));
      if (*lo < 0) fail(ErrorCode::InvalidInput, "module box " + box.to_string() + " leaves the positive orthant");
      if (*lo > window[i])
        fail(ErrorCode::WindowTooSmall, "endpoint " + iv.lo.to_string() + " lies beyond the window");
      ub.lo.push_back(iv.lo_closed ? *lo : *lo + 1);
      if (!iv.hi) {
        ub.hi.push_back(std::nullopt);
        continue;
      }
      auto hi = lattice_units(iv.hi->scaled(Integer(units)), eps[i]);
      if (!hi)
        fail(ErrorCode::InvalidInput, "endpoint " + iv.hi->to_string() + " is off the lattice with step (" +
                                          eps[i].to_string() + ")/" + std::to_string(units));
      if (*hi > window[i])
        fail(ErrorCode::WindowTooSmall, "endpoint " + iv.hi->to_string() + " lies beyond the window");
      ub.hi.push_back(iv.hi_closed ? *hi : *hi - 1);
    }
    boxes.push_back(std::move(ub));
  }
  return DiscretizedComplex(n, eps_units, window, std::move(boxes));
}

// ---------------------------------------------------------------------------
// Flat decomposition

std::map<int, std::vector<FlatSummand>> flat_decomposition(const std::vector<BoxModule>& m) {
  std::map<int, std::vector<FlatSummand>> out;
  if (m.empty()) return out;
  const std::size_t n = m.front().dimension();
  for (const auto& box : m)
    if (box.dimension() != n) fail(ErrorCode::InvalidInput, "module boxes in different variables");
  for (std::size_t i = 0; i <= n; ++i)
    for (CoordMask sigma : koszul_subsets(n, i))
      for (std::size_t b = 0; b < m.size(); ++b)
        out[static_cast<int>(i)].push_back({sigma, b, BoxModule::orthant(ExponentVector::zero(n), sigma),
                                            minkowski_orthant(m[b], sigma)});
  return out;
}

// ---------------------------------------------------------------------------
// Group context

GroupContext::GroupContext(ExponentGroup group) : group_(std::move(group)) {
  for (std::size_t i = 0; i < group_.n; ++i) {
    rays_.push_back(ray_intersection(group_, i));
    if (rays_.back().empty())
      fail(ErrorCode::InvalidInput, "group meets coordinate ray " + std::to_string(i) + " trivially");
  }
}

void GroupContext::require_exponent(const ExponentVector& v) const {
  if (v.size() != group_.n) fail(ErrorCode::InvalidInput, "exponent in the wrong number of variables");
  if (!is_nonnegative(v) || !is_member(v, group_).member)
    fail(ErrorCode::NotInGroup, v.to_string() + " is not in the positive part of the group");
}

void GroupContext::require_sequence(const TruncationSequence& seq, CoordMask sigma) const {
  seq.validate(sigma);
  for (std::size_t k = 0; k < seq.entries.size(); ++k) {
    const auto& e = seq.entries[k];
    require_exponent(e);
    for (std::size_t i = 0; i < e.size(); ++i)
      if ((sigma >> i & 1u) && !ray_projection_in_group(e, i, group_))
        fail(ErrorCode::NotInOpenCone, "entry " + std::to_string(k) + " = " + e.to_string() +
                                           " projects outside the group on ray " + std::to_string(i));
  }
}

ExponentVector GroupContext::common_refinement(const ExponentVector& a,
                                               const ExponentVector& b) const {
  ExponentVector m = meet(a, b);
  require_exponent(m);
  for (std::size_t i = 0; i < m.size(); ++i)
    if (sign(m[i]) > 0 && !ray_projection_in_group(m, i, group_))
      fail(ErrorCode::NotInOpenCone, m.to_string() + " projects outside the group on ray " +
                                         std::to_string(i));
  return m;
}

}  // namespace realexp
