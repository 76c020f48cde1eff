#include "realexp/boxmod.hpp"

#include <algorithm>

namespace realexp {

// ---------------------------------------------------------------------------
// Intervals and boxes

IntervalSpec IntervalSpec::make(ExponentValue lo, bool lo_closed,
                                std::optional<ExponentValue> hi, bool hi_closed) {
  IntervalSpec iv{std::move(lo), lo_closed, std::move(hi), hi_closed};
  if (iv.hi) {
    auto c = compare(iv.lo, *iv.hi);
    if (c == Ordering::Greater ||
        (c == Ordering::Equal && !(iv.lo_closed && iv.hi_closed)))
      fail(ErrorCode::InvalidInput, "empty interval " + iv.to_string());
  } else {
    iv.hi_closed = false;
  }
  return iv;
}

bool IntervalSpec::contains(const ExponentValue& x) const {
  auto lower = compare(lo, x);
  if (lower == Ordering::Greater || (lower == Ordering::Equal && !lo_closed)) return false;
  if (!hi) return true;
  auto upper = compare(x, *hi);
  return upper == Ordering::Less || (upper == Ordering::Equal && hi_closed);
}

std::string IntervalSpec::to_string() const {
  if (hi && lo == *hi && lo_closed && hi_closed) return "{" + lo.to_string() + "}";
  std::string out = lo_closed ? "[" : "(";
  out += lo.to_string() + ",";
  if (hi)
    out += hi->to_string() + (hi_closed ? "]" : ")");
  else
    out += "inf)";
  return out;
}

BoxModule BoxModule::free(const ExponentVector& corner) { return orthant(corner, 0); }

BoxModule BoxModule::orthant(const ExponentVector& corner, CoordMask open_mask) {
  std::vector<IntervalSpec> ivs;
  for (std::size_t i = 0; i < corner.size(); ++i)
    ivs.push_back(IntervalSpec::ray(corner[i], !(open_mask >> i & 1u)));
  return BoxModule(std::move(ivs));
}

BoxModule BoxModule::point(const ExponentVector& p) {
  std::vector<IntervalSpec> ivs;
  for (const auto& v : p) ivs.push_back(IntervalSpec::point(v));
  return BoxModule(std::move(ivs));
}

ExponentVector BoxModule::lower_corner() const {
  std::vector<ExponentValue> out;
  for (const auto& iv : intervals_) out.push_back(iv.lo);
  return ExponentVector(std::move(out));
}

bool BoxModule::is_free() const {
  return std::all_of(intervals_.begin(), intervals_.end(),
                     [](const IntervalSpec& iv) { return iv.lo_closed && !iv.hi; });
}

bool BoxModule::is_orthant() const {
  return std::none_of(intervals_.begin(), intervals_.end(),
                      [](const IntervalSpec& iv) { return iv.bounded(); });
}

CoordMask BoxModule::open_lower_mask() const {
  CoordMask m = 0;
  for (std::size_t i = 0; i < intervals_.size(); ++i)
    if (!intervals_[i].lo_closed) m |= CoordMask{1} << i;
  return m;
}

bool BoxModule::contains(const ExponentVector& degree) const {
  if (degree.size() != dimension())
    fail(ErrorCode::InvalidInput, "degree has wrong length");
  for (std::size_t i = 0; i < dimension(); ++i)
    if (!intervals_[i].contains(degree[i])) return false;
  return true;
}

BoxModule BoxModule::product(const BoxModule& other) const {
  auto ivs = intervals_;
  ivs.insert(ivs.end(), other.intervals_.begin(), other.intervals_.end());
  return BoxModule(std::move(ivs));
}

std::string BoxModule::to_string() const {
  if (intervals_.empty()) return "k";
  std::string out;
  for (std::size_t i = 0; i < intervals_.size(); ++i) {
    if (i) out += "x";
    out += intervals_[i].to_string();
  }
  return out;
}

// ---------------------------------------------------------------------------
// Arrangements

namespace {

void sort_unique(std::vector<ExponentValue>& values) {
  std::sort(values.begin(), values.end(),
            [](const ExponentValue& a, const ExponentValue& b) { return less(a, b); });
  values.erase(std::unique(values.begin(), values.end(),
                           [](const ExponentValue& a, const ExponentValue& b) {
                             return compare(a, b) == Ordering::Equal;
                           }),
               values.end());
}

}  // namespace

CellArrangement::CellArrangement(std::vector<std::vector<ExponentValue>> critical)
    : critical_(std::move(critical)) {
  for (const auto& values : critical_)
    for (std::size_t j = 1; j < values.size(); ++j)
      if (!less(values[j - 1], values[j]))
        fail(ErrorCode::InvalidInput, "critical values must be strictly increasing");
}

std::size_t CellArrangement::cell_count() const {
  std::size_t count = 1;
  for (std::size_t i = 0; i < dimension(); ++i) count *= pieces(i);
  return count;
}

std::vector<std::size_t> CellArrangement::cell(std::size_t flat) const {
  std::vector<std::size_t> out(dimension());
  for (std::size_t i = dimension(); i-- > 0;) {
    out[i] = flat % pieces(i);
    flat /= pieces(i);
  }
  return out;
}

std::size_t CellArrangement::flat_index(const std::vector<std::size_t>& pieces_idx) const {
  std::size_t flat = 0;
  for (std::size_t i = 0; i < dimension(); ++i) flat = flat * pieces(i) + pieces_idx[i];
  return flat;
}

std::optional<std::size_t> CellArrangement::position(std::size_t coord,
                                                     const ExponentValue& v) const {
  const auto& values = critical_[coord];
  std::size_t lo = 0, hi = values.size();
  while (lo < hi) {
    std::size_t mid = (lo + hi) / 2;
    switch (compare(values[mid], v)) {
      case Ordering::Equal: return mid;
      case Ordering::Less: lo = mid + 1; break;
      case Ordering::Greater: hi = mid; break;
    }
  }
  return std::nullopt;
}

std::size_t CellArrangement::locate(std::size_t coord, const ExponentValue& v) const {
  const auto& values = critical_[coord];
  std::size_t lo = 0, hi = values.size();
  while (lo < hi) {
    std::size_t mid = (lo + hi) / 2;
    switch (compare(values[mid], v)) {
      case Ordering::Equal: return 2 * mid + 1;
      case Ordering::Less: lo = mid + 1; break;
      case Ordering::Greater: hi = mid; break;
    }
  }
  return 2 * lo;
}

std::size_t CellArrangement::locate(const ExponentVector& degree) const {
  if (degree.size() != dimension())
    fail(ErrorCode::InvalidInput, "degree has wrong length");
  std::vector<std::size_t> p(dimension());
  for (std::size_t i = 0; i < dimension(); ++i) p[i] = locate(i, degree[i]);
  return flat_index(p);
}

std::string CellArrangement::piece_to_string(std::size_t coord, std::size_t piece) const {
  const auto& values = critical_[coord];
  if (piece % 2 == 1) return "{" + values[piece / 2].to_string() + "}";
  std::size_t j = piece / 2;
  std::string lo = j == 0 ? "-inf" : values[j - 1].to_string();
  std::string hi = j == values.size() ? "inf" : values[j].to_string();
  return "(" + lo + "," + hi + ")";
}

std::string CellArrangement::cell_to_string(std::size_t flat) const {
  auto p = cell(flat);
  if (p.empty()) return "pt";
  std::string out;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) out += "x";
    out += piece_to_string(i, p[i]);
  }
  return out;
}

CellArrangement CellArrangement::refined(
    const std::vector<std::vector<ExponentValue>>& extra) const {
  auto critical = critical_;
  for (std::size_t i = 0; i < extra.size() && i < critical.size(); ++i) {
    critical[i].insert(critical[i].end(), extra[i].begin(), extra[i].end());
    sort_unique(critical[i]);
  }
  return CellArrangement(std::move(critical));
}

std::size_t CellArrangement::coarsen(const CellArrangement& fine, std::size_t flat) const {
  auto p = fine.cell(flat);
  std::vector<std::size_t> out(dimension());
  for (std::size_t i = 0; i < dimension(); ++i) {
    const auto& fv = fine.critical(i);
    if (p[i] % 2 == 1) {
      out[i] = locate(i, fv[p[i] / 2]);
      continue;
    }
    std::size_t j = p[i] / 2;
    if (j == 0) {
      out[i] = 0;
      continue;
    }
    // Open fine piece (f_{j-1}, f_j) holds no coarse critical value.
    const ExponentValue& left = fv[j - 1];
    std::size_t below = 0;
    for (const auto& c : critical_[i])
      if (less_equal(c, left)) ++below;
    out[i] = 2 * below;
  }
  return flat_index(out);
}

CellArrangement build_arrangement(const std::vector<BoxModule>& boxes, std::size_t n,
                                  const std::vector<std::vector<ExponentValue>>& extra) {
  std::vector<std::vector<ExponentValue>> critical(n);
  for (const auto& box : boxes) {
    if (box.dimension() != n)
      fail(ErrorCode::InvalidInput, "box " + box.to_string() + " is not in " +
                                        std::to_string(n) + " variables");
    for (std::size_t i = 0; i < n; ++i) {
      critical[i].push_back(box[i].lo);
      if (box[i].hi) critical[i].push_back(*box[i].hi);
    }
  }
  for (std::size_t i = 0; i < extra.size() && i < n; ++i)
    critical[i].insert(critical[i].end(), extra[i].begin(), extra[i].end());
  for (auto& values : critical) sort_unique(values);
  return CellArrangement(std::move(critical));
}

// ---------------------------------------------------------------------------
// Placement and evaluation

bool BoxPlacement::contains_piece(std::size_t coord, std::size_t piece) const {
  const auto& c = coords[coord];
  if (piece < c.lo_piece || (piece == c.lo_piece && !c.lo_closed)) return false;
  if (!c.hi_piece) return true;
  return piece < *c.hi_piece || (piece == *c.hi_piece && c.hi_closed);
}

bool BoxPlacement::contains_cell(const std::vector<std::size_t>& pieces) const {
  for (std::size_t i = 0; i < coords.size(); ++i)
    if (!contains_piece(i, pieces[i])) return false;
  return true;
}

BoxPlacement place(const BoxModule& box, const CellArrangement& arrangement) {
  if (box.dimension() != arrangement.dimension())
    fail(ErrorCode::ArrangementMismatch, "box and arrangement dimensions differ");
  BoxPlacement out;
  for (std::size_t i = 0; i < box.dimension(); ++i) {
    const auto& iv = box[i];
    auto lo = arrangement.position(i, iv.lo);
    if (!lo)
      fail(ErrorCode::ArrangementMismatch,
           "endpoint " + iv.lo.to_string() + " is not a critical value");
    BoxPlacement::Coord c{2 * *lo + 1, iv.lo_closed, std::nullopt, iv.hi_closed};
    if (iv.hi) {
      auto hi = arrangement.position(i, *iv.hi);
      if (!hi)
        fail(ErrorCode::ArrangementMismatch,
             "endpoint " + iv.hi->to_string() + " is not a critical value");
      c.hi_piece = 2 * *hi + 1;
    }
    out.coords.push_back(c);
  }
  return out;
}

int evaluate(const BoxModule& box, const CellArrangement& arrangement, std::size_t cell) {
  return place(box, arrangement).contains_cell(arrangement.cell(cell)) ? 1 : 0;
}

// ---------------------------------------------------------------------------
// Canonical morphisms

bool can_map(const BoxModule& source, const BoxModule& target) {
  if (source.dimension() != target.dimension())
    fail(ErrorCode::InvalidInput, "can_map needs boxes in the same variables");
  const std::size_t n = source.dimension();
  std::vector<BoxModule> pair{source, target};
  auto arr = build_arrangement(pair, n);
  auto ps = place(source, arr);
  auto pt = place(target, arr);

  struct CoordOverlap {
    std::size_t first, last;
  };
  std::vector<CoordOverlap> overlaps;
  for (std::size_t i = 0; i < n; ++i) {
    std::optional<std::size_t> first, last;
    for (std::size_t p = 0; p < arr.pieces(i); ++p)
      if (ps.contains_piece(i, p) && pt.contains_piece(i, p)) {
        if (!first) first = p;
        last = p;
      }
    if (!first) return true;  // disjoint supports: the zero map
    overlaps.push_back({*first, *last});
  }
  for (std::size_t i = 0; i < n; ++i) {
    // Up-closure of the overlap stays in the source wherever the target lives.
    for (std::size_t q = overlaps[i].first; q < arr.pieces(i); ++q)
      if (pt.contains_piece(i, q) && !ps.contains_piece(i, q)) return false;
    // Source degrees below the overlap must lie in the target.
    for (std::size_t q = 0; q <= overlaps[i].last; ++q)
      if (ps.contains_piece(i, q) && !pt.contains_piece(i, q)) return false;
  }
  return true;
}

BoxModule minkowski_orthant(const BoxModule& box, CoordMask sigma) {
  std::vector<IntervalSpec> ivs;
  for (std::size_t i = 0; i < box.dimension(); ++i) {
    bool open = (sigma >> i & 1u) || !box[i].lo_closed;
    ivs.push_back(IntervalSpec::ray(box[i].lo, !open));
  }
  return BoxModule(std::move(ivs));
}

CanonicalMorphism::CanonicalMorphism(BoxModule source, BoxModule target, Rational scalar)
    : source_(std::move(source)), target_(std::move(target)), scalar_(std::move(scalar)) {
  if (!can_map(source_, target_))
    fail(ErrorCode::IllegalMorphism,
         "no canonical map " + source_.to_string() + " -> " + target_.to_string());
}

Rational CanonicalMorphism::act(const CellArrangement& arrangement, std::size_t cell) const {
  auto pieces = arrangement.cell(cell);
  if (place(source_, arrangement).contains_cell(pieces) &&
      place(target_, arrangement).contains_cell(pieces))
    return scalar_;
  return 0;
}

// ---------------------------------------------------------------------------
// Fields

FieldConfig FieldConfig::prime_field(std::uint64_t p) {
  if (p < 2 || p >= (std::uint64_t{1} << 31))
    fail(ErrorCode::InvalidInput, "prime must lie in [2, 2^31)");
  for (std::uint64_t d = 2; d * d <= p; ++d)
    if (p % d == 0) fail(ErrorCode::InvalidInput, std::to_string(p) + " is not prime");
  return {Kind::Prime, p};
}

std::string FieldConfig::name() const {
  return kind == Kind::Rationals ? "Q" : "GF(" + std::to_string(prime) + ")";
}

FieldConfig FieldConfig::parse(std::string_view text) {
  std::string s(text);
  if (s == "Q" || s == "QQ" || s == "rationals") return rationals();
  std::string digits;
  if (s.rfind("p:", 0) == 0)
    digits = s.substr(2);
  else if (s.rfind("GF(", 0) == 0 && s.back() == ')')
    digits = s.substr(3, s.size() - 4);
  else
    fail(ErrorCode::InvalidInput, "unknown field '" + s + "'");
  try {
    return prime_field(std::stoull(digits));
  } catch (const std::logic_error&) {
    fail(ErrorCode::InvalidInput, "unknown field '" + s + "'");
  }
}

}  // namespace realexp
