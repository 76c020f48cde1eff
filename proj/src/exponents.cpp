#include "realexp/exponents.hpp"

#include <mpfr.h>

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>

#include "realexp/lattice.hpp"

namespace realexp {

std::string_view error_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidInput: return "InvalidInput";
    case ErrorCode::BasisMismatch: return "BasisMismatch";
    case ErrorCode::PrecisionExhausted: return "PrecisionExhausted";
    case ErrorCode::ArrangementMismatch: return "ArrangementMismatch";
    case ErrorCode::IllegalMorphism: return "IllegalMorphism";
    case ErrorCode::NotFree: return "NotFree";
    case ErrorCode::BadSequence: return "BadSequence";
    case ErrorCode::WindowTooSmall: return "WindowTooSmall";
    case ErrorCode::NotInGroup: return "NotInGroup";
    case ErrorCode::NotInOpenCone: return "NotInOpenCone";
    case ErrorCode::Infeasible: return "Infeasible";
    case ErrorCode::EscapeViolated: return "EscapeViolated";
    case ErrorCode::NonzeroDifferential: return "NonzeroDifferential";
    case ErrorCode::LiftFailed: return "LiftFailed";
  }
  return "Unknown";
}

// ---------------------------------------------------------------------------
// Rationals

Rational parse_rational(std::string_view text) {
  std::string s(text);
  s.erase(std::remove_if(s.begin(), s.end(), ::isspace), s.end());
  if (s.empty()) fail(ErrorCode::InvalidInput, "empty rational");
  auto bad = [&] { fail(ErrorCode::InvalidInput, "malformed rational '" + s + "'"); };
  if (auto slash = s.find('/'); slash != std::string::npos) {
    Integer num, den;
    if (num.set_str(s.substr(0, slash), 10) != 0) bad();
    if (den.set_str(s.substr(slash + 1), 10) != 0) bad();
    if (den == 0) fail(ErrorCode::InvalidInput, "zero denominator in '" + s + "'");
    Rational q(num, den);
    q.canonicalize();
    return q;
  }
  std::size_t pos = 0;
  bool negative = false;
  if (s[pos] == '+' || s[pos] == '-') negative = s[pos++] == '-';
  std::string digits;
  long scale = 0;
  bool seen_point = false;
  for (; pos < s.size() && s[pos] != 'e' && s[pos] != 'E'; ++pos) {
    if (s[pos] == '.') {
      if (seen_point) bad();
      seen_point = true;
    } else if (std::isdigit(static_cast<unsigned char>(s[pos]))) {
      digits += s[pos];
      if (seen_point) ++scale;
    } else {
      bad();
    }
  }
  if (digits.empty()) bad();
  if (pos < s.size()) {
    std::string exp = s.substr(pos + 1);
    if (exp.empty()) bad();
    try {
      std::size_t used = 0;
      long e = std::stol(exp, &used);
      if (used != exp.size()) bad();
      scale -= e;
    } catch (const std::logic_error&) {
      bad();
    }
  }
  Integer num(digits, 10);
  if (negative) num = -num;
  Integer p10;
  mpz_ui_pow_ui(p10.get_mpz_t(), 10, static_cast<unsigned long>(std::labs(scale)));
  Rational q = scale >= 0 ? Rational(num, p10) : Rational(num * p10, 1);
  q.canonicalize();
  return q;
}

std::string rational_to_string(const Rational& q) { return q.get_str(); }

// ---------------------------------------------------------------------------
// Constant basis

namespace {

Rational mpfr_to_rational(mpfr_t x) {
  Rational q;
  mpfr_get_q(q.get_mpq_t(), x);
  return q;
}

std::optional<Enclosure> known_constant(const std::string& name, int digits) {
  using Eval = void (*)(mpfr_t, mpfr_rnd_t);
  Eval eval = nullptr;
  if (name == "pi") {
    eval = [](mpfr_t x, mpfr_rnd_t r) { mpfr_const_pi(x, r); };
  } else if (name == "e") {
    eval = [](mpfr_t x, mpfr_rnd_t r) {
      mpfr_set_ui(x, 1, MPFR_RNDN);
      mpfr_exp(x, x, r);
    };
  } else if (name == "sqrt2") {
    eval = [](mpfr_t x, mpfr_rnd_t r) { mpfr_sqrt_ui(x, 2, r); };
  } else if (name == "sqrt3") {
    eval = [](mpfr_t x, mpfr_rnd_t r) { mpfr_sqrt_ui(x, 3, r); };
  } else if (name == "ln2") {
    eval = [](mpfr_t x, mpfr_rnd_t r) { mpfr_const_log2(x, r); };
  } else {
    return std::nullopt;
  }
  auto bits = static_cast<mpfr_prec_t>(digits * 3.33) + 32;
  mpfr_t lo, hi;
  mpfr_init2(lo, bits);
  mpfr_init2(hi, bits);
  eval(lo, MPFR_RNDD);
  eval(hi, MPFR_RNDU);
  Enclosure out{mpfr_to_rational(lo), mpfr_to_rational(hi)};
  mpfr_clear(lo);
  mpfr_clear(hi);
  mpfr_free_cache();
  return out;
}

}  // namespace

ConstantBasis::ConstantBasis(std::vector<Symbol> symbols, int precision_cap)
    : symbols_(std::move(symbols)), precision_cap_(precision_cap) {
  if (precision_cap_ < 1)
    fail(ErrorCode::InvalidInput, "precision cap must be positive");
  for (std::size_t i = 0; i < symbols_.size(); ++i) {
    auto& s = symbols_[i];
    if (s.name.empty()) fail(ErrorCode::InvalidInput, "empty symbol name");
    if (s.lo > s.hi)
      fail(ErrorCode::InvalidInput, "enclosure of '" + s.name + "' has lo > hi");
    if (s.exact() != (s.independence_class == 0))
      fail(ErrorCode::InvalidInput,
           "symbol '" + s.name +
               "': exact values belong to class 0 and only they do");
    for (std::size_t j = 0; j < i; ++j)
      if (symbols_[j].name == s.name)
        fail(ErrorCode::InvalidInput, "duplicate symbol '" + s.name + "'");
  }
}

BasisPtr ConstantBasis::standard() {
  static const BasisPtr basis = [] {
    std::vector<Symbol> syms{
        {"pi", parse_rational("3.14"), parse_rational("3.15"), 1},
        {"e", parse_rational("2.71"), parse_rational("2.72"), 2},
        {"sqrt2", parse_rational("1.41"), parse_rational("1.42"), 3},
        {"sqrt3", parse_rational("1.73"), parse_rational("1.74"), 4},
        {"ln2", parse_rational("0.69"), parse_rational("0.70"), 5},
    };
    return std::make_shared<const ConstantBasis>(std::move(syms));
  }();
  return basis;
}

std::optional<std::size_t> ConstantBasis::find(std::string_view name) const {
  for (std::size_t i = 0; i < symbols_.size(); ++i)
    if (symbols_[i].name == name) return i;
  return std::nullopt;
}

Enclosure ConstantBasis::enclosure(std::size_t index, int digits) const {
  const auto& s = symbols_.at(index);
  if (s.exact()) return {s.lo, s.hi};
  std::lock_guard lock(cache_mutex_);
  auto key = std::make_pair(index, digits);
  if (auto it = cache_.find(key); it != cache_.end()) return it->second;
  Enclosure out{s.lo, s.hi};
  if (auto refined = known_constant(s.name, digits)) {
    out.lo = std::max(out.lo, refined->lo);
    out.hi = std::min(out.hi, refined->hi);
    if (out.lo > out.hi)
      fail(ErrorCode::InvalidInput,
           "declared enclosure of '" + s.name + "' excludes its true value");
  }
  cache_.emplace(key, out);
  return out;
}

// ---------------------------------------------------------------------------
// ExponentValue

namespace {

const BasisPtr& merged_basis(const BasisPtr& a, bool a_symbolic, const BasisPtr& b,
                             bool b_symbolic) {
  if (a_symbolic && b_symbolic && a != b)
    fail(ErrorCode::BasisMismatch, "exponents use different constant bases");
  return a_symbolic ? a : b;
}

}  // namespace

ExponentValue ExponentValue::symbol(BasisPtr basis, std::string_view name,
                                    const Integer& coeff) {
  if (!basis) basis = ConstantBasis::standard();
  auto idx = basis->find(name);
  if (!idx) fail(ErrorCode::InvalidInput, "unknown symbol '" + std::string(name) + "'");
  return from_terms(std::move(basis), 0, {{*idx, coeff}});
}

ExponentValue ExponentValue::from_terms(BasisPtr basis, Rational rational,
                                        std::vector<Term> terms) {
  ExponentValue v;
  v.rational_ = std::move(rational);
  v.rational_.canonicalize();
  std::sort(terms.begin(), terms.end(),
            [](const Term& a, const Term& b) { return a.first < b.first; });
  for (auto& [idx, c] : terms) {
    if (!basis) fail(ErrorCode::InvalidInput, "symbolic term without a basis");
    const auto& sym = basis->symbol(idx);
    if (sym.exact()) {
      v.rational_ += Rational(c) * sym.lo;
      continue;
    }
    if (!v.terms_.empty() && v.terms_.back().first == idx)
      v.terms_.back().second += c;
    else
      v.terms_.emplace_back(idx, c);
  }
  std::erase_if(v.terms_, [](const Term& t) { return t.second == 0; });
  if (!v.terms_.empty()) v.basis_ = std::move(basis);
  return v;
}

ExponentValue ExponentValue::operator-() const {
  ExponentValue v = *this;
  v.rational_ = -v.rational_;
  for (auto& t : v.terms_) t.second = -t.second;
  return v;
}

ExponentValue& ExponentValue::operator+=(const ExponentValue& other) {
  if (other.terms_.empty()) {
    rational_ += other.rational_;
    return *this;
  }
  BasisPtr basis = merged_basis(basis_, !terms_.empty(), other.basis_, true);
  std::vector<Term> merged = terms_;
  merged.insert(merged.end(), other.terms_.begin(), other.terms_.end());
  *this = from_terms(std::move(basis), rational_ + other.rational_, std::move(merged));
  return *this;
}

ExponentValue& ExponentValue::operator-=(const ExponentValue& other) {
  return *this += -other;
}

ExponentValue ExponentValue::scaled(const Integer& k) const {
  ExponentValue v = *this;
  v.rational_ *= Rational(k);
  for (auto& t : v.terms_) t.second *= k;
  if (k == 0) {
    v.terms_.clear();
    v.basis_.reset();
  }
  return v;
}

ExponentValue ExponentValue::scaled(const Rational& k) const {
  ExponentValue v = *this;
  v.rational_ *= k;
  for (auto& t : v.terms_) {
    Rational c = Rational(t.second) * k;
    c.canonicalize();
    if (c.get_den() != 1)
      fail(ErrorCode::InvalidInput,
           "scaling " + to_string() + " by " + k.get_str() +
               " leaves a non-integral symbolic coefficient");
    t.second = c.get_num();
  }
  if (k == 0) {
    v.terms_.clear();
    v.basis_.reset();
  }
  return v;
}

Enclosure ExponentValue::enclose(int digits) const {
  Enclosure e{rational_, rational_};
  for (const auto& [idx, c] : terms_) {
    auto s = basis_->enclosure(idx, digits);
    Rational cq(c);
    if (c > 0) {
      e.lo += cq * s.lo;
      e.hi += cq * s.hi;
    } else {
      e.lo += cq * s.hi;
      e.hi += cq * s.lo;
    }
  }
  return e;
}

std::string ExponentValue::to_string() const {
  std::ostringstream os;
  bool first = true;
  if (rational_ != 0 || terms_.empty()) {
    os << rational_.get_str();
    first = false;
  }
  for (const auto& [idx, c] : terms_) {
    const std::string& name = basis_->symbol(idx).name;
    if (c < 0)
      os << '-';
    else if (!first)
      os << '+';
    Integer mag = abs(c);
    if (mag != 1) os << mag.get_str() << '*';
    os << name;
    first = false;
  }
  return os.str();
}

bool operator==(const ExponentValue& a, const ExponentValue& b) {
  if (a.rational_ != b.rational_ || a.terms_.size() != b.terms_.size()) return false;
  if (a.terms_.empty()) return true;
  if (a.basis_ != b.basis_) return false;
  return a.terms_ == b.terms_;
}

const char* ordering_name(Ordering o) {
  switch (o) {
    case Ordering::Less: return "less";
    case Ordering::Equal: return "equal";
    case Ordering::Greater: return "greater";
  }
  return "?";
}

Ordering compare(const ExponentValue& a, const ExponentValue& b) {
  if (a.is_rational() && b.is_rational()) {
    int c = cmp(a.rational_part(), b.rational_part());
    return c < 0 ? Ordering::Less : c > 0 ? Ordering::Greater : Ordering::Equal;
  }
  if (a == b) return Ordering::Equal;
  ExponentValue d = a - b;
  if (d.is_rational()) {
    int c = sgn(d.rational_part());
    return c < 0 ? Ordering::Less : c > 0 ? Ordering::Greater : Ordering::Equal;
  }
  const int cap = d.basis()->precision_cap();
  for (int digits = std::min(16, cap);; digits = std::min(2 * digits, cap)) {
    auto e = d.enclose(digits);
    if (e.lo > 0) return Ordering::Greater;
    if (e.hi < 0) return Ordering::Less;
    if (digits >= cap) break;
  }
  fail(ErrorCode::PrecisionExhausted,
       "cannot separate " + d.to_string() + " from 0 within " +
           std::to_string(cap) + " digits (undeclared linear relation?)");
}

int sign(const ExponentValue& v) {
  switch (compare(v, ExponentValue{})) {
    case Ordering::Less: return -1;
    case Ordering::Equal: return 0;
    case Ordering::Greater: return 1;
  }
  return 0;
}

Rational rational_between(const ExponentValue& a, const ExponentValue& b) {
  if (compare(a, b) != Ordering::Less)
    fail(ErrorCode::InvalidInput, "rational_between needs a < b");
  if (a.is_rational() && b.is_rational())
    return (a.rational_part() + b.rational_part()) / 2;
  const BasisPtr& basis = a.is_rational() ? b.basis() : a.basis();
  const int cap = basis->precision_cap();
  for (int digits = std::min(16, cap);; digits = std::min(2 * digits, cap)) {
    Rational hi_a = a.enclose(digits).hi;
    Rational lo_b = b.enclose(digits).lo;
    if (hi_a < lo_b) return (hi_a + lo_b) / 2;
    if (digits >= cap) break;
  }
  fail(ErrorCode::PrecisionExhausted, "no separating rational found");
}

// ---------------------------------------------------------------------------
// Parsing

ExponentValue parse_exponent(std::string_view text, BasisPtr basis) {
  if (!basis) basis = ConstantBasis::standard();
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
  if (s.empty()) fail(ErrorCode::InvalidInput, "empty exponent");
  auto bad = [&] { fail(ErrorCode::InvalidInput, "malformed exponent '" + s + "'"); };

  Rational rational = 0;
  std::vector<ExponentValue::Term> terms;
  std::size_t pos = 0;
  while (pos < s.size()) {
    bool negative = false;
    if (s[pos] == '+' || s[pos] == '-') {
      negative = s[pos] == '-';
      ++pos;
    } else if (pos != 0) {
      bad();
    }
    std::size_t num_end = pos;
    while (num_end < s.size() &&
           (std::isdigit(static_cast<unsigned char>(s[num_end])) || s[num_end] == '.' ||
            s[num_end] == '/'))
      ++num_end;
    std::optional<Rational> coeff;
    if (num_end > pos) coeff = parse_rational(s.substr(pos, num_end - pos));
    pos = num_end;
    if (pos < s.size() && s[pos] == '*') {
      if (!coeff) bad();
      ++pos;
    }
    std::size_t id_end = pos;
    while (id_end < s.size() &&
           (std::isalnum(static_cast<unsigned char>(s[id_end])) || s[id_end] == '_'))
      ++id_end;
    std::string name = s.substr(pos, id_end - pos);
    pos = id_end;
    if (!coeff && name.empty()) bad();
    Rational c = coeff.value_or(Rational(1));
    if (negative) c = -c;
    if (name.empty()) {
      rational += c;
      continue;
    }
    auto idx = basis->find(name);
    if (!idx) fail(ErrorCode::InvalidInput, "unknown symbol '" + name + "'");
    const auto& sym = basis->symbol(*idx);
    if (sym.exact()) {
      rational += c * sym.lo;
      continue;
    }
    if (c.get_den() != 1)
      fail(ErrorCode::InvalidInput, "symbolic coefficients must be integers in '" + s + "'");
    terms.emplace_back(*idx, c.get_num());
  }
  return ExponentValue::from_terms(basis, rational, std::move(terms));
}

// ---------------------------------------------------------------------------
// ExponentVector

ExponentVector ExponentVector::axis(std::size_t n, std::size_t axis,
                                    const ExponentValue& v) {
  auto out = zero(n);
  out[axis] = v;
  return out;
}

ExponentVector& ExponentVector::operator+=(const ExponentVector& other) {
  if (size() != other.size())
    fail(ErrorCode::InvalidInput, "exponent vectors of different length");
  for (std::size_t i = 0; i < size(); ++i) entries_[i] += other.entries_[i];
  return *this;
}

ExponentVector& ExponentVector::operator-=(const ExponentVector& other) {
  if (size() != other.size())
    fail(ErrorCode::InvalidInput, "exponent vectors of different length");
  for (std::size_t i = 0; i < size(); ++i) entries_[i] -= other.entries_[i];
  return *this;
}

ExponentVector ExponentVector::operator-() const {
  ExponentVector v = *this;
  for (auto& e : v.entries_) e = -e;
  return v;
}

ExponentVector ExponentVector::scaled(const Rational& k) const {
  ExponentVector v = *this;
  for (auto& e : v.entries_) e = e.scaled(k);
  return v;
}

ExponentVector ExponentVector::restricted(unsigned mask) const {
  ExponentVector v = *this;
  for (std::size_t i = 0; i < size(); ++i)
    if (!(mask >> i & 1u)) v.entries_[i] = ExponentValue{};
  return v;
}

std::string ExponentVector::to_string() const {
  std::string out = "(";
  for (std::size_t i = 0; i < size(); ++i) {
    if (i) out += ", ";
    out += entries_[i].to_string();
  }
  return out + ")";
}

bool leq(const ExponentVector& a, const ExponentVector& b) {
  if (a.size() != b.size())
    fail(ErrorCode::InvalidInput, "exponent vectors of different length");
  for (std::size_t i = 0; i < a.size(); ++i)
    if (compare(a[i], b[i]) == Ordering::Greater) return false;
  return true;
}

bool is_nonnegative(const ExponentVector& v) {
  return std::all_of(v.begin(), v.end(), [](const auto& x) { return sign(x) >= 0; });
}

bool is_strictly_positive(const ExponentVector& v) {
  return std::all_of(v.begin(), v.end(), [](const auto& x) { return sign(x) > 0; });
}

ExponentVector meet(const ExponentVector& a, const ExponentVector& b) {
  if (a.size() != b.size())
    fail(ErrorCode::InvalidInput, "exponent vectors of different length");
  ExponentVector out = a;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (compare(b[i], a[i]) == Ordering::Less) out[i] = b[i];
  return out;
}

// ---------------------------------------------------------------------------
// Groups

ExponentGroup ExponentGroup::rational_lattice(std::size_t n, const Integer& d) {
  ExponentGroup g;
  g.n = n;
  for (std::size_t i = 0; i < n; ++i)
    g.generators.push_back(ExponentVector::axis(n, i, ExponentValue(Rational(Rational(1, 1) / Rational(d)))));
  return g;
}

namespace {

// Integer encoding of real values: one row per direction (1, then each
// irrational symbol), rationals scaled by a common denominator.
struct DirectionEncoder {
  std::vector<std::size_t> symbols;
  Integer scale = 1;

  void observe(const ExponentValue& v) {
    Integer den = v.rational_part().get_den();
    mpz_lcm(scale.get_mpz_t(), scale.get_mpz_t(), den.get_mpz_t());
    for (const auto& t : v.symbolic_part())
      if (std::find(symbols.begin(), symbols.end(), t.first) == symbols.end())
        symbols.push_back(t.first);
  }
  void finalize() { std::sort(symbols.begin(), symbols.end()); }
  std::size_t dim() const { return 1 + symbols.size(); }

  std::vector<Integer> encode(const ExponentValue& v) const {
    std::vector<Integer> out(dim(), 0);
    Rational r = v.rational_part() * Rational(scale);
    out[0] = r.get_num();
    for (const auto& [idx, c] : v.symbolic_part()) {
      auto it = std::lower_bound(symbols.begin(), symbols.end(), idx);
      out[1 + (it - symbols.begin())] = c;
    }
    return out;
  }

  ExponentValue decode(const std::vector<Integer>& enc, const BasisPtr& basis) const {
    std::vector<ExponentValue::Term> terms;
    for (std::size_t k = 0; k < symbols.size(); ++k)
      if (enc[1 + k] != 0) terms.emplace_back(symbols[k], enc[1 + k]);
    return ExponentValue::from_terms(basis, Rational(enc[0], scale), std::move(terms));
  }
};

void check_group_vector(const ExponentVector& v, const ExponentGroup& g) {
  if (v.size() != g.n)
    fail(ErrorCode::InvalidInput, "vector length " + std::to_string(v.size()) +
                                      " does not match group dimension " +
                                      std::to_string(g.n));
  for (const auto& x : v)
    if (!x.is_rational() && g.basis && x.basis() != g.basis)
      fail(ErrorCode::BasisMismatch, "vector uses a basis foreign to the group");
}

// Appends, for every coordinate in `coords`, the equations
// Σ_j α_j g_j[i] = rhs[i] split by direction.
void append_equations(const ExponentGroup& g, const std::vector<std::size_t>& coords,
                      const ExponentVector* rhs, lattice::IntMatrix& a,
                      std::vector<Integer>& b) {
  for (std::size_t i : coords) {
    DirectionEncoder enc;
    for (const auto& gen : g.generators) enc.observe(gen[i]);
    if (rhs) enc.observe((*rhs)[i]);
    enc.finalize();
    std::vector<std::vector<Integer>> cols;
    for (const auto& gen : g.generators) cols.push_back(enc.encode(gen[i]));
    std::vector<Integer> target =
        rhs ? enc.encode((*rhs)[i]) : std::vector<Integer>(enc.dim(), 0);
    for (std::size_t d = 0; d < enc.dim(); ++d) {
      std::vector<Integer> row(g.generators.size());
      for (std::size_t j = 0; j < g.generators.size(); ++j) row[j] = cols[j][d];
      a.push_back(std::move(row));
      b.push_back(target[d]);
    }
  }
}

}  // namespace

Membership is_member(const ExponentVector& v, const ExponentGroup& g) {
  check_group_vector(v, g);
  std::vector<std::size_t> coords(g.n);
  std::iota(coords.begin(), coords.end(), 0);
  lattice::IntMatrix a;
  std::vector<Integer> b;
  append_equations(g, coords, &v, a, b);
  auto x = lattice::solve_integer(a, g.generators.size(), b);
  if (!x) return {};
  return {true, std::move(*x)};
}

std::vector<ExponentValue> ray_intersection(const ExponentGroup& g, std::size_t axis) {
  if (axis >= g.n) fail(ErrorCode::InvalidInput, "axis out of range");
  std::vector<std::size_t> others;
  for (std::size_t i = 0; i < g.n; ++i)
    if (i != axis) others.push_back(i);
  lattice::IntMatrix a;
  std::vector<Integer> b;
  append_equations(g, others, nullptr, a, b);
  auto kernel = lattice::integer_kernel(a, g.generators.size());

  std::vector<ExponentValue> images;
  for (const auto& k : kernel) {
    ExponentValue y;
    for (std::size_t j = 0; j < k.size(); ++j) y += g.generators[j][axis].scaled(k[j]);
    images.push_back(std::move(y));
  }
  DirectionEncoder enc;
  for (const auto& y : images) enc.observe(y);
  enc.finalize();
  std::vector<std::vector<Integer>> encoded;
  for (const auto& y : images) encoded.push_back(enc.encode(y));
  std::vector<ExponentValue> out;
  for (const auto& row : lattice::hermite_basis(encoded, enc.dim()))
    out.push_back(enc.decode(row, g.basis));
  return out;
}

bool ray_projection_in_group(const ExponentVector& v, std::size_t axis,
                             const ExponentGroup& g) {
  return is_member(ExponentVector::axis(g.n, axis, v[axis]), g).member;
}

bool in_open_cone(const ExponentVector& v, const ExponentGroup& g) {
  if (!is_member(v, g).member || !is_nonnegative(v))
    fail(ErrorCode::NotInGroup, v.to_string() + " is not in G_+");
  for (std::size_t i = 0; i < g.n; ++i) {
    if (sign(v[i]) <= 0) return false;
    if (!ray_projection_in_group(v, i, g)) return false;
  }
  return true;
}

}  // namespace realexp
