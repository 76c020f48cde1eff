#include "realexp/certificates.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace realexp {

namespace {

long binomial(long n, long k) {
  if (k < 0 || k > n) return 0;
  long r = 1;
  for (long i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

CoordMask full_mask(std::size_t n) {
  return n >= 32 ? ~CoordMask{0} : (CoordMask{1} << n) - 1;
}

IntervalSpec half_open_unit() { return IntervalSpec::make(0, true, ExponentValue(1), false); }

}  // namespace

// ---------------------------------------------------------------------------
// Fixtures

namespace fixtures {

std::vector<BoxModule> residue_field(std::size_t n) {
  return {BoxModule::point(ExponentVector::zero(n))};
}

std::vector<BoxModule> quotient_i(std::size_t n) {
  if (n == 0) fail(ErrorCode::InvalidInput, "R/I needs at least one variable");
  std::vector<IntervalSpec> ivs(n - 1, half_open_unit());
  ivs.push_back(IntervalSpec::point(0));
  return {BoxModule(std::move(ivs))};
}

std::vector<BoxModule> quotient_i_prime(std::size_t n) {
  if (n == 0) fail(ErrorCode::InvalidInput, "R/I' needs at least one variable");
  std::vector<IntervalSpec> ivs(n - 1, half_open_unit());
  ivs.push_back(IntervalSpec::make(0, true, ExponentValue(1), true));
  return {BoxModule(std::move(ivs))};
}

std::vector<BoxModule> power_quotient(const ExponentVector& eps) {
  if (!is_strictly_positive(eps))
    fail(ErrorCode::InvalidInput, "power quotient exponent must be strictly positive");
  std::vector<IntervalSpec> ivs;
  for (const auto& e : eps) ivs.push_back(IntervalSpec::make(0, true, e, false));
  return {BoxModule(std::move(ivs))};
}

std::vector<BoxModule> truncated_f(const TruncationSequence& seq) {
  seq.validate(1);
  if (seq.variables() != 1) fail(ErrorCode::InvalidInput, "F lives in one variable");
  std::vector<BoxModule> out;
  for (const auto& e : seq.entries) out.push_back(BoxModule::free(e));
  return out;
}

std::vector<BoxModule> by_name(const std::string& name, std::size_t n) {
  if (name == "k") return residue_field(n);
  if (name == "R/I") return quotient_i(n);
  if (name == "R/I'") return quotient_i_prime(n);
  if (name == "B") return power_quotient(ExponentVector(std::vector<ExponentValue>(n, 1)));
  if (name == "R") return {BoxModule::free(ExponentVector::zero(n))};
  fail(ErrorCode::InvalidInput, "unknown fixture '" + name + "'");
}

}  // namespace fixtures

// ---------------------------------------------------------------------------
// Support escape

SupportEscapeCertificate support_escape(std::size_t K, const Rational& c,
                                        const TruncationSequence& seq) {
  seq.validate(1);
  if (seq.variables() != 1) fail(ErrorCode::InvalidInput, "support escape is a one-variable computation");
  if (seq.depth() < K) fail(ErrorCode::BadSequence, "sequence shorter than depth " + std::to_string(K));
  const auto& e = seq.entries;
  auto allowed = [&](std::size_t j, std::size_t k) { return less_equal(e[k][0], e[j][0]); };

  SupportEscapeCertificate cert;
  cert.depth = K;
  cert.scalar = c;
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> column;
  for (std::size_t j = 0; j <= K; ++j)
    for (std::size_t k = 0; k <= K; ++k)
      if (allowed(j, k)) {
        column[{j, k}] = cert.unknowns.size();
        cert.unknowns.emplace_back(j, k);
      }
  const std::size_t cols = cert.unknowns.size();
  std::vector<std::vector<Rational>> a;
  std::vector<Rational> b;
  // φ(x^{e_j}) = x^{e_j − e_j'} φ(x^{e_j'}) for e_j' ≤ e_j, compared on each 1_k.
  for (std::size_t j = 0; j <= K; ++j)
    for (std::size_t jp = 0; jp <= K; ++jp) {
      if (jp == j || !less(e[jp][0], e[j][0])) continue;
      for (std::size_t k = 0; k <= K; ++k) {
        std::vector<Rational> row(cols, 0);
        bool any = false;
        if (allowed(j, k)) row[column[{j, k}]] += 1, any = true;
        if (allowed(jp, k)) row[column[{jp, k}]] -= 1, any = true;
        if (!any) continue;
        a.push_back(std::move(row));
        b.push_back(0);
      }
    }
  // α∘φ = c·id: Σ_k u_{jk} = c.
  for (std::size_t j = 0; j <= K; ++j) {
    std::vector<Rational> row(cols, 0);
    for (std::size_t k = 0; k <= K; ++k)
      if (allowed(j, k)) row[column[{j, k}]] = 1;
    a.push_back(std::move(row));
    b.push_back(c);
  }
  auto sol = linalg::solve(a, b, cols);
  if (!sol.feasible)
    fail(ErrorCode::Infeasible, "no splitting at depth " + std::to_string(K) + " for c = " +
                                    rational_to_string(c));
  cert.particular = sol.particular;
  cert.nullity = sol.nullspace.size();
  cert.zero_solution = std::all_of(sol.particular.begin(), sol.particular.end(),
                                   [](const Rational& x) { return x == 0; });
  std::set<std::size_t> forced;
  for (std::size_t col = 0; col < cols; ++col) {
    if (sol.particular[col] == 0) continue;
    bool fixed = std::all_of(sol.nullspace.begin(), sol.nullspace.end(),
                             [&](const auto& v) { return v[col] == 0; });
    if (fixed) forced.insert(cert.unknowns[col].second);
  }
  cert.forced_indices.assign(forced.begin(), forced.end());
  if (!forced.empty()) cert.min_forced_index = *forced.begin();
  return cert;
}

// ---------------------------------------------------------------------------
// Resolution of k over R₁

BoxComplex k_resolution(const TruncationSequence& seq) {
  seq.validate(1);
  if (seq.variables() != 1) fail(ErrorCode::InvalidInput, "k-resolution is over one variable");
  BoxComplex c(1);
  const std::size_t K = seq.depth();
  c.add_term(0, BoxModule::free(ExponentVector::zero(1)));
  for (std::size_t k = 0; k <= K; ++k) {
    c.add_term(1, BoxModule::free(seq.entries[k]));
    c.add_entry(1, 0, k, 1);
  }
  for (std::size_t k = 0; k < K; ++k) {
    c.add_term(2, BoxModule::free(seq.entries[k]));
    c.add_entry(2, k, k, 1);
    c.add_entry(2, k + 1, k, -1);
  }
  return c;
}

void check_k_resolution(const BoxComplex& resolution, const TruncationSequence& seq) {
  if (auto v = verify_complex(resolution))
    fail(ErrorCode::EscapeViolated, "k-resolution pre-check: " + v->message);
  HomologyOptions opts;
  opts.refine = {{ExponentValue(0), seq.entries.back()[0]}};
  auto table = homology(resolution, opts);
  const auto& arr = table.arrangement;
  const std::size_t zero = arr.locate(0, 0);
  const std::size_t edge = arr.locate(0, seq.entries.back()[0]);
  for (std::size_t cell = 0; cell < table.cell_count(); ++cell) {
    std::size_t p = arr.cell(cell)[0];
    if (p > zero && p < edge) continue;  // below the truncation scale
    for (int d = table.min_degree; d <= table.max_degree(); ++d) {
      int expect = (d == 0 && p == zero) ? 1 : 0;
      if (table.at(cell, d) != expect)
        fail(ErrorCode::EscapeViolated, "k-resolution pre-check: H_" + std::to_string(d) + " = " +
                                            std::to_string(table.at(cell, d)) + " on " +
                                            arr.cell_to_string(cell));
    }
  }
}

// ---------------------------------------------------------------------------
// Dual Koszul collapse

DualKoszulRanks dual_koszul_collapse(std::size_t n, const ExponentValue& exponent) {
  if (n == 0) fail(ErrorCode::InvalidInput, "dual Koszul collapse needs n >= 1");
  const std::size_t m = n - 1;
  BoxComplex koszul =
      m == 0 ? point_complex()
             : ordinary_koszul(ExponentVector(std::vector<ExponentValue>(m, exponent)));
  BoxComplex collapsed = collapse_free(dualize_free(koszul), full_mask(m));
  for (int d : collapsed.degrees())
    for (const auto& e : collapsed.differential(d)) {
      const auto& src = collapsed.term(d)[e.col];
      const auto& dst = collapsed.term(d - 1)[e.row];
      if (dst.contains(src.lower_corner()))
        fail(ErrorCode::NonzeroDifferential,
             "dual Koszul entry " + src.to_string() + " -> " + dst.to_string() + " survives");
    }
  DualKoszulRanks out;
  out.n = n;
  out.differentials_vanish = true;
  auto table = homology(collapsed);
  for (std::size_t q = 0; q <= m; ++q) {
    long rank = static_cast<long>(collapsed.rank(-static_cast<int>(q)));
    if (table.total(-static_cast<int>(q)) != rank)
      fail(ErrorCode::NonzeroDifferential, "cohomology rank differs from term rank in degree " +
                                               std::to_string(q));
    out.ranks.push_back(rank);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Ext certificates

TruncationSequence default_escape_sequence(std::size_t K) {
  return TruncationSequence::geometric(ExponentVector{1}, 1, K);
}

namespace {

std::vector<SupportEscapeCertificate> escape_sweep(std::size_t k_max, const TruncationSequence& seq) {
  std::vector<SupportEscapeCertificate> out;
  for (std::size_t K = 1; K <= k_max; ++K) {
    auto cert = support_escape(K, 1, seq.truncated(K));
    if (cert.min_forced_index != K)
      fail(ErrorCode::EscapeViolated, "depth " + std::to_string(K) +
                                          ": a splitting avoids the deepest truncation index");
    out.push_back(std::move(cert));
  }
  auto zero = support_escape(k_max, 0, seq.truncated(k_max));
  if (!zero.zero_solution)
    fail(ErrorCode::EscapeViolated, "the zero map does not split c = 0");
  return out;
}

std::string status_for(std::size_t k_max) { return "verified-up-to-K" + std::to_string(k_max); }

}  // namespace

ExtCertificate ext2_certificate(std::size_t k_max, const TruncationSequence& seq,
                                const std::optional<BoxComplex>& resolution) {
  if (k_max < 2) fail(ErrorCode::InvalidInput, "K_max must be at least 2");
  if (seq.depth() < k_max)
    fail(ErrorCode::BadSequence, "sequence depth " + std::to_string(seq.depth()) + " < K_max");
  TruncationSequence s = seq.truncated(k_max);
  BoxComplex res = resolution ? *resolution : k_resolution(s);
  check_k_resolution(res, s);

  ExtCertificate cert;
  cert.claim = "Ext^2_{R_1}(k, F) != 0";
  cert.n = 1;
  cert.degree = 2;
  cert.witness_p = 2;
  cert.witness_q = 0;
  cert.k_max = k_max;
  cert.sequence = s;
  cert.escapes = escape_sweep(k_max, s);
  cert.dual = {1, {1}, true};
  for (int i = 0; i <= 2; ++i) cert.table.push_back({i, i, 0, 1, i == 2});
  for (int d = 0; d <= 2; ++d) {
    cert.total_ranks.push_back(static_cast<long>(res.rank(d)));
    cert.formula_ranks.push_back(static_cast<long>(res.rank(d)));
  }
  cert.notes = {"0 <- k <- R_1 <- m_1 <- 0 gives Ext^{i+1}(k,-) = Ext^i(m_1,-) for i >= 1",
                "Hom(m_1,F) -> R_1 has image m_1, so k embeds in Ext^1(m_1,F) = Ext^2(k,F)",
                "escape: every splitting at depth K uses generator 1_K"};
  cert.status = status_for(k_max);
  return cert;
}

ExtCertificate ext_n_plus_1(std::size_t n, std::size_t k_max,
                            const std::optional<TruncationSequence>& seq) {
  if (n == 0) fail(ErrorCode::InvalidInput, "n must be at least 1");
  TruncationSequence s = seq ? *seq : default_escape_sequence(k_max);
  ExtCertificate cert = ext2_certificate(k_max, s);
  if (n == 1) return cert;

  cert.claim = "Ext^" + std::to_string(n + 1) + "_R(R/I, F) != 0";
  cert.n = n;
  cert.degree = static_cast<int>(n) + 1;
  cert.witness_q = static_cast<int>(n) - 1;
  cert.dual = dual_koszul_collapse(n);
  for (std::size_t q = 0; q < n; ++q)
    if (cert.dual.ranks[q] != binomial(static_cast<long>(n) - 1, static_cast<long>(q)))
      fail(ErrorCode::NonzeroDifferential, "dual Koszul rank mismatch in degree " + std::to_string(q));

  cert.table.clear();
  for (int i = 0; i <= static_cast<int>(n) + 1; ++i)
    for (int p = 0; p <= 2; ++p) {
      int q = i - p;
      if (q < 0 || q > static_cast<int>(n) - 1) continue;
      cert.table.push_back({i, p, q, binomial(static_cast<long>(n) - 1, q),
                            p == 2 && q == static_cast<int>(n) - 1});
    }
  std::size_t top = 0;
  for (const auto& e : cert.table)
    if (e.i == static_cast<int>(n) + 1) ++top;
  if (top != 1) fail(ErrorCode::InvalidInput, "decomposition row n+1 is not a single summand");

  // Tot(𝔽 ⊗_k K) resolves R/I: Koszul variables first, x_n last.
  BoxComplex f = k_resolution(cert.sequence);
  BoxComplex koszul = ordinary_koszul(ExponentVector(std::vector<ExponentValue>(n - 1, 1)));
  BoxComplex tot = tensor(koszul, f);
  if (auto v = verify_complex(tot)) fail(ErrorCode::NonzeroDifferential, "Tot(F (x) K): " + v->message);
  cert.total_ranks.clear();
  cert.formula_ranks.clear();
  for (int i = 0; i <= static_cast<int>(n) + 1; ++i) {
    cert.total_ranks.push_back(static_cast<long>(tot.rank(i)));
    long formula = 0;
    for (int p = 0; p <= 2; ++p)
      formula += static_cast<long>(f.rank(p)) * binomial(static_cast<long>(n) - 1, i - p);
    cert.formula_ranks.push_back(formula);
  }
  if (cert.total_ranks != cert.formula_ranks)
    fail(ErrorCode::NonzeroDifferential, "Tot(F (x) K) ranks disagree with the tensor formula");

  // H(Tot) = R/I away from the truncation scale in x_n.
  HomologyOptions opts;
  std::vector<std::vector<ExponentValue>> refine(n);
  refine[n - 1] = {ExponentValue(0), cert.sequence.entries.back()[0]};
  opts.refine = refine;
  auto table = homology(tot, opts);
  const auto& arr = table.arrangement;
  auto target = fixtures::quotient_i(n);
  const std::size_t zero = arr.locate(n - 1, 0);
  const std::size_t edge = arr.locate(n - 1, cert.sequence.entries.back()[0]);
  for (std::size_t cell = 0; cell < table.cell_count(); ++cell) {
    std::size_t p = arr.cell(cell)[n - 1];
    if (p > zero && p < edge) continue;
    for (int d = table.min_degree; d <= table.max_degree(); ++d) {
      int expect = d == 0 ? evaluate(target.front(), arr, cell) : 0;
      if (table.at(cell, d) != expect)
        fail(ErrorCode::NonzeroDifferential, "Tot(F (x) K) has H_" + std::to_string(d) + " = " +
                                                 std::to_string(table.at(cell, d)) + " on " +
                                                 arr.cell_to_string(cell));
    }
  }
  cert.notes.push_back("Tot(F (x)_k K) is a free resolution of R/I; checked cellwise");
  cert.notes.push_back("Ext^i_R(R/I,F) = sum_{p+q=i} Ext^p_{R_1}(k, F^{C(n-1,q)})");
  cert.status = status_for(k_max);
  return cert;
}

// ---------------------------------------------------------------------------
// Projective resolutions

BoxComplex box_flat_resolution(const std::vector<BoxModule>& m) {
  if (m.empty()) fail(ErrorCode::InvalidInput, "empty module");
  const std::size_t n = m.front().dimension();
  BoxComplex out(n);
  for (const auto& box : m) {
    if (box.dimension() != n) fail(ErrorCode::InvalidInput, "module boxes in different variables");
    BoxComplex c = point_complex();
    for (std::size_t i = 0; i < n; ++i) {
      const auto& iv = box[i];
      BoxComplex one(1);
      ExponentVector lo{iv.lo};
      one.add_term(0, BoxModule::orthant(lo, iv.lo_closed ? 0u : 1u));
      if (iv.hi) {
        one.add_term(1, BoxModule::orthant(ExponentVector{*iv.hi}, iv.hi_closed ? 1u : 0u));
        one.add_entry(1, 0, 0, 1);
      }
      c = tensor(c, one);
    }
    out = direct_sum(out, c);
  }
  return out;
}

namespace {

using Vec = std::map<std::size_t, Rational>;

struct Column {
  CoordMask sigma;
  ExponentVector corner;
  std::size_t depth;  // number of degree-0 generators minus one
};

struct Generator {
  std::size_t a;
  std::size_t k;
  ExponentVector degree;
};

struct FlatLevel {
  std::vector<Column> columns;
  std::vector<Generator> p0;  // degree-0 generators, by column then k
  std::vector<Generator> p1;  // degree-1 generators
  std::vector<std::size_t> off0, off1;
};

void add_scaled(Vec& acc, const Vec& v, const Rational& s) {
  for (const auto& [i, x] : v) {
    auto& slot = acc[i];
    slot += s * x;
    if (slot == 0) acc.erase(i);
  }
}

// x with Σ_m x_m·cols[m] = target, least-index pivots.
std::optional<Vec> solve_combination(const std::vector<std::size_t>& unknowns,
                                     const std::vector<Vec>& cols, const Vec& target) {
  std::set<std::size_t> rows_set;
  for (const auto& [r, v] : target) rows_set.insert(r);
  for (const auto& c : cols)
    for (const auto& [r, v] : c) rows_set.insert(r);
  std::vector<std::size_t> rows(rows_set.begin(), rows_set.end());
  std::map<std::size_t, std::size_t> row_index;
  for (std::size_t i = 0; i < rows.size(); ++i) row_index[rows[i]] = i;
  std::vector<std::vector<Rational>> a(rows.size(), std::vector<Rational>(cols.size(), 0));
  std::vector<Rational> b(rows.size(), 0);
  for (std::size_t j = 0; j < cols.size(); ++j)
    for (const auto& [r, v] : cols[j]) a[row_index[r]][j] = v;
  for (const auto& [r, v] : target) b[row_index[r]] = v;
  auto sol = linalg::solve(a, b, cols.size());
  if (!sol.feasible) return std::nullopt;
  Vec out;
  for (std::size_t j = 0; j < cols.size(); ++j)
    if (sol.particular[j] != 0) out[unknowns[j]] = sol.particular[j];
  return out;
}

Vec compose(const std::vector<Vec>& map, const Vec& v) {
  Vec out;
  for (const auto& [i, x] : v) add_scaled(out, map[i], x);
  return out;
}

}  // namespace

bool ProjectiveResolution::stabilized(const CellArrangement& arrangement, std::size_t cell) const {
  auto pieces = arrangement.cell(cell);
  const auto& last = schedule.entries.back();
  for (const auto& [i, c] : open_corners) {
    std::size_t lo = arrangement.locate(i, c);
    std::size_t hi = arrangement.locate(i, c + last[i]);
    std::size_t p = pieces[i];
    bool after_lo = lo % 2 == 1 ? p > lo : p >= lo;
    bool before_hi = hi % 2 == 1 ? p < hi : p <= hi;
    if (after_lo && before_hi) return false;
  }
  return true;
}

ProjectiveResolution projective_resolution(const std::vector<BoxModule>& m,
                                           const ProjectiveOptions& options) {
  ProjectiveResolution out;
  out.flat = box_flat_resolution(m);
  const std::size_t n = out.flat.variables();
  const std::size_t K = options.depth;

  // Schedule.
  if (options.schedule) {
    options.schedule->validate(full_mask(n));
    if (options.schedule->variables() != n)
      fail(ErrorCode::BadSequence, "schedule in the wrong number of variables");
    out.schedule = options.schedule->truncated(K);
  } else {
    std::vector<ExponentValue> gap(n, ExponentValue(1));
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<ExponentValue> values;
      for (const auto& box : out.flat.all_boxes()) values.push_back(box[i].lo);
      std::sort(values.begin(), values.end(), less);
      values.erase(std::unique(values.begin(), values.end()), values.end());
      std::optional<ExponentValue> best;
      for (std::size_t j = 1; j < values.size(); ++j) {
        ExponentValue d = values[j] - values[j - 1];
        if (!best || less(d, *best)) best = d;
      }
      if (best) gap[i] = best->is_rational() ? *best : ExponentValue(rational_between(0, *best));
    }
    Rational factor(1, 2);
    for (std::size_t k = 0; k <= K; ++k) {
      std::vector<ExponentValue> e;
      for (std::size_t i = 0; i < n; ++i) e.push_back(ExponentValue(gap[i].rational_part() * factor));
      out.schedule.entries.emplace_back(std::move(e));
      factor /= 2;
    }
    out.schedule.validate(full_mask(n));
  }
  const auto& sched = out.schedule.entries;

  // Columns: truncated free resolutions of the flat terms.
  auto degs = out.flat.degrees();
  std::map<int, FlatLevel> level;
  std::set<std::pair<std::size_t, std::string>> seen_corner;
  for (int p : degs) {
    auto& L = level[p];
    for (std::size_t a = 0; a < out.flat.rank(p); ++a) {
      const auto& box = out.flat.term(p)[a];
      Column col{box.open_lower_mask(), box.lower_corner(), box.open_lower_mask() == 0 ? 0 : K};
      L.off0.push_back(L.p0.size());
      L.off1.push_back(L.p1.size());
      for (std::size_t k = 0; k <= col.depth; ++k)
        L.p0.push_back({a, k, col.corner + sched[k].restricted(col.sigma)});
      for (std::size_t k = 0; k < col.depth; ++k)
        L.p1.push_back({a, k, col.corner + sched[k].restricted(col.sigma)});
      for (std::size_t i = 0; i < n; ++i)
        if ((col.sigma >> i & 1u) && seen_corner.insert({i, col.corner[i].to_string()}).second)
          out.open_corners.emplace_back(i, col.corner[i]);
      L.columns.push_back(std::move(col));
    }
  }
  out.refine.assign(n, {});
  for (const auto& [i, c] : out.open_corners) out.refine[i].push_back(c);

  // d_v on P_{p,1}, as vectors over P_{p,0}.
  auto dv = [&](int p) {
    const auto& L = level.at(p);
    std::vector<Vec> cols;
    for (const auto& g : L.p1) {
      std::size_t base = L.off0[g.a] + g.k;
      cols.push_back({{base, Rational(1)}, {base + 1, Rational(-1)}});
    }
    return cols;
  };
  std::map<int, std::vector<Vec>> d_v;
  for (int p : degs) d_v[p] = dv(p);

  auto lift_failed = [](const std::string& what, int p, std::size_t j) {
    fail(ErrorCode::LiftFailed, what + " has no solution at flat degree " + std::to_string(p) +
                                    ", generator " + std::to_string(j));
  };

  // f0: P_{p,0} → P_{p−1,0} covering the flat differential.
  std::map<int, std::vector<Vec>> f0, f1, h;
  for (int p : degs) {
    if (!level.count(p - 1)) continue;
    const auto& L = level.at(p);
    const auto& T = level.at(p - 1);
    std::vector<Vec> flat_cols(L.columns.size());
    for (const auto& e : out.flat.differential(p)) flat_cols[e.col][e.row] = e.scalar;
    for (std::size_t j = 0; j < L.p0.size(); ++j) {
      const auto& g = L.p0[j];
      std::vector<std::size_t> unknowns;
      std::vector<Vec> cols;
      for (std::size_t l = 0; l < T.p0.size(); ++l)
        if (leq(T.p0[l].degree, g.degree)) {
          unknowns.push_back(l);
          cols.push_back({{T.p0[l].a, Rational(1)}});
        }
      auto x = solve_combination(unknowns, cols, flat_cols[g.a]);
      if (!x) lift_failed("augmentation lift", p, j);
      f0[p].push_back(*x);
    }
  }
  // f1: P_{p,1} → P_{p−1,1} with d_v f1 = f0 d_v.
  for (int p : degs) {
    if (!level.count(p - 1)) continue;
    const auto& L = level.at(p);
    const auto& T = level.at(p - 1);
    for (std::size_t j = 0; j < L.p1.size(); ++j) {
      Vec target = compose(f0[p], d_v[p][j]);
      std::vector<std::size_t> unknowns;
      std::vector<Vec> cols;
      for (std::size_t l = 0; l < T.p1.size(); ++l)
        if (leq(T.p1[l].degree, L.p1[j].degree)) {
          unknowns.push_back(l);
          cols.push_back(d_v[p - 1][l]);
        }
      auto x = solve_combination(unknowns, cols, target);
      if (!x) lift_failed("column lift", p, j);
      f1[p].push_back(*x);
    }
  }
  // h: P_{p,0} → P_{p−2,1} with d_v h = −(−1)^p f0 f0.
  for (int p : degs) {
    if (!level.count(p - 2)) continue;
    const auto& L = level.at(p);
    const auto& T = level.at(p - 2);
    Rational s = p % 2 == 0 ? -1 : 1;
    for (std::size_t j = 0; j < L.p0.size(); ++j) {
      Vec target;
      add_scaled(target, compose(f0[p - 1], f0[p][j]), s);
      std::vector<std::size_t> unknowns;
      std::vector<Vec> cols;
      for (std::size_t l = 0; l < T.p1.size(); ++l)
        if (leq(T.p1[l].degree, L.p0[j].degree)) {
          unknowns.push_back(l);
          cols.push_back(d_v[p - 2][l]);
        }
      auto x = solve_combination(unknowns, cols, target);
      if (!x) lift_failed("homotopy", p, j);
      h[p].push_back(*x);
    }
  }

  // Totalize: in total degree m, P_{m−1,1} precedes P_{m,0}.
  out.complex = BoxComplex(n);
  std::map<std::pair<int, int>, std::size_t> offset;
  int lo = degs.front(), hi = degs.back() + 1;
  for (int t = lo; t <= hi; ++t)
    for (int q : {1, 0}) {
      int p = t - q;
      if (!level.count(p)) continue;
      const auto& gens = q == 0 ? level[p].p0 : level[p].p1;
      if (gens.empty()) continue;
      offset[{p, q}] = out.complex.rank(t);
      for (const auto& g : gens) {
        out.complex.add_term(t, BoxModule::free(g.degree));
        out.origin[t].push_back({p, q, g.a, g.k});
      }
    }
  auto index = [&](int p, int q, std::size_t j) { return offset.at({p, q}) + j; };
  for (int p : degs) {
    const auto& L = level.at(p);
    Rational sv = p % 2 == 0 ? 1 : -1;
    for (std::size_t j = 0; j < L.p1.size(); ++j)
      for (const auto& [r, v] : d_v[p][j]) out.complex.add_entry(p + 1, index(p, 0, r), index(p, 1, j), sv * v);
    if (f0.count(p))
      for (std::size_t j = 0; j < L.p0.size(); ++j)
        for (const auto& [r, v] : f0[p][j]) out.complex.add_entry(p, index(p - 1, 0, r), index(p, 0, j), v);
    if (f1.count(p))
      for (std::size_t j = 0; j < L.p1.size(); ++j)
        for (const auto& [r, v] : f1[p][j])
          out.complex.add_entry(p + 1, index(p - 1, 1, r), index(p, 1, j), v);
    if (h.count(p))
      for (std::size_t j = 0; j < L.p0.size(); ++j)
        for (const auto& [r, v] : h[p][j]) out.complex.add_entry(p, index(p - 2, 1, r), index(p, 0, j), v);
  }
  out.length = out.complex.length();
  return out;
}

ResolutionCheck check_projective_resolution(const ProjectiveResolution& res,
                                            const std::vector<BoxModule>& m,
                                            const HomologyOptions& options) {
  ResolutionCheck check;
  if (auto v = verify_complex(res.complex)) {
    check.violation = v->message;
    return check;
  }
  check.square_zero = true;
  HomologyOptions opts = options;
  auto refine = res.refine;
  if (opts.refine.size() > refine.size()) refine.resize(opts.refine.size());
  for (std::size_t i = 0; i < opts.refine.size(); ++i)
    refine[i].insert(refine[i].end(), opts.refine[i].begin(), opts.refine[i].end());
  std::vector<BoxModule> all = res.complex.all_boxes();
  all.insert(all.end(), m.begin(), m.end());
  CellArrangement arr = build_arrangement(all, res.complex.variables(), refine);
  opts.arrangement = arr;
  opts.refine.clear();
  check.table = homology(res.complex, opts);
  const auto& table = check.table;
  check.cells = table.cell_count();
  for (std::size_t cell = 0; cell < table.cell_count(); ++cell) {
    if (!res.stabilized(table.arrangement, cell)) {
      check.unstabilized_cells.push_back(cell);
      continue;
    }
    ++check.stabilized_cells;
    int expect0 = 0;
    for (const auto& box : m) expect0 += evaluate(box, table.arrangement, cell);
    bool ok = table.at(cell, 0) == expect0;
    for (int d = table.min_degree; d <= table.max_degree(); ++d)
      if (d != 0 && table.at(cell, d) != 0) ok = false;
    if (!ok) check.mismatched_cells.push_back(cell);
  }
  return check;
}

}  // namespace realexp
