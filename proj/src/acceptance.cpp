#include "realexp/acceptance.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <iomanip>
#include <random>
#include <sstream>

#include "realexp/json_io.hpp"
#include "realexp/parallel.hpp"

namespace realexp::acceptance {

namespace {

constexpr double kBudgets[kCriteria] = {5, 1, 30, 10, 30, 60, 1, 60, 60, 60};
const char* const kNames[kCriteria] = {
    "open Koszul acyclicity",  "Tor table",
    "orthant resolutions",     "support escape",
    "Ext^{n+1} certificate",   "projective resolution constructor",
    "dense subgroup",          "group-parameterized rerun",
    "discretized total Koszul", "oracle equivalence"};

long binomial(long n, long k) {
  if (k < 0 || k > n) return 0;
  long r = 1;
  for (long i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// Thrown by a criterion body to report a failed check.
struct CheckFailed {
  std::string what;
};

void require(bool ok, const std::string& what) {
  if (!ok) throw CheckFailed{what};
}

// Removes entry (row, col) of d_degree.
void drop_entry(BoxComplex& c, int degree, std::size_t index = 0) {
  const auto& e = c.differential(degree).at(index);
  c.add_entry(degree, e.row, e.col, -e.scalar);
}

std::vector<std::size_t> origin_cells(const CellHomologyTable& t) {
  std::vector<std::size_t> out;
  for (std::size_t cell = 0; cell < t.cell_count(); ++cell) {
    bool origin = true;
    auto pieces = t.arrangement.cell(cell);
    for (std::size_t i = 0; i < pieces.size(); ++i) {
      auto pos = t.arrangement.position(i, 0);
      if (!pos || pieces[i] != 2 * *pos + 1) origin = false;
    }
    if (origin) out.push_back(cell);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Random admissible data

Rational random_rational(std::mt19937_64& rng, long lo_num, long hi_num, long den) {
  std::uniform_int_distribution<long> d(lo_num, hi_num);
  Rational q(d(rng), den);
  q.canonicalize();
  return q;
}

TruncationSequence random_sequence(std::mt19937_64& rng, std::size_t n, CoordMask sigma,
                                   std::size_t K) {
  TruncationSequence s;
  std::vector<Rational> current(n, 0);
  for (std::size_t i = 0; i < n; ++i)
    if (sigma >> i & 1u) current[i] = random_rational(rng, 33, 128, 64);
  for (std::size_t k = 0; k <= K; ++k) {
    std::vector<ExponentValue> e;
    for (std::size_t i = 0; i < n; ++i) e.emplace_back(current[i]);
    s.entries.emplace_back(std::move(e));
    for (std::size_t i = 0; i < n; ++i)
      if (sigma >> i & 1u) current[i] *= random_rational(rng, 16, 48, 64);
  }
  return s;
}

// Decreasing positive values in a ray group ⟨r_1,…,r_m⟩, chosen from small
// integer combinations, each at most 3/4 of its predecessor where possible.
std::vector<ExponentValue> ray_sequence(const std::vector<ExponentValue>& ray, std::size_t count) {
  struct Candidate {
    double approx;
    std::vector<long> coeffs;
  };
  std::vector<double> approx;
  for (const auto& r : ray) {
    auto enc = r.enclose(20);
    approx.push_back(Rational((enc.lo + enc.hi) / 2).get_d());
  }
  std::vector<Candidate> cands;
  const long B = 40;
  std::vector<long> c(ray.size(), -B);
  while (true) {
    double v = 0;
    for (std::size_t j = 0; j < ray.size(); ++j) v += static_cast<double>(c[j]) * approx[j];
    if (v > 1e-9 && v <= 2.5) cands.push_back({v, c});
    std::size_t j = 0;
    while (j < c.size() && c[j] == B) c[j++] = -B;
    if (j == c.size()) break;
    ++c[j];
  }
  std::sort(cands.begin(), cands.end(), [](const auto& a, const auto& b) { return a.approx > b.approx; });
  std::vector<ExponentValue> out;
  double last = 1e9;
  for (const auto& cand : cands) {
    if (out.size() == count) break;
    if (cand.approx > 0.75 * last) continue;
    ExponentValue v;
    for (std::size_t j = 0; j < ray.size(); ++j) v += ray[j].scaled(Integer(cand.coeffs[j]));
    if (!out.empty() && !less(v, out.back())) continue;
    if (sign(v) <= 0) continue;
    out.push_back(v);
    last = cand.approx;
  }
  if (out.size() < count) fail(ErrorCode::InvalidInput, "ray too sparse for the requested sequence");
  return out;
}

TruncationSequence group_sequence(const GroupContext& g, CoordMask sigma, std::size_t K) {
  const std::size_t n = g.group().n;
  std::vector<std::vector<ExponentValue>> per_axis(n);
  for (std::size_t i = 0; i < n; ++i)
    if (sigma >> i & 1u) per_axis[i] = ray_sequence(g.ray(i), K + 1);
  TruncationSequence s;
  for (std::size_t k = 0; k <= K; ++k) {
    std::vector<ExponentValue> e(n);
    for (std::size_t i = 0; i < n; ++i)
      if (sigma >> i & 1u) e[i] = per_axis[i][k];
    s.entries.emplace_back(std::move(e));
  }
  return s;
}

ExponentGroup dense_group() {
  auto basis = ConstantBasis::standard();
  ExponentGroup g;
  g.n = 2;
  g.basis = basis;
  auto pi = parse_exponent("pi", basis);
  auto e = parse_exponent("e", basis);
  g.generators = {ExponentVector{2, 0}, ExponentVector{pi, 0}, ExponentVector{1, 1},
                  ExponentVector{0, e}};
  return g;
}

// ---------------------------------------------------------------------------
// Shared checks

struct OrthantRun {
  std::size_t checked_cells = 0;
};

// Exactness in degree 1 at every level, H₀ = R(−e_K) everywhere, and H₀ equal
// to the limit orthant on stabilized cells; once a cell agrees with the limit
// it agrees at every deeper level.
OrthantRun check_orthant_sweep(CoordMask sigma, const TruncationSequence& seq,
                               const GroupContext* group, std::size_t workers) {
  const std::size_t n = seq.variables();
  const std::size_t K = seq.depth();
  std::vector<std::vector<ExponentValue>> crit(n);
  for (std::size_t i = 0; i < n; ++i) {
    crit[i].push_back(0);
    for (const auto& e : seq.entries) crit[i].push_back(e[i]);
  }
  std::vector<BoxModule> none;
  CellArrangement arr = build_arrangement(none, n, crit);
  OrthantRun run;
  std::vector<char> agreed(arr.cell_count(), 0);
  for (std::size_t level = 1; level <= K; ++level) {
    auto res = orthant_resolution(sigma, seq.truncated(level), {}, group);
    HomologyOptions opts;
    opts.arrangement = arr;
    opts.workers = workers;
    auto table = homology(res.complex, opts);
    for (std::size_t cell = 0; cell < table.cell_count(); ++cell) {
      require(table.at(cell, 1) == 0, "H1 != 0 on " + arr.cell_to_string(cell));
      int h0 = table.at(cell, 0);
      require(h0 == evaluate(res.h0, arr, cell), "H0 differs from R(-e_K) on " + arr.cell_to_string(cell));
      int limit = evaluate(res.limit, arr, cell);
      if (res.stabilized(arr, cell))
        require(h0 == limit, "stabilized cell " + arr.cell_to_string(cell) + " differs from the orthant");
      if (agreed[cell]) require(h0 == limit, "cell " + arr.cell_to_string(cell) + " destabilized");
      if (h0 == limit) agreed[cell] = 1;
      ++run.checked_cells;
    }
  }
  for (std::size_t cell = 0; cell < arr.cell_count(); ++cell) {
    auto res = orthant_resolution(sigma, seq, {}, group);
    if (res.stabilized(arr, cell)) require(agreed[cell], "cell never stabilized");
  }
  return run;
}

// H of two orthant resolutions agree on cells stabilized for both.
void compare_shared(CoordMask sigma, const TruncationSequence& a, const TruncationSequence& b,
                    const GroupContext* group_b) {
  auto ra = orthant_resolution(sigma, a);
  auto rb = orthant_resolution(sigma, b, {}, group_b);
  const std::size_t n = a.variables();
  std::vector<std::vector<ExponentValue>> crit(n);
  for (std::size_t i = 0; i < n; ++i) crit[i].push_back(0);
  std::vector<BoxModule> boxes = ra.complex.all_boxes();
  auto more = rb.complex.all_boxes();
  boxes.insert(boxes.end(), more.begin(), more.end());
  CellArrangement arr = build_arrangement(boxes, n, crit);
  HomologyOptions opts;
  opts.arrangement = arr;
  auto ta = homology(ra.complex, opts);
  auto tb = homology(rb.complex, opts);
  std::size_t shared = 0;
  for (std::size_t cell = 0; cell < arr.cell_count(); ++cell) {
    if (!ra.stabilized(arr, cell) || !rb.stabilized(arr, cell)) continue;
    ++shared;
    for (int d = 0; d <= 1; ++d)
      require(ta.at(cell, d) == tb.at(cell, d), "tables differ on shared cell " + arr.cell_to_string(cell));
  }
  require(shared > 0, "no shared stabilized cells");
}

// ---------------------------------------------------------------------------
// Criteria

std::string c1(const Options& o) {
  std::size_t cells = 0;
  for (std::size_t n = 1; n <= 3; ++n) {
    BoxComplex c = open_koszul(n);
    if (o.corrupt.count(1) && n == 2) drop_entry(c, 1);
    require(!verify_complex(c), "open Koszul n=" + std::to_string(n) + " fails verification");
    HomologyOptions opts;
    opts.workers = o.workers;
    auto t = homology(c, opts);
    require(t.cell_count() == static_cast<std::size_t>(std::pow(3, n)), "expected 3^n cells");
    auto origin = origin_cells(t);
    require(origin.size() == 1, "origin cell missing");
    for (std::size_t cell = 0; cell < t.cell_count(); ++cell)
      for (int d = t.min_degree; d <= t.max_degree(); ++d) {
        int expect = (d == 0 && cell == origin.front()) ? 1 : 0;
        require(t.at(cell, d) == expect, "n=" + std::to_string(n) + ": H" + std::to_string(d) + " = " +
                                             std::to_string(t.at(cell, d)) + " on " +
                                             t.arrangement.cell_to_string(cell));
      }
    cells += t.cell_count();
  }
  return std::to_string(cells) + " cells, H0 only at the origin";
}

std::string c2(const Options& o) {
  std::string detail;
  for (std::size_t n = 1; n <= 3; ++n) {
    std::vector<ExponentValue> eps(n, 1);
    if (o.corrupt.count(2)) eps[0] = 0;
    for (int i = 0; i <= static_cast<int>(n); ++i) {
      auto r = tor_of_power_quotient(ExponentVector(eps), i);
      require(r.differentials_vanish, "induced differential survives");
      require(r.dimension == binomial(static_cast<long>(n), i),
              "Tor_" + std::to_string(i) + " = " + std::to_string(r.dimension) + " for n=" + std::to_string(n));
    }
  }
  return "Tor_i = C(n,i) for n <= 3, all induced differentials zero";
}

std::string c3(const Options& o) {
  const std::size_t seeds = o.depth == Depth::Full ? 20 : 5;
  const std::size_t n_max = 3;
  const std::size_t K = o.depth == Depth::Full ? 5 : 4;
  struct Job {
    std::size_t n;
    CoordMask sigma;
    std::size_t seed;
  };
  std::vector<Job> jobs;
  for (std::size_t n = 1; n <= n_max; ++n)
    for (CoordMask sigma = 0; sigma < (CoordMask{1} << n); ++sigma)
      for (std::size_t s = 0; s < seeds; ++s) jobs.push_back({n, sigma, s});
  std::vector<std::size_t> checked(jobs.size());
  parallel_for(jobs.size(), o.workers, [&](std::size_t j) {
    std::mt19937_64 rng(o.seed + 7919 * jobs[j].seed + 31 * jobs[j].n + jobs[j].sigma);
    auto seq = random_sequence(rng, jobs[j].n, jobs[j].sigma, K);
    if (o.corrupt.count(3) && j + 1 == jobs.size()) std::swap(seq.entries[0], seq.entries[1]);
    checked[j] = check_orthant_sweep(jobs[j].sigma, seq, nullptr, 1).checked_cells;
  });
  std::size_t total = 0;
  for (auto c : checked) total += c;
  return std::to_string(jobs.size()) + " (n, sigma, seed) sweeps to K=" + std::to_string(K) + ", " +
         std::to_string(total) + " cell checks";
}

std::string c4(const Options& o) {
  std::vector<TruncationSequence> seqs{default_escape_sequence(12)};
  std::mt19937_64 rng(o.seed);
  for (int s = 0; s < 3; ++s) seqs.push_back(random_sequence(rng, 1, 1, 12));
  for (const auto& seq : seqs)
    for (std::size_t K = 1; K <= 12; ++K) {
      auto cert = support_escape(K, 1, seq.truncated(K));
      std::size_t expect = o.corrupt.count(4) ? K - 1 : K;
      require(cert.min_forced_index == expect, "depth " + std::to_string(K) + ": minimal forced index is not K");
      require(std::count(cert.forced_indices.begin(), cert.forced_indices.end(), K) == 1,
              "depth " + std::to_string(K) + ": index K is not forced");
      auto zero = support_escape(K, 0, seq.truncated(K));
      require(zero.zero_solution, "c = 0 has no zero solution at depth " + std::to_string(K));
    }
  return std::to_string(seqs.size()) + " sequences, K = 1..12";
}

std::string c5(const Options& o) {
  for (std::size_t n = 1; n <= 3; ++n) {
    auto cert = ext_n_plus_1(n, 10);
    if (o.corrupt.count(5)) cert.table.push_back({static_cast<int>(n) + 1, 1, static_cast<int>(n), 1, false});
    require(cert.status == "verified-up-to-K10", "status " + cert.status);
    std::size_t top = 0;
    for (const auto& e : cert.table)
      if (e.i == static_cast<int>(n) + 1) {
        ++top;
        require(e.p == 2 && e.q == static_cast<int>(n) - 1 && e.witness, "row n+1 holds a non-witness summand");
      }
    require(top == 1, "row n+1 has " + std::to_string(top) + " summands");
    for (std::size_t q = 0; q < n; ++q)
      require(cert.dual.ranks.at(q) == binomial(static_cast<long>(n) - 1, static_cast<long>(q)),
              "dual Koszul rank mismatch");
    require(io::reverify(io::to_json(cert)), "certificate does not re-verify");
  }
  return "certificates for n = 1, 2, 3 at K_max = 10, re-verified";
}

std::string c6(const Options& o) {
  std::ostringstream detail;
  for (const std::string name : {"k", "R/I", "R/I'", "B"})
    for (std::size_t n = 1; n <= 2; ++n) {
      auto m = fixtures::by_name(name, n);
      auto res = projective_resolution(m, {8, std::nullopt});
      if (o.corrupt.count(6) && name == "R/I'" && n == 2) drop_entry(res.complex, 1);
      require(res.length <= static_cast<int>(n) + 1, name + ": length " + std::to_string(res.length));
      HomologyOptions opts;
      opts.workers = o.workers;
      auto check = check_projective_resolution(res, m, opts);
      require(check.square_zero, name + ": " + check.violation);
      if (!check.mismatched_cells.empty())
        throw CheckFailed{name + " n=" + std::to_string(n) + ": homology differs on " +
                          check.table.arrangement.cell_to_string(check.mismatched_cells.front())};
      require(check.stabilized_cells > 0, name + ": no stabilized cells");
      detail << name << "[" << n << "]:" << res.length << " ";
    }
  return "lengths " + detail.str();
}

std::string c7(const Options& o) {
  auto g = dense_group();
  auto ray = ray_intersection(g, 1);
  std::vector<std::string> names;
  for (const auto& v : ray) names.push_back(v.to_string());
  std::sort(names.begin(), names.end());
  std::vector<std::string> expect{"2", "e"};
  if (o.corrupt.count(7)) expect = {"1", "e"};
  require(names == expect, "y-ray generators differ");
  ExponentVector one{1, 1};
  require(is_member(one, g).member && is_nonnegative(one), "(1,1) should lie in G+");
  require(!in_open_cone(one, g), "(1,1) accepted by in_open_cone");
  require(!is_member(ExponentVector{0, 1}, g).member, "(0,1) accepted by is_member");
  return "ray_y = <2, e>; (1,1) in G+ but not the open cone; (0,1) not in G";
}

std::string c8(const Options& o) {
  const std::size_t K = 4;
  std::size_t runs = 0;
  // (1/3)Z^n for n = 1..3.
  for (std::size_t n = 1; n <= 3; ++n) {
    GroupContext g(ExponentGroup::rational_lattice(n, 3));
    BoxComplex ok = open_koszul(n);
    for (const auto& b : ok.all_boxes()) g.require_exponent(b.lower_corner());
    auto t = homology(ok);
    require(t.total(0) == 1 && t.total(1) == 0, "open Koszul under (1/3)Z^n");
    ExponentVector eps(std::vector<ExponentValue>(n, ExponentValue(Rational(1, 3))));
    for (int i = 0; i <= static_cast<int>(n); ++i)
      require(tor_of_power_quotient(eps, i).dimension == binomial(static_cast<long>(n), i), "Tor under (1/3)Z^n");
    ordinary_koszul(eps, &g);
    for (CoordMask sigma = 0; sigma < (CoordMask{1} << n); ++sigma) {
      TruncationSequence s;
      for (std::size_t k = 0; k <= K; ++k) {
        std::vector<ExponentValue> e(n);
        for (std::size_t i = 0; i < n; ++i)
          if (sigma >> i & 1u) e[i] = ExponentValue(Rational(static_cast<long>(K + 1 - k), 3));
        s.entries.emplace_back(std::move(e));
      }
      if (o.corrupt.count(8) && n == 2 && sigma == 3) s.entries[0][0] = ExponentValue(Rational(7, 2));
      check_orthant_sweep(sigma, s, &g, 1);
      compare_shared(sigma, TruncationSequence::geometric(ExponentVector(std::vector<ExponentValue>(n, 1)), sigma, K), s, &g);
      ++runs;
    }
  }
  // The dense group, with sequences drawn from G ∩ ρ_i.
  GroupContext dense(dense_group());
  auto t = homology(open_koszul(2));
  require(t.total(0) == 1 && t.total(1) == 0 && t.total(2) == 0, "open Koszul under the dense group");
  ExponentVector eps{2, 2};
  ordinary_koszul(eps, &dense);
  for (int i = 0; i <= 2; ++i) require(tor_of_power_quotient(eps, i).dimension == binomial(2, i), "Tor under the dense group");
  bool rejected = false;
  try {
    ordinary_koszul(ExponentVector{1, 1}, &dense);
  } catch (const Error& e) {
    rejected = e.code() == ErrorCode::NotInOpenCone;
  }
  require(rejected, "(1,1) accepted as a Koszul exponent under the dense group");
  for (CoordMask sigma = 0; sigma < 4; ++sigma) {
    auto s = group_sequence(dense, sigma, K);
    dense.require_sequence(s, sigma);
    check_orthant_sweep(sigma, s, &dense, 1);
    compare_shared(sigma, TruncationSequence::geometric(ExponentVector{1, 1}, sigma, K), s, &dense);
    ++runs;
  }
  auto a = group_sequence(dense, 3, 2).entries.back();
  auto b = group_sequence(dense, 3, 3).entries.back();
  dense.common_refinement(a, b);
  return std::to_string(runs) + " orthant sweeps under (1/3)Z^n and the dense group";
}

std::string c9(const Options& o) {
  std::size_t degrees = 0;
  for (std::size_t n = 1; n <= 2; ++n) {
    ExponentVector eps(std::vector<ExponentValue>(n, 1));
    std::vector<std::pair<std::string, std::vector<BoxModule>>> modules{
        {"k", fixtures::residue_field(n)},
        {"R", {BoxModule::free(ExponentVector::zero(n)),
               BoxModule::free(ExponentVector(std::vector<ExponentValue>(n, Rational(1, 2))))}},
        {"cube", {BoxModule(std::vector<IntervalSpec>(n, IntervalSpec::make(0, true, ExponentValue(1), true)))}}};
    for (auto& [label, m] : modules) {
      if (o.corrupt.count(9) && label == "cube" && n == 2)
        m.push_back(BoxModule(std::vector<IntervalSpec>(n, IntervalSpec::make(0, true, ExponentValue(9), true))));
      auto d = total_koszul_truncated(m, eps, 2, 4);
      auto degs = d.degrees();
      std::vector<std::string> failures(degs.size());
      parallel_for(degs.size(), o.workers, [&](std::size_t j) {
        const auto& c = degs[j];
        if (!d.square_zero(c)) failures[j] = "d^2 != 0";
        auto h = d.homology(c);
        for (std::size_t i = 1; i < h.size(); ++i)
          if (h[i] != 0) failures[j] = "H" + std::to_string(i) + " != 0";
        if (n == 1 && label == "R" && m.size() == 2) {
          long expect = std::min<long>(c[0] + 1, 4) + std::max<long>(0, std::min<long>(c[0] - 1, 4));
          if (h[0] != expect) failures[j] = "H0 count " + std::to_string(h[0]) + " != " + std::to_string(expect);
        }
      });
      for (std::size_t j = 0; j < degs.size(); ++j)
        require(failures[j].empty(), label + " n=" + std::to_string(n) + " at sum degree " +
                                         std::to_string(degs[j][0]) + ": " + failures[j]);
      degrees += degs.size();
    }
  }
  return std::to_string(degrees) + " sum degrees, all positive homology zero";
}

// Random degree: critical values with probability 2/5, otherwise a random
// rational in a random gap.
ExponentVector sample_degree(std::mt19937_64& rng, const CellArrangement& arr) {
  std::vector<ExponentValue> out;
  std::uniform_int_distribution<int> coin(0, 4);
  for (std::size_t i = 0; i < arr.dimension(); ++i) {
    const auto& crit = arr.critical(i);
    if (crit.empty()) {
      out.emplace_back(random_rational(rng, -64, 64, 16));
      continue;
    }
    std::uniform_int_distribution<std::size_t> pick(0, crit.size());
    if (coin(rng) < 2) {
      out.push_back(crit[std::min(pick(rng), crit.size() - 1)]);
      continue;
    }
    std::size_t gap = pick(rng);
    Rational offset = random_rational(rng, 1, 63, 64);
    if (gap == 0) {
      out.emplace_back(rational_between(crit.front() - ExponentValue(1), crit.front()) - offset);
    } else if (gap == crit.size()) {
      out.emplace_back(rational_between(crit.back(), crit.back() + ExponentValue(1)) + offset);
    } else {
      const auto& lo = crit[gap - 1];
      const auto& hi = crit[gap];
      if (lo.is_rational() && hi.is_rational())
        out.emplace_back(lo.rational_part() + offset * (hi.rational_part() - lo.rational_part()));
      else
        out.emplace_back(rational_between(lo, hi));
    }
  }
  return ExponentVector(std::move(out));
}

std::string c10(const Options& o) {
  std::vector<std::pair<std::string, BoxComplex>> complexes;
  for (std::size_t n = 1; n <= 3; ++n) complexes.emplace_back("open_koszul", open_koszul(n));
  complexes.emplace_back("ordinary_koszul", ordinary_koszul(ExponentVector{1, Rational(1, 2)}));
  complexes.emplace_back("ordinary_koszul", ordinary_koszul(ExponentVector{1, 1, 1}));
  complexes.emplace_back("orthant_resolution",
                         orthant_resolution(3, TruncationSequence::geometric(ExponentVector{1, 1}, 3, 4)).complex);
  complexes.emplace_back("k_resolution", k_resolution(default_escape_sequence(6)));
  complexes.emplace_back("tot", tensor(ordinary_koszul(ExponentVector{1}), k_resolution(default_escape_sequence(4))));
  for (const std::string name : {"k", "R/I'", "B"})
    complexes.emplace_back("presolve " + name, projective_resolution(fixtures::by_name(name, 2), {4, std::nullopt}).complex);
  complexes.emplace_back("dual_koszul", dualize_free(ordinary_koszul(ExponentVector{1, 1})));
  if (o.corrupt.count(10)) complexes.emplace_back("corrupted", [] {
    BoxComplex c = open_koszul(2);
    drop_entry(c, 1);
    return c;
  }());

  const std::size_t samples = 200;
  std::vector<std::string> failures(complexes.size());
  parallel_for(complexes.size(), o.workers, [&](std::size_t idx) {
    const auto& c = complexes[idx].second;
    auto table = homology(c);
    BoxComplex reference = c;
    if (complexes[idx].first == "corrupted") reference = open_koszul(2);
    std::mt19937_64 rng(o.seed + 1000003 * idx);
    for (std::size_t s = 0; s < samples; ++s) {
      auto degree = sample_degree(rng, table.arrangement);
      auto expect = oracle_homology(reference, degree, table.min_degree, table.max_degree());
      std::size_t cell = table.arrangement.locate(degree);
      if (table.dims[cell] != expect) {
        failures[idx] = complexes[idx].first + " at " + degree.to_string();
        return;
      }
    }
  });
  for (const auto& f : failures) require(f.empty(), "oracle disagrees: " + f);
  return std::to_string(complexes.size()) + " complexes x " + std::to_string(samples) + " sampled degrees";
}

}  // namespace

// ---------------------------------------------------------------------------

std::vector<int> oracle_homology(const BoxComplex& c, const ExponentVector& degree, int min_degree,
                                 int max_degree) {
  auto dense_rank = [](std::vector<std::vector<Rational>> m) {
    std::size_t rank = 0;
    const std::size_t rows = m.size(), cols = rows ? m[0].size() : 0;
    for (std::size_t col = 0; col < cols && rank < rows; ++col) {
      std::size_t piv = rank;
      while (piv < rows && m[piv][col] == 0) ++piv;
      if (piv == rows) continue;
      std::swap(m[piv], m[rank]);
      for (std::size_t r = 0; r < rows; ++r) {
        if (r == rank || m[r][col] == 0) continue;
        Rational f = m[r][col] / m[rank][col];
        for (std::size_t k = col; k < cols; ++k) m[r][k] -= f * m[rank][k];
      }
      ++rank;
    }
    return rank;
  };
  auto live = [&](int d) {
    std::vector<std::size_t> idx(c.rank(d), SIZE_MAX);
    std::size_t count = 0;
    for (std::size_t k = 0; k < c.rank(d); ++k)
      if (c.term(d)[k].contains(degree)) idx[k] = count++;
    return std::make_pair(idx, count);
  };
  std::vector<int> out;
  for (int d = min_degree; d <= max_degree; ++d) {
    auto [here, dim] = live(d);
    auto rank_of = [&](int deg) -> std::size_t {
      auto [cols, nc] = live(deg);
      auto [rows, nr] = live(deg - 1);
      if (nc == 0 || nr == 0) return 0;
      std::vector<std::vector<Rational>> m(nr, std::vector<Rational>(nc, 0));
      for (const auto& e : c.differential(deg))
        if (cols[e.col] != SIZE_MAX && rows[e.row] != SIZE_MAX) m[rows[e.row]][cols[e.col]] += e.scalar;
      return dense_rank(std::move(m));
    };
    out.push_back(static_cast<int>(dim) - static_cast<int>(rank_of(d) + rank_of(d + 1)));
  }
  return out;
}

double budget(int id) { return kBudgets[id - 1]; }
std::string name(int id) { return kNames[id - 1]; }

Result run_criterion(int id, const Options& options) {
  static const std::function<std::string(const Options&)> bodies[kCriteria] = {c1, c2, c3, c4, c5,
                                                                               c6, c7, c8, c9, c10};
  Result r;
  r.id = id;
  r.name = name(id);
  r.budget = budget(id);
  auto start = std::chrono::steady_clock::now();
  try {
    r.detail = bodies[id - 1](options);
    r.passed = true;
  } catch (const CheckFailed& f) {
    r.detail = f.what;
  } catch (const Error& e) {
    r.detail = std::string(error_name(e.code())) + ": " + e.what();
  } catch (const std::exception& e) {
    r.detail = e.what();
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (r.passed && r.seconds > r.budget) {
    r.passed = false;
    r.detail = "over budget; " + r.detail;
  }
  return r;
}

std::vector<Result> run_all(const Options& options) {
  std::vector<Result> out;
  for (int id = 1; id <= kCriteria; ++id)
    if (options.only.empty() || options.only.count(id)) out.push_back(run_criterion(id, options));
  return out;
}

std::string format(const Result& r) {
  std::ostringstream os;
  os << (r.passed ? "PASS" : "FAIL") << "  C" << r.id << "  " << r.name << "  (" << std::fixed
     << std::setprecision(2) << r.seconds << " s / " << std::setprecision(0) << r.budget << " s)  "
     << r.detail;
  return os.str();
}

}  // namespace realexp::acceptance
