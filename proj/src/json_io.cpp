#include "realexp/json_io.hpp"

#include <algorithm>
#include <sstream>

namespace realexp::io {

// ---------------------------------------------------------------------------
// Exponents and groups

Json to_json(const ExponentValue& v) { return v.to_string(); }

ExponentValue exponent_from_json(const Json& j, const BasisPtr& basis) {
  if (j.is_string()) return parse_exponent(j.get<std::string>(), basis);
  if (j.is_number_integer()) return ExponentValue(j.get<long>());
  if (j.is_object()) {
    BasisPtr b = basis ? basis : ConstantBasis::standard();
    Rational rational = 0;
    std::vector<ExponentValue::Term> terms;
    for (const auto& [key, value] : j.items()) {
      if (key == "1") {
        rational += value.is_string() ? parse_rational(value.get<std::string>())
                                      : Rational(value.get<long>());
        continue;
      }
      auto idx = b->find(key);
      if (!idx) fail(ErrorCode::InvalidInput, "unknown symbol '" + key + "'");
      if (!value.is_number_integer())
        fail(ErrorCode::InvalidInput, "coefficient of '" + key + "' must be an integer");
      if (b->symbol(*idx).exact())
        rational += Rational(value.get<long>()) * b->symbol(*idx).lo;
      else
        terms.emplace_back(*idx, Integer(value.get<long>()));
    }
    std::sort(terms.begin(), terms.end());
    return ExponentValue::from_terms(b, rational, std::move(terms));
  }
  fail(ErrorCode::InvalidInput, "exponent must be a string, integer, or coefficient map");
}

Json to_json(const ExponentVector& v) {
  Json out = Json::array();
  for (const auto& x : v) out.push_back(to_json(x));
  return out;
}

ExponentVector vector_from_json(const Json& j, const BasisPtr& basis) {
  if (!j.is_array()) fail(ErrorCode::InvalidInput, "exponent vector must be an array");
  std::vector<ExponentValue> entries;
  for (const auto& x : j) entries.push_back(exponent_from_json(x, basis));
  return ExponentVector(std::move(entries));
}

Json to_json(const ConstantBasis& basis) {
  Json out = Json::array();
  for (const auto& s : basis.symbols())
    out.push_back({{"name", s.name},
                   {"lo", rational_to_string(s.lo)},
                   {"hi", rational_to_string(s.hi)},
                   {"class", s.independence_class}});
  return out;
}

BasisPtr basis_from_json(const Json& j) {
  if (j.is_null()) return ConstantBasis::standard();
  if (!j.is_array()) fail(ErrorCode::InvalidInput, "basis must be an array");
  std::vector<ConstantBasis::Symbol> syms;
  for (const auto& s : j) {
    ConstantBasis::Symbol sym;
    sym.name = s.at("name").get<std::string>();
    sym.lo = parse_rational(s.at("lo").get<std::string>());
    sym.hi = parse_rational(s.at("hi").get<std::string>());
    sym.independence_class = s.value("class", sym.exact() ? 0 : 1);
    syms.push_back(std::move(sym));
  }
  return std::make_shared<const ConstantBasis>(std::move(syms));
}

Json to_json(const ExponentGroup& g) {
  Json gens = Json::array();
  for (const auto& v : g.generators) gens.push_back(to_json(v));
  Json out = {{"n", g.n}, {"generators", gens}};
  if (g.basis) out["basis"] = to_json(*g.basis);
  return out;
}

ExponentGroup group_from_json(const Json& j) {
  ExponentGroup g;
  try {
    g.n = j.at("n").get<std::size_t>();
    g.basis = basis_from_json(j.contains("basis") ? j.at("basis") : Json());
    for (const auto& v : j.at("generators")) {
      g.generators.push_back(vector_from_json(v, g.basis));
      if (g.generators.back().size() != g.n)
        fail(ErrorCode::InvalidInput, "generator of the wrong length");
    }
  } catch (const Json::exception& e) {
    fail(ErrorCode::InvalidInput, std::string("group JSON: ") + e.what());
  }
  return g;
}

// ---------------------------------------------------------------------------
// Boxes and complexes

Json to_json(const BoxModule& box) {
  Json ivs = Json::array();
  for (const auto& iv : box.intervals()) {
    Json hi = iv.hi ? Json{{"v", to_json(*iv.hi)}, {"closed", iv.hi_closed}}
                    : Json{{"v", "inf"}, {"closed", false}};
    ivs.push_back({{"lo", {{"v", to_json(iv.lo)}, {"closed", iv.lo_closed}}}, {"hi", hi}});
  }
  return {{"intervals", ivs}};
}

BoxModule box_from_json(const Json& j, const BasisPtr& basis) {
  try {
    std::vector<IntervalSpec> ivs;
    for (const auto& iv : j.at("intervals")) {
      const auto& lo = iv.at("lo");
      std::optional<ExponentValue> hi;
      bool hi_closed = false;
      if (iv.contains("hi")) {
        const auto& h = iv.at("hi");
        if (!(h.at("v").is_string() && h.at("v").get<std::string>() == "inf")) {
          hi = exponent_from_json(h.at("v"), basis);
          hi_closed = h.value("closed", false);
        }
      }
      ivs.push_back(IntervalSpec::make(exponent_from_json(lo.at("v"), basis),
                                       lo.value("closed", true), hi, hi_closed));
    }
    return BoxModule(std::move(ivs));
  } catch (const Json::exception& e) {
    fail(ErrorCode::InvalidInput, std::string("box JSON: ") + e.what());
  }
}

Json to_json(const BoxComplex& c) {
  std::vector<BoxModule> boxes;
  auto id_of = [&](const BoxModule& b) {
    auto it = std::find(boxes.begin(), boxes.end(), b);
    if (it != boxes.end()) return static_cast<std::size_t>(it - boxes.begin());
    boxes.push_back(b);
    return boxes.size() - 1;
  };
  Json terms = Json::object(), diffs = Json::object();
  for (int d : c.degrees()) {
    Json ids = Json::array();
    for (const auto& b : c.term(d)) ids.push_back(id_of(b));
    terms[std::to_string(d)] = ids;
    Json entries = Json::array();
    for (const auto& e : c.differential(d))
      entries.push_back({{"row", e.row}, {"col", e.col}, {"scalar", rational_to_string(e.scalar)}});
    if (!entries.empty()) diffs[std::to_string(d)] = entries;
  }
  Json box_list = Json::array();
  for (const auto& b : boxes) box_list.push_back(to_json(b));
  return {{"n", c.variables()}, {"boxes", box_list}, {"terms", terms}, {"differentials", diffs}};
}

BoxComplex complex_from_json(const Json& j, const BasisPtr& basis) {
  try {
    BoxComplex c(j.at("n").get<std::size_t>());
    std::vector<BoxModule> boxes;
    for (const auto& b : j.at("boxes")) boxes.push_back(box_from_json(b, basis));
    for (const auto& [deg, ids] : j.at("terms").items())
      for (const auto& id : ids) c.add_term(std::stoi(deg), boxes.at(id.get<std::size_t>()));
    if (j.contains("differentials"))
      for (const auto& [deg, entries] : j.at("differentials").items())
        for (const auto& e : entries) {
          Rational s = e.at("scalar").is_string() ? parse_rational(e.at("scalar").get<std::string>())
                                                  : Rational(e.at("scalar").get<long>());
          c.add_entry(std::stoi(deg), e.at("row").get<std::size_t>(), e.at("col").get<std::size_t>(), s);
        }
    return c;
  } catch (const Json::exception& e) {
    fail(ErrorCode::InvalidInput, std::string("complex JSON: ") + e.what());
  } catch (const std::out_of_range&) {
    fail(ErrorCode::InvalidInput, "complex JSON: box id out of range");
  }
}

// ---------------------------------------------------------------------------
// Homology tables

Json to_json(const CellHomologyTable& t) {
  Json critical = Json::array();
  for (std::size_t i = 0; i < t.arrangement.dimension(); ++i) {
    Json c = Json::array();
    for (const auto& v : t.arrangement.critical(i)) c.push_back(to_json(v));
    critical.push_back(c);
  }
  Json cells = Json::array();
  for (std::size_t cell = 0; cell < t.cell_count(); ++cell)
    cells.push_back({{"cell", t.arrangement.cell_to_string(cell)},
                     {"pieces", t.arrangement.cell(cell)},
                     {"H", t.dims[cell]}});
  Json out = {{"schema", std::string("realexp.homology/") + kSchemaVersion},
              {"field", t.field.name()},
              {"min_degree", t.min_degree},
              {"degrees", t.degree_count()},
              {"critical", critical},
              {"cells", cells}};
  if (t.field.kind == FieldConfig::Kind::Prime) out["field_mismatch_cells"] = t.field_mismatch_cells;
  return out;
}

std::string to_csv(const CellHomologyTable& t) {
  std::ostringstream os;
  os << "cell";
  for (int d = t.min_degree; d <= t.max_degree() && !t.empty(); ++d) os << ",H" << d;
  os << '\n';
  for (std::size_t cell = 0; cell < t.cell_count(); ++cell) {
    os << '"' << t.arrangement.cell_to_string(cell) << '"';
    for (int d : t.dims[cell]) os << ',' << d;
    os << '\n';
  }
  return os.str();
}

std::string to_grid(const CellHomologyTable& t) {
  const std::size_t n = t.arrangement.dimension();
  if (n > 2) fail(ErrorCode::InvalidInput, "grid output needs n <= 2");
  std::ostringstream os;
  if (t.empty()) {
    os << "(zero complex)\n";
    return os.str();
  }
  const std::size_t cols = n >= 1 ? t.arrangement.pieces(0) : 1;
  const std::size_t rows = n == 2 ? t.arrangement.pieces(1) : 1;
  std::vector<std::string> col_labels(cols), row_labels(rows);
  for (std::size_t c = 0; c < cols; ++c) col_labels[c] = n >= 1 ? t.arrangement.piece_to_string(0, c) : "";
  for (std::size_t r = 0; r < rows; ++r) row_labels[r] = n == 2 ? t.arrangement.piece_to_string(1, r) : "";
  std::size_t label_w = 0, cell_w = 1;
  for (const auto& s : row_labels) label_w = std::max(label_w, s.size());
  for (const auto& s : col_labels) cell_w = std::max(cell_w, s.size());
  auto pad = [](const std::string& s, std::size_t w) { return std::string(w - std::min(w, s.size()), ' ') + s; };
  for (int d = t.min_degree; d <= t.max_degree(); ++d) {
    os << "H" << d << ":\n";
    for (std::size_t rr = rows; rr-- > 0;) {
      os << pad(row_labels[rr], label_w) << " |";
      for (std::size_t c = 0; c < cols; ++c) {
        std::vector<std::size_t> pieces;
        if (n >= 1) pieces.push_back(c);
        if (n == 2) pieces.push_back(rr);
        os << ' ' << pad(std::to_string(t.at(t.arrangement.flat_index(pieces), d)), cell_w);
      }
      os << '\n';
    }
    os << std::string(label_w, ' ') << " +";
    for (std::size_t c = 0; c < cols; ++c) os << ' ' << pad(col_labels[c], cell_w);
    os << '\n';
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// Certificates

Json to_json(const TruncationSequence& s) {
  Json out = Json::array();
  for (const auto& e : s.entries) out.push_back(to_json(e));
  return out;
}

TruncationSequence sequence_from_json(const Json& j, const BasisPtr& basis) {
  if (!j.is_array()) fail(ErrorCode::InvalidInput, "sequence must be an array of vectors");
  TruncationSequence s;
  for (const auto& e : j) s.entries.push_back(vector_from_json(e, basis));
  return s;
}

Json to_json(const SupportEscapeCertificate& c) {
  Json particular = Json::array();
  for (const auto& x : c.particular) particular.push_back(rational_to_string(x));
  Json unknowns = Json::array();
  for (const auto& [j, k] : c.unknowns) unknowns.push_back({j, k});
  Json out = {{"K", c.depth},
              {"c", rational_to_string(c.scalar)},
              {"unknowns", unknowns},
              {"particular", particular},
              {"nullity", c.nullity},
              {"forced_indices", c.forced_indices},
              {"zero_solution", c.zero_solution}};
  out["min_forced_index"] = c.min_forced_index ? Json(*c.min_forced_index) : Json();
  return out;
}

Json to_json(const ExtCertificate& c) {
  Json escapes = Json::array();
  for (const auto& e : c.escapes) escapes.push_back(to_json(e));
  Json table = Json::array();
  for (const auto& e : c.table)
    table.push_back({{"i", e.i}, {"p", e.p}, {"q", e.q}, {"multiplicity", e.multiplicity},
                     {"witness", e.witness}});
  Json components = Json::array();
  components.push_back({{"name", "support_escape"}, {"sweep", escapes}});
  components.push_back({{"name", "dual_koszul_collapse"},
                        {"n", c.dual.n},
                        {"ranks", c.dual.ranks},
                        {"differentials_vanish", c.dual.differentials_vanish}});
  components.push_back({{"name", "decomposition"}, {"table", table}});
  components.push_back({{"name", "total_resolution"},
                        {"ranks", c.total_ranks},
                        {"formula_ranks", c.formula_ranks}});
  components.push_back({{"name", "notes"}, {"lines", c.notes}});
  return {{"schema", std::string("realexp.certificate/") + kSchemaVersion},
          {"claim", c.claim},
          {"parameters",
           {{"n", c.n},
            {"degree", c.degree},
            {"K_max", c.k_max},
            {"witness", {{"p", c.witness_p}, {"q", c.witness_q}}},
            {"sequence", to_json(c.sequence)}}},
          {"components", components},
          {"status", c.status},
          {"field", c.field.name()}};
}

bool reverify(const Json& certificate) {
  try {
    const auto& params = certificate.at("parameters");
    auto seq = sequence_from_json(params.at("sequence"), ConstantBasis::standard());
    auto recomputed =
        ext_n_plus_1(params.at("n").get<std::size_t>(), params.at("K_max").get<std::size_t>(), seq);
    return to_json(recomputed).dump() == certificate.dump();
  } catch (const Error&) {
    return false;
  } catch (const Json::exception&) {
    return false;
  }
}

Json to_json(const ProjectiveResolution& r, const ResolutionCheck& check) {
  Json unstable = Json::array();
  for (auto cell : check.unstabilized_cells) unstable.push_back(check.table.arrangement.cell_to_string(cell));
  Json mismatched = Json::array();
  for (auto cell : check.mismatched_cells) mismatched.push_back(check.table.arrangement.cell_to_string(cell));
  Json ranks = Json::object();
  for (int d : r.complex.degrees()) ranks[std::to_string(d)] = r.complex.rank(d);
  return {{"schema", std::string("realexp.presolve/") + kSchemaVersion},
          {"length", r.length},
          {"flat_length", r.flat.length()},
          {"ranks", ranks},
          {"schedule", to_json(r.schedule)},
          {"square_zero", check.square_zero},
          {"violation", check.violation},
          {"cells", check.cells},
          {"stabilized_cells", check.stabilized_cells},
          {"unstabilized_cells", unstable},
          {"mismatched_cells", mismatched},
          {"complex", to_json(r.complex)}};
}

Json error_json(const std::string& code, const std::string& message) {
  return {{"error", {{"code", code}, {"message", message}}}};
}

}  // namespace realexp::io
