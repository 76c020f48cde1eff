#include "realexp/cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "realexp/acceptance.hpp"
#include "realexp/json_io.hpp"

namespace realexp::cli {

namespace {

using io::Json;

struct Globals {
  std::string field = "Q";
  std::size_t workers = 1;
  std::uint64_t seed = 20260917;
  std::string out_file;
};

struct ConstructParams {
  std::string name;
  std::size_t n = 2;
  std::string eps;
  long sigma = -1;
  std::size_t depth = 4;
  std::string fixture = "k";
  std::string complex_file;
  std::string job_file;
};

std::vector<std::string> split(const std::string& text, char sep = ',') {
  std::vector<std::string> out;
  std::string item;
  std::istringstream is(text);
  while (std::getline(is, item, sep))
    if (!item.empty()) out.push_back(item);
  return out;
}

Json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::InvalidInput, "cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    fail(ErrorCode::InvalidInput, path + ": " + e.what());
  }
}

ExponentVector parse_vector(const std::string& text, std::size_t n, const BasisPtr& basis) {
  if (text.empty()) return ExponentVector(std::vector<ExponentValue>(n, 1));
  std::vector<ExponentValue> entries;
  for (const auto& part : split(text)) entries.push_back(parse_exponent(part, basis));
  return ExponentVector(std::move(entries));
}

std::size_t parse_axis(const std::string& text) {
  if (text == "x") return 0;
  if (text == "y") return 1;
  if (text == "z") return 2;
  try {
    return std::stoul(text);
  } catch (const std::exception&) {
    fail(ErrorCode::InvalidInput, "bad axis '" + text + "'");
  }
}

std::string canonical_name(std::string name) {
  for (auto& ch : name)
    if (ch == '_') ch = '-';
  return name;
}

void merge_job(ConstructParams& p) {
  if (p.job_file.empty()) return;
  Json job = read_json(p.job_file);
  if (job.contains("construct")) p.name = job.at("construct").get<std::string>();
  if (job.contains("n")) p.n = job.at("n").get<std::size_t>();
  if (job.contains("sigma")) p.sigma = job.at("sigma").get<long>();
  if (job.contains("depth")) p.depth = job.at("depth").get<std::size_t>();
  if (job.contains("fixture")) p.fixture = job.at("fixture").get<std::string>();
  if (job.contains("eps")) {
    const auto& e = job.at("eps");
    if (e.is_string()) {
      p.eps = e.get<std::string>();
    } else {
      std::vector<std::string> parts;
      for (const auto& x : e) parts.push_back(x.is_string() ? x.get<std::string>() : x.dump());
      p.eps.clear();
      for (std::size_t i = 0; i < parts.size(); ++i) p.eps += (i ? "," : "") + parts[i];
    }
  }
}

Json construct_parameters(const ConstructParams& p) {
  const std::string name = canonical_name(p.name);
  if (!p.complex_file.empty()) return {{"complex_file", p.complex_file}};
  Json j = {{"construct", name}};
  if (name != "k-resolution") j["n"] = p.n;
  if (!p.eps.empty()) j["eps"] = p.eps;
  if (name == "orthant" && p.sigma >= 0) j["sigma"] = p.sigma;
  if (name == "orthant" || name == "k-resolution" || name == "projective") j["depth"] = p.depth;
  if (name == "flat-resolution" || name == "projective") j["fixture"] = p.fixture;
  return j;
}

BoxComplex build_complex(ConstructParams& p) {
  merge_job(p);
  if (!p.complex_file.empty())
    return io::complex_from_json(read_json(p.complex_file), ConstantBasis::standard());
  const std::string name = canonical_name(p.name);
  const auto basis = ConstantBasis::standard();
  auto eps = [&] {
    auto v = parse_vector(p.eps, p.n, basis);
    p.n = v.size();
    return v;
  };
  if (name == "open-koszul") return open_koszul(p.n);
  if (name == "ordinary-koszul") return ordinary_koszul(eps());
  if (name == "dual-koszul") return dualize_free(ordinary_koszul(eps()));
  if (name == "orthant") {
    auto base = eps();
    CoordMask sigma = p.sigma < 0 ? (CoordMask{1} << base.size()) - 1 : static_cast<CoordMask>(p.sigma);
    return orthant_resolution(sigma, TruncationSequence::geometric(base, sigma, p.depth)).complex;
  }
  if (name == "k-resolution") return k_resolution(default_escape_sequence(p.depth));
  if (name == "flat-resolution") return box_flat_resolution(fixtures::by_name(p.fixture, p.n));
  if (name == "projective") return projective_resolution(fixtures::by_name(p.fixture, p.n), {p.depth, std::nullopt}).complex;
  if (name.empty()) fail(ErrorCode::InvalidInput, "no construction given (--construct or --complex)");
  fail(ErrorCode::InvalidInput, "unknown construction '" + p.name + "'");
}

Json provenance(const std::string& command, const Globals& g, const Json& parameters) {
  return {{"engine", kEngineVersion},
          {"schema_version", io::kSchemaVersion},
          {"command", command},
          {"field", FieldConfig::parse(g.field).name()},
          {"parameters", parameters}};
}

std::string comment_header(const Json& prov) {
  std::ostringstream os;
  os << "# " << prov.at("engine").get<std::string>() << "; command " << prov.at("command").get<std::string>()
     << "; field " << prov.at("field").get<std::string>() << "; parameters " << prov.at("parameters").dump()
     << "\n";
  return os.str();
}

std::uint64_t fnv1a(const std::string& text) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  return h;
}

std::optional<std::filesystem::path> cache_path(const std::string& key) {
  const char* dir = std::getenv("REALEXP_CACHE_DIR");
  if (!dir || !*dir) return std::nullopt;
  std::ostringstream name;
  name << "homology-" << std::hex << std::setw(16) << std::setfill('0') << fnv1a(key) << ".txt";
  return std::filesystem::path(dir) / name.str();
}

HomologyOptions homology_options(const Globals& g) {
  HomologyOptions opts;
  opts.field = FieldConfig::parse(g.field);
  opts.workers = g.workers;
  return opts;
}

class Emitter {
 public:
  Emitter(const Globals& g, std::ostream& out) : g_(g), out_(out) {}

  void text(const std::string& body) {
    if (g_.out_file.empty()) {
      out_ << body;
      return;
    }
    std::ofstream f(g_.out_file);
    if (!f) fail(ErrorCode::InvalidInput, "cannot write " + g_.out_file);
    f << body;
  }
  void json(const Json& j) { text(j.dump(2) + "\n"); }

 private:
  const Globals& g_;
  std::ostream& out_;
};

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Homological computations over real-exponent polynomial rings", "realexp"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--field", g.field, "Coefficient field: Q or GF(p)");
  app.add_option("--workers", g.workers, "Worker thread cap")->check(CLI::PositiveNumber);
  app.add_option("--seed", g.seed, "Seed for randomized sweeps");
  app.add_option("-o,--out", g.out_file, "Write the result to a file instead of stdout");
  app.set_version_flag("--version", kEngineVersion);

  ConstructParams cp;
  auto add_construct_options = [&](CLI::App* sub) {
    sub->add_option("--construct", cp.name,
                    "open-koszul | ordinary-koszul | dual-koszul | orthant | k-resolution | flat-resolution | projective");
    sub->add_option("--n", cp.n, "Number of variables");
    sub->add_option("--eps", cp.eps, "Comma separated exponents, e.g. 1,1/2,pi");
    sub->add_option("--sigma", cp.sigma, "Coordinate mask for orthant (default: all)");
    sub->add_option("--depth", cp.depth, "Truncation depth K");
    sub->add_option("--fixture", cp.fixture, "k | R/I | R/I' | B | R");
    sub->add_option("--complex", cp.complex_file, "Complex JSON file")->check(CLI::ExistingFile);
    sub->add_option("--job", cp.job_file, "Job JSON {\"construct\": ..., parameters}")->check(CLI::ExistingFile);
  };

  auto* construct = app.add_subcommand("construct", "Build a complex and emit it with its homology table");
  add_construct_options(construct);

  auto* hom = app.add_subcommand("homology", "Cellwise homology table of a complex");
  add_construct_options(hom);
  std::string format = "json";
  hom->add_option("--format", format, "json | csv | grid")->check(CLI::IsMember({"json", "csv", "grid"}));

  auto* tor = app.add_subcommand("tor", "Tor_i(k, R/<x^eps>) via the Koszul complex");
  std::size_t tor_n = 0;
  std::string tor_eps;
  std::optional<int> tor_i;
  std::string tor_format = "json";
  tor->add_option("--n", tor_n, "Number of variables");
  tor->add_option("--eps", tor_eps, "Comma separated exponents (default all 1)");
  tor->add_option("--i", tor_i, "Homological degree (default: all)");
  tor->add_option("--format", tor_format, "json | text")->check(CLI::IsMember({"json", "text"}));

  auto* ext = app.add_subcommand("ext-cert", "Issue the Ext^{n+1}(k, F) certificate");
  std::size_t ext_n = 2, ext_kmax = 10;
  std::string ext_seq;
  ext->add_option("--n", ext_n, "Number of variables")->check(CLI::Range(1, 6));
  ext->add_option("--kmax", ext_kmax, "Largest truncation depth");
  ext->add_option("--sequence", ext_seq, "Comma separated decreasing exponents e_0,...,e_K");

  auto* verify = app.add_subcommand("verify", "Recompute a certificate and compare");
  std::string verify_file;
  verify->add_option("certificate", verify_file, "Certificate JSON")->required()->check(CLI::ExistingFile);

  auto* presolve = app.add_subcommand("presolve", "Projective resolution of a box module, with its check");
  std::string pre_fixture = "k", pre_module;
  std::size_t pre_n = 2, pre_depth = 8;
  presolve->add_option("--fixture", pre_fixture, "k | R/I | R/I' | B | R");
  presolve->add_option("--n", pre_n, "Number of variables");
  presolve->add_option("--module", pre_module, "Module JSON {\"n\", \"boxes\": [...]}")->check(CLI::ExistingFile);
  presolve->add_option("--depth", pre_depth, "Truncation depth K");

  auto* group = app.add_subcommand("group", "Queries on a finitely generated exponent group");
  std::string group_op, group_file, group_axis = "x", group_vec, group_other;
  group->add_option("op", group_op, "ray | member | cone | meet")
      ->required()
      ->check(CLI::IsMember({"ray", "member", "cone", "meet"}));
  group->add_option("--file", group_file, "Group JSON")->required()->check(CLI::ExistingFile);
  group->add_option("--axis", group_axis, "x | y | z | index");
  group->add_option("--vector", group_vec, "Comma separated vector");
  group->add_option("--other", group_other, "Second vector for meet");

  auto* self = app.add_subcommand("selftest", "Run the acceptance suite");
  std::string depth = "small";
  std::vector<int> corrupt, only;
  self->add_option("--depth", depth, "small | full")->check(CLI::IsMember({"small", "full"}));
  self->add_option("--corrupt", corrupt, "Criteria to run on corrupted inputs")->delimiter(',');
  self->add_option("--only", only, "Run only these criteria")->delimiter(',');

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << io::error_json("UsageError", e.what()).dump() << "\n";
    return 2;
  }

  Emitter emit(g, out);
  try {
    FieldConfig::parse(g.field);
    if (*construct || *hom) {
      const bool is_construct = static_cast<bool>(*construct);
      BoxComplex c = build_complex(cp);
      if (auto v = verify_complex(c)) fail(ErrorCode::NonzeroDifferential, v->message);
      Json params = construct_parameters(cp);
      Json prov = provenance(is_construct ? "construct" : "homology", g, params);
      if (is_construct) {
        auto table = homology(c, homology_options(g));
        emit.json({{"provenance", prov}, {"complex", io::to_json(c)}, {"homology", io::to_json(table)}});
        return 0;
      }
      params["format"] = format;
      prov["parameters"] = params;
      std::string key = io::to_json(c).dump() + "|" + prov.at("field").get<std::string>() + "|" + format;
      auto cached = cache_path(key);
      std::string body;
      if (cached && std::filesystem::exists(*cached)) {
        std::ifstream in(*cached);
        body.assign(std::istreambuf_iterator<char>(in), {});
      } else {
        auto table = homology(c, homology_options(g));
        if (format == "json") {
          Json j = io::to_json(table);
          body = Json{{"provenance", prov}, {"homology", j}}.dump(2) + "\n";
        } else {
          body = comment_header(prov) + (format == "csv" ? io::to_csv(table) : io::to_grid(table));
        }
        if (cached) {
          std::filesystem::create_directories(cached->parent_path());
          std::ofstream(*cached) << body;
        }
      }
      emit.text(body);
      return 0;
    }
    if (*tor) {
      auto eps = parse_vector(tor_eps, tor_n ? tor_n : 1, ConstantBasis::standard());
      if (tor_n && eps.size() != tor_n) fail(ErrorCode::InvalidInput, "--eps length differs from --n");
      const int n = static_cast<int>(eps.size());
      std::vector<int> degrees;
      if (tor_i) {
        degrees.push_back(*tor_i);
      } else {
        for (int i = 0; i <= n; ++i) degrees.push_back(i);
      }
      Json rows = Json::array();
      std::ostringstream text;
      for (int i : degrees) {
        auto r = tor_of_power_quotient(eps, i);
        rows.push_back({{"i", i}, {"dimension", r.dimension}, {"differentials_vanish", r.differentials_vanish}});
        text << r.dimension << "\n";
      }
      if (tor_format == "text") {
        emit.text(text.str());
      } else {
        Json params = {{"n", n}, {"eps", io::to_json(eps)}};
        if (tor_i) params["i"] = *tor_i;
        emit.json({{"provenance", provenance("tor", g, params)}, {"tor", rows}});
      }
      return 0;
    }
    if (*ext) {
      std::optional<TruncationSequence> seq;
      if (!ext_seq.empty()) {
        TruncationSequence s;
        for (const auto& part : split(ext_seq))
          s.entries.emplace_back(std::vector<ExponentValue>{parse_exponent(part, ConstantBasis::standard())});
        seq = s;
      }
      auto cert = ext_n_plus_1(ext_n, ext_kmax, seq);
      Json j = io::to_json(cert);
      j["provenance"] = provenance("ext-cert", g, j.at("parameters"));
      emit.json(j);
      return 0;
    }
    if (*verify) {
      Json cert = read_json(verify_file);
      cert.erase("provenance");
      bool ok = io::reverify(cert);
      emit.json({{"provenance", provenance("verify", g, {{"certificate", verify_file}})},
                 {"verified", ok},
                 {"status", ok ? cert.value("status", "") : "rejected"}});
      return ok ? 0 : 1;
    }
    if (*presolve) {
      std::vector<BoxModule> m;
      Json params = {{"depth", pre_depth}};
      if (!pre_module.empty()) {
        Json j = read_json(pre_module);
        const Json& boxes = j.is_array() ? j : j.at("boxes");
        for (const auto& b : boxes) m.push_back(io::box_from_json(b, ConstantBasis::standard()));
        params["module"] = pre_module;
      } else {
        m = fixtures::by_name(pre_fixture, pre_n);
        params["fixture"] = pre_fixture;
        params["n"] = pre_n;
      }
      auto res = projective_resolution(m, {pre_depth, std::nullopt});
      auto check = check_projective_resolution(res, m, homology_options(g));
      Json j = io::to_json(res, check);
      j["provenance"] = provenance("presolve", g, params);
      emit.json(j);
      return check.passed() ? 0 : 1;
    }
    if (*group) {
      ExponentGroup grp = io::group_from_json(read_json(group_file));
      Json params = {{"op", group_op}, {"file", group_file}};
      Json result;
      if (group_op == "ray") {
        std::size_t axis = parse_axis(group_axis);
        params["axis"] = axis;
        Json gens = Json::array();
        for (const auto& v : ray_intersection(grp, axis)) gens.push_back(io::to_json(v));
        result = {{"axis", axis}, {"generators", gens}};
      } else {
        if (group_vec.empty()) fail(ErrorCode::InvalidInput, "--vector is required for " + group_op);
        auto v = parse_vector(group_vec, grp.n, grp.basis);
        params["vector"] = group_vec;
        if (group_op == "member") {
          auto m = is_member(v, grp);
          Json w = Json::array();
          for (const auto& c : m.witness) w.push_back(c.get_str());
          result = {{"member", m.member}, {"witness", w}};
        } else if (group_op == "cone") {
          bool member = is_member(v, grp).member;
          bool nonnegative = is_nonnegative(v);
          result = {{"member", member},
                    {"nonnegative", nonnegative},
                    {"in_open_cone", member && nonnegative && in_open_cone(v, grp)}};
        } else {
          if (group_other.empty()) fail(ErrorCode::InvalidInput, "--other is required for meet");
          params["other"] = group_other;
          result = {{"meet", io::to_json(meet(v, parse_vector(group_other, grp.n, grp.basis)))}};
        }
      }
      result["provenance"] = provenance("group", g, params);
      emit.json(result);
      return 0;
    }
    if (*self) {
      acceptance::Options opts;
      opts.depth = depth == "full" ? acceptance::Depth::Full : acceptance::Depth::Small;
      opts.seed = g.seed;
      opts.workers = g.workers;
      opts.corrupt.insert(corrupt.begin(), corrupt.end());
      opts.only.insert(only.begin(), only.end());
      std::ostringstream report;
      report << "# " << kEngineVersion << "; selftest depth " << depth << "; seed " << g.seed << "\n";
      bool all = true;
      for (const auto& r : acceptance::run_all(opts)) {
        report << acceptance::format(r) << "\n";
        all = all && r.passed;
      }
      emit.text(report.str());
      return all ? 0 : 1;
    }
  } catch (const Error& e) {
    err << io::error_json(std::string(error_name(e.code())), e.what()).dump() << "\n";
    return 2;
  } catch (const Json::exception& e) {
    err << io::error_json("InvalidInput", e.what()).dump() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << io::error_json("InternalError", e.what()).dump() << "\n";
    return 3;
  }
  return 0;
}

}  // namespace realexp::cli
