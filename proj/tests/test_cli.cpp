#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "realexp/cli.hpp"

using nlohmann::json;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = realexp::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::filesystem::path scratch(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / "realexp_cli_tests";
  std::filesystem::create_directories(dir);
  return dir / name;
}

void write(const std::filesystem::path& p, const std::string& text) { std::ofstream(p) << text; }

const char* kDense = R"({"n": 2, "generators": [["2", "0"], ["pi", "0"], ["1", "1"], ["0", "e"]]})";

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("homology of the open Koszul complex") {
    auto r = run({"homology", "--construct", "open-koszul", "--n", "2"});
    REQUIRE(r.code == 0);
    auto j = json::parse(r.out);
    CHECK(j.at("provenance").at("engine") == realexp::cli::kEngineVersion);
    CHECK(j.at("provenance").at("field") == "Q");
    int nonzero = 0;
    for (const auto& cell : j.at("homology").at("cells")) {
      const auto& h = cell.at("H");
      if (h[0] == 1) {
        ++nonzero;
        CHECK(cell.at("cell") == "{0}x{0}");
      }
      for (std::size_t d = 1; d < h.size(); ++d) CHECK(h[d] == 0);
    }
    CHECK(nonzero == 1);
  }

  TEST_CASE("output is deterministic across worker counts") {
    auto a = run({"construct", "--construct", "ordinary_koszul", "--eps", "1,pi,1/2"});
    auto b = run({"--workers", "4", "construct", "--construct", "ordinary-koszul", "--eps", "1,pi,1/2"});
    REQUIRE(a.code == 0);
    CHECK(a.out == b.out);
  }

  TEST_CASE("job files") {
    auto job = scratch("job.json");
    write(job, R"({"construct": "orthant", "n": 1, "depth": 3})");
    auto r = run({"homology", "--job", job.string(), "--format", "csv"});
    REQUIRE(r.code == 0);
    CHECK(r.out.rfind("# realexp", 0) == 0);
    CHECK(r.out.find("cell,H0,H1") != std::string::npos);
  }

  TEST_CASE("tor") {
    auto r = run({"tor", "--n", "3", "--eps", "1,1,1", "--i", "3", "--format", "text"});
    CHECK(r.code == 0);
    CHECK(r.out == "1\n");
    auto all = json::parse(run({"tor", "--n", "3"}).out);
    std::vector<long> dims;
    for (const auto& row : all.at("tor")) dims.push_back(row.at("dimension"));
    CHECK(dims == std::vector<long>{1, 3, 3, 1});
  }

  TEST_CASE("group queries") {
    auto file = scratch("dense.json");
    write(file, kDense);
    auto ray = json::parse(run({"group", "ray", "--file", file.string(), "--axis", "y"}).out);
    CHECK(ray.at("generators") == json::array({"2", "e"}));
    auto cone = json::parse(run({"group", "cone", "--file", file.string(), "--vector", "1,1"}).out);
    CHECK(cone.at("member") == true);
    CHECK(cone.at("in_open_cone") == false);
    auto member = json::parse(run({"group", "member", "--file", file.string(), "--vector", "0,1"}).out);
    CHECK(member.at("member") == false);
  }

  TEST_CASE("certificate issue and verify") {
    auto cert = scratch("cert.json");
    REQUIRE(run({"ext-cert", "--n", "2", "--kmax", "4", "-o", cert.string()}).code == 0);
    auto ok = run({"verify", cert.string()});
    CHECK(ok.code == 0);
    CHECK(json::parse(ok.out).at("verified") == true);
    auto j = json::parse(std::ifstream(cert));
    j["table"][0]["multiplicity"] = 7;
    auto bad = scratch("bad.json");
    write(bad, j.dump());
    CHECK(run({"verify", bad.string()}).code == 1);
  }

  TEST_CASE("presolve") {
    auto r = run({"presolve", "--fixture", "k", "--n", "1", "--depth", "4"});
    REQUIRE(r.code == 0);
    auto j = json::parse(r.out);
    CHECK(j.at("length") == 2);
    CHECK(j.at("provenance").at("command") == "presolve");
  }

  TEST_CASE("errors are machine readable") {
    auto r = run({"tor", "--n", "2", "--eps", "0,1"});
    CHECK(r.code == 2);
    CHECK(json::parse(r.err).at("error").at("code") == "InvalidInput");
    auto u = run({"homology", "--bogus"});
    CHECK(u.code == 2);
    CHECK(json::parse(u.err).at("error").at("code") == "UsageError");
    auto g = run({"--field", "GF(8)", "homology", "--construct", "open-koszul"});
    CHECK(g.code == 2);
    auto n = run({"homology", "--construct", "nothing"});
    CHECK(json::parse(n.err).at("error").at("message") == "unknown construction 'nothing'");
  }

  TEST_CASE("cache directory") {
    auto dir = scratch("cache");
    std::filesystem::remove_all(dir);
    setenv("REALEXP_CACHE_DIR", dir.c_str(), 1);
    auto a = run({"homology", "--construct", "ordinary-koszul", "--eps", "1,e", "--format", "grid"});
    CHECK(std::distance(std::filesystem::directory_iterator(dir), {}) == 1);
    auto b = run({"homology", "--construct", "ordinary-koszul", "--eps", "1,e", "--format", "grid"});
    unsetenv("REALEXP_CACHE_DIR");
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
  }

  TEST_CASE("selftest surfaces the failing criterion") {
    auto ok = run({"selftest", "--only", "2,7"});
    CHECK(ok.code == 0);
    auto bad = run({"selftest", "--only", "2,7", "--corrupt", "7"});
    CHECK(bad.code == 1);
    CHECK(bad.out.find("FAIL  C7") != std::string::npos);
    CHECK(bad.out.find("PASS  C2") != std::string::npos);
  }
}
