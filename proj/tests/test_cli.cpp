#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "cli.hpp"

using nlohmann::json;

namespace {

struct Outcome {
  int code;
  std::string text;
  json j() const { return json::parse(text); }
};

Outcome run(std::vector<std::string> args) {
  args.insert(args.begin(), "drinlev");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = drinlev::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str()};
}

std::string temp_file(const std::string& name, const std::string& content) {
  const auto path = std::filesystem::temp_directory_path() / ("drinlev_cli_" + name);
  std::ofstream(path) << content;
  return path.string();
}

}  // namespace

TEST_CASE("hecke subcommand") {
  const auto r = run({"hecke", "--q", "2", "--p", "t", "--d", "2", "--k", "1"});
  CHECK(r.code == 0);
  const auto j = r.j();
  CHECK(j["deg_r"] == 3);
  CHECK(j["deg_m"] == 3);
  CHECK(j["G_k"] == 1);
  CHECK(run({"hecke", "--q", "3", "--p", "t", "--d", "4", "--k", "2"}).j()["deg_h_r"] == 130);
  CHECK(run({"hecke", "--q", "2", "--p", "t", "--d", "2", "--k", "3"}).code == 2);
}

TEST_CASE("dickson subcommand") {
  const auto r = run({"dickson", "verify", "--q", "2", "--d", "2", "--Dmax", "12"});
  CHECK(r.code == 0);
  CHECK(r.j()["equal"] == true);
  CHECK(r.j()["degrees"] == json::array({2, 3}));
  const auto g = run({"dickson", "generators", "--q", "2", "--d", "2"}).j();
  CHECK(g["generators"].size() == 2);
  const auto in = temp_file("dim.json", R"({"q": 2, "d": 2, "generators": [[[1, 1], [0, 1]]], "degree": 2})");
  const auto dim = run({"dickson", "dimension", "--in", in});
  CHECK(dim.code == 0);
  CHECK(dim.j()["group_order"] == 2);
  // Invariants of the transvection in degree 2: x^2 and x*y + y^2.
  CHECK(dim.j()["dimension"] == 2);
}

TEST_CASE("admissible and jchain subcommands") {
  const auto g0 = temp_file("g0.json", R"({"q": 2, "p": "t", "named": "gamma0", "d": 2, "n": 1})");
  const auto a = run({"admissible", "analyze", "--in", g0});
  CHECK(a.code == 0);
  CHECK(a.j()["star2"] == true);
  CHECK(a.j()["star3"] == true);
  const auto e = run({"admissible", "enumerate", "--in", g0});
  CHECK(e.j()["order"] == 2);
  CHECK(run({"jchain", "--in", g0}).code == 0);

  // m_11 = 1 pins the diagonal while the off-diagonal entries are free: not a group.
  const auto open = temp_file("open.json", R"({"q": 2, "p": "t", "shape": [1, 1], "m": [[1, 0], [0, 1]]})");
  const auto t = run({"admissible", "triangle", "--in", open});
  CHECK(t.j()["triangle"] == false);
  CHECK(t.j()["closed"] == false);
  const auto o = run({"admissible", "analyze", "--in", open});
  CHECK(o.code == 1);
  CHECK(o.j()["error"]["code"] == "NotClosedUnderProduct");

  const auto bound = temp_file("bound.json", R"({"q": 2, "p": "t", "shape": [1, 1], "m": [[2, 0], [0, 0]]})");
  const auto b = run({"admissible", "analyze", "--in", bound});
  CHECK(b.code == 2);
  CHECK(b.j()["error"]["code"] == "BoundViolation");
}

TEST_CASE("km subcommand") {
  const auto tr = temp_file("km.json", R"({"q": 3, "model": "translation"})");
  const auto r = run({"km", "--in", tr});
  CHECK(r.code == 0);
  CHECK(r.j()["params_ok"] == true);
  CHECK(r.j()["norm"]["truncation"] == 10);
  CHECK(r.j()["norm"]["terms"] == json{{"y^3", 1}, {"x^2*y", 2}});

  const auto sc = temp_file("km_sc.json", R"({"q": 5, "model": "scaling", "zeta": 2, "trunc": 12})");
  CHECK(run({"km", "--in", sc}).j()["group_order"] == 4);

  const auto custom = temp_file("km_c.json", R"({"q": 3, "generators": [[{"x": 1}, {"y": 2, "x": 1}]]})");
  const auto c = run({"km", "--in", custom});
  CHECK(c.code == 0);
  CHECK(c.j()["group_order"] == 2);

  const auto bad = temp_file("km_bad.json", R"({"q": 3, "generators": [[{"x": 2}, {"y": 1}]]})");
  const auto v = run({"km", "--in", bad});
  CHECK(v.code == 1);
  CHECK(v.j()["error"]["code"] == "HypothesisViolated");
}

TEST_CASE("drinfeld subcommand") {
  const auto info = run({"drinfeld", "info", "--q", "2", "--phi", "1,1,1"}).j();
  CHECK(info["characteristic"] == "t+1");
  CHECK(info["height"] == 1);
  CHECK(info["supersingular"] == false);

  const auto mod = temp_file("phi.json", R"({"q": 2, "m": 2, "gamma_t": 2, "phi_t_coeffs": [2, 1]})");
  CHECK(run({"drinfeld", "info", "--in", mod}).j()["rank"] == 1);
  const auto mism = temp_file("phi_bad.json", R"({"q": 2, "m": 2, "gamma_t": 3, "phi_t_coeffs": [2, 1]})");
  CHECK(run({"drinfeld", "info", "--in", mism}).code == 2);

  const auto t = run({"drinfeld", "torsion", "--q", "2", "--phi", "1,1,1", "--a", "t", "--ext-deg", "3"}).j();
  CHECK(t["count"] == 4);
  const auto c = run({"drinfeld", "count-level", "--q", "2", "--phi", "1,1,1", "--module", "t", "--ext-deg", "3"});
  CHECK(c.j()["count"] == 3);
  const auto w = run({"drinfeld", "witness", "--q", "2", "--d", "2", "--p", "t"}).j();
  CHECK(w["supersingular"] == true);
  CHECK(w["phi_t_coeffs"] == json::array({0, 0, 1}));
}

TEST_CASE("formal subcommand") {
  const auto lt = run({"formal", "lubin-tate", "--q", "2", "--n", "3", "--trunc", "32"});
  CHECK(lt.code == 0);
  CHECK(lt.j()["ramification"] == 4);
  const auto fm = run({"formal", "fm", "--q", "2", "--phi", "1,1,1", "--p", "t", "--n", "1", "--ext-deg", "3"});
  CHECK(fm.code == 0);
  CHECK(fm.j()["automorphisms"] == 6);
  CHECK(fm.j()["counterexamples"].empty());
  CHECK(run({"formal", "height", "--params", "0,0,1"}).j()["height"] == 3);
  const auto none = run({"formal", "fm", "--q", "2", "--phi", "1,1,1", "--p", "t", "--n", "1", "--ext-deg", "1"});
  CHECK(none.code == 2);
  CHECK(none.j()["error"]["code"] == "SearchExhausted");
}

TEST_CASE("input errors, output files and reproducibility") {
  CHECK(run({}).code == 2);
  CHECK(run({"bogus"}).code == 2);
  const auto missing = run({"km", "--in", "/nonexistent/file.json"});
  CHECK(missing.code == 2);
  CHECK(missing.j()["error"]["code"] == "InvalidInput");
  const auto junk = temp_file("junk.json", "{not json");
  CHECK(run({"km", "--in", junk}).code == 2);
  const auto extra = temp_file("extra.json", R"({"q": 3, "model": "translation", "colour": "red"})");
  const auto u = run({"km", "--in", extra});
  CHECK(u.code == 2);
  CHECK(u.j()["error"]["message"].get<std::string>().find("colour") != std::string::npos);

  const auto path = (std::filesystem::temp_directory_path() / "drinlev_cli_out.json").string();
  std::filesystem::remove(path);
  const auto w = run({"--out", path, "hecke", "--q", "2", "--p", "t", "--d", "2", "--k", "2"});
  CHECK(w.code == 0);
  CHECK(w.text.empty());
  std::ifstream f(path);
  CHECK(json::parse(f)["deg_r"] == 6);

  const auto first = run({"verify-all", "--suite", "8", "--suite", "9"});
  const auto second = run({"verify-all", "--suite", "8", "--suite", "9"});
  CHECK(first.code == 0);
  CHECK(first.text == second.text);
  CHECK(first.j()["pass"] == true);
}
