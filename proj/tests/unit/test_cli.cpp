#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "spinnet/cli.hpp"

namespace fs = std::filesystem;
using spinnet::cli::Json;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;

  Json json() const { return Json::parse(out); }
};

Run spinnet_run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = spinnet::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string corpus(const std::string& name) { return std::string(SPINNET_CORPUS_DIR) + "/" + name; }

// Temporary directory removed on scope exit.
struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& tag) {
    path = fs::temp_directory_path() / ("spinnet_" + tag + "_" + std::to_string(std::rand()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string write(const std::string& name, const std::string& text) const {
    std::ofstream(path / name) << text;
    return (path / name).string();
  }
};

}  // namespace

TEST_CASE("verlinde report") {
  const auto r = spinnet_run({"verlinde", "--genus", "2", "--level", "2"});
  REQUIRE(r.code == 0);
  const Json j = r.json();
  CHECK(j["status"] == "ok");
  CHECK(j["result"]["value"].get<double>() == 10.0);
  CHECK(j["result"]["integer"] == 10);
  CHECK(j["command"].size() == 5);
  CHECK(j["inputs_digest"].get<std::string>().size() == 16);

  std::vector<std::string> keys;
  for (auto it = j.begin(); it != j.end(); ++it) keys.push_back(it.key());
  CHECK(keys == std::vector<std::string>{"command", "inputs_digest", "status", "result", "duration_seconds"});
}

TEST_CASE("count on the corpus") {
  CHECK(spinnet_run({"count", "--graph", corpus("theta.g"), "--level", "1"}).json()["result"]["count"] == 4);
  CHECK(spinnet_run({"count", "--graph", corpus("dumbbell.g"), "--level", "2"}).json()["result"]["count"] == 10);
  CHECK(spinnet_run({"count", "--graph", corpus("tetrahedron.g"), "--level", "1"}).json()["result"]["count"] == 8);

  const Json listed = spinnet_run({"count", "--graph", corpus("theta.g"), "--level", "1", "--list"}).json();
  REQUIRE(listed["result"]["colorings"].size() == 4);
  CHECK(listed["result"]["colorings"][0] == Json{{"e1", 0}, {"e2", 0}, {"e3", 0}});
}

TEST_CASE("usage errors exit 2") {
  CHECK(spinnet_run({"frobnicate"}).code == 2);
  CHECK(spinnet_run({}).code == 2);
  CHECK(spinnet_run({"count", "--level", "1"}).code == 2);
  CHECK(spinnet_run({"verlinde", "--genus", "2", "--level", "2", "--format", "xml"}).code == 2);
  CHECK(spinnet_run({"verlinde", "--genus", "2", "--level", "2", "--tolerance", "nonsense=1"}).code == 2);
  CHECK(spinnet_run({"verlinde", "--genus", "2", "--level", "2", "--tolerance", "gauge"}).code == 2);
  const auto r = spinnet_run({"frobnicate"});
  CHECK(r.out.empty());
  CHECK_FALSE(r.err.empty());
}

TEST_CASE("help exits 0") {
  const auto r = spinnet_run({"--help"});
  CHECK(r.code == 0);
  CHECK(r.out.find("verify-all") != std::string::npos);
}

TEST_CASE("domain errors produce an error report") {
  TempDir dir("errors");

  SUBCASE("parse error carries a position") {
    const auto g = dir.write("bad.g", "name bad\nvertex u\nedge e1 u\n");
    const auto r = spinnet_run({"graph", "info", g});
    REQUIRE(r.code == 1);
    const Json j = r.json();
    CHECK(j["status"] == "error");
    CHECK(j["result"].is_null());
    CHECK(j["error"]["type"] == "ParseError");
    CHECK(j["error"]["line"] == 3);
    CHECK(j["error"].contains("column"));
  }
  SUBCASE("missing file") {
    const auto r = spinnet_run({"count", "--graph", (dir.path / "absent.g").string(), "--level", "1"});
    CHECK(r.code == 1);
    CHECK(r.json()["error"]["type"] == "InputError");
  }
  SUBCASE("genus out of range") {
    const auto r = spinnet_run({"verlinde", "--genus", "1", "--level", "2"});
    CHECK(r.code == 1);
    CHECK(r.json()["error"]["type"] == "DomainError");
  }
}

TEST_CASE("graph info") {
  const Json j = spinnet_run({"graph", "info", "--graph", corpus("tetrahedron.g")}).json();
  const Json& r = j["result"];
  CHECK(r["vertices"] == 4);
  CHECK(r["edges"] == 6);
  CHECK(r["flags"] == 12);
  CHECK(r["genus"] == 3);
  CHECK(r["marking"]["complement"].size() == 3);
}

TEST_CASE("check verdicts") {
  TempDir dir("check");
  const auto good = dir.write("good.c", "e1 = 1\ne2 = 1\ne3 = 0\n");
  const auto bad = dir.write("bad.c", "e1 = 1\ne2 = 0\ne3 = 0\n");

  const Json ok = spinnet_run({"check", "--graph", corpus("theta.g"), "--coloring", good, "--level", "1"}).json();
  CHECK(ok["result"]["admissible"] == true);
  CHECK(ok["result"]["level_ok"] == true);

  const auto r = spinnet_run({"check", "--graph", corpus("theta.g"), "--coloring", bad});
  CHECK(r.code == 0);
  CHECK(r.json()["result"]["admissible"] == false);
  CHECK(r.json()["result"]["inadmissible_vertices"].size() == 2);
}

TEST_CASE("evaluation is reproducible") {
  TempDir dir("eval");
  const auto c = dir.write("c", "e1 = 2\ne2 = 1\ne3 = 1\n");
  const auto g = corpus("theta.g");

  const Json a = spinnet_run({"eval", "--graph", g, "--coloring", c, "--at", "random:7"}).json();
  const Json b = spinnet_run({"eval", "--graph", g, "--coloring", c, "--at", "random:7"}).json();
  CHECK(a["result"] == b["result"]);
  CHECK(a["inputs_digest"] == b["inputs_digest"]);

  // Feeding the sampled assignment back through a file reproduces the value.
  std::string text;
  for (auto it = a["result"]["at"].begin(); it != a["result"]["at"].end(); ++it) {
    text += it.key() + " =";
    for (const auto& x : it.value()) text += " " + x.dump();
    text += "\n";
  }
  const auto at = dir.write("at", text);
  const Json f = spinnet_run({"eval", "--graph", g, "--coloring", c, "--at", at}).json();
  CHECK(f["result"]["value"]["re"].get<double>() ==
        doctest::Approx(a["result"]["value"]["re"].get<double>()).epsilon(1e-12));
  CHECK(f["inputs_digest"] != a["inputs_digest"]);
}

TEST_CASE("SPINNET_SEED sets the default seed") {
  TempDir dir("seed");
  const auto c = dir.write("c", "e1 = 2\ne2 = 1\ne3 = 1\n");
  const std::vector<std::string> args{"eval", "--graph", corpus("theta.g"), "--coloring", c, "--at", "random"};

  ::setenv("SPINNET_SEED", "11", 1);
  const Json env = spinnet_run(args).json();
  ::unsetenv("SPINNET_SEED");
  auto explicit_args = args;
  explicit_args.insert(explicit_args.begin(), {"--seed", "11"});
  const Json flag = spinnet_run(explicit_args).json();
  const Json zero = spinnet_run(args).json();

  CHECK(env["result"]["value"] == flag["result"]["value"]);
  CHECK(env["result"]["value"] != zero["result"]["value"]);
}

TEST_CASE("tolerance plumbing") {
  TempDir dir("tol");
  const auto c = dir.write("c", "e1 = 3\ne2 = 2\ne3 = 1\n");
  const std::vector<std::string> args{"check-gauge", "--graph", corpus("theta.g"), "--coloring", c, "--seed", "5"};

  const auto pass = spinnet_run(args);
  CHECK(pass.code == 0);
  CHECK(pass.json()["result"]["passed"] == true);

  auto strict = args;
  strict.insert(strict.end(), {"--tolerance", "gauge=1e-300"});
  const auto fail = spinnet_run(strict);
  CHECK(fail.code == 1);
  CHECK(fail.json()["status"] == "failed");
  CHECK(fail.json()["result"]["tolerance"].get<double>() == 1e-300);
}

TEST_CASE("csv and text formats") {
  const std::vector<std::string> base{"verlinde", "--genus", "3", "--level", "1"};
  auto csv_args = base;
  csv_args.insert(csv_args.end(), {"--format", "csv"});
  const auto csv = spinnet_run(csv_args);
  CHECK(csv.code == 0);
  CHECK(csv.out.rfind("key,value\n", 0) == 0);
  CHECK(csv.out.find("result.integer,8\n") != std::string::npos);
  CHECK(csv.out.find("status,ok\n") != std::string::npos);

  auto text_args = base;
  text_args.insert(text_args.end(), {"--format", "text"});
  const auto text = spinnet_run(text_args);
  CHECK(text.out.find("result.integer: 8\n") != std::string::npos);
}

TEST_CASE("orthogonality carries an error bar") {
  TempDir dir("ortho");
  const auto a = dir.write("a", "e1 = 1\ne2 = 1\ne3 = 0\n");
  const auto b = dir.write("b", "e1 = 0\ne2 = 1\ne3 = 1\n");
  const auto r = spinnet_run(
      {"orthogonality", "--graph", corpus("theta.g"), "--c1", a, "--c2", b, "--samples", "2000", "--seed", "3"});
  REQUIRE(r.code == 0);
  const Json j = r.json();
  const Json& res = j["result"];
  CHECK(res["standard_error"].get<double>() > 0);
  CHECK(res["same_coloring"] == false);
  CHECK(res["bound"].get<double>() == doctest::Approx(5.0 / std::sqrt(2000.0)));

  // Doubles survive the text round trip exactly.
  const double re = res["value"]["re"].get<double>();
  const auto pos = r.out.find("\"re\": ") + 6;
  CHECK(std::stod(r.out.substr(pos, r.out.find_first_of(",\n", pos) - pos)) == re);
}

TEST_CASE("verify-all on a corrupted corpus") {
  TempDir dir("corpus");
  fs::copy_file(corpus("theta.g"), dir.path / "theta.g");
  dir.write("broken.g", "name broken\nvertex u\nedge e1 u v w\n");
  const auto r = spinnet_run({"verify-all", "--corpus", dir.path.string(), "--samples", "100"});
  CHECK(r.code == 1);
  const Json j = r.json();
  CHECK(j["status"] == "error");
  CHECK(j["error"]["message"].get<std::string>().find("broken.g") != std::string::npos);
}

TEST_CASE("abelian subcommands") {
  const Json n = spinnet_run({"abelian", "count", "--graph", corpus("theta.g"), "--level", "3"}).json();
  CHECK(n["result"]["count"] == 9);
  CHECK(spinnet_run({"abelian"}).code == 2);
}
