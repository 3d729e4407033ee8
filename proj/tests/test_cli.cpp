// End-to-end tests for the lmg binary: JSON contracts, exit codes,
// deterministic output. The binary path is injected as LMG_BIN.

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <catch_amalgamated.hpp>
#include <json.hpp>

namespace {

using nlohmann::json;

struct RunResult {
  int rc = -1;
  std::string out;
  std::string err;
};

const std::filesystem::path& work_dir() {
  static std::filesystem::path dir = [] {
    std::string tmpl =
        (std::filesystem::temp_directory_path() / "lmg_cli_XXXXXX").string();
    char* made = mkdtemp(tmpl.data());
    REQUIRE(made != nullptr);
    return std::filesystem::path(made);
  }();
  return dir;
}

std::string write_file(const std::string& name, const std::string& body) {
  std::filesystem::path p = work_dir() / name;
  std::ofstream out(p);
  out << body;
  REQUIRE(out.good());
  return p.string();
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// Runs the binary through /bin/sh with each argument single-quoted.
// Arguments never contain single quotes. An env prefix like
// "LMG_MAX_BALL=50" may be passed through.
RunResult run(const std::vector<std::string>& args,
              const std::string& env_prefix = "") {
  static int counter = 0;
  std::filesystem::path errfile =
      work_dir() / ("stderr_" + std::to_string(counter++) + ".txt");
  std::string cmd = env_prefix.empty() ? "" : env_prefix + " ";
  cmd += LMG_BIN;
  for (const std::string& a : args) cmd += " '" + a + "'";
  cmd += " 2>'" + errfile.string() + "'";
  RunResult r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  char buf[4096];
  std::size_t got;
  while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, got);
  int status = pclose(pipe);
  REQUIRE(WIFEXITED(status));
  r.rc = WEXITSTATUS(status);
  r.err = slurp(errfile);
  return r;
}

std::string bs23() {
  static std::string p =
      write_file("bs23.json", R"({"n": 1, "A": [["3/2"]], "L": [[2]]})");
  return p;
}

std::string bs32() {
  static std::string p =
      write_file("bs32.json", R"({"n": 1, "A": [["2/3"]], "L": [[3]]})");
  return p;
}

std::string bs25() {
  static std::string p =
      write_file("bs25.json", R"({"n": 1, "A": [["5/2"]], "L": [[2]]})");
  return p;
}

std::string a8() {
  static std::string p = write_file(
      "a8.json", R"({"n": 2, "A": [[0, 1], [8, 0]], "L": [[1, 0], [0, 1]]})");
  return p;
}

}  // namespace

TEST_CASE("classify emits the coarse class") {
  RunResult r = run({"classify", bs23()});
  CHECK(r.rc == 0);
  CHECK(r.err.empty());
  CHECK(r.out == R"({
  "class": "non_metabelian",
  "hirsch": null
}
)");

  std::string bs11 =
      write_file("bs11.json", R"({"n": 1, "A": [[1]], "L": [[1]]})");
  json j = json::parse(run({"classify", bs11}).out);
  CHECK(j["class"] == "polycyclic");
  CHECK(j["hirsch"] == 2);

  std::string asc2 =
      write_file("asc2.json", R"({"n": 1, "A": [[2]], "L": [[1]]})");
  j = json::parse(run({"classify", asc2}).out);
  CHECK(j["class"] == "metabelian_not_polycyclic");
  CHECK(j["hirsch"].is_null());
}

TEST_CASE("abel emits abelianization invariants") {
  json j = json::parse(run({"abel", bs23()}).out);
  CHECK(j == json({{"free_rank", 1}, {"torsion", json::array()}}));

  j = json::parse(run({"abel", a8()}).out);
  CHECK(j == json({{"free_rank", 1}, {"torsion", {7}}}));

  std::string shear = write_file(
      "shear.json", R"({"n": 2, "A": [[1, 0], [1, 1]], "L": [[1, 0], [0, 1]]})");
  j = json::parse(run({"abel", shear}).out);
  CHECK(j == json({{"free_rank", 2}, {"torsion", json::array()}}));
}

TEST_CASE("wp answers the word problem") {
  json j = json::parse(run({"wp", bs23(), "t x[2] t^-1 x[-3]"}).out);
  CHECK(j == json({{"identity", true}}));
  j = json::parse(run({"wp", bs23(), "x[1]"}).out);
  CHECK(j == json({{"identity", false}}));
}

TEST_CASE("reduce emits the Britton-reduced word") {
  json j = json::parse(run({"reduce", bs23(), "t x[2] t^-1"}).out);
  CHECK(j == json({{"reduced", "x[3]"}, {"identity", false}}));

  j = json::parse(run({"reduce", bs23(), "x[2] x[-2]"}).out);
  CHECK(j == json({{"reduced", ""}, {"identity", true}}));

  // Not a pinch: 1 is outside both L and AL.
  j = json::parse(run({"reduce", bs23(), "t x[1] t^-1"}).out);
  CHECK(j == json({{"reduced", "t x[1] t^-1"}, {"identity", false}}));
}

TEST_CASE("tlen emits translation length and cyclic core") {
  json j = json::parse(run({"tlen", bs23(), "t^-1 x[2] t"}).out);
  CHECK(j == json({{"tau", 0}, {"core", "x[2]"}, {"conjugator", "t^-1"}}));

  j = json::parse(run({"tlen", bs23(), "t t"}).out);
  CHECK(j == json({{"tau", 2}, {"core", "t^2"}, {"conjugator", ""}}));
}

TEST_CASE("ball emits the vertex and edge lists") {
  json j = json::parse(run({"ball", bs23(), "--radius", "1"}).out);
  CHECK(j["center"] == "");
  CHECK(j["radius"] == 1);
  REQUIRE(j["vertices"].is_array());
  CHECK(j["vertices"].size() == 6);
  REQUIRE(j["edges"].is_array());
  CHECK(j["edges"].size() == 5);
  for (const json& e : j["edges"]) {
    REQUIRE(e.is_array());
    REQUIRE(e.size() == 2);
    CHECK(e[0].get<std::size_t>() < 6);
    CHECK(e[1].get<std::size_t>() < 6);
  }

  j = json::parse(run({"ball", a8(), "--radius", "1"}).out);
  CHECK(j["vertices"].size() == 10);
  CHECK(j["edges"].size() == 9);
}

TEST_CASE("ball emits Graphviz DOT on request") {
  RunResult r = run({"ball", bs23(), "--radius", "1", "--dot"});
  CHECK(r.rc == 0);
  CHECK(r.out.substr(0, 13) == "graph ball {\n");
  CHECK(r.out.find("v0 [label=") != std::string::npos);
  std::size_t edges = 0;
  for (std::size_t at = r.out.find(" -- "); at != std::string::npos;
       at = r.out.find(" -- ", at + 1))
    ++edges;
  CHECK(edges == 5);
  CHECK(r.out.substr(r.out.size() - 2) == "}\n");
}

TEST_CASE("ball respects the vertex cap") {
  RunResult r = run({"ball", bs23(), "--radius", "3"}, "LMG_MAX_BALL=50");
  CHECK(r.rc == 2);
  json err = json::parse(r.err);
  CHECK(err["error"].get<std::string>().find("cap") != std::string::npos);
}

TEST_CASE("iso reports verdicts with witnesses and budgets") {
  RunResult r = run({"iso", bs23(), bs32()});
  CHECK(r.rc == 0);
  json j = json::parse(r.out);
  CHECK(j["verdict"] == "iso");
  CHECK(j["witness"]["kind"] == "cond_i");
  CHECK(j["witness"]["eps"] == -1);
  CHECK(j["certificate"].is_null());
  CHECK(j["budget"]["height"] == 5);
  CHECK(j["budget"]["max_candidates"] == 1000000);

  r = run({"iso", bs23(), bs25()});
  CHECK(r.rc == 0);
  j = json::parse(r.out);
  CHECK(j["verdict"] == "not_iso");
  CHECK(j["witness"].is_null());
  CHECK(j["certificate"]["kind"] == "abelianization");
}

TEST_CASE("iso exits 3 when the budget is exhausted") {
  std::string left = write_file(
      "a8_l1.json", R"({"n": 2, "A": [[0, 1], [8, 0]], "L": [[2, 0], [0, 1]]})");
  std::string right = write_file(
      "a8_l2.json", R"({"n": 2, "A": [[0, 1], [8, 0]], "L": [[1, 0], [0, 2]]})");
  RunResult r =
      run({"iso", left, right, "--height", "5", "--max-candidates", "1000"});
  CHECK(r.rc == 3);
  json j = json::parse(r.out);
  CHECK(j["verdict"] == "unknown");
  CHECK(j["witness"].is_null());
  CHECK(j["certificate"].is_null());
  CHECK(j["budget"]["exhausted"] == json::array({"cond_i"}));
  CHECK(j["budget"]["max_candidates"] == 1000);
}

TEST_CASE("bs answers from the classification table") {
  RunResult r = run({"bs", "2", "3", "3", "2"});
  CHECK(r.rc == 0);
  CHECK(r.out == R"({
  "iso": true
}
)");
  CHECK(json::parse(run({"bs", "2", "3", "-2", "-3"}).out)["iso"] == true);
  CHECK(json::parse(run({"bs", "2", "3", "2", "5"}).out)["iso"] == false);
  RunResult bad = run({"bs", "0", "1", "1", "1"});
  CHECK(bad.rc == 2);
  CHECK(json::parse(bad.err).contains("error"));
}

TEST_CASE("repeated runs are byte-identical") {
  std::vector<std::vector<std::string>> cmds = {
      {"iso", bs23(), bs32()},
      {"ball", a8(), "--radius", "2"},
      {"ball", bs23(), "--radius", "2", "--dot"},
      {"classify", a8()},
  };
  for (const auto& cmd : cmds) {
    RunResult a = run(cmd);
    RunResult b = run(cmd);
    CHECK(a.rc == 0);
    CHECK(a.rc == b.rc);
    CHECK(a.out == b.out);
  }
}

TEST_CASE("errors are JSON on stderr with stable exit codes") {
  RunResult r = run({"classify", (work_dir() / "missing.json").string()});
  CHECK(r.rc == 1);
  CHECK(r.out.empty());
  json err = json::parse(r.err);
  CHECK(err["error"].get<std::string>().find("cannot open file") !=
        std::string::npos);
  CHECK(err["position"] == 0);

  std::string garbled = write_file("garbled.json", "{ not json");
  r = run({"classify", garbled});
  CHECK(r.rc == 1);
  CHECK(json::parse(r.err)["error"].get<std::string>().find("invalid JSON") !=
        std::string::npos);

  std::string singular =
      write_file("singular.json", R"({"n": 1, "A": [[0]], "L": [[1]]})");
  r = run({"classify", singular});
  CHECK(r.rc == 2);
  CHECK(json::parse(r.err).contains("error"));

  std::string ragged =
      write_file("ragged.json", R"({"n": 2, "A": [[1]], "L": [[1, 0]]})");
  r = run({"classify", ragged});
  CHECK(r.rc == 2);

  r = run({"wp", bs23(), "t q"});
  CHECK(r.rc == 1);
  err = json::parse(r.err);
  CHECK(err["position"] == 2);

  CHECK(run({}).rc == 1);
  CHECK(run({"no_such_command"}).rc == 1);
  CHECK(run({"--help"}).rc == 0);
}
