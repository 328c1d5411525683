#include <doctest.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "cli.hpp"
#include "flagset_io.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Outcome {
  int code;
  std::string out, err;
  json doc() const { return json::parse(out); }
};

Outcome run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = flagkneser::cli::run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path tmp_dir() {
  const char* env = std::getenv("FLAGKNESER_TEST_TMP");
  const fs::path p = env ? fs::path(env) : fs::temp_directory_path() / "flagkneser_cli_test";
  fs::create_directories(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

}  // namespace

TEST_CASE("count evaluates registered formulas") {
  auto r = run({"--no-timing", "count", "--q", "2", "independence_number"});
  REQUIRE(r.code == 0);
  CHECK(r.doc()["formulas"]["independence_number"]["values"]["2"] == 11005);

  r = run({"count", "--q", "2", "gaussian:7,4"});
  REQUIRE(r.code == 0);
  CHECK(r.doc()["formulas"]["gaussian:7,4"]["values"]["2"] == 11811);

  r = run({"count", "--q", "2,3", "chromatic_lower", "chromatic_upper"});
  REQUIRE(r.code == 0);
  const json f = r.doc()["formulas"];
  CHECK(f["chromatic_lower"]["values"]["2"] == 17);
  CHECK(f["chromatic_upper"]["values"]["2"] == 29);
  CHECK(f["chromatic_upper"]["values"]["3"] == 118);
  CHECK(r.err.find("manifest ") != std::string::npos);

  r = run({"count", "--q", "2", "no_such_formula"});
  CHECK(r.code == 2);
  CHECK(r.err.find("available") != std::string::npos);
  CHECK(run({"count", "--q", "6", "flag_count"}).code == 2);
  CHECK(run({"count", "--q", "2", "gaussian:7"}).code == 2);
  CHECK(run({"bogus"}).code == 2);
}

TEST_CASE("construct, verify and a doctored file") {
  const fs::path dir = tmp_dir();
  const std::string pl = (dir / "p_l.flags").string();
  auto r = run({"--no-timing", "construct", "--kind", "P_l", "--canonical", "--q", "2", "--out", pl});
  REQUIRE(r.code == 0);
  CHECK(r.doc()["cardinality"] == 11005);
  CHECK(r.doc()["match"] == true);

  r = run({"--no-timing", "verify", pl, "--independent", "--maximal"});
  CHECK(r.code == 0);
  const json report = r.doc();
  for (const auto& c : report["checks"]) CHECK(c["pass"] == true);
  CHECK(report["cardinality"] == 11005);

  // Add a flag adjacent to a member: the first flag not in the set.
  auto file = flagkneser::cli::read_flag_file(pl);
  std::uint32_t extra = 0;
  while (std::binary_search(file.ordinals.begin(), file.ordinals.end(), extra)) ++extra;
  file.ordinals.insert(std::lower_bound(file.ordinals.begin(), file.ordinals.end(), extra), extra);
  file.header.size.reset();
  const std::string bad = (dir / "doctored.flags").string();
  {
    std::ofstream f(bad);
    f << "q 2\nkind P_l\n";
    for (auto o : file.ordinals) f << o << '\n';
  }
  r = run({"--no-timing", "verify", bad, "--independent"});
  CHECK(r.code == 1);
  CHECK(r.err.find("FAIL independent witness") != std::string::npos);

  r = run({"construct", "--kind", "H_empty", "--canonical", "--q", "2", "--count-only"});
  CHECK(r.code == 0);
  CHECK(r.doc()["cardinality"] == 9765);

  r = run({"construct", "--kind", "H_E", "--ekr", "point_pencil", "--canonical", "--q", "2", "--count-only"});
  CHECK(r.code == 0);
  CHECK(r.doc()["cardinality"] == 11005);

  r = run({"construct", "--kind", "P_H", "--q", "2", "--point", "0;0,0,0,0,0,0,1", "--hyperplane",
           "5;1,0,0,0,0,0,0;0,1,0,0,0,0,0;0,0,1,0,0,0,0;0,0,0,1,0,0,0;0,0,0,0,1,0,0;0,0,0,0,0,1,0"});
  CHECK(r.code == 2);
  CHECK(r.err.find("P must lie in H") != std::string::npos);
}

TEST_CASE("saturation through the command line") {
  const fs::path dir = tmp_dir();
  const std::string he = (dir / "h_e.flags").string();
  REQUIRE(run({"construct", "--kind", "H_E", "--ekr", "four_space", "--canonical", "--q", "2", "--out", he}).code == 0);
  const auto r = run({"--no-timing", "verify", he, "--saturation", "--trace"});
  CHECK(r.code == 0);
  bool saw = false;
  const json doc = r.doc();
  for (const auto& c : doc["checks"])
    if (c["name"] == "saturated_solids_are_hyperplane_solids") {
      saw = true;
      CHECK(c["pass"] == true);
      CHECK(c["detail"]["hyperplane_solids"] == 651);
    }
  CHECK(saw);
}

TEST_CASE("malformed flag files report the line") {
  const fs::path dir = tmp_dir();
  const std::string path = (dir / "broken.flags").string();
  {
    std::ofstream f(path);
    f << "q 2\nkind P_l\n5\n3\n";
  }
  auto r = run({"verify", path});
  CHECK(r.code == 2);
  CHECK(r.err.find("line 4") != std::string::npos);
  {
    std::ofstream f(path);
    f << "q 2\nwhat 1\n";
  }
  r = run({"verify", path});
  CHECK(r.code == 2);
  CHECK(r.err.find("line 2") != std::string::npos);

  std::istringstream in("q 2\nsize 3\n1\n2\n");
  CHECK_THROWS_AS(flagkneser::cli::read_flag_file(in), std::invalid_argument);
}

TEST_CASE("oracles through the command line") {
  auto r = run({"--no-timing", "oracle", "hilfslemma", "--q", "2", "--u", "2"});
  REQUIRE(r.code == 0);
  CHECK(r.doc()["results"][0]["count"] == 267);
  CHECK(r.doc()["results"][0]["pass"] == true);

  r = run({"--no-timing", "oracle", "a0b3", "--q", "2", "--sweeps", "3", "--seed", "7"});
  CHECK(r.code == 0);
  CHECK(r.doc()["summary"]["failed"] == 0);

  r = run({"--no-timing", "oracle", "skew-count", "--grid", "tiny", "--q", "2"});
  CHECK(r.code == 0);
  CHECK(r.doc()["summary"]["failed"] == 0);

  r = run({"oracle", "a0b3", "--q", "2", "--p1", "0;1,0,0,0,0,0,0", "--p2", "0;0,1,1,0,0,0,0", "--e1",
           "2;1,0,0,0,0,0,0;0,1,0,0,0,0,0;0,0,1,0,0,0,0", "--e2", "2;1,0,0,0,0,0,0;0,0,0,1,0,0,0;0,0,0,0,1,0,0",
           "--e3", "2;1,0,0,0,0,0,0;0,0,0,0,0,1,0;0,0,0,0,0,0,1"});
  CHECK(r.code == 2);
  CHECK(r.err.find("span") != std::string::npos);

  CHECK(run({"oracle", "nope", "--q", "2"}).code == 2);
}

TEST_CASE("colouring through the command line") {
  auto r = run({"--no-timing", "color", "--scheme", "trivial", "--q", "2"});
  CHECK(r.code == 0);
  CHECK(r.doc()["class_count"] == 31);
  r = run({"--no-timing", "color", "--scheme", "mi", "--q", "3", "--no-cover"});
  CHECK(r.code == 0);
  CHECK(r.doc()["class_count"] == 118);
}

TEST_CASE("export: refusal, header and byte-identical induced output") {
  const fs::path dir = tmp_dir();
  auto r = run({"export", "--format", "dimacs", "--q", "3"});
  CHECK(r.code == 2);
  CHECK(r.err.find("--confirm-size") != std::string::npos);
  r = run({"export", "--format", "dimacs", "--q", "2"});
  CHECK(r.code == 2);

  r = run({"--no-timing", "export", "--format", "dimacs", "--q", "2", "--header-only"});
  REQUIRE(r.code == 0);
  CHECK(r.doc()["header"] == "p edge 177165 2902671360");
  CHECK(r.doc()["match"] == true);

  const std::string small = (dir / "small.flags").string();
  {
    std::ofstream f(small);
    f << "q 2\n0\n1\n500\n40000\n177164\n";
  }
  const std::string a = (dir / "a.dimacs").string(), b = (dir / "b.dimacs").string();
  REQUIRE(run({"export", "--format", "dimacs", "--q", "2", "--induced", small, "--out", a}).code == 0);
  REQUIRE(run({"export", "--format", "dimacs", "--q", "2", "--induced", small, "--out", b}).code == 0);
  const std::string text = slurp(a);
  CHECK(text == slurp(b));
  CHECK(text.find("p edge 5 ") != std::string::npos);
}

TEST_CASE("manifest and timing-free reports are stable") {
  const fs::path d1 = tmp_dir() / "run1", d2 = tmp_dir() / "run2";
  fs::remove_all(d1);
  fs::remove_all(d2);
  for (const auto& d : {d1, d2})
    REQUIRE(run({"--no-timing", "--out-dir", d.string(), "oracle", "hilfslemma", "--q", "2", "--u", "1"}).code == 0);
  CHECK(fs::exists(d1 / "manifest.json"));
  CHECK(slurp(d1 / "oracle.json") == slurp(d2 / "oracle.json"));
  const json m = json::parse(slurp(d1 / "manifest.json"));
  CHECK(m["command"] == "oracle");
  CHECK(m["q"] == 2);
  CHECK(m["elapsed_ms"] == 0.0);
  CHECK_FALSE(m["tool_version"].get<std::string>().empty());
  CHECK(m["outputs"].size() == 2);

  const std::string csv = (tmp_dir() / "out.csv").string();
  REQUIRE(run({"--csv", csv, "count", "--q", "2", "flag_count"}).code == 0);
  CHECK(slurp(csv) == "formula,q,value\nflag_count,2,177165\n");
}
