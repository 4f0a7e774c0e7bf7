#include "cli.hpp"

#include <doctest.h>
#include <nlohmann/json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run edr_run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = edr::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("edr_cli_test_" + std::to_string(::getpid()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string file(const std::string& name, const std::string& content = "") const {
    auto p = path / name;
    if (!content.empty()) std::ofstream(p) << content;
    return p.string();
  }
};

json load(const std::string& path) {
  std::ifstream f(path);
  return json::parse(f);
}

}  // namespace

TEST_CASE("reduce writes a certificate and verifies it") {
  TempDir t;
  auto m = t.file("m.json", R"({"ring":"Z","rows":[["2","4"],["6","8"]]})");
  auto c = t.file("c.json");
  auto r = edr_run({"reduce", m, "--out", c});
  CHECK(r.code == 0);
  CHECK(r.out.find("D = diag(2, 4)") != std::string::npos);
  CHECK(r.out.find("chain: 2 | 4") != std::string::npos);
  auto cert = load(c);
  CHECK(cert["verified"] == true);
  CHECK(cert["D"] == json::parse(R"([["2","0"],["0","4"]])"));
  CHECK(edr_run({"reduce", m, "--verify", c}).code == 0);
}

TEST_CASE("reduce accepts numeric entries and the identity") {
  TempDir t;
  auto m = t.file("m.json", R"({"ring":"Zn:6","rows":[[1,0],[0,1]]})");
  auto r = edr_run({"reduce", m});
  CHECK(r.code == 0);
  CHECK(json::parse(r.out)["D"] == json::parse(R"([["1","0"],["0","1"]])"));
}

TEST_CASE("tampered certificates fail verification") {
  TempDir t;
  auto m = t.file("m.json", R"({"ring":"Z","rows":[["2","4"],["6","8"]]})");
  auto c = t.file("c.json");
  REQUIRE(edr_run({"reduce", m, "--out", c}).code == 0);
  auto cert = load(c);
  cert["D"] = json::parse(R"([["4","0"],["0","2"]])");
  auto bad = t.file("bad.json", cert.dump());
  CHECK(edr_run({"reduce", m, "--verify", bad}).code == 1);
}

TEST_CASE("reduce over the non-Bezout ring exits with the witness") {
  TempDir t;
  auto m = t.file("m.json", R"({"ring":"table:builtin/nonbezout8","rows":[["u","v"],["0","0"]]})");
  auto r = edr_run({"reduce", m});
  CHECK(r.code == 3);
  CHECK(json::parse(r.out)["witness"]["pair"] == json::parse(R"(["u","v"])"));
}

TEST_CASE("parse problems exit with 2") {
  TempDir t;
  CHECK(edr_run({}).code == 2);
  CHECK(edr_run({"reduce"}).code == 2);
  CHECK(edr_run({"classify", "Zn:12", "--bogus"}).code == 2);
  CHECK(edr_run({"classify", "Zn:0"}).code == 2);
  CHECK(edr_run({"reduce", t.file("missing.json")}).code == 2);
  CHECK(edr_run({"reduce", t.file("broken.json", "{")}).code == 2);
  CHECK(edr_run({"adequate", "Z", "1", "2", "--variant", "other"}).code == 2);
}

TEST_CASE("classify reports and re-verifies") {
  TempDir t;
  auto out = t.file("r.json");
  CHECK(edr_run({"classify", "Zn:12", "--out", out}).code == 0);
  auto rep = load(out);
  CHECK(rep["predicates"]["feckly_zero_adequate"]["verdict"] == true);
  CHECK(rep["predicates"]["clean"]["verdict"] == true);
  CHECK(edr_run({"classify", "--verify", out}).code == 0);

  rep["predicates"]["bezout"]["verdict"] = false;
  rep["predicates"]["bezout"]["counterexample"] = {{"a", "2"}, {"b", "3"}, {"ideal", {"0"}}};
  auto bad = t.file("bad.json", rep.dump());
  CHECK(edr_run({"classify", "--verify", bad}).code == 1);
}

TEST_CASE("classify structured and non-Bezout rings") {
  auto l = edr_run({"classify", "zloc:{3,5}"});
  CHECK(l.code == 0);
  auto lj = json::parse(l.out);
  CHECK(lj["predicates"]["feckly_zero_adequate"]["verdict"] == true);
  CHECK(lj["predicates"]["zero_adequate"]["note"] == "paper-asserted false, untested");

  auto n = json::parse(edr_run({"classify", "table:builtin/nonbezout8"}).out);
  CHECK(n["predicates"]["bezout"]["verdict"] == false);
  CHECK(n["predicates"]["bezout"]["counterexample"]["ideal"].size() == 4);
}

TEST_CASE("classify refuses oversized rings") { CHECK(edr_run({"classify", "Zn:5000"}).code == 4); }

TEST_CASE("quotients export to the table format") {
  TempDir t;
  auto tab = t.file("q.json");
  CHECK(edr_run({"classify", "quot(Zn:12,4)", "--export-table", tab, "--out", t.file("r.json")}).code == 0);
  auto doc = load(tab);
  CHECK(doc["size"] == 4);
  auto r = edr_run({"classify", "table:" + tab});
  CHECK(r.code == 0);
  CHECK(json::parse(r.out)["predicates"]["feckly_zero_adequate"]["verdict"] == true);
}

TEST_CASE("adequate witnesses per ring kind") {
  auto z = json::parse(edr_run({"adequate", "Z", "12", "10"}).out);
  CHECK(z["witness"]["r"] == "3");
  CHECK(z["witness"]["s"] == "4");

  auto f = edr_run({"adequate", "Zn:12", "0", "5", "--variant", "feckly"});
  CHECK(f.code == 0);
  CHECK(json::parse(f.out)["adequate"] == true);

  TempDir t;
  auto w = t.file("w.json");
  CHECK(edr_run({"adequate", "dualint", "12+1/2 x", "10+0 x", "--out", w}).code == 0);
  CHECK(load(w)["witness"]["s"] == "3+1/2 x");
  CHECK(load(w)["witness"]["t"] == "4-1/2 x");
  CHECK(edr_run({"adequate", "--verify", w}).code == 0);

  auto doc = load(w);
  doc["witness"]["t"] = "4+1/2 x";
  CHECK(edr_run({"adequate", "--verify", t.file("bad.json", doc.dump())}).code == 1);
}

TEST_CASE("unsupported adequacy inputs exit with 5") {
  CHECK(edr_run({"adequate", "dualint", "0+1 x", "3"}).code == 5);
  CHECK(edr_run({"adequate", "Z", "0", "3"}).code == 5);
  CHECK(edr_run({"adequate", "polyq:0:x^2-1", "1", "1"}).code == 5);
}

TEST_CASE("check-theorems runs a filtered corpus and reproduces it") {
  TempDir t;
  auto out = t.file("rep.json");
  auto r = edr_run({"check-theorems", "--rings", "Zn:12;Zn:7", "--checks", "T2.5,E2.10,L3.7", "--out", out, "--table"});
  CHECK(r.code == 0);
  CHECK(r.out.find("T2.5") != std::string::npos);
  auto rep = load(out);
  CHECK(rep["results"].size() == 3);
  CHECK(edr_run({"check-theorems", "--verify", out}).code == 0);
  rep["summary"]["pass"] = 0;
  CHECK(edr_run({"check-theorems", "--verify", t.file("bad.json", rep.dump())}).code == 1);
}

TEST_CASE("case study prints both quotients") {
  auto r = edr_run({"case-study", "zalpha", "--table"});
  CHECK(r.code == 0);
  CHECK(r.out.find("sign discrepancy: yes") != std::string::npos);
  auto j = json::parse(edr_run({"case-study"}).out);
  CHECK(j["sign_discrepancy"] == true);
  CHECK(edr_run({"case-study", "other"}).code == 2);
}

TEST_CASE("atomic writes leave no temp file behind") {
  TempDir t;
  auto p = t.file("x.txt");
  edr::cli::write_atomic(p, "hello");
  std::ifstream f(p);
  std::string s;
  f >> s;
  CHECK(s == "hello");
  std::size_t files = 0;
  for ([[maybe_unused]] const auto& e : fs::directory_iterator(t.path)) ++files;
  CHECK(files == 1);
}
