#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(FOCKCERT_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  std::string out;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, p)) > 0) out.append(buf, n);
  const int status = pclose(p);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / "fockcert_cli_test";
  fs::create_directories(dir);
  return dir / name;
}

std::vector<std::vector<std::string>> csv_rows(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ls(line);
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    rows.push_back(cells);
  }
  return rows;
}

}  // namespace

TEST_CASE("bound values") {
  CHECK(run("bound --space X01").out == "0.857764\n");
  CHECK(run("bound --space X12").out == "0.579709\n");
  CHECK(run("bound --space X02").out == "0.520260\n");
  const auto r = run("bound --space P0,X01 --at P0=1");
  CHECK(r.code == 0);
  CHECK(std::stod(r.out) == 0.0);
  CHECK(std::stod(run("bound --space P0,X01 --at P0=0.2").out) == doctest::Approx(0.5074).epsilon(1e-4));
  CHECK(run("bound --space P0,P1,P2").code == 2);
}

TEST_CASE("certify exit codes") {
  CHECK(run("certify --space P0,X01 --values 0.2,0.6").code == 10);
  CHECK(run("certify --space X01 --values 0.5").code == 0);
  CHECK(run("certify --space P0,P1 --values 0.6,0.6").code == 11);
  CHECK(run("certify --space P0,X01 --values 0.2").code == 2);
  CHECK(run("certify --space Q7 --values 0.2").code == 2);
  CHECK(run("frobnicate").code == 2);

  const auto bad = scratch("bad.json");
  std::ofstream(bad) << "{\"space\": \"P0,X01\", \"values\": [0.2,";
  CHECK(run("certify --input " + bad.string()).code == 2);
  CHECK(run("certify --input " + scratch("missing.json").string()).code == 2);
}

TEST_CASE("certify JSON output") {
  const auto in = scratch("in.json");
  const auto out = scratch("out.json");
  std::ofstream(in) << R"({"space": "P0,X01", "values": [0.2, 0.6]})";
  CHECK(run("certify --input " + in.string() + " --out " + out.string()).code == 10);
  const auto j = nlohmann::json::parse(slurp(out));
  for (const char* key : {"space", "values", "verdict", "margin", "direction", "h_classical", "criterion"}) {
    CAPTURE(key);
    CHECK(j.contains(key));
  }
  CHECK(j["verdict"] == "nonclassical");
  CHECK(j["direction"].size() == 2);
  CHECK(j["margin"].get<double>() > 0.0);
}

TEST_CASE("support command") {
  const auto r = run("support --space P0,P1 --direction 0,1");
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["h_classical"].get<double>() == doctest::Approx(std::exp(-1.0)).epsilon(1e-9));
  CHECK(j["h_quantum"].get<double>() == doctest::Approx(1.0));
}

TEST_CASE("sweep output is deterministic") {
  const auto a = scratch("a.csv");
  const auto b = scratch("b.csv");
  const std::string args = "sweep --family zero-one --space P0,X01 --T 0:1:11 --nbar 0:0.4:3 --out ";
  CHECK(run("--seed 7 " + args + a.string()).code == 0);
  CHECK(run("--seed 7 " + args + b.string()).code == 0);
  const auto text = slurp(a);
  CHECK(text == slurp(b));
  const auto rows = csv_rows(text);
  REQUIRE(rows.size() == 34);
  CHECK(rows[0] == std::vector<std::string>{"family", "space", "T", "nbar", "margin", "verdict"});
  CHECK(rows[1][1] == "\"P0");  // quoted space cell
  CHECK(rows[1].back() == "classical-compatible");
  CHECK(rows[11].back() == "nonclassical");
}

TEST_CASE("coherent curve in (P0, P1) lies on P1 = P0 ln(1/P0)") {
  const auto r = run("curve --family coherent --space P0,P1 --samples 50 --mu-max 4");
  REQUIRE(r.code == 0);
  const auto rows = csv_rows(r.out);
  REQUIRE(rows.size() == 51);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const double p0 = std::stod(rows[i][1]);
    const double p1 = std::stod(rows[i][2]);
    CHECK(std::abs(p1 - p0 * std::log(1.0 / p0)) < 1e-11);
    CHECK(rows[i][3] == "classical-compatible");
  }
}

TEST_CASE("coherent curve in (P1, P2) satisfies its implicit relation") {
  const auto r = run("curve --family coherent --space P1,P2 --samples 40 --mu-max 5");
  REQUIRE(r.code == 0);
  const auto rows = csv_rows(r.out);
  for (std::size_t i = 2; i < rows.size(); ++i) {
    const double p1 = std::stod(rows[i][1]);
    const double p2 = std::stod(rows[i][2]);
    const double rel = 2.0 * p2 / (p1 * p1) * std::exp(-2.0 * p2 / p1);
    CHECK(std::abs(rel - 1.0) < 1e-10);
  }
}

TEST_CASE("zero-one trajectory runs from the vacuum to the plus state") {
  const auto r = run("curve --family zero-one --space P0,X01 --samples 11");
  REQUIRE(r.code == 0);
  const auto rows = csv_rows(r.out);
  REQUIRE(rows.size() == 12);
  CHECK(std::stod(rows[1][1]) == doctest::Approx(1.0));
  CHECK(std::stod(rows[1][2]) == doctest::Approx(0.0));
  CHECK(std::stod(rows[11][1]) == doctest::Approx(0.5));
  CHECK(std::stod(rows[11][2]) == doctest::Approx(1.0));
  CHECK(rows[11][3] == "nonclassical");
  CHECK(rows[1][3] == "classical-compatible");
}

TEST_CASE("threshold command") {
  const auto r = run("threshold --family zero-one --space P0,X01");
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["found"] == true);
  CHECK(j["critical"].get<double>() == doctest::Approx(0.733).epsilon(0.01));
}
