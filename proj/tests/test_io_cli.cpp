#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"
#include "spider/cli.hpp"
#include "spider/io.hpp"

using namespace spider;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("spider_test_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::vector<std::vector<std::string>> read_csv(const fs::path& p) {
  std::ifstream in(p);
  std::vector<std::vector<std::string>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    rows.push_back(cells);
  }
  return rows;
}

int run(std::vector<std::string> args, std::string* err_text = nullptr) {
  args.insert(args.begin(), "spider");
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  if (err_text) *err_text = err.str();
  return code;
}

std::size_t occurrences(const std::string& text, const std::string& needle) {
  std::size_t count = 0;
  for (auto pos = text.find(needle); pos != std::string::npos; pos = text.find(needle, pos + 1)) ++count;
  return count;
}

}  // namespace

TEST_CASE("double formatting round-trips") {
  for (double x : {0.1, 1.0 / 3.0, 1e-300, 123456789.125, 0.0}) {
    CHECK(std::stod(format_double(x)) == x);
  }
  CHECK(format_double(INFINITY) == "inf");
}

TEST_CASE("CSV fields are quoted only when needed") {
  CHECK(csv_field("abc") == "abc");
  CHECK(csv_field("a,b") == "\"a,b\"");
  CHECK(csv_field("say \"hi\"") == "\"say \"\"hi\"\"\"");
}

TEST_CASE("sample command writes simplex rows and a sidecar") {
  const auto dir = scratch("sample");
  const auto csv = dir / "occ.csv";
  REQUIRE(run({"sample", "--law", "occupation", "--n", "3", "--count", "1000", "--seed", "42",
               "--out", csv.string(), "--deterministic"}) == kExitOk);
  const auto rows = read_csv(csv);
  REQUIRE(rows.size() == 1001);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    REQUIRE(rows[i].size() == 3);
    const double sum = std::stod(rows[i][0]) + std::stod(rows[i][1]) + std::stod(rows[i][2]);
    REQUIRE(std::abs(sum - 1.0) <= 1e-12);
  }
  const auto side = nlohmann::json::parse(slurp(dir / "occ.json"));
  CHECK(side["seed"] == 42);
  CHECK(side["n_samples"] == 1000);
  const auto manifest = nlohmann::json::parse(slurp(dir / "occ.manifest.json"));
  CHECK(manifest["command"] == "sample");
  for (const auto& f : manifest["outputs"]) CHECK(fs::file_size(f.get<std::string>()) > 0);
}

TEST_CASE("sample output is byte-identical across reruns and thread counts") {
  const auto dir = scratch("repro");
  const std::vector<std::string> base = {"sample", "--law", "ratio-a", "--mu", "0.3", "--count",
                                         "5000", "--seed", "7", "--deterministic"};
  auto a = base, b = base;
  a.insert(a.end(), {"--out", (dir / "a.csv").string(), "--threads", "1"});
  b.insert(b.end(), {"--out", (dir / "b.csv").string(), "--threads", "3"});
  REQUIRE(run(a) == kExitOk);
  REQUIRE(run(b) == kExitOk);
  CHECK(slurp(dir / "a.csv") == slurp(dir / "b.csv"));
  CHECK(slurp(dir / "a.json") == slurp(dir / "b.json"));
}

TEST_CASE("usage errors exit with code 2") {
  const auto dir = scratch("usage");
  std::string err;
  CHECK(run({"sample", "--count", "0", "--out", (dir / "x.csv").string()}, &err) == kExitUsage);
  CHECK(err.find("count") != std::string::npos);
  CHECK(run({"sample", "--law", "nope", "--out", (dir / "x.csv").string()}) == kExitUsage);
  CHECK(run({"sample", "--law", "ratio-a", "--mu", "1.5", "--out", (dir / "x.csv").string()}) ==
        kExitUsage);
  CHECK(run({"verify", "--suite", "bogus"}) == kExitUsage);
  CHECK(run({"figure1", "--mu", "0.5,1.2", "--out", (dir / "f").string()}) == kExitUsage);
  CHECK(run({"figure2", "--n", "1,3", "--out", (dir / "f").string()}) == kExitUsage);
  CHECK(run({"frobnicate"}) == kExitUsage);
  CHECK(run({"sample", "--count", "10", "--out", "/proc/definitely/not/here.csv"}) == kExitUsage);
}

TEST_CASE("figure1 emits one curve file per mu and a deterministic SVG") {
  const auto dir = scratch("fig1");
  const std::vector<double> mus = {0.1, 0.5, 0.9};
  const auto m1 = cmd_figure1(mus, 199, dir / "a" / "fig", true);
  const auto m2 = cmd_figure1(mus, 199, dir / "b" / "fig", true);
  const std::string svg = slurp(dir / "a" / "fig.svg");
  CHECK(svg == slurp(dir / "b" / "fig.svg"));
  CHECK(occurrences(svg, "<path ") == 3);
  CHECK(svg.find("<svg") != std::string::npos);
  CHECK(svg.find("</svg>") != std::string::npos);
  CHECK(slurp(dir / "a" / "fig_mu0.5.csv") == slurp(dir / "b" / "fig_mu0.5.csv"));
  const auto rows = read_csv(dir / "a" / "fig_mu0.5.csv");
  REQUIRE(rows.size() == 202);
  CHECK(rows[0] == std::vector<std::string>{"z", "pdf", "cdf"});
  CHECK(rows[1][1] == "inf");
  CHECK(m1.outputs.size() == m2.outputs.size());
}

TEST_CASE("non-deterministic SVG carries a timestamp comment") {
  const auto dir = scratch("fig2");
  const std::vector<int> ns = {2, 8};
  cmd_figure2(ns, 99, dir / "fig", false);
  CHECK(slurp(dir / "fig.svg").find("<!--") != std::string::npos);
  cmd_figure2(ns, 99, dir / "det", true);
  CHECK(slurp(dir / "det.svg").find("<!--") == std::string::npos);
}

TEST_CASE("simulate writes one row per path") {
  const auto dir = scratch("simulate");
  const auto csv = dir / "paths.csv";
  REQUIRE(run({"simulate", "--n", "3", "--steps", "1000", "--paths", "20", "--seed", "3", "--out",
               csv.string(), "--deterministic"}) == kExitOk);
  const auto rows = read_csv(csv);
  REQUIRE(rows.size() == 21);
  CHECK(rows[0][0] == "path_id");
  REQUIRE(run({"simulate", "--n", "3", "--steps", "1000", "--paths", "20", "--rule",
               "inverse-local-time", "--out", (dir / "stop.csv").string()}) == kExitOk);
  CHECK(read_csv(dir / "stop.csv").size() == 21);
}

TEST_CASE("verify writes JSON lines and reports success") {
  const auto dir = scratch("verify");
  const auto out = dir / "cor.jsonl";
  REQUIRE(run({"verify", "--suite", "corollary", "--out", out.string()}) == kExitOk);
  std::ifstream in(out);
  std::string line;
  int lines = 0;
  while (std::getline(in, line)) {
    const auto j = nlohmann::json::parse(line);
    CHECK(j["verdict"] == "pass");
    ++lines;
  }
  CHECK(lines == 9);
}

TEST_CASE("SPIDER_SEED is the seed fallback") {
  const auto dir = scratch("env");
  setenv("SPIDER_SEED", "777", 1);
  REQUIRE(run({"sample", "--count", "20", "--out", (dir / "e.csv").string()}) == kExitOk);
  unsetenv("SPIDER_SEED");
  const auto manifest = nlohmann::json::parse(slurp(dir / "e.manifest.json"));
  CHECK(manifest["seed"] == 777);
}
