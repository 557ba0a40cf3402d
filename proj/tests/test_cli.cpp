#include "cli.hpp"

#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = convexrelax::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

class Scratch {
 public:
  Scratch() {
    dir_ = fs::temp_directory_path() /
           ("convexrelax_cli_" + std::to_string(reinterpret_cast<std::uintptr_t>(this)) + "_" +
            std::to_string(counter_++));
    fs::create_directories(dir_);
  }
  ~Scratch() { fs::remove_all(dir_); }

  std::string write(const std::string& name, const std::string& text) const {
    const fs::path p = dir_ / name;
    std::ofstream(p) << text;
    return p.string();
  }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }
  static std::string read(const std::string& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }

 private:
  fs::path dir_;
  static inline int counter_ = 0;
};

std::string drop_column(const std::string& csv, const std::string& column) {
  std::istringstream in(csv);
  std::string line, result;
  int target = -1;
  bool header = true;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::stringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    if (header) {
      for (std::size_t i = 0; i < cells.size(); ++i) {
        if (cells[i] == column) target = static_cast<int>(i);
      }
      header = false;
    }
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (static_cast<int>(i) == target) continue;
      result += cells[i] + ",";
    }
    result += "\n";
  }
  return result;
}

}  // namespace

TEST_CASE("project round-trips a feasible point") {
  Scratch s;
  const auto body = s.write("b.json", R"({"variant":"l1_ball","dim":3,"radius":2})");
  const auto point = s.write("p.csv", "0.5\n-0.25\n1\n");
  const Result r = run({"project", "--body", body, "--point", point, "--out", s.path("o.csv")});
  CHECK(r.code == 0);
  CHECK(Scratch::read(s.path("o.csv")) == "0.5\n-0.25\n1\n");
}

TEST_CASE("project keeps matrix shape") {
  Scratch s;
  const auto body = s.write("b.json", R"({"variant":"elliptope","side":2})");
  const auto point = s.write("p.csv", "1,2\n2,1\n");
  const Result r = run({"project", "--body", body, "--point", point});
  REQUIRE(r.code == 0);
  // Dykstra stops at its iterate-change tolerance, so compare numerically.
  std::istringstream in(r.out);
  double a, b, c, d;
  char comma;
  in >> a >> comma >> b >> c >> comma >> d;
  CHECK(std::count(r.out.begin(), r.out.end(), '\n') == 2);
  for (double v : {a, b, c, d}) CHECK(v == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("bounds prints the formula value") {
  CHECK(run({"bounds", "--which", "nuclear", "--r", "1", "--m1", "10", "--m2", "10"}).out ==
        "57\n");
  CHECK(run({"bounds", "--which", "l1", "--s", "4", "--p", "100"}).out == "30.751006598945605\n");
  const Result cap = run({"bounds", "--which", "cap", "--p", "25", "--h", "0.4"});
  CHECK(cap.code == 0);
  CHECK(cap.out.rfind("lower,upper\n", 0) == 0);
}

TEST_CASE("exit codes") {
  Scratch s;
  SUBCASE("inapplicable bound is a domain error") {
    const Result r = run({"bounds", "--which", "vertex", "--v", "10", "--p", "100"});
    CHECK(r.code == 1);
    CHECK(r.err.find("vertex_transitive_bound") != std::string::npos);
  }
  SUBCASE("missing bound parameter is a usage error") {
    CHECK(run({"bounds", "--which", "l1", "--s", "4"}).code == 2);
  }
  SUBCASE("unknown subcommand and no subcommand") {
    CHECK(run({"frobnicate"}).code == 2);
    CHECK(run({}).code == 2);
  }
  SUBCASE("unknown config field is named") {
    const auto cfg = s.write("c.json", R"({"signal":{"example":"cut","m":3},
        "relaxation":"nuclear","n":2,"trials":10,"sigmaa":1})");
    const Result r = run({"risk", "--config", cfg, "--seed", "1"});
    CHECK(r.code == 2);
    CHECK(r.err.find("'sigmaa'") != std::string::npos);
  }
  SUBCASE("stochastic commands need a seed") {
    const auto cfg =
        s.write("c.json", R"({"signal":{"example":"cut","m":3},"relaxation":"nuclear"})");
    CHECK(run({"risk", "--config", cfg}).code == 2);
  }
  SUBCASE("infeasible anchor is a domain error") {
    const auto cfg = s.write("c.json", R"({"body":{"variant":"l1_ball","dim":2,"radius":1},
        "anchor":[1,1],"draws":10})");
    CHECK(run({"complexity", "--config", cfg, "--seed", "1"}).code == 1);
  }
  SUBCASE("malformed JSON and missing files are parse errors") {
    const auto cfg = s.write("c.json", R"({"body": )");
    CHECK(run({"complexity", "--config", cfg, "--seed", "1"}).code == 2);
    CHECK(run({"complexity", "--config", s.path("absent.json"), "--seed", "1"}).code == 2);
  }
  SUBCASE("dimension mismatch is a usage error") {
    const auto body = s.write("b.json", R"({"variant":"simplex","dim":3})");
    const auto point = s.write("p.csv", "1\n2\n");
    CHECK(run({"project", "--body", body, "--point", point}).code == 2);
  }
}

TEST_CASE("tradeoff emits the record header and plot data") {
  Scratch s;
  const auto cfg = s.write("ex1.json", R"({"example":"cut","m_grid":[3],
      "relaxations":["hull","elliptope","nuclear","euclidean"],"trials":40})");
  const Result r = run({"tradeoff", "--config", cfg, "--seed", "3", "--out", s.path("ex1.csv"),
                        "--plot-data", s.path("plot.csv")});
  REQUIRE(r.code == 0);
  const std::string csv = Scratch::read(s.path("ex1.csv"));
  CHECK(csv.rfind("example,relaxation,p,n_star,risk_hat,risk_se,agg_ops,proj_ops,wall_ms,seed\n",
                  0) == 0);
  const std::string plot = Scratch::read(s.path("plot.csv"));
  const std::string header = plot.substr(0, plot.find('\n'));
  CHECK(std::count(header.begin(), header.end(), ',') == 7);  // 4 series, 2 columns each

  const Result json = run({"tradeoff", "--config", cfg, "--seed", "3", "--format", "json"});
  CHECK(json.code == 0);
  CHECK(json.out.find("\"n_star\"") != std::string::npos);
}

TEST_CASE("same seed, same bytes (wall_ms excluded)") {
  Scratch s;
  const auto cfg = s.write("t.json", R"({"example":"matching","m_grid":[4],
      "relaxations":["hull","hypersimplex"],"trials":30})");
  const Result a = run({"tradeoff", "--config", cfg, "--seed", "17"});
  const Result b = run({"tradeoff", "--config", cfg, "--seed", "17"});
  const Result c = run({"tradeoff", "--config", cfg, "--seed", "18"});
  REQUIRE(a.code == 0);
  CHECK(drop_column(a.out, "wall_ms") == drop_column(b.out, "wall_ms"));
  CHECK(drop_column(a.out, "wall_ms") != drop_column(c.out, "wall_ms"));

  const auto risk = s.write("r.json", R"({"signal":{"example":"ordering","m":4},
      "relaxation":"l1","n":3,"trials":50})");
  CHECK(run({"risk", "--config", risk, "--seed", "5"}).out ==
        run({"risk", "--config", risk, "--seed", "5"}).out);
}
