#include "convexrelax/errors.hpp"
#include "convexrelax/io.hpp"

#include <doctest.h>

#include <cstdlib>
#include <sstream>

using namespace convexrelax;
using io::json;

TEST_CASE("numbers are written in shortest round-trip form") {
  CHECK(io::format_number(57.0) == "57");
  CHECK(io::format_number(0.1) == "0.1");
  CHECK(io::format_number(-2.5e-12) == "-2.5e-12");
  for (double x : {1.0 / 3.0, 12345.678901234567, 6.02214076e23, -0.0}) {
    CHECK(std::strtod(io::format_number(x).c_str(), nullptr) == x);
  }
}

TEST_CASE("csv vectors and matrices") {
  std::istringstream v("1\n-2.5\n3e-2\n");
  const io::CsvData dv = io::parse_csv(v);
  CHECK(dv.rows == 3);
  CHECK(dv.cols == 1);
  CHECK(dv.values[2] == 0.03);

  std::istringstream m("1,2,3\n4, 5 ,6\n\n");
  const io::CsvData dm = io::parse_csv(m);
  CHECK(dm.rows == 2);
  CHECK(dm.cols == 3);
  CHECK(dm.values[4] == 5.0);  // row-major

  std::ostringstream out;
  io::write_matrix_csv(out, dm.values, 2, 3);
  CHECK(out.str() == "1,2,3\n4,5,6\n");
  std::ostringstream vout;
  io::write_vector_csv(vout, dv.values);
  CHECK(vout.str() == "1\n-2.5\n0.03\n");

  std::istringstream ragged("1,2\n3\n");
  CHECK_THROWS_AS(io::parse_csv(ragged), ConfigError);
  std::istringstream junk("1\nabc\n");
  CHECK_THROWS_AS(io::parse_csv(junk), ConfigError);
  std::istringstream empty("\n");
  CHECK_THROWS_AS(io::parse_csv(empty), ConfigError);
}

TEST_CASE("body descriptors round-trip") {
  const std::vector<ConvexBody> bodies{
      ConvexBody::euclidean_ball(3, 1.5), ConvexBody::l1_ball(4, 2.0), ConvexBody::simplex(5),
      ConvexBody::hypersimplex(6, 2, 0.5), ConvexBody::nuclear_ball(2, 3, 1.0),
      ConvexBody::elliptope(3),
      ConvexBody::vertex_hull(std::vector<Vector>{Vector::Ones(2), Vector::Zero(2)})};
  for (const ConvexBody& b : bodies) {
    CAPTURE(b.kind());
    const json j = io::to_json(b);
    CHECK(j.at("variant") == std::string(b.kind()));
    const ConvexBody back = io::body_from_json(json::parse(j.dump()));
    CHECK(back.kind() == b.kind());
    CHECK(back.ambient_dim() == b.ambient_dim());
    CHECK(io::to_json(back) == j);
  }
}

TEST_CASE("body parsing is strict") {
  auto message = [](const std::string& text) {
    try {
      (void)io::body_from_json(json::parse(text));
    } catch (const ConfigError& e) {
      return std::string(e.what());
    }
    return std::string("no error");
  };
  CHECK(message(R"({"variant":"l1_ball","dim":3,"radius":1,"radus":2})").find("'radus'") !=
        std::string::npos);
  CHECK(message(R"({"variant":"l1_ball","dim":3})").find("'radius'") != std::string::npos);
  CHECK(message(R"({"variant":"cube","dim":3})").find("cube") != std::string::npos);
  CHECK(message(R"({"variant":"simplex","dim":2.5})").find("integer") != std::string::npos);
  CHECK(message(R"({"variant":"euclidean_ball","dim":3,"radius":-1})") != "no error");
  CHECK(message(R"([1,2])") != "no error");
}

TEST_CASE("signal and trial configs") {
  const SignalSet s = io::signal_from_json(json::parse(R"({"example":"sparse_pca","m":9,"k":2})"));
  CHECK(std::get<SparsePcaBlock>(s.variant()).k == 2);
  CHECK_THROWS_AS(io::signal_from_json(json::parse(R"({"example":"cut","m":4,"k":2})")),
                  ConfigError);
  CHECK_THROWS_AS(io::signal_from_json(json::parse(R"({"example":"matching","m":5})")),
                  ConfigError);

  const json cfg = json::parse(R"({"signal":{"example":"cut","m":4},"relaxation":"nuclear",
                                   "sigma":0.5,"n":7,"trials":30})");
  CHECK_THROWS_AS(io::denoise_config_from_json(cfg), ConfigError);  // no seed
  const DenoiseTrialConfig c = io::denoise_config_from_json(cfg, 11);
  CHECK(c.body.kind() == "nuclear_ball");
  CHECK(c.sigma == 0.5);
  CHECK(c.n == 7);
  CHECK(c.trials == 30);
  CHECK(c.seed == 11);
  const json round = io::to_json(c);
  CHECK(io::denoise_config_from_json(round).seed == 11);

  json bad = cfg;
  bad["trails"] = 3;
  try {
    (void)io::denoise_config_from_json(bad, 1);
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("'trails'") != std::string::npos);
  }
}

TEST_CASE("tradeoff configs") {
  const json j = json::parse(R"({"example":"cut","m_grid":[4,6],"relaxations":["nuclear"],
                                 "trials":50,"seed":2})");
  const ExampleRun run = io::example_run_from_json(j);
  CHECK(run.p_grid == std::vector<int>{16, 36});
  CHECK(run.search.trials == 50);
  CHECK(run.search.seed == 2);
  CHECK(io::example_run_from_json(j, 9).search.seed == 9);

  json both = j;
  both["p_grid"] = json::array({16});
  CHECK_THROWS_AS(io::example_run_from_json(both), ConfigError);
  json extra = j;
  extra["colour"] = "red";
  CHECK_THROWS_WITH_AS(io::example_run_from_json(extra),
                       doctest::Contains("'colour'"), ConfigError);
}

TEST_CASE("estimate JSON uses the documented field names") {
  const json c = io::to_json(ComplexityEstimate{5.0, 0.1, 2000, 7});
  CHECK(c.dump() == R"({"mean":5.0,"std_error":0.1,"draws":2000,"seed":7})");
  const json r = io::to_json(RiskEstimate{0.9, 0.05, 200});
  CHECK(r.dump() == R"({"mse":0.9,"std_error":0.05,"trials":200})");
}

namespace {
TradeoffRecord record(std::string example, std::string relaxation, int p, int n) {
  TradeoffRecord r;
  r.example = std::move(example);
  r.relaxation = std::move(relaxation);
  r.p = p;
  r.n_star = n;
  r.risk_hat = 0.5;
  r.risk_se = 0.125;
  r.agg_ops = static_cast<std::int64_t>(n) * p;
  r.proj_ops = 10;
  r.wall_ms = 0.25;
  r.seed = 4;
  return r;
}
}  // namespace

TEST_CASE("record CSV and JSON share the exact column names") {
  const std::vector<TradeoffRecord> rs{record("cut", "hull", 16, 3)};
  std::ostringstream csv;
  io::write_records_csv(csv, rs);
  CHECK(csv.str() ==
        "example,relaxation,p,n_star,risk_hat,risk_se,agg_ops,proj_ops,wall_ms,seed\n"
        "cut,hull,16,3,0.5,0.125,48,10,0.25,4\n");
  const json j = io::records_to_json(rs);
  std::vector<std::string> keys;
  for (const auto& item : j.at(0).items()) keys.push_back(item.key());
  CHECK(keys == io::record_columns());
}

TEST_CASE("plot data") {
  SUBCASE("one record gives one row") {
    const std::vector<TradeoffRecord> rs{record("cut", "hull", 16, 3)};
    const io::PlotTable t = io::emit_plot_data(rs);
    CHECK(t.rows == 1);
    REQUIRE(t.series.size() == 1);
    CHECK(t.series[0].total_ops[0] == 58);
    std::ostringstream out;
    io::write_plot_csv(out, t);
    CHECK(out.str() == "cut:hull:n_star,cut:hull:total_ops\n3,58\n");
  }
  SUBCASE("sorted regardless of input order") {
    const std::vector<TradeoffRecord> a{record("cut", "nuclear", 64, 20), record("cut", "hull", 16, 3),
                                        record("cut", "nuclear", 16, 9)};
    const std::vector<TradeoffRecord> b{a[2], a[0], a[1]};
    std::ostringstream oa, ob;
    io::write_plot_csv(oa, io::emit_plot_data(a));
    io::write_plot_csv(ob, io::emit_plot_data(b));
    CHECK(oa.str() == ob.str());
    const io::PlotTable t = io::emit_plot_data(a);
    CHECK(t.series[0].relaxation == "hull");
    CHECK(t.series[1].p == std::vector<int>{16, 64});
    CHECK(oa.str() ==
          "cut:hull:n_star,cut:hull:total_ops,cut:nuclear:n_star,cut:nuclear:total_ops\n"
          "3,58,9,154\n"
          ",,20,1290\n");
  }
  SUBCASE("empty input is an error") {
    CHECK_THROWS_AS(io::emit_plot_data({}), std::invalid_argument);
  }
}
