#include "convexrelax/io.hpp"

#include "convexrelax/errors.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <tuple>

namespace convexrelax::io {
namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

double parse_double(const std::string& token, int line) {
  double value = 0.0;
  const char* begin = token.data();
  const char* end = begin + token.size();
  if (!token.empty() && *begin == '+') ++begin;
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end || token.empty()) {
    throw ConfigError("csv line " + std::to_string(line) + ": not a number: '" + token + "'");
  }
  return value;
}

// ── Strict JSON helpers ─────────────────────────────────────────────

void check_keys(const json& j, std::string_view where,
                std::initializer_list<std::string_view> required,
                std::initializer_list<std::string_view> optional = {}) {
  if (!j.is_object()) throw ConfigError(std::string(where) + ": expected a JSON object");
  for (const auto& [key, value] : j.items()) {
    const bool known = std::find(required.begin(), required.end(), key) != required.end() ||
                       std::find(optional.begin(), optional.end(), key) != optional.end();
    if (!known) throw ConfigError(std::string(where) + ": unknown field '" + key + "'");
  }
  for (std::string_view key : required) {
    if (!j.contains(key)) {
      throw ConfigError(std::string(where) + ": missing field '" + std::string(key) + "'");
    }
  }
}

const json& field(const json& j, std::string_view key) { return j.at(std::string(key)); }

double get_double(const json& j, std::string_view key, std::string_view where) {
  const json& v = field(j, key);
  if (!v.is_number()) {
    throw ConfigError(std::string(where) + ": field '" + std::string(key) + "' must be a number");
  }
  return v.get<double>();
}

std::int64_t get_int(const json& j, std::string_view key, std::string_view where) {
  const json& v = field(j, key);
  if (!v.is_number_integer()) {
    throw ConfigError(std::string(where) + ": field '" + std::string(key) +
                      "' must be an integer");
  }
  return v.get<std::int64_t>();
}

int get_int32(const json& j, std::string_view key, std::string_view where) {
  const std::int64_t v = get_int(j, key, where);
  if (v < std::numeric_limits<int>::min() || v > std::numeric_limits<int>::max()) {
    throw ConfigError(std::string(where) + ": field '" + std::string(key) + "' out of range");
  }
  return static_cast<int>(v);
}

std::string get_string(const json& j, std::string_view key, std::string_view where) {
  const json& v = field(j, key);
  if (!v.is_string()) {
    throw ConfigError(std::string(where) + ": field '" + std::string(key) + "' must be a string");
  }
  return v.get<std::string>();
}

Vector get_vector(const json& v, std::string_view what) {
  if (!v.is_array()) throw ConfigError(std::string(what) + " must be an array of numbers");
  Vector out(static_cast<Eigen::Index>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!v[i].is_number()) throw ConfigError(std::string(what) + " must be an array of numbers");
    out[static_cast<Eigen::Index>(i)] = v[i].get<double>();
  }
  return out;
}

json vector_json(const Vector& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v[i]);
  return out;
}

// Library factories report bad parameters as std::invalid_argument; in a
// config they are config errors.
template <class F>
auto as_config(std::string_view where, F&& f) {
  try {
    return f();
  } catch (const ConfigError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string(where) + ": " + e.what());
  }
}

std::optional<std::int64_t> resolve_seed(const json& j, std::optional<std::int64_t> override_,
                                         std::string_view where) {
  if (override_) return override_;
  if (j.contains("seed")) return get_int(j, "seed", where);
  return std::nullopt;
}

}  // namespace

// ── CSV ─────────────────────────────────────────────────────────────

std::string format_number(double value) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  (void)ec;
  return std::string(buf, ptr);
}

CsvData parse_csv(std::istream& in) {
  std::vector<double> values;
  int rows = 0;
  int cols = -1;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string stripped = trim(line);
    if (stripped.empty()) continue;
    int count = 0;
    std::size_t start = 0;
    while (true) {
      const std::size_t comma = stripped.find(',', start);
      const std::string token = trim(std::string_view(stripped).substr(
          start, comma == std::string::npos ? std::string::npos : comma - start));
      values.push_back(parse_double(token, line_no));
      ++count;
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    if (cols >= 0 && count != cols) {
      throw ConfigError("csv line " + std::to_string(line_no) + ": expected " +
                        std::to_string(cols) + " values, found " + std::to_string(count));
    }
    cols = count;
    ++rows;
  }
  if (rows == 0) throw ConfigError("csv: no data");
  CsvData out;
  out.values = Eigen::Map<const Vector>(values.data(), static_cast<Eigen::Index>(values.size()));
  out.rows = rows;
  out.cols = cols;
  return out;
}

CsvData read_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open '" + path.string() + "'");
  try {
    return parse_csv(in);
  } catch (const ConfigError& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
}

void write_vector_csv(std::ostream& out, const Vector& v) {
  for (Eigen::Index i = 0; i < v.size(); ++i) out << format_number(v[i]) << '\n';
}

void write_matrix_csv(std::ostream& out, const Vector& flat, int rows, int cols) {
  if (static_cast<Eigen::Index>(rows) * cols != flat.size()) {
    throw std::invalid_argument("write_matrix_csv: shape does not match value count");
  }
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      if (c > 0) out << ',';
      out << format_number(flat[static_cast<Eigen::Index>(r) * cols + c]);
    }
    out << '\n';
  }
}

// ── Bodies ──────────────────────────────────────────────────────────

ConvexBody body_from_json(const json& j) {
  if (!j.is_object() || !j.contains("variant")) throw ConfigError("body: missing field 'variant'");
  const std::string variant = get_string(j, "variant", "body");
  const std::string where = "body (" + variant + ")";
  return as_config(where, [&]() -> ConvexBody {
    if (variant == "euclidean_ball") {
      check_keys(j, where, {"variant", "dim", "radius"});
      return ConvexBody::euclidean_ball(get_int32(j, "dim", where), get_double(j, "radius", where));
    }
    if (variant == "l1_ball") {
      check_keys(j, where, {"variant", "dim", "radius"});
      return ConvexBody::l1_ball(get_int32(j, "dim", where), get_double(j, "radius", where));
    }
    if (variant == "simplex") {
      check_keys(j, where, {"variant", "dim"});
      return ConvexBody::simplex(get_int32(j, "dim", where));
    }
    if (variant == "hypersimplex") {
      check_keys(j, where, {"variant", "dim", "k"}, {"scale"});
      const double scale = j.contains("scale") ? get_double(j, "scale", where) : 1.0;
      return ConvexBody::hypersimplex(get_int32(j, "dim", where), get_int32(j, "k", where), scale);
    }
    if (variant == "nuclear_ball") {
      check_keys(j, where, {"variant", "rows", "cols", "radius"});
      return ConvexBody::nuclear_ball(get_int32(j, "rows", where), get_int32(j, "cols", where),
                                      get_double(j, "radius", where));
    }
    if (variant == "elliptope") {
      check_keys(j, where, {"variant", "side"});
      return ConvexBody::elliptope(get_int32(j, "side", where));
    }
    if (variant == "vertex_hull") {
      check_keys(j, where, {"variant", "vertices"});
      const json& vs = field(j, "vertices");
      if (!vs.is_array() || vs.empty()) throw ConfigError(where + ": 'vertices' must be a list");
      std::vector<Vector> vertices;
      for (const json& v : vs) vertices.push_back(get_vector(v, where + " vertex"));
      return ConvexBody::vertex_hull(vertices);
    }
    throw ConfigError("body: unknown variant '" + variant + "'");
  });
}

json to_json(const ConvexBody& body) {
  json j;
  j["variant"] = std::string(body.kind());
  std::visit(
      [&](const auto& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, EuclideanBall> || std::is_same_v<T, L1Ball>) {
          j["dim"] = body.ambient_dim();
          j["radius"] = v.radius;
        } else if constexpr (std::is_same_v<T, Simplex>) {
          j["dim"] = body.ambient_dim();
        } else if constexpr (std::is_same_v<T, Hypersimplex>) {
          j["dim"] = body.ambient_dim();
          j["k"] = v.k;
          j["scale"] = v.scale;
        } else if constexpr (std::is_same_v<T, NuclearBall>) {
          j["rows"] = v.rows;
          j["cols"] = v.cols;
          j["radius"] = v.radius;
        } else if constexpr (std::is_same_v<T, Elliptope>) {
          j["side"] = v.side;
        } else {
          json vs = json::array();
          for (Eigen::Index c = 0; c < v.vertices->cols(); ++c) {
            vs.push_back(vector_json(v.vertices->col(c)));
          }
          j["vertices"] = std::move(vs);
        }
      },
      body.variant());
  return j;
}

// ── Signals and configs ─────────────────────────────────────────────

SignalSet signal_from_json(const json& j) {
  check_keys(j, "signal", {"example", "m"}, {"k", "diag", "offdiag"});
  const Example example = parse_example(get_string(j, "example", "signal"));
  const int m = get_int32(j, "m", "signal");
  const std::string where = "signal (" + std::string(to_string(example)) + ")";
  if (example != Example::sparse_pca && j.contains("k")) {
    throw ConfigError(where + ": unknown field 'k'");
  }
  if (example != Example::ordering && (j.contains("diag") || j.contains("offdiag"))) {
    throw ConfigError(where + ": unknown field '" +
                      std::string(j.contains("diag") ? "diag" : "offdiag") + "'");
  }
  return as_config(where, [&] {
    if (example == Example::sparse_pca && j.contains("k")) {
      return SignalSet::sparse_pca_block(m, get_int32(j, "k", where));
    }
    if (example == Example::ordering && (j.contains("diag") || j.contains("offdiag"))) {
      check_keys(j, where, {"example", "m", "diag", "offdiag"});
      return SignalSet::ordered_tridiagonal(m, get_double(j, "diag", where),
                                            get_double(j, "offdiag", where));
    }
    return example_signal_set(example, m);
  });
}

json to_json(const SignalSet& signal) {
  json j;
  j["example"] = std::string(signal.kind());
  j["m"] = signal.side();
  if (const auto* s = std::get_if<SparsePcaBlock>(&signal.variant())) j["k"] = s->k;
  if (const auto* s = std::get_if<OrderedTridiagonal>(&signal.variant())) {
    j["diag"] = s->diag;
    j["offdiag"] = s->offdiag;
  }
  return j;
}

json to_json(const ComplexityEstimate& e) {
  return json{{"mean", e.mean}, {"std_error", e.std_error}, {"draws", e.draws}, {"seed", e.seed}};
}

json to_json(const RiskEstimate& e) {
  return json{{"mse", e.mean_squared_error}, {"std_error", e.std_error}, {"trials", e.trials}};
}

DenoiseTrialConfig denoise_config_from_json(const json& j,
                                            std::optional<std::int64_t> seed_override) {
  constexpr std::string_view where = "risk config";
  check_keys(j, where, {"signal"}, {"body", "relaxation", "sigma", "n", "trials", "seed",
                                    "enumeration_limit"});
  if (j.contains("body") == j.contains("relaxation")) {
    throw ConfigError("risk config: give exactly one of 'body' or 'relaxation'");
  }
  const SignalSet signal = signal_from_json(field(j, "signal"));
  const std::size_t limit =
      j.contains("enumeration_limit")
          ? static_cast<std::size_t>(get_int(j, "enumeration_limit", where))
          : std::size_t{100'000};
  ConvexBody body = j.contains("body")
                        ? body_from_json(field(j, "body"))
                        : make_relaxation(signal, get_string(j, "relaxation", where), limit);
  const auto seed = resolve_seed(j, seed_override, where);
  if (!seed) throw ConfigError("risk config: a seed is required (--seed or 'seed')");

  DenoiseTrialConfig config{signal, std::move(body)};
  if (j.contains("sigma")) config.sigma = get_double(j, "sigma", where);
  if (j.contains("n")) config.n = get_int32(j, "n", where);
  if (j.contains("trials")) config.trials = get_int32(j, "trials", where);
  config.seed = *seed;
  if (config.signal.ambient_dim() != config.body.ambient_dim()) {
    throw ConfigError("risk config: body dimension " + std::to_string(config.body.ambient_dim()) +
                      " does not match signal dimension " +
                      std::to_string(config.signal.ambient_dim()));
  }
  if (!(config.sigma >= 0.0)) throw ConfigError("risk config: 'sigma' must be >= 0");
  if (config.n < 1) throw ConfigError("risk config: 'n' must be >= 1");
  if (config.trials < 2) throw ConfigError("risk config: 'trials' must be >= 2");
  return config;
}

json to_json(const DenoiseTrialConfig& config) {
  return json{{"signal", to_json(config.signal)}, {"body", to_json(config.body)},
              {"sigma", config.sigma},            {"n", config.n},
              {"trials", config.trials},          {"seed", config.seed}};
}

ExampleRun example_run_from_json(const json& j, std::optional<std::int64_t> seed_override) {
  constexpr std::string_view where = "tradeoff config";
  check_keys(j, where, {"example", "relaxations"},
             {"m_grid", "p_grid", "sigma", "target_risk", "trials", "n_cap", "enumeration_limit",
              "se_multiplier", "seed"});
  ExampleRun run;
  run.example = parse_example(get_string(j, "example", where));

  if (j.contains("m_grid") == j.contains("p_grid")) {
    throw ConfigError("tradeoff config: give exactly one of 'm_grid' or 'p_grid'");
  }
  const bool by_side = j.contains("m_grid");
  const json& grid = field(j, by_side ? "m_grid" : "p_grid");
  if (!grid.is_array() || grid.empty()) {
    throw ConfigError("tradeoff config: grid must be a nonempty list of integers");
  }
  for (const json& g : grid) {
    if (!g.is_number_integer() || g.get<std::int64_t>() < 1 || g.get<std::int64_t>() > 4096) {
      throw ConfigError("tradeoff config: grid entries must be positive integers");
    }
    const int v = g.get<int>();
    run.p_grid.push_back(by_side ? v * v : v);
  }

  const json& relax = field(j, "relaxations");
  if (!relax.is_array() || relax.empty()) {
    throw ConfigError("tradeoff config: 'relaxations' must be a nonempty list of names");
  }
  for (const json& r : relax) {
    if (!r.is_string()) throw ConfigError("tradeoff config: relaxation names must be strings");
    run.relaxations.push_back(r.get<std::string>());
  }

  SearchSettings& s = run.search;
  if (j.contains("sigma")) s.sigma = get_double(j, "sigma", where);
  if (j.contains("target_risk")) s.target_risk = get_double(j, "target_risk", where);
  if (j.contains("trials")) s.trials = get_int32(j, "trials", where);
  if (j.contains("n_cap")) s.n_cap = get_int32(j, "n_cap", where);
  if (j.contains("se_multiplier")) s.se_multiplier = get_double(j, "se_multiplier", where);
  if (j.contains("enumeration_limit")) {
    run.enumeration_limit = static_cast<std::size_t>(get_int(j, "enumeration_limit", where));
  }
  const auto seed = resolve_seed(j, seed_override, where);
  if (!seed) throw ConfigError("tradeoff config: a seed is required (--seed or 'seed')");
  s.seed = *seed;

  if (!(s.sigma >= 0.0)) throw ConfigError("tradeoff config: 'sigma' must be >= 0");
  if (!(s.target_risk > 0.0)) throw ConfigError("tradeoff config: 'target_risk' must be > 0");
  if (s.trials < 2) throw ConfigError("tradeoff config: 'trials' must be >= 2");
  if (s.n_cap < 1) throw ConfigError("tradeoff config: 'n_cap' must be >= 1");
  return run;
}

json read_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open '" + path.string() + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
}

// ── Records ─────────────────────────────────────────────────────────

const std::vector<std::string>& record_columns() {
  static const std::vector<std::string> columns{"example", "relaxation", "p",        "n_star",
                                                "risk_hat", "risk_se",   "agg_ops",  "proj_ops",
                                                "wall_ms", "seed"};
  return columns;
}

void write_records_csv(std::ostream& out, std::span<const TradeoffRecord> records) {
  const auto& cols = record_columns();
  for (std::size_t i = 0; i < cols.size(); ++i) out << (i ? "," : "") << cols[i];
  out << '\n';
  for (const TradeoffRecord& r : records) {
    out << r.example << ',' << r.relaxation << ',' << r.p << ',' << r.n_star << ','
        << format_number(r.risk_hat) << ',' << format_number(r.risk_se) << ',' << r.agg_ops << ','
        << r.proj_ops << ',' << format_number(r.wall_ms) << ',' << r.seed << '\n';
  }
}

json records_to_json(std::span<const TradeoffRecord> records) {
  json out = json::array();
  for (const TradeoffRecord& r : records) {
    out.push_back(json{{"example", r.example},   {"relaxation", r.relaxation},
                       {"p", r.p},               {"n_star", r.n_star},
                       {"risk_hat", r.risk_hat}, {"risk_se", r.risk_se},
                       {"agg_ops", r.agg_ops},   {"proj_ops", r.proj_ops},
                       {"wall_ms", r.wall_ms},   {"seed", r.seed}});
  }
  return out;
}

PlotTable emit_plot_data(std::span<const TradeoffRecord> records) {
  if (records.empty()) throw std::invalid_argument("emit_plot_data: no records");
  std::vector<const TradeoffRecord*> sorted;
  for (const TradeoffRecord& r : records) sorted.push_back(&r);
  std::stable_sort(sorted.begin(), sorted.end(), [](const auto* a, const auto* b) {
    return std::tie(a->example, a->relaxation, a->p) < std::tie(b->example, b->relaxation, b->p);
  });

  PlotTable table;
  for (const TradeoffRecord* r : sorted) {
    if (table.series.empty() || table.series.back().example != r->example ||
        table.series.back().relaxation != r->relaxation) {
      table.series.push_back({r->example, r->relaxation, {}, {}, {}});
    }
    PlotSeries& s = table.series.back();
    s.p.push_back(r->p);
    s.n_star.push_back(r->n_star);
    s.total_ops.push_back(runtime_account(r->n_star, r->p, r->proj_ops));
    table.rows = std::max(table.rows, s.p.size());
  }
  return table;
}

void write_plot_csv(std::ostream& out, const PlotTable& table) {
  for (std::size_t i = 0; i < table.series.size(); ++i) {
    const PlotSeries& s = table.series[i];
    const std::string name = s.example + ":" + s.relaxation;
    out << (i ? "," : "") << name << ":n_star," << name << ":total_ops";
  }
  out << '\n';
  for (std::size_t row = 0; row < table.rows; ++row) {
    for (std::size_t i = 0; i < table.series.size(); ++i) {
      const PlotSeries& s = table.series[i];
      if (i > 0) out << ',';
      if (row < s.p.size()) out << s.n_star[row] << ',' << s.total_ops[row];
      else out << ',';
    }
    out << '\n';
  }
}

}  // namespace convexrelax::io
