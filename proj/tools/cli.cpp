#include "cli.hpp"

#include "convexrelax/bounds.hpp"
#include "convexrelax/cones.hpp"
#include "convexrelax/errors.hpp"
#include "convexrelax/io.hpp"
#include "convexrelax/parallel.hpp"
#include "convexrelax/tradeoff.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace convexrelax::cli {
namespace {

using io::json;

// Writes to the --out path, or to `fallback` when none was given.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : out_(&fallback) {
    if (!path.empty()) {
      file_.open(path, std::ios::binary);
      if (!file_) throw ConfigError("cannot open '" + path + "' for writing");
      out_ = &file_;
    }
  }
  std::ostream& stream() { return *out_; }

 private:
  std::ofstream file_;
  std::ostream* out_;
};

void write_json(std::ostream& out, const json& j) { out << j.dump(2) << '\n'; }

void write_flat_object(std::ostream& out, const json& j, Format format) {
  if (format == Format::json) {
    write_json(out, j);
    return;
  }
  bool first = true;
  for (const auto& item : j.items()) {
    out << (first ? "" : ",") << item.key();
    first = false;
  }
  out << '\n';
  first = true;
  for (const auto& item : j.items()) {
    out << (first ? "" : ",");
    first = false;
    const json& v = item.value();
    if (v.is_number_float()) {
      out << io::format_number(v.get<double>());
    } else {
      out << v.dump();
    }
  }
  out << '\n';
}

// ── project ─────────────────────────────────────────────────────────

void run_project(const std::string& body_path, const std::string& point_path,
                 const RunConfig& rc, std::ostream& out) {
  const ConvexBody body = io::body_from_json(io::read_json(body_path));
  const io::CsvData point = io::read_csv(point_path);
  if (point.values.size() != body.ambient_dim()) {
    throw ConfigError("point has " + std::to_string(point.values.size()) +
                      " values but the body lives in dimension " +
                      std::to_string(body.ambient_dim()));
  }
  const Vector projected = project(body, point.values);
  Sink sink(rc.output_path, out);
  if (point.cols == 1) {
    io::write_vector_csv(sink.stream(), projected);
  } else {
    io::write_matrix_csv(sink.stream(), projected, point.rows, point.cols);
  }
}

// ── complexity ──────────────────────────────────────────────────────

Vector anchor_from_json(const json& j) {
  if (j.is_array()) {
    Vector v(static_cast<Eigen::Index>(j.size()));
    for (std::size_t i = 0; i < j.size(); ++i) {
      if (!j[i].is_number()) throw ConfigError("complexity config: 'anchor' must be numeric");
      v[static_cast<Eigen::Index>(i)] = j[i].get<double>();
    }
    return v;
  }
  // A signal descriptor stands for its unpermuted representative.
  return flatten(io::signal_from_json(j).base_matrix());
}

TangentConeSpec cone_from_json(const json& p) {
  const bool has_body = p.contains("body");
  const bool has_generators = p.contains("generators");
  if (has_body == has_generators) {
    throw ConfigError("complexity config: give exactly one of 'body' or 'generators'");
  }
  if (has_generators) {
    if (p.contains("anchor") || p.contains("vertex") || p.contains("step")) {
      throw ConfigError("complexity config: 'generators' cannot be combined with "
                        "'anchor', 'vertex' or 'step'");
    }
    const json& gs = p.at("generators");
    if (!gs.is_array() || gs.empty()) {
      throw ConfigError("complexity config: 'generators' must be a nonempty list");
    }
    std::vector<Vector> generators;
    for (const json& g : gs) generators.push_back(anchor_from_json(g));
    return TangentConeSpec::exact_vertex_cone(generators);
  }
  const ConvexBody body = io::body_from_json(p.at("body"));
  if (p.contains("vertex")) {
    if (p.contains("anchor") || p.contains("step")) {
      throw ConfigError("complexity config: 'vertex' cannot be combined with 'anchor' or 'step'");
    }
    if (!p.at("vertex").is_number_integer()) {
      throw ConfigError("complexity config: 'vertex' must be an integer");
    }
    return TangentConeSpec::at_hull_vertex(body, p.at("vertex").get<Eigen::Index>());
  }
  if (!p.contains("anchor")) throw ConfigError("complexity config: missing field 'anchor'");
  const Vector anchor = anchor_from_json(p.at("anchor"));
  if (anchor.size() != body.ambient_dim()) {
    throw ConfigError("complexity config: anchor dimension does not match the body");
  }
  double step = 1e-3;
  if (p.contains("step")) {
    if (!p.at("step").is_number()) throw ConfigError("complexity config: 'step' must be a number");
    step = p.at("step").get<double>();
  }
  return TangentConeSpec::approx_via_body(body, anchor, step);
}

void run_complexity(const RunConfig& rc, std::ostream& out) {
  const json& p = rc.parameters;
  if (!p.is_object()) throw ConfigError("complexity config: expected a JSON object");
  for (const auto& item : p.items()) {
    static const std::vector<std::string> known{"body",  "anchor", "step", "generators",
                                                "vertex", "draws", "seed"};
    if (std::find(known.begin(), known.end(), item.key()) == known.end()) {
      throw ConfigError("complexity config: unknown field '" + item.key() + "'");
    }
  }
  std::optional<std::int64_t> seed = rc.seed;
  if (!seed && p.contains("seed")) {
    if (!p.at("seed").is_number_integer()) {
      throw ConfigError("complexity config: 'seed' must be an integer");
    }
    seed = p.at("seed").get<std::int64_t>();
  }
  if (!seed) throw ConfigError("complexity: a seed is required (--seed or 'seed')");
  int draws = 2000;
  if (p.contains("draws")) {
    if (!p.at("draws").is_number_integer()) {
      throw ConfigError("complexity config: 'draws' must be an integer");
    }
    draws = p.at("draws").get<int>();
  }
  if (draws < 2) throw ConfigError("complexity config: 'draws' must be >= 2");

  const ComplexityEstimate e = mc_squared_complexity(cone_from_json(p), draws, *seed);
  Sink sink(rc.output_path, out);
  write_flat_object(sink.stream(), io::to_json(e), rc.format);
}

// ── risk ────────────────────────────────────────────────────────────

void run_risk(const RunConfig& rc, std::ostream& out) {
  const DenoiseTrialConfig config = io::denoise_config_from_json(rc.parameters, rc.seed);
  const RiskEstimate e = empirical_risk(config);
  Sink sink(rc.output_path, out);
  write_flat_object(sink.stream(), io::to_json(e), rc.format);
}

// ── tradeoff ────────────────────────────────────────────────────────

void run_tradeoff(const RunConfig& rc, const std::string& plot_path, std::ostream& out) {
  const ExampleRun run = io::example_run_from_json(rc.parameters, rc.seed);
  const std::vector<TradeoffRecord> records = run_example(run);
  {
    Sink sink(rc.output_path, out);
    if (rc.format == Format::csv) {
      io::write_records_csv(sink.stream(), records);
    } else {
      write_json(sink.stream(), io::records_to_json(records));
    }
  }
  if (!plot_path.empty()) {
    Sink plot(plot_path, out);
    io::write_plot_csv(plot.stream(), io::emit_plot_data(records));
  }
}

// ── bounds ──────────────────────────────────────────────────────────

struct BoundArgs {
  std::string which;
  std::optional<int> s, p, r, m1, m2;
  std::optional<double> mu, v, h;
};

template <class T>
T need(const std::optional<T>& value, const char* flag, const std::string& which) {
  if (!value) throw ConfigError("bounds --which " + which + " needs " + flag);
  return *value;
}

void run_bounds(const BoundArgs& a, std::ostream& out) {
  const std::string& w = a.which;
  if (w == "l1") {
    out << io::format_number(l1_tangent_bound(need(a.s, "--s", w), need(a.p, "--p", w))) << '\n';
  } else if (w == "nuclear") {
    out << io::format_number(nuclear_tangent_bound(need(a.r, "--r", w), need(a.m1, "--m1", w),
                                                   need(a.m2, "--m2", w)))
        << '\n';
  } else if (w == "volume") {
    out << io::format_number(volume_complexity_bound(need(a.mu, "--mu", w), need(a.p, "--p", w)))
        << '\n';
  } else if (w == "vertex") {
    out << io::format_number(vertex_transitive_bound(need(a.v, "--v", w), need(a.p, "--p", w)))
        << '\n';
  } else if (w == "cap") {
    const CapVolumeBounds b = cap_volume_bounds(need(a.p, "--p", w), need(a.h, "--h", w));
    out << "lower,upper\n" << io::format_number(b.lower) << ',' << io::format_number(b.upper)
        << '\n';
  } else if (w == "angle") {
    out << io::format_number(cap_solid_angle_lower_bound(need(a.mu, "--mu", w),
                                                         need(a.p, "--p", w)))
        << '\n';
  } else {
    throw ConfigError("bounds: unknown --which '" + w + "'");
  }
}

Format parse_format(const std::string& name) {
  if (name == "csv") return Format::csv;
  if (name == "json") return Format::json;
  throw ConfigError("unknown format '" + name + "' (expected csv or json)");
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Convex-relaxation denoising: projections, cone complexity, risk and "
               "time-data tradeoffs"};
  app.require_subcommand(1);

  std::string body_path, point_path, config_path, plot_path, format_name;
  std::optional<std::int64_t> seed;
  RunConfig rc;

  auto* project_cmd = app.add_subcommand("project", "Project a point onto a convex body");
  project_cmd->add_option("--body", body_path, "Body descriptor (JSON)")->required();
  project_cmd->add_option("--point", point_path, "Point (CSV)")->required();
  project_cmd->add_option("--out", rc.output_path, "Output CSV (default: stdout)");

  BoundArgs bound_args;
  auto* bounds_cmd = app.add_subcommand("bounds", "Evaluate a closed-form complexity bound");
  bounds_cmd->set_help_flag("--help", "Print this help message and exit");  // frees --h
  bounds_cmd->add_option("--which", bound_args.which, "l1|nuclear|volume|vertex|cap|angle")
      ->required();
  bounds_cmd->add_option("--s", bound_args.s, "Sparsity");
  bounds_cmd->add_option("--p", bound_args.p, "Ambient dimension");
  bounds_cmd->add_option("--r", bound_args.r, "Rank");
  bounds_cmd->add_option("--m1", bound_args.m1, "Rows");
  bounds_cmd->add_option("--m2", bound_args.m2, "Columns");
  bounds_cmd->add_option("--mu", bound_args.mu, "Normalized polar volume");
  bounds_cmd->add_option("--v", bound_args.v, "Vertex count");
  bounds_cmd->add_option("--h", bound_args.h, "Cap height");

  auto add_stochastic = [&](CLI::App* cmd, const char* default_format) {
    cmd->add_option("--config", config_path, "Configuration (JSON)")->required();
    cmd->add_option("--seed", seed, "Random seed");
    cmd->add_option("--out", rc.output_path, "Output file (default: stdout)");
    cmd->add_option("--format", format_name, "csv or json")->default_str(default_format);
  };
  auto* complexity_cmd =
      app.add_subcommand("complexity", "Monte-Carlo Gaussian squared-complexity of a cone");
  add_stochastic(complexity_cmd, "json");
  auto* risk_cmd = app.add_subcommand("risk", "Monte-Carlo risk of the projection estimator");
  add_stochastic(risk_cmd, "json");
  auto* tradeoff_cmd =
      app.add_subcommand("tradeoff", "Sample complexity and runtime per relaxation");
  add_stochastic(tradeoff_cmd, "csv");
  tradeoff_cmd->add_option("--plot-data", plot_path, "Also write (n_star, total_ops) series");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (auto threads = thread_limit_from_env()) set_thread_limit(*threads);

    if (project_cmd->parsed()) {
      rc.command = Command::project;
      run_project(body_path, point_path, rc, out);
    } else if (bounds_cmd->parsed()) {
      rc.command = Command::bounds;
      run_bounds(bound_args, out);
    } else {
      rc.seed = seed;
      rc.parameters = io::read_json(config_path);
      if (complexity_cmd->parsed()) {
        rc.command = Command::complexity;
        rc.format = parse_format(format_name.empty() ? "json" : format_name);
        run_complexity(rc, out);
      } else if (risk_cmd->parsed()) {
        rc.command = Command::risk;
        rc.format = parse_format(format_name.empty() ? "json" : format_name);
        run_risk(rc, out);
      } else {
        rc.command = Command::tradeoff;
        rc.format = parse_format(format_name.empty() ? "csv" : format_name);
        run_tradeoff(rc, plot_path, out);
      }
    }
    return 0;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const nlohmann::json::exception& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv{"convexrelax"};
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace convexrelax::cli
