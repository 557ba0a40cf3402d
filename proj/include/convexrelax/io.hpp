#pragma once

#include "convexrelax/cones.hpp"
#include "convexrelax/denoise.hpp"
#include "convexrelax/geometry.hpp"
#include "convexrelax/tradeoff.hpp"

#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace convexrelax::io {

using json = nlohmann::ordered_json;

// ── CSV ─────────────────────────────────────────────────────────────
//
// Comma separator, '.' decimal point, LF line endings. Numbers are written in
// the shortest form that parses back to the same double.

std::string format_number(double value);

/// A table of numbers read from CSV; values are flattened row-major. A file
/// with one value per line is a column vector (cols == 1).
struct CsvData {
  Vector values;
  int rows = 0;
  int cols = 0;
};

/// Throws ConfigError on malformed or ragged input.
CsvData parse_csv(std::istream& in);
CsvData read_csv(const std::filesystem::path& path);

void write_vector_csv(std::ostream& out, const Vector& v);
/// `flat` written as rows x cols, row-major.
void write_matrix_csv(std::ostream& out, const Vector& flat, int rows, int cols);

// ── JSON descriptors ────────────────────────────────────────────────
//
// All parsers are strict: an unknown key or a missing required key throws
// ConfigError naming it.

/// {"variant": "euclidean_ball", "dim": 2, "radius": 1}, and likewise
/// l1_ball(dim, radius), simplex(dim), hypersimplex(dim, k, scale),
/// nuclear_ball(rows, cols, radius), elliptope(side),
/// vertex_hull(vertices: [[...], ...]).
ConvexBody body_from_json(const json& j);
json to_json(const ConvexBody& body);

/// {"example": "cut" | "ordering" | "sparse_pca" | "matching", "m": 4}, with
/// optional "k" (sparse_pca) and "diag"/"offdiag" (ordering).
SignalSet signal_from_json(const json& j);
json to_json(const SignalSet& signal);

json to_json(const ComplexityEstimate& e);
json to_json(const RiskEstimate& e);

/// {"signal": {...}, "body": {...} | "relaxation": "nuclear", "sigma": 1,
///  "n": 10, "trials": 200, "seed": 7}. `seed` may be omitted when
/// `seed_override` is given; an override always wins.
DenoiseTrialConfig denoise_config_from_json(const json& j,
                                            std::optional<std::int64_t> seed_override = {});
json to_json(const DenoiseTrialConfig& config);

/// {"example": "cut", "m_grid": [4] | "p_grid": [16], "relaxations": [...],
///  "sigma", "target_risk", "trials", "n_cap", "enumeration_limit", "seed"}.
ExampleRun example_run_from_json(const json& j, std::optional<std::int64_t> seed_override = {});

/// Reads a JSON file; parse errors become ConfigError.
json read_json(const std::filesystem::path& path);

// ── Tradeoff records ────────────────────────────────────────────────

/// example,relaxation,p,n_star,risk_hat,risk_se,agg_ops,proj_ops,wall_ms,seed
const std::vector<std::string>& record_columns();

void write_records_csv(std::ostream& out, std::span<const TradeoffRecord> records);
json records_to_json(std::span<const TradeoffRecord> records);

/// (n_star, total_ops) points of one (example, relaxation) pair, by p.
struct PlotSeries {
  std::string example;
  std::string relaxation;
  std::vector<int> p;
  std::vector<std::int64_t> n_star;
  std::vector<std::int64_t> total_ops;
};

/// Two columns per series; series sorted by (example, relaxation) and points
/// by p, whatever the input order. Shorter series leave trailing cells empty.
struct PlotTable {
  std::vector<PlotSeries> series;
  std::size_t rows = 0;
};

/// Throws std::invalid_argument on empty input.
PlotTable emit_plot_data(std::span<const TradeoffRecord> records);
void write_plot_csv(std::ostream& out, const PlotTable& table);

}  // namespace convexrelax::io
