#pragma once

#include "convexrelax/geometry.hpp"
#include "convexrelax/rng.hpp"

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <variant>
#include <vector>

namespace convexrelax {

// ── Signal sets ─────────────────────────────────────────────────────
//
// Every set lives in R^p with p = m*m (m x m matrices, flattened row-major)
// and every element has Frobenius norm m = sqrt(p).

/// {a a^T : a in {-1,+1}^m}.
struct CutMatrices {
  int m;
};

/// {P M P^T} for a fixed tridiagonal M with constant bands.
struct OrderedTridiagonal {
  int m;
  double diag;
  double offdiag;
};

/// {P M P^T} where M has value m/k on its top-left k x k block.
struct SparsePcaBlock {
  int m;
  int k;
};

/// sqrt(m) times the adjacency matrices of perfect matchings on m nodes.
struct Matchings {
  int m;
};

class SignalSet {
 public:
  using Variant = std::variant<CutMatrices, OrderedTridiagonal, SparsePcaBlock, Matchings>;

  static SignalSet cut_matrices(int m);
  /// Diagonal d and off-diagonal d/2, with d fixed by |M|_F = m.
  static SignalSet ordered_tridiagonal(int m);
  /// Band values are rescaled (ratio kept) so that |M|_F = m.
  static SignalSet ordered_tridiagonal(int m, double diag, double offdiag);
  /// k = round(sqrt(m)).
  static SignalSet sparse_pca_block(int m);
  static SignalSet sparse_pca_block(int m, int k);
  static SignalSet matchings(int m);

  const Variant& variant() const noexcept { return variant_; }
  int side() const noexcept { return side_; }
  int ambient_dim() const noexcept { return side_ * side_; }
  std::string_view kind() const noexcept;

  /// The unpermuted representative: all-ones a for cuts, M itself otherwise,
  /// and the matching {(0,1), (2,3), ...} for matchings (scaled).
  Matrix base_matrix() const;

  /// Number of distinct elements, as a double since it overflows quickly.
  double cardinality() const;

 private:
  SignalSet(Variant v, int side) : variant_(std::move(v)), side_(side) {}

  Variant variant_;
  int side_;
};

/// Uniform draw from the set (random signs, permutation, or pairing).
Vector sample_signal(const SignalSet& set, Engine& engine);
Vector sample_signal(const SignalSet& set, std::int64_t seed);

/// All distinct elements. Throws SetTooLarge when cardinality() > limit.
std::vector<Vector> enumerate_signals(const SignalSet& set, std::size_t limit);

// ── Samples and aggregation ─────────────────────────────────────────

/// y_i = x* + sigma z_i with z_i standard normal, where z_i depends only on
/// (seed, i). Samples are produced lazily.
class SampleStream {
 public:
  SampleStream(Vector x_star, double sigma, int n, std::int64_t seed);

  int size() const noexcept { return n_; }
  int dim() const noexcept { return static_cast<int>(x_star_.size()); }
  int position() const noexcept { return next_; }
  bool done() const noexcept { return next_ >= n_; }

  Vector sample(int i) const;
  Vector next();
  /// Fills up to block.cols() consecutive samples as columns; returns how many.
  int next_block(Matrix& block);

 private:
  Vector x_star_;
  double sigma_;
  int n_;
  std::uint64_t seed_;
  int next_ = 0;
};

SampleStream draw_samples(const Vector& x_star, double sigma, int n, std::int64_t seed);

/// Operation counts under the runtime model n*p + f_C(p).
struct OpCounter {
  std::int64_t aggregation_ops = 0;
  std::int64_t projection_ops = 0;
};

/// (1/n) sum_i y_i. Adds n*p to ops->aggregation_ops.
Vector sample_mean(std::span<const Vector> samples, OpCounter* ops = nullptr);
/// Consumes the rest of the stream.
Vector sample_mean(SampleStream& samples, OpCounter* ops = nullptr);

/// Projection of the sample mean onto the constraint set.
Vector shrinkage_estimate(const ConvexBody& body, const Vector& ybar, OpCounter* ops = nullptr);

// ── Risk ────────────────────────────────────────────────────────────

struct DenoiseTrialConfig {
  SignalSet signal;
  ConvexBody body;
  double sigma = 1.0;
  int n = 1;
  int trials = 200;
  std::int64_t seed = 0;
};

struct RiskEstimate {
  double mean_squared_error = 0.0;
  double std_error = 0.0;
  int trials = 0;
};

/// Risk plus per-trial cost: aggregation ops (n*p), declared projection work
/// averaged over trials, and wall time of aggregation + projection.
struct RiskRun {
  RiskEstimate risk;
  std::int64_t agg_ops = 0;
  std::int64_t proj_ops = 0;
  double wall_ms = 0.0;
};

/// Average of |x* - Pi_C(ybar)|^2 over independent trials, each with a fresh
/// x* drawn uniformly from the signal set and fresh noise. Trial t depends
/// only on (seed, t); the OpenMP and serial versions agree bit for bit.
RiskRun empirical_risk_detailed(const DenoiseTrialConfig& config);
RiskEstimate empirical_risk(const DenoiseTrialConfig& config);
RiskEstimate empirical_risk_serial(const DenoiseTrialConfig& config);

/// Same estimator with x* held fixed across trials.
RiskRun empirical_risk_at(const Vector& x_star, const ConvexBody& body, double sigma, int n,
                          int trials, std::int64_t seed);

/// sigma^2 g / n.
double risk_bound_basic(double sigma, int n, double g_hat);
/// 6 (sigma^2 g / n + anchor_gap^2 + alpha^2), with anchor_gap = |x* - x~|.
double risk_bound_decomposed(double sigma, int n, double g_cone_q1, double anchor_gap,
                             double alpha);
/// Smallest n with sigma^2 g <= n, at least 1.
int samples_for_unit_risk(double sigma, double g_hat);

}  // namespace convexrelax
