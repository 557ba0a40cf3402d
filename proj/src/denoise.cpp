#include "convexrelax/denoise.hpp"

#include "convexrelax/errors.hpp"
#include "convexrelax/parallel.hpp"

#include <chrono>
#include <cmath>
#include <stdexcept>

namespace convexrelax {

// ── Sample stream ───────────────────────────────────────────────────

SampleStream::SampleStream(Vector x_star, double sigma, int n, std::int64_t seed)
    : x_star_(std::move(x_star)), sigma_(sigma), n_(n), seed_(static_cast<std::uint64_t>(seed)) {
  if (n < 1) throw std::invalid_argument("draw_samples: n must be >= 1");
  if (!(sigma >= 0.0) || !std::isfinite(sigma)) {
    throw std::invalid_argument("draw_samples: sigma must be finite and >= 0");
  }
}

Vector SampleStream::sample(int i) const {
  if (i < 0 || i >= n_) throw std::out_of_range("SampleStream: sample index out of range");
  if (sigma_ == 0.0) return x_star_;
  Engine engine(derive_seed(seed_, static_cast<std::uint64_t>(i)));
  return x_star_ + sigma_ * standard_normal(engine, x_star_.size());
}

Vector SampleStream::next() {
  if (done()) throw std::out_of_range("SampleStream: exhausted");
  return sample(next_++);
}

int SampleStream::next_block(Matrix& block) {
  const int count = std::min<int>(static_cast<int>(block.cols()), n_ - next_);
  for (int c = 0; c < count; ++c) block.col(c) = sample(next_ + c);
  next_ += count;
  return count;
}

SampleStream draw_samples(const Vector& x_star, double sigma, int n, std::int64_t seed) {
  return {x_star, sigma, n, seed};
}

// ── Aggregation and estimator ───────────────────────────────────────

Vector sample_mean(std::span<const Vector> samples, OpCounter* ops) {
  if (samples.empty()) throw std::invalid_argument("sample_mean: no samples");
  Vector sum = Vector::Zero(samples.front().size());
  for (const Vector& y : samples) {
    if (y.size() != sum.size()) throw std::invalid_argument("sample_mean: ragged samples");
    sum += y;
  }
  if (ops != nullptr) {
    ops->aggregation_ops += static_cast<std::int64_t>(samples.size()) * sum.size();
  }
  return sum / static_cast<double>(samples.size());
}

namespace {

constexpr int kBlock = 64;

// Accumulates the remaining samples; only the accumulation is timed, not the
// noise generation.
Vector stream_mean(SampleStream& samples, OpCounter* ops, double* elapsed_ms) {
  if (samples.done()) throw std::invalid_argument("sample_mean: no samples");
  const int count = samples.size() - samples.position();
  Vector sum = Vector::Zero(samples.dim());
  Matrix block(samples.dim(), std::min(kBlock, count));
  double ms = 0.0;
  while (!samples.done()) {
    const int filled = samples.next_block(block);
    const auto t0 = std::chrono::steady_clock::now();
    sum += block.leftCols(filled).rowwise().sum();
    ms += std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  }
  if (ops != nullptr) ops->aggregation_ops += static_cast<std::int64_t>(count) * samples.dim();
  if (elapsed_ms != nullptr) *elapsed_ms += ms;
  return sum / static_cast<double>(count);
}

}  // namespace

Vector sample_mean(SampleStream& samples, OpCounter* ops) {
  return stream_mean(samples, ops, nullptr);
}

Vector shrinkage_estimate(const ConvexBody& body, const Vector& ybar, OpCounter* ops) {
  ProjectionResult r = project_with_stats(body, ybar);
  if (ops != nullptr) ops->projection_ops += r.stats.work_units;
  return std::move(r.point);
}

// ── Risk ────────────────────────────────────────────────────────────

namespace {

struct TrialOutcome {
  double squared_error = 0.0;
  std::int64_t proj_ops = 0;
  double wall_ms = 0.0;
};

TrialOutcome run_trial(const Vector& x_star, const ConvexBody& body, double sigma, int n,
                       std::uint64_t noise_seed) {
  SampleStream stream(x_star, sigma, n, static_cast<std::int64_t>(noise_seed));
  OpCounter ops;
  double ms = 0.0;
  const Vector ybar = stream_mean(stream, &ops, &ms);
  const auto t0 = std::chrono::steady_clock::now();
  ProjectionResult r = project_with_stats(body, ybar);
  ms += std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return {(x_star - r.point).squaredNorm(), r.stats.work_units, ms};
}

void check_config(int dim_signal, const ConvexBody& body, int n, int trials) {
  if (dim_signal != body.ambient_dim()) {
    throw std::invalid_argument("empirical_risk: signal dimension " + std::to_string(dim_signal) +
                                " does not match body dimension " +
                                std::to_string(body.ambient_dim()));
  }
  if (n < 1) throw std::invalid_argument("empirical_risk: n must be >= 1");
  if (trials < 2) throw std::invalid_argument("empirical_risk: trials must be >= 2");
}

RiskRun collect(const std::vector<TrialOutcome>& outcomes, std::int64_t n, int dim) {
  std::vector<double> errors;
  errors.reserve(outcomes.size());
  std::int64_t proj = 0;
  double ms = 0.0;
  for (const auto& o : outcomes) {
    errors.push_back(o.squared_error);
    proj += o.proj_ops;
    ms += o.wall_ms;
  }
  const SampleSummary s = summarize(errors);
  const auto trials = static_cast<std::int64_t>(outcomes.size());
  RiskRun run;
  run.risk = {s.mean, s.std_error, static_cast<int>(trials)};
  run.agg_ops = n * dim;
  run.proj_ops = proj / trials;
  run.wall_ms = ms / static_cast<double>(trials);
  return run;
}

template <class Loop>
RiskRun risk_over_signal_set(const DenoiseTrialConfig& c, Loop&& loop) {
  check_config(c.signal.ambient_dim(), c.body, c.n, c.trials);
  const auto seed = static_cast<std::uint64_t>(c.seed);
  std::vector<TrialOutcome> outcomes(static_cast<std::size_t>(c.trials));
  loop(c.trials, [&](std::int64_t t) {
    Engine signal_engine = make_engine(seed, Stream::signal, static_cast<std::uint64_t>(t));
    const Vector x_star = sample_signal(c.signal, signal_engine);
    outcomes[static_cast<std::size_t>(t)] = run_trial(
        x_star, c.body, c.sigma, c.n, derive_seed(seed, Stream::noise, static_cast<std::uint64_t>(t)));
  });
  return collect(outcomes, c.n, c.body.ambient_dim());
}

}  // namespace

RiskRun empirical_risk_detailed(const DenoiseTrialConfig& config) {
  return risk_over_signal_set(config, [](std::int64_t n, auto&& body) { parallel_for(n, body); });
}

RiskEstimate empirical_risk(const DenoiseTrialConfig& config) {
  return empirical_risk_detailed(config).risk;
}

RiskEstimate empirical_risk_serial(const DenoiseTrialConfig& config) {
  return risk_over_signal_set(config, [](std::int64_t n, auto&& body) { serial_for(n, body); })
      .risk;
}

RiskRun empirical_risk_at(const Vector& x_star, const ConvexBody& body, double sigma, int n,
                          int trials, std::int64_t seed) {
  check_config(static_cast<int>(x_star.size()), body, n, trials);
  const auto base = static_cast<std::uint64_t>(seed);
  std::vector<TrialOutcome> outcomes(static_cast<std::size_t>(trials));
  parallel_for(trials, [&](std::int64_t t) {
    outcomes[static_cast<std::size_t>(t)] =
        run_trial(x_star, body, sigma, n, derive_seed(base, Stream::noise, static_cast<std::uint64_t>(t)));
  });
  return collect(outcomes, n, body.ambient_dim());
}

// ── Closed-form risk bounds ─────────────────────────────────────────

double risk_bound_basic(double sigma, int n, double g_hat) {
  if (n < 1) throw std::invalid_argument("risk_bound_basic: n must be >= 1");
  if (g_hat < 0.0) throw std::invalid_argument("risk_bound_basic: g_hat must be >= 0");
  return sigma * sigma * g_hat / n;
}

double risk_bound_decomposed(double sigma, int n, double g_cone_q1, double anchor_gap,
                             double alpha) {
  if (n < 1) throw std::invalid_argument("risk_bound_decomposed: n must be >= 1");
  if (sigma < 0.0 || g_cone_q1 < 0.0 || anchor_gap < 0.0 || alpha < 0.0) {
    throw std::invalid_argument("risk_bound_decomposed: arguments must be >= 0");
  }
  return 6.0 * (sigma * sigma * g_cone_q1 / n + anchor_gap * anchor_gap + alpha * alpha);
}

int samples_for_unit_risk(double sigma, double g_hat) {
  if (g_hat < 0.0) throw std::invalid_argument("samples_for_unit_risk: g_hat must be >= 0");
  const double needed = std::ceil(sigma * sigma * g_hat);
  return std::max(1, static_cast<int>(needed));
}

}  // namespace convexrelax
