#pragma once

#include "convexrelax/denoise.hpp"
#include "convexrelax/geometry.hpp"

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace convexrelax {

enum class Example { cut, ordering, sparse_pca, matching };

std::string_view to_string(Example example);
/// Throws ConfigError on an unknown name.
Example parse_example(std::string_view name);

/// Signal set of an example at side m (p = m^2).
SignalSet example_signal_set(Example example, int m);

/// Relaxation of conv(S) by label, scaled so that S lies on its boundary:
///   hull          conv(S) by enumeration (desk scale only)
///   elliptope     unit-diagonal PSD matrices (cut matrices only)
///   nuclear       nuclear ball of radius |base|_*
///   l1            l1 ball of radius |base|_1
///   hypersimplex  {0 <= x <= sqrt(m), sum x = m sqrt(m)} (matchings only)
///   euclidean     Frobenius ball of radius m
/// Throws ConfigError for unknown labels, DomainError when the body would not
/// contain the signal set, SetTooLarge when hull enumeration exceeds the limit.
ConvexBody make_relaxation(const SignalSet& signal, std::string_view label,
                           std::size_t enumeration_limit = 100'000);

struct TradeoffRecord {
  std::string example;
  std::string relaxation;
  int p = 0;
  int n_star = 0;
  double risk_hat = 0.0;
  double risk_se = 0.0;
  std::int64_t agg_ops = 0;   // n_star * p
  std::int64_t proj_ops = 0;  // declared projection work per estimate
  double wall_ms = 0.0;       // aggregation + projection per estimate
  std::int64_t seed = 0;
};

struct SearchSettings {
  double sigma = 1.0;
  double target_risk = 1.0;
  int trials = 200;
  std::int64_t seed = 0;
  int n_cap = 1'000'000;
  /// n passes when risk + se_multiplier * se <= target.
  double se_multiplier = 1.0;
};

struct SampleComplexity {
  int n_star = 0;
  RiskRun at_n_star;
  std::optional<RiskRun> below;  // risk at n_star - 1, when n_star > 1
  int evaluations = 0;
};

/// Smallest n whose empirical risk passes the target, by doubling from n = 1
/// and then bisecting. Every n is evaluated with the same seed, so trial t
/// reuses its signal and its first samples across n. Throws
/// TargetUnreachable when n_cap still fails.
SampleComplexity find_sample_complexity(const SignalSet& signal, const ConvexBody& body,
                                        const SearchSettings& settings);

/// n*p + f_C(p).
std::int64_t runtime_account(std::int64_t n, std::int64_t p, std::int64_t proj_ops);

struct ExampleRun {
  Example example = Example::cut;
  std::vector<int> p_grid;  // perfect squares
  std::vector<std::string> relaxations;
  SearchSettings search;
  std::size_t enumeration_limit = 100'000;
};

/// One record per (p, relaxation), ordered by p and then by the given
/// relaxation order. All relaxations at one p share a noise stream derived
/// from (seed, p); records carry the run seed.
std::vector<TradeoffRecord> run_example(const ExampleRun& run);

/// Uncertainty of n_star implied by the risk standard error, n* se / risk.
double n_star_std_error(const TradeoffRecord& record);

/// n*(tighter) <= n*(looser) up to k combined n-scale standard errors.
bool ordered_within(const TradeoffRecord& tighter, const TradeoffRecord& looser, double k = 3.0);

using Budget = std::function<double(int p)>;

struct MembershipRow {
  bool time_ok = false;
  bool samples_ok = false;
  bool risk_ok = false;
  bool passed() const noexcept { return time_ok && samples_ok && risk_ok; }
};

struct MembershipReport {
  std::vector<MembershipRow> rows;
  bool all_passed = false;
};

/// Time-data class check: runtime_account <= t(p), n_star <= n(p), risk <= eps.
MembershipReport td_membership(std::span<const TradeoffRecord> records, const Budget& t_of_p,
                               const Budget& n_of_p, double eps);

struct ScalingFit {
  double constant = 0.0;
  double relative_residual = 0.0;
};

/// Least squares n*(p) ~ c * basis(p) through the origin; the residual is
/// |n* - c basis| / |n*|.
ScalingFit fit_sample_complexity(std::span<const TradeoffRecord> records, const Budget& basis);

}  // namespace convexrelax
