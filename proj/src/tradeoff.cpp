#include "convexrelax/tradeoff.hpp"

#include "convexrelax/errors.hpp"
#include "convexrelax/rng.hpp"

#include <Eigen/SVD>

#include <cmath>
#include <map>
#include <string>

namespace convexrelax {

std::string_view to_string(Example example) {
  switch (example) {
    case Example::cut: return "cut";
    case Example::ordering: return "ordering";
    case Example::sparse_pca: return "sparse_pca";
    case Example::matching: return "matching";
  }
  return "unknown";
}

Example parse_example(std::string_view name) {
  if (name == "cut") return Example::cut;
  if (name == "ordering") return Example::ordering;
  if (name == "sparse_pca") return Example::sparse_pca;
  if (name == "matching") return Example::matching;
  throw ConfigError("unknown example '" + std::string(name) +
                    "' (expected cut, ordering, sparse_pca or matching)");
}

SignalSet example_signal_set(Example example, int m) {
  switch (example) {
    case Example::cut: return SignalSet::cut_matrices(m);
    case Example::ordering: return SignalSet::ordered_tridiagonal(m);
    case Example::sparse_pca: return SignalSet::sparse_pca_block(m);
    case Example::matching: return SignalSet::matchings(m);
  }
  throw ConfigError("unknown example");
}

ConvexBody make_relaxation(const SignalSet& signal, std::string_view label,
                           std::size_t enumeration_limit) {
  const int m = signal.side();
  const int p = signal.ambient_dim();
  const Matrix base = signal.base_matrix();

  if (label == "hull") return ConvexBody::vertex_hull(enumerate_signals(signal, enumeration_limit));
  if (label == "euclidean") return ConvexBody::euclidean_ball(p, m);
  if (label == "l1") return ConvexBody::l1_ball(p, base.cwiseAbs().sum());
  if (label == "nuclear") {
    Eigen::JacobiSVD<Matrix> svd(base);
    return ConvexBody::nuclear_ball(m, m, svd.singularValues().sum());
  }
  if (label == "elliptope") {
    if (!std::holds_alternative<CutMatrices>(signal.variant())) {
      throw DomainError("elliptope relaxation only contains cut matrices");
    }
    return ConvexBody::elliptope(m);
  }
  if (label == "hypersimplex") {
    if (!std::holds_alternative<Matchings>(signal.variant())) {
      throw DomainError("hypersimplex relaxation only contains scaled matchings");
    }
    return ConvexBody::hypersimplex(p, m, std::sqrt(static_cast<double>(m)));
  }
  throw ConfigError("unknown relaxation '" + std::string(label) +
                    "' (expected hull, elliptope, nuclear, l1, hypersimplex or euclidean)");
}

// ── Sample-complexity search ────────────────────────────────────────

SampleComplexity find_sample_complexity(const SignalSet& signal, const ConvexBody& body,
                                        const SearchSettings& s) {
  if (!(s.target_risk > 0.0)) throw std::invalid_argument("target_risk must be > 0");
  if (s.n_cap < 1) throw std::invalid_argument("n_cap must be >= 1");

  std::map<int, RiskRun> cache;
  auto evaluate = [&](int n) -> const RiskRun& {
    auto it = cache.find(n);
    if (it == cache.end()) {
      DenoiseTrialConfig config{signal, body, s.sigma, n, s.trials, s.seed};
      it = cache.emplace(n, empirical_risk_detailed(config)).first;
    }
    return it->second;
  };
  auto passes = [&](int n) {
    const RiskEstimate& r = evaluate(n).risk;
    return r.mean_squared_error + s.se_multiplier * r.std_error <= s.target_risk;
  };

  int lo = 0;  // largest n known to fail (0 = none evaluated)
  int hi = 1;
  while (!passes(hi)) {
    if (hi >= s.n_cap) {
      const RiskEstimate& r = evaluate(hi).risk;
      throw TargetUnreachable("find_sample_complexity: risk " +
                              std::to_string(r.mean_squared_error) + " at n_cap=" +
                              std::to_string(hi) + " exceeds target " +
                              std::to_string(s.target_risk));
    }
    lo = hi;
    hi = static_cast<int>(std::min<std::int64_t>(2LL * hi, s.n_cap));
  }
  while (hi - lo > 1) {
    const int mid = lo + (hi - lo) / 2;
    if (passes(mid)) {
      hi = mid;
    } else {
      lo = mid;
    }
  }

  SampleComplexity out;
  out.n_star = hi;
  out.at_n_star = evaluate(hi);
  if (hi > 1) out.below = evaluate(hi - 1);
  out.evaluations = static_cast<int>(cache.size());
  return out;
}

std::int64_t runtime_account(std::int64_t n, std::int64_t p, std::int64_t proj_ops) {
  return n * p + proj_ops;
}

// ── Example runner ──────────────────────────────────────────────────

std::vector<TradeoffRecord> run_example(const ExampleRun& run) {
  if (run.p_grid.empty()) throw std::invalid_argument("run_example: empty p grid");
  if (run.relaxations.empty()) throw std::invalid_argument("run_example: no relaxations");

  std::vector<TradeoffRecord> records;
  for (int p : run.p_grid) {
    const int m = static_cast<int>(std::lround(std::sqrt(static_cast<double>(p))));
    if (p < 1 || m * m != p) {
      throw ConfigError("run_example: p=" + std::to_string(p) + " is not a perfect square");
    }
    const SignalSet signal = example_signal_set(run.example, m);
    SearchSettings settings = run.search;
    settings.seed = static_cast<std::int64_t>(
        derive_seed(static_cast<std::uint64_t>(run.search.seed), Stream::search,
                    static_cast<std::uint64_t>(p)));

    for (const std::string& label : run.relaxations) {
      const ConvexBody body = make_relaxation(signal, label, run.enumeration_limit);
      const SampleComplexity sc = find_sample_complexity(signal, body, settings);
      TradeoffRecord r;
      r.example = std::string(to_string(run.example));
      r.relaxation = label;
      r.p = p;
      r.n_star = sc.n_star;
      r.risk_hat = sc.at_n_star.risk.mean_squared_error;
      r.risk_se = sc.at_n_star.risk.std_error;
      r.agg_ops = static_cast<std::int64_t>(sc.n_star) * p;
      r.proj_ops = sc.at_n_star.proj_ops;
      r.wall_ms = sc.at_n_star.wall_ms;
      r.seed = run.search.seed;
      records.push_back(std::move(r));
    }
  }
  return records;
}

// ── Comparisons and class membership ────────────────────────────────

double n_star_std_error(const TradeoffRecord& r) {
  if (!(r.risk_hat > 0.0)) return 0.0;
  return r.n_star * r.risk_se / r.risk_hat;
}

bool ordered_within(const TradeoffRecord& tighter, const TradeoffRecord& looser, double k) {
  const double a = n_star_std_error(tighter);
  const double b = n_star_std_error(looser);
  return tighter.n_star <= looser.n_star + k * std::sqrt(a * a + b * b);
}

MembershipReport td_membership(std::span<const TradeoffRecord> records, const Budget& t_of_p,
                               const Budget& n_of_p, double eps) {
  MembershipReport report;
  report.all_passed = !records.empty();
  for (const TradeoffRecord& r : records) {
    MembershipRow row;
    row.time_ok = static_cast<double>(runtime_account(r.n_star, r.p, r.proj_ops)) <= t_of_p(r.p);
    row.samples_ok = static_cast<double>(r.n_star) <= n_of_p(r.p);
    row.risk_ok = r.risk_hat <= eps;
    report.all_passed = report.all_passed && row.passed();
    report.rows.push_back(row);
  }
  return report;
}

ScalingFit fit_sample_complexity(std::span<const TradeoffRecord> records, const Budget& basis) {
  if (records.empty()) throw std::invalid_argument("fit_sample_complexity: no records");
  double num = 0.0;
  double den = 0.0;
  double norm2 = 0.0;
  for (const TradeoffRecord& r : records) {
    const double b = basis(r.p);
    num += b * r.n_star;
    den += b * b;
    norm2 += static_cast<double>(r.n_star) * r.n_star;
  }
  ScalingFit fit;
  fit.constant = den > 0.0 ? num / den : 0.0;
  double resid2 = 0.0;
  for (const TradeoffRecord& r : records) {
    const double e = r.n_star - fit.constant * basis(r.p);
    resid2 += e * e;
  }
  fit.relative_residual = norm2 > 0.0 ? std::sqrt(resid2 / norm2) : 0.0;
  return fit;
}

}  // namespace convexrelax
