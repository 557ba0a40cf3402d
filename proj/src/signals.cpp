#include "convexrelax/denoise.hpp"
#include "convexrelax/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <set>
#include <stdexcept>
#include <string>

namespace convexrelax {
namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void require_side(int m) {
  if (m < 1) throw std::invalid_argument("signal set side m must be >= 1");
}

Matrix tridiagonal(int m, double diag, double offdiag) {
  Matrix out = Matrix::Zero(m, m);
  for (int i = 0; i < m; ++i) {
    out(i, i) = diag;
    if (i + 1 < m) {
      out(i, i + 1) = offdiag;
      out(i + 1, i) = offdiag;
    }
  }
  return out;
}

// X = P M P^T with X(perm[i], perm[j]) = M(i, j).
Matrix permute(const Matrix& m, const std::vector<int>& perm) {
  const auto n = static_cast<Eigen::Index>(perm.size());
  Matrix out(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      out(perm[static_cast<std::size_t>(i)], perm[static_cast<std::size_t>(j)]) = m(i, j);
    }
  }
  return out;
}

Matrix matching_matrix(const std::vector<int>& order, double value) {
  const auto n = static_cast<Eigen::Index>(order.size());
  Matrix out = Matrix::Zero(n, n);
  for (std::size_t i = 0; i + 1 < order.size(); i += 2) {
    out(order[i], order[i + 1]) = value;
    out(order[i + 1], order[i]) = value;
  }
  return out;
}

double factorial(int n) {
  double out = 1.0;
  for (int i = 2; i <= n; ++i) out *= i;
  return out;
}

double binomial(int n, int k) {
  double out = 1.0;
  for (int i = 1; i <= k; ++i) out = out * (n - k + i) / i;
  return std::round(out);
}

void enumerate_matchings(std::vector<int>& pairing, std::vector<bool>& used, int m, double value,
                         std::vector<Vector>& out) {
  const auto first = std::find(used.begin(), used.end(), false);
  if (first == used.end()) {
    out.push_back(flatten(matching_matrix(pairing, value)));
    return;
  }
  const int a = static_cast<int>(first - used.begin());
  used[static_cast<std::size_t>(a)] = true;
  for (int b = a + 1; b < m; ++b) {
    if (used[static_cast<std::size_t>(b)]) continue;
    used[static_cast<std::size_t>(b)] = true;
    pairing.push_back(a);
    pairing.push_back(b);
    enumerate_matchings(pairing, used, m, value, out);
    pairing.resize(pairing.size() - 2);
    used[static_cast<std::size_t>(b)] = false;
  }
  used[static_cast<std::size_t>(a)] = false;
}

}  // namespace

// ── Construction ────────────────────────────────────────────────────

SignalSet SignalSet::cut_matrices(int m) {
  require_side(m);
  return {CutMatrices{m}, m};
}

SignalSet SignalSet::ordered_tridiagonal(int m) { return ordered_tridiagonal(m, 1.0, 0.5); }

SignalSet SignalSet::ordered_tridiagonal(int m, double diag, double offdiag) {
  require_side(m);
  const double norm = tridiagonal(m, diag, offdiag).norm();
  if (!(norm > 0.0) || !std::isfinite(norm)) {
    throw std::invalid_argument("OrderedTridiagonal band values must be finite and not all zero");
  }
  const double s = m / norm;
  return {OrderedTridiagonal{m, diag * s, offdiag * s}, m};
}

SignalSet SignalSet::sparse_pca_block(int m) {
  require_side(m);
  return sparse_pca_block(m, std::max(1, static_cast<int>(std::lround(std::sqrt(m)))));
}

SignalSet SignalSet::sparse_pca_block(int m, int k) {
  require_side(m);
  if (k < 1 || k > m) throw std::invalid_argument("SparsePcaBlock needs 1 <= k <= m");
  return {SparsePcaBlock{m, k}, m};
}

SignalSet SignalSet::matchings(int m) {
  require_side(m);
  if (m % 2 != 0) throw std::invalid_argument("Matchings needs an even number of nodes");
  return {Matchings{m}, m};
}

std::string_view SignalSet::kind() const noexcept {
  return std::visit(overloaded{
                        [](const CutMatrices&) { return std::string_view("cut"); },
                        [](const OrderedTridiagonal&) { return std::string_view("ordering"); },
                        [](const SparsePcaBlock&) { return std::string_view("sparse_pca"); },
                        [](const Matchings&) { return std::string_view("matching"); },
                    },
                    variant_);
}

Matrix SignalSet::base_matrix() const {
  return std::visit(overloaded{
                        [](const CutMatrices& s) -> Matrix { return Matrix::Ones(s.m, s.m); },
                        [](const OrderedTridiagonal& s) -> Matrix {
                          return tridiagonal(s.m, s.diag, s.offdiag);
                        },
                        [](const SparsePcaBlock& s) -> Matrix {
                          Matrix out = Matrix::Zero(s.m, s.m);
                          out.topLeftCorner(s.k, s.k).setConstant(static_cast<double>(s.m) / s.k);
                          return out;
                        },
                        [](const Matchings& s) -> Matrix {
                          std::vector<int> order(static_cast<std::size_t>(s.m));
                          std::iota(order.begin(), order.end(), 0);
                          return matching_matrix(order, std::sqrt(static_cast<double>(s.m)));
                        },
                    },
                    variant_);
}

double SignalSet::cardinality() const {
  return std::visit(overloaded{
                        [](const CutMatrices& s) { return std::ldexp(1.0, s.m - 1); },
                        [](const OrderedTridiagonal& s) {
                          // P M P^T = M only for the identity and the reversal.
                          if (s.m < 2 || s.offdiag == 0.0) return 1.0;
                          return factorial(s.m) / 2.0;
                        },
                        [](const SparsePcaBlock& s) { return binomial(s.m, s.k); },
                        [](const Matchings& s) {
                          double out = 1.0;
                          for (int i = s.m - 1; i > 1; i -= 2) out *= i;
                          return out;
                        },
                    },
                    variant_);
}

// ── Sampling ────────────────────────────────────────────────────────

Vector sample_signal(const SignalSet& set, Engine& engine) {
  const int m = set.side();
  return std::visit(
      overloaded{
          [&](const CutMatrices&) -> Vector {
            std::bernoulli_distribution coin(0.5);
            Vector a(m);
            for (int i = 0; i < m; ++i) a[i] = coin(engine) ? 1.0 : -1.0;
            return flatten(a * a.transpose());
          },
          [&](const Matchings&) -> Vector {
            std::vector<int> order(static_cast<std::size_t>(m));
            std::iota(order.begin(), order.end(), 0);
            std::shuffle(order.begin(), order.end(), engine);
            return flatten(matching_matrix(order, std::sqrt(static_cast<double>(m))));
          },
          [&](const auto&) -> Vector {
            std::vector<int> perm(static_cast<std::size_t>(m));
            std::iota(perm.begin(), perm.end(), 0);
            std::shuffle(perm.begin(), perm.end(), engine);
            return flatten(permute(set.base_matrix(), perm));
          },
      },
      set.variant());
}

Vector sample_signal(const SignalSet& set, std::int64_t seed) {
  Engine engine = make_engine(static_cast<std::uint64_t>(seed), Stream::signal, 0);
  return sample_signal(set, engine);
}

// ── Enumeration ─────────────────────────────────────────────────────

std::vector<Vector> enumerate_signals(const SignalSet& set, std::size_t limit) {
  const double count = set.cardinality();
  if (count > static_cast<double>(limit)) {
    throw SetTooLarge("enumerate_signals: '" + std::string(set.kind()) + "' with m=" +
                      std::to_string(set.side()) + " has " + std::to_string(count) +
                      " elements, above the limit " + std::to_string(limit));
  }
  const int m = set.side();
  std::vector<Vector> raw;
  std::visit(overloaded{
                 [&](const CutMatrices&) {
                   const std::uint64_t total = std::uint64_t{1} << (m - 1);
                   for (std::uint64_t mask = 0; mask < total; ++mask) {
                     Vector a = Vector::Ones(m);
                     for (int i = 1; i < m; ++i) {
                       if ((mask >> (i - 1)) & 1U) a[i] = -1.0;
                     }
                     raw.push_back(flatten(a * a.transpose()));
                   }
                 },
                 [&](const OrderedTridiagonal&) {
                   const Matrix base = set.base_matrix();
                   std::vector<int> perm(static_cast<std::size_t>(m));
                   std::iota(perm.begin(), perm.end(), 0);
                   do {
                     raw.push_back(flatten(permute(base, perm)));
                   } while (std::next_permutation(perm.begin(), perm.end()));
                 },
                 [&](const SparsePcaBlock& s) {
                   std::vector<bool> chosen(static_cast<std::size_t>(m), false);
                   std::fill(chosen.begin(), chosen.begin() + s.k, true);
                   const double value = static_cast<double>(m) / s.k;
                   do {
                     Matrix x = Matrix::Zero(m, m);
                     for (int i = 0; i < m; ++i) {
                       for (int j = 0; j < m; ++j) {
                         if (chosen[static_cast<std::size_t>(i)] &&
                             chosen[static_cast<std::size_t>(j)]) {
                           x(i, j) = value;
                         }
                       }
                     }
                     raw.push_back(flatten(x));
                   } while (std::prev_permutation(chosen.begin(), chosen.end()));
                 },
                 [&](const Matchings&) {
                   std::vector<int> pairing;
                   std::vector<bool> used(static_cast<std::size_t>(m), false);
                   enumerate_matchings(pairing, used, m, std::sqrt(static_cast<double>(m)), raw);
                 },
             },
             set.variant());

  // Keep first occurrences only; different signs or permutations can give
  // the same matrix.
  std::set<std::vector<double>> seen;
  std::vector<Vector> out;
  for (auto& v : raw) {
    if (seen.emplace(v.data(), v.data() + v.size()).second) out.push_back(std::move(v));
  }
  return out;
}

}  // namespace convexrelax
