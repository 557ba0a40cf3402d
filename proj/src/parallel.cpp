#include "convexrelax/parallel.hpp"

#include "convexrelax/errors.hpp"

#include <omp.h>

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <string>

namespace convexrelax {

void set_thread_limit(int threads) {
  if (threads < 0) throw ConfigError("thread limit must be >= 0");
  omp_set_num_threads(threads == 0 ? omp_get_num_procs() : threads);
}

int thread_limit() { return omp_get_max_threads(); }

std::optional<int> thread_limit_from_env() {
  const char* raw = std::getenv("CONVEXRELAX_THREADS");
  if (raw == nullptr) return std::nullopt;
  std::string_view text(raw);
  int value = 0;
  auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || end != text.data() + text.size() || value < 0) {
    throw ConfigError("CONVEXRELAX_THREADS must be a nonnegative integer, got '" +
                      std::string(text) + "'");
  }
  return value;
}

SampleSummary summarize(std::span<const double> values) {
  SampleSummary out;
  if (values.empty()) return out;
  const double n = static_cast<double>(values.size());
  double sum = 0.0;
  for (double v : values) sum += v;
  out.mean = sum / n;
  if (values.size() < 2) return out;
  double ss = 0.0;
  for (double v : values) ss += (v - out.mean) * (v - out.mean);
  out.std_error = std::sqrt(ss / (n - 1.0)) / std::sqrt(n);
  return out;
}

}  // namespace convexrelax
