#pragma once

#include <cstdint>
#include <exception>
#include <optional>
#include <span>
#include <vector>

namespace convexrelax {

// Upper bound on OpenMP workers used by the Monte-Carlo kernels. 0 = let the
// runtime decide.
void set_thread_limit(int threads);
int thread_limit();

/// Reads CONVEXRELAX_THREADS (0 = auto). Returns nullopt when unset; throws
/// ConfigError on anything that does not parse as a nonnegative integer.
std::optional<int> thread_limit_from_env();

/// Runs body(i) for i in [0, n) across OpenMP workers. An exception thrown by
/// any iteration is rethrown after the loop; when several throw, the one with
/// the lowest index wins so failures are schedule-independent.
template <class Body>
void parallel_for(std::int64_t n, Body&& body) {
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(n > 0 ? n : 0));
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t i = 0; i < n; ++i) {
    try {
      body(i);
    } catch (...) {
      errors[static_cast<std::size_t>(i)] = std::current_exception();
    }
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

template <class Body>
void serial_for(std::int64_t n, Body&& body) {
  for (std::int64_t i = 0; i < n; ++i) body(i);
}

struct SampleSummary {
  double mean = 0.0;
  double std_error = 0.0;
};

/// Mean and standard error (sample std / sqrt(n)), accumulated in index order.
SampleSummary summarize(std::span<const double> values);

}  // namespace convexrelax
