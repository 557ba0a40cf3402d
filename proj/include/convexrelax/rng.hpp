#pragma once

#include <Eigen/Core>

#include <cstdint>
#include <random>

namespace convexrelax {

using Engine = std::mt19937_64;

// Stream tags keep the substreams of one experiment disjoint: the signal drawn
// for trial t never shares randomness with the noise of trial t.
enum class Stream : std::uint64_t {
  cone_draw = 1,
  signal = 2,
  noise = 3,
  search = 4,
  sphere = 5,
};

// Counter-based seed derivation. The value depends only on its arguments, so
// draw i of an experiment is the same whichever thread computes it.
std::uint64_t derive_seed(std::uint64_t seed, Stream stream, std::uint64_t index);
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

Engine make_engine(std::uint64_t seed, Stream stream, std::uint64_t index);

Eigen::VectorXd standard_normal(Engine& engine, Eigen::Index dim);

}  // namespace convexrelax
