#pragma once

#include "spacesplit/types.hpp"

#include <cstdint>
#include <random>

namespace spacesplit {

/// 64-bit engine used everywhere a seed appears in a config or output.
using Rng = std::mt19937_64;

/// SplitMix64 finalizer; derives independent task seeds from a master seed.
std::uint64_t splitmix64(std::uint64_t x);

/// Seed for task `index` of a run seeded with `master`. Stable across builds.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index);

/// Uniform double in [0, 1) from the top 53 bits of one engine draw.
double uniform01(Rng& rng);

/// Uniformly distributed unit vector in R^dim (rejection from the cube).
Vector random_unit_vector(Rng& rng, int dim);

}  // namespace spacesplit
