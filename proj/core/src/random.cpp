#include "spacesplit/random.hpp"

#include <cmath>

namespace spacesplit {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
  return splitmix64(splitmix64(master) ^ (index + 0x632be59bd9b4e019ULL));
}

double uniform01(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

Vector random_unit_vector(Rng& rng, int dim) {
  Vector u(dim);
  while (true) {
    for (int i = 0; i < dim; ++i) u[i] = 2.0 * uniform01(rng) - 1.0;
    const double r2 = u.squaredNorm();
    if (r2 <= 1.0 && r2 > 1e-6) return u / std::sqrt(r2);
  }
}

}  // namespace spacesplit
