#include "spacesplit/trajectory.hpp"

#include "spacesplit/baker_map.hpp"
#include "spacesplit/format.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

namespace spacesplit {

Trajectory::Trajectory(int dim, long runup, long length, std::uint64_t seed)
    : dim_(dim), runup_(runup), length_(length), seed_(seed) {
  if (dim < 1 || dim > kMaxDim) throw ConfigError("trajectory dimension out of range");
  if (runup < 0) throw ConfigError("runup must be >= 0");
  if (length < 1) throw ConfigError("trajectory length must be >= 1");
  data_.resize(static_cast<std::size_t>(runup + length) * dim);
}

void Trajectory::set(long n, const Point& x) {
  std::copy(x.data(), x.data() + dim_, data_.begin() + static_cast<std::ptrdiff_t>(offset(n)));
}

Trajectory generate_trajectory_from(const MapModel& model, const ParamVector& s,
                                    const Point& start, long runup, long length,
                                    std::uint64_t seed) {
  model.check_params(s);
  model.check_state(start);
  Trajectory traj(model.dim(), runup, length, seed);
  Point x = start;
  traj.set(-runup, x);
  for (long n = -runup + 1; n < length; ++n) {
    x = model.apply(x, s);
    if (!all_finite(x)) throw InvalidStateError("trajectory produced a non-finite state");
    traj.set(n, x);
  }
  return traj;
}

Trajectory generate_trajectory(const MapModel& model, const ParamVector& s,
                               std::uint64_t seed, long runup, long length) {
  Rng rng(seed);
  const Point start = model.sample_domain(rng);
  return generate_trajectory_from(model, s, start, runup, length, seed);
}

Histogram2D srb_histogram(const Trajectory& trajectory, int bins_x, int bins_y) {
  if (trajectory.dim() != 2) throw ConfigError("srb_histogram requires a 2-D trajectory");
  if (bins_x < 1 || bins_y < 1) throw ConfigError("histogram needs at least one bin per axis");

  Histogram2D h;
  h.bins_x = bins_x;
  h.bins_y = bins_y;
  h.lo = 0.0;
  h.hi = BakerMap::kTwoPi;
  std::vector<long> counts(static_cast<std::size_t>(bins_x) * bins_y, 0);
  const double width = h.hi - h.lo;
  for (long n = 0; n < trajectory.length(); ++n) {
    const auto x = trajectory[n];
    int ix = static_cast<int>(std::floor((x[0] - h.lo) / width * bins_x));
    int iy = static_cast<int>(std::floor((x[1] - h.lo) / width * bins_y));
    ix = std::clamp(ix, 0, bins_x - 1);
    iy = std::clamp(iy, 0, bins_y - 1);
    ++counts[static_cast<std::size_t>(ix) * bins_y + iy];
  }
  h.probability.resize(counts.size());
  const double total = static_cast<double>(trajectory.length());
  for (std::size_t i = 0; i < counts.size(); ++i) {
    h.probability[i] = static_cast<double>(counts[i]) / total;
  }
  return h;
}

void write_trajectory_csv(std::ostream& os, const Trajectory& trajectory) {
  os << "n";
  for (int i = 0; i < trajectory.dim(); ++i) os << ",x" << (i + 1);
  os << '\n';
  for (long n = trajectory.first_index(); n < trajectory.end_index(); ++n) {
    os << n;
    const auto x = trajectory[n];
    for (int i = 0; i < trajectory.dim(); ++i) os << ',' << format_double(x[i]);
    os << '\n';
  }
}

void write_histogram_csv(std::ostream& os, const Histogram2D& h) {
  os << "ix,iy,x1_lo,x2_lo,probability\n";
  const double wx = (h.hi - h.lo) / h.bins_x;
  const double wy = (h.hi - h.lo) / h.bins_y;
  for (int ix = 0; ix < h.bins_x; ++ix) {
    for (int iy = 0; iy < h.bins_y; ++iy) {
      os << ix << ',' << iy << ',' << format_double(h.lo + ix * wx) << ','
         << format_double(h.lo + iy * wy) << ',' << format_double(h.at(ix, iy)) << '\n';
    }
  }
}

}  // namespace spacesplit
