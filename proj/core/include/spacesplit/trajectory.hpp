#pragma once

#include "spacesplit/map_model.hpp"

#include <cstdint>
#include <iosfwd>
#include <vector>

namespace spacesplit {

/// An orbit x_{-runup}, ..., x_{length-1} of one map at fixed parameters.
/// Points are stored contiguously; index n may be negative down to -runup.
class Trajectory {
 public:
  Trajectory(int dim, long runup, long length, std::uint64_t seed);

  int dim() const { return dim_; }
  long runup() const { return runup_; }
  long length() const { return length_; }
  std::uint64_t seed() const { return seed_; }

  /// First stored index (-runup) and one past the last (length).
  long first_index() const { return -runup_; }
  long end_index() const { return length_; }

  Eigen::Map<const Eigen::VectorXd> operator[](long n) const {
    return Eigen::Map<const Eigen::VectorXd>(data_.data() + offset(n), dim_);
  }
  Point point(long n) const { return Point((*this)[n]); }

  void set(long n, const Point& x);

 private:
  std::size_t offset(long n) const { return static_cast<std::size_t>(n + runup_) * dim_; }

  int dim_;
  long runup_;
  long length_;
  std::uint64_t seed_;
  std::vector<double> data_;
};

/// Draw x_{-runup} uniformly on the domain from `seed` and iterate phi_s.
/// Throws InvalidStateError if the orbit produces a non-finite state.
Trajectory generate_trajectory(const MapModel& model, const ParamVector& s,
                               std::uint64_t seed, long runup, long length);

/// Same orbit, starting from a given x_{-runup}.
Trajectory generate_trajectory_from(const MapModel& model, const ParamVector& s,
                                    const Point& start, long runup, long length,
                                    std::uint64_t seed = 0);

/// Row-major bin probabilities over [lo, hi)^2 built from x_0 ... x_{N-1}.
struct Histogram2D {
  int bins_x = 0;
  int bins_y = 0;
  double lo = 0.0;
  double hi = 0.0;
  std::vector<double> probability;  // index = ix * bins_y + iy

  double at(int ix, int iy) const { return probability[static_cast<std::size_t>(ix) * bins_y + iy]; }
};

/// Occupancy histogram over the Baker torus [0, 2pi)^2. Requires dim() == 2.
Histogram2D srb_histogram(const Trajectory& trajectory, int bins_x, int bins_y);

/// CSV `n,x1,...,xm`, one row per stored index starting at -runup.
void write_trajectory_csv(std::ostream& os, const Trajectory& trajectory);

/// CSV `ix,iy,x1_lo,x2_lo,probability`.
void write_histogram_csv(std::ostream& os, const Histogram2D& histogram);

}  // namespace spacesplit
