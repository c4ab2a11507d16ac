#pragma once

#include "spacesplit/map_model.hpp"
#include "spacesplit/observable.hpp"
#include "spacesplit/response.hpp"
#include "spacesplit/statistics.hpp"

#include <cstdint>
#include <iosfwd>
#include <span>
#include <utility>
#include <vector>

namespace spacesplit {

/// Sampling plan for brute-force ensemble averages of J.
struct EnsembleConfig {
  long orbits = 200;
  long orbit_length = 100000;
  long runup = 100;
  std::uint64_t seed = 0;
  int workers = 1;
};

/// <J> over `orbits` independent orbits; the error is the spread of the
/// per-orbit means. Orbit i is seeded with derive_seed(seed, i), so results
/// do not depend on the worker count.
Estimate ensemble_average(const MapModel& model, const ParamVector& s, const Observable& J,
                          const EnsembleConfig& config);

/// (<J>(s + delta w) - <J>(s - delta w)) / (2 delta), both sides sampled with
/// the same orbit seeds. delta may be negative but not zero.
Estimate central_difference(const MapModel& model, const ParamVector& s,
                            const Perturbation& direction, double delta, const Observable& J,
                            const EnsembleConfig& config);
Estimate central_difference(const MapModel& model, const ParamVector& s, int param_index,
                            double delta, const Observable& J, const EnsembleConfig& config);

/// <J> along the line s(t) = base + t w for t in a strictly increasing grid.
struct ResponseCurve {
  int param_index = -1;
  Vector direction;
  std::vector<double> grid;
  std::vector<double> means;
  std::vector<double> stderrs;
  long samples_per_point = 0;
};

ResponseCurve response_curve(const MapModel& model, const ParamVector& base,
                             const Perturbation& direction, std::span<const double> grid,
                             const Observable& J, const EnsembleConfig& config);

/// CSV `s,mean,stderr`.
void write_response_curve_csv(std::ostream& os, const ResponseCurve& curve);

/// Least-squares slope of log|error| against log N. Needs three or more points.
double convergence_slope(std::span<const std::pair<double, double>> n_and_error);

/// Slope of log|values[k]| over k in [lo, hi). Entries with |value| <= floor
/// count as zero and are skipped; if fewer than two remain the series is
/// treated as flat-zero and -infinity is returned.
double log_slope(std::span<const double> values, int lo, int hi, double floor = 0.0);

/// One S3-versus-finite-difference check.
struct OracleComparison {
  double s = 0.0;  ///< coordinate along the sweep direction
  double s3_total = 0.0;
  double s3_stderr = 0.0;
  double fd = 0.0;
  double fd_stderr = 0.0;
  double tol = 0.0;
  bool pass = false;
};

/// Tolerance 3 (stderr_S3 + stderr_FD) + rel_bias |FD|; rel_bias absorbs the
/// O(delta^2) curvature of the central difference.
OracleComparison compare_with_oracle(double t, const SensitivityResult& s3, const Estimate& fd,
                                     double rel_bias = 0.02);

/// Standard error of the S3 total: the joint batch-means error when present,
/// otherwise the (conservative) sum of the two parts.
double s3_total_stderr(const SensitivityResult& r);

}  // namespace spacesplit
