#pragma once

#include "spacesplit/map_model.hpp"
#include "spacesplit/observable.hpp"
#include "spacesplit/statistics.hpp"
#include "spacesplit/tangent_stack.hpp"
#include "spacesplit/trajectory.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace spacesplit {

/// Whether J is replaced by J - mean(J) inside the lagged correlations.
/// Centering leaves the N -> infinity limit unchanged and lowers variance.
enum class Centering { kCentered, kRaw };

struct UnstableEstimate {
  double value = 0.0;
  double std_error = 0.0;
  std::vector<double> per_k_terms;  ///< -(1/N) sum_n J_{n+k} c_n
};

/// Linear response split into its stable and unstable parts.
struct SensitivityResult {
  int param_index = -1;  ///< zero-based active parameter, -1 for a general direction
  ParamVector s;
  Vector direction;
  int K = 0;
  long N = 0;
  long runup = 0;
  std::uint64_t seed = 0;
  double stable = 0.0;
  double unstable = 0.0;
  double total = 0.0;
  double stderr_stable = 0.0;
  double stderr_unstable = 0.0;
  double stderr_total = 0.0;  ///< batch means of the joint per-step samples
  std::vector<double> per_k_terms;
};

/// Streaming (1/N) sum_n dJ(x_n) . v_n with batch-means error.
class StableAccumulator {
 public:
  StableAccumulator(const Observable& J, long N, int batches = BatchMeans::kDefaultBatches);
  /// Returns the sample dJ(x_n) . v_n.
  double add(const Point& x_n, const TangentFrame& frame);
  Estimate result() const { return sums_.estimate(); }

 private:
  const Observable& J_;
  BatchMeans sums_;
};

/// Streaming -sum_k (1/N) sum_n J_{n+k} c_n. `j_values[i]` holds J(x_i) for
/// i = 0 ... N+K-2.
class UnstableAccumulator {
 public:
  UnstableAccumulator(std::vector<double> j_values, long N, int K, Centering centering,
                      int batches = BatchMeans::kDefaultBatches);
  /// Returns the sample -sum_k J_{n+k} c_n for the next n.
  double add(const TangentFrame& frame);
  UnstableEstimate result() const;
  double j_mean() const { return j_mean_; }

 private:
  std::vector<double> j_;
  long N_;
  int K_;
  double j_mean_ = 0.0;
  std::vector<double> per_k_;
  BatchMeans sums_;
};

/// Stable contribution from retained frames aligned with x_0 ... x_{N-1}.
Estimate stable_contribution(std::span<const TangentFrame> frames, const Trajectory& trajectory,
                             const Observable& J);

/// Unstable contribution; the trajectory must reach index N+K-2.
UnstableEstimate unstable_contribution(std::span<const TangentFrame> frames,
                                       const Trajectory& trajectory, const Observable& J, int K,
                                       Centering centering = Centering::kCentered);

struct S3Config {
  long runup = 100;
  long N = 500000;
  int K = 11;
  std::uint64_t seed = 0;
  Centering centering = Centering::kCentered;
  int batches = BatchMeans::kDefaultBatches;
};

/// Trajectory -> tangent stack -> both contributions. Deterministic in the seed.
SensitivityResult s3_sensitivity(const MapModel& model, const ParamVector& s,
                                 const Perturbation& direction, const Observable& J,
                                 const S3Config& config);
SensitivityResult s3_sensitivity(const MapModel& model, const ParamVector& s, int param_index,
                                 const Observable& J, const S3Config& config);

struct DirectRuelleConfig {
  int K = 8;
  long ensemble = 10000;
  std::uint64_t seed = 0;
  long runup = 100;
};

struct DirectRuelleResult {
  double value = 0.0;       ///< sum over k < K of the ensemble-mean terms
  double std_error = 0.0;   ///< standard error of `value` across members
  std::vector<double> per_k_mean;
  std::vector<double> per_k_variance;
};

/// Ruelle's series evaluated term by term with the conventional tangent
/// u_{n+1} = D_n u_n + chi_{n+1}, u_0 = 0. Term k of one member is the
/// increment dJ(x_{k+1}) . u_{k+1} - dJ(x_k) . u_k. Variances grow like
/// exp(2 lambda_1 k).
DirectRuelleResult direct_ruelle_estimate(const MapModel& model, const ParamVector& s,
                                          const Perturbation& direction, const Observable& J,
                                          const DirectRuelleConfig& config);

}  // namespace spacesplit
