#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

namespace spacesplit {

/// A sample-mean estimate and its standard error.
struct Estimate {
  double value = 0.0;
  double std_error = 0.0;
};

/// Streaming batch-means accumulator for a correlated series of known length.
///
/// The series x_0 ... x_{n-1} is cut into `batches` contiguous blocks (the
/// last one absorbs the remainder); the standard error of the overall mean is
/// the spread of the block means divided by sqrt(batches). Series shorter than
/// `batches` fall back to one sample per block.
class BatchMeans {
 public:
  static constexpr int kDefaultBatches = 30;

  explicit BatchMeans(long length, int batches = kDefaultBatches);

  void add(double x);

  long count() const { return count_; }
  double mean() const;
  double std_error() const;
  Estimate estimate() const { return {mean(), std_error()}; }

 private:
  long length_;
  int batches_;
  long batch_size_;
  long count_ = 0;
  long in_batch_ = 0;
  double total_ = 0.0;
  double batch_sum_ = 0.0;
  std::vector<double> batch_means_;
};

/// Welford mean/variance of independent samples.
class RunningStats {
 public:
  void add(double x);
  long count() const { return n_; }
  double mean() const { return mean_; }
  double variance() const;  ///< unbiased; 0 for fewer than two samples
  double std_error() const;  ///< sqrt(variance / count)

 private:
  long n_ = 0;
  double mean_ = 0.0;
  double m2_ = 0.0;
};

/// Sample mean and unbiased variance (n - 1 denominator; 0 for n < 2).
double mean(std::span<const double> xs);
double variance(std::span<const double> xs);

/// Least-squares slope of ys against xs. Requires at least two points.
double fit_slope(std::span<const double> xs, std::span<const double> ys);

}  // namespace spacesplit
