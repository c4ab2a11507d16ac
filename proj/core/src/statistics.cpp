#include "spacesplit/statistics.hpp"

#include "spacesplit/types.hpp"

#include <cmath>

namespace spacesplit {

BatchMeans::BatchMeans(long length, int batches) : length_(length) {
  if (length < 1) throw ConfigError("batch means needs a series of length >= 1");
  if (batches < 2) throw ConfigError("batch means needs at least two batches");
  batches_ = static_cast<int>(std::min<long>(batches, length));
  batch_size_ = length / batches_;
  batch_means_.reserve(static_cast<std::size_t>(batches_));
}

void BatchMeans::add(double x) {
  total_ += x;
  batch_sum_ += x;
  ++count_;
  ++in_batch_;
  const bool last_batch = static_cast<int>(batch_means_.size()) == batches_ - 1;
  const long target = last_batch ? length_ - batch_size_ * (batches_ - 1) : batch_size_;
  if (in_batch_ == target) {
    batch_means_.push_back(batch_sum_ / static_cast<double>(in_batch_));
    batch_sum_ = 0.0;
    in_batch_ = 0;
  }
}

double BatchMeans::mean() const {
  return count_ == 0 ? 0.0 : total_ / static_cast<double>(count_);
}

double BatchMeans::std_error() const {
  const auto b = batch_means_.size();
  if (b < 2) return 0.0;
  return std::sqrt(variance(batch_means_) / static_cast<double>(b));
}

void RunningStats::add(double x) {
  ++n_;
  const double d = x - mean_;
  mean_ += d / static_cast<double>(n_);
  m2_ += d * (x - mean_);
}

double RunningStats::variance() const {
  return n_ < 2 ? 0.0 : m2_ / static_cast<double>(n_ - 1);
}

double RunningStats::std_error() const {
  return n_ < 1 ? 0.0 : std::sqrt(variance() / static_cast<double>(n_));
}

double mean(std::span<const double> xs) {
  if (xs.empty()) return 0.0;
  double s = 0.0;
  for (double x : xs) s += x;
  return s / static_cast<double>(xs.size());
}

double variance(std::span<const double> xs) {
  if (xs.size() < 2) return 0.0;
  const double m = mean(xs);
  double s = 0.0;
  for (double x : xs) s += (x - m) * (x - m);
  return s / static_cast<double>(xs.size() - 1);
}

double fit_slope(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size()) throw ConfigError("fit_slope: length mismatch");
  if (xs.size() < 2) throw ConfigError("fit_slope: need at least two points");
  const double mx = mean(xs);
  const double my = mean(ys);
  double sxy = 0.0;
  double sxx = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxy += (xs[i] - mx) * (ys[i] - my);
    sxx += (xs[i] - mx) * (xs[i] - mx);
  }
  if (sxx == 0.0) throw ConfigError("fit_slope: abscissae are all equal");
  return sxy / sxx;
}

}  // namespace spacesplit
