#include "spacesplit/validation.hpp"

#include "spacesplit/format.hpp"
#include "spacesplit/random.hpp"

#include <atomic>
#include <cmath>
#include <limits>
#include <ostream>
#include <thread>

namespace spacesplit {

namespace {

double orbit_mean(const MapModel& model, const ParamVector& s, const Observable& J,
                  const EnsembleConfig& config, long orbit) {
  Rng rng(derive_seed(config.seed, static_cast<std::uint64_t>(orbit)));
  Point x = model.sample_domain(rng);
  for (long i = 0; i < config.runup; ++i) x = model.apply(x, s);
  double sum = 0.0;
  for (long n = 0; n < config.orbit_length; ++n) {
    sum += J.value(x);
    if (n + 1 < config.orbit_length) x = model.apply(x, s);
  }
  if (!std::isfinite(sum)) throw InvalidStateError("ensemble orbit produced a non-finite value");
  return sum / static_cast<double>(config.orbit_length);
}

void check_ensemble(const EnsembleConfig& c) {
  if (c.orbits < 1) throw ConfigError("ensemble needs at least one orbit");
  if (c.orbit_length < 1) throw ConfigError("orbit length must be >= 1");
  if (c.runup < 0) throw ConfigError("runup must be >= 0");
}

}  // namespace

Estimate ensemble_average(const MapModel& model, const ParamVector& s, const Observable& J,
                          const EnsembleConfig& config) {
  model.check_params(s);
  check_ensemble(config);

  std::vector<double> means(static_cast<std::size_t>(config.orbits));
  const int workers = std::max(1, std::min<int>(config.workers, static_cast<int>(config.orbits)));
  if (workers == 1) {
    for (long i = 0; i < config.orbits; ++i) {
      means[static_cast<std::size_t>(i)] = orbit_mean(model, s, J, config, i);
    }
  } else {
    std::atomic<long> next{0};
    std::exception_ptr failure;
    std::atomic<bool> failed{false};
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        try {
          for (long i = next++; i < config.orbits && !failed; i = next++) {
            means[static_cast<std::size_t>(i)] = orbit_mean(model, s, J, config, i);
          }
        } catch (...) {
          if (!failed.exchange(true)) failure = std::current_exception();
        }
      });
    }
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
  }

  RunningStats stats;
  for (double m : means) stats.add(m);
  return {stats.mean(), stats.std_error()};
}

Estimate central_difference(const MapModel& model, const ParamVector& s,
                            const Perturbation& direction, double delta, const Observable& J,
                            const EnsembleConfig& config) {
  if (delta == 0.0 || !std::isfinite(delta)) throw ConfigError("finite-difference step must be nonzero");
  if (direction.param_dim() != model.param_dim()) {
    throw ConfigError("perturbation direction length does not match the model's parameters");
  }
  const ParamVector plus = s + delta * direction.weights();
  const ParamVector minus = s - delta * direction.weights();
  const Estimate hi = ensemble_average(model, plus, J, config);
  const Estimate lo = ensemble_average(model, minus, J, config);
  return {(hi.value - lo.value) / (2.0 * delta),
          std::hypot(hi.std_error, lo.std_error) / (2.0 * std::abs(delta))};
}

Estimate central_difference(const MapModel& model, const ParamVector& s, int param_index,
                            double delta, const Observable& J, const EnsembleConfig& config) {
  model.check_param_index(param_index);
  return central_difference(model, s, Perturbation::along(param_index, model.param_dim()), delta,
                            J, config);
}

ResponseCurve response_curve(const MapModel& model, const ParamVector& base,
                             const Perturbation& direction, std::span<const double> grid,
                             const Observable& J, const EnsembleConfig& config) {
  if (grid.empty()) throw ConfigError("response curve grid is empty");
  for (std::size_t i = 1; i < grid.size(); ++i) {
    if (!(grid[i] > grid[i - 1])) throw ConfigError("response curve grid must be strictly increasing");
  }
  ResponseCurve curve;
  curve.direction = direction.weights();
  for (int k = 0; k < model.param_dim(); ++k) {
    if (curve.direction == Perturbation::along(k, model.param_dim()).weights()) curve.param_index = k;
  }
  curve.samples_per_point = config.orbits * config.orbit_length;
  for (double t : grid) {
    const Estimate e = ensemble_average(model, base + t * direction.weights(), J, config);
    curve.grid.push_back(t);
    curve.means.push_back(e.value);
    curve.stderrs.push_back(e.std_error);
  }
  return curve;
}

void write_response_curve_csv(std::ostream& os, const ResponseCurve& curve) {
  os << "s,mean,stderr\n";
  for (std::size_t i = 0; i < curve.grid.size(); ++i) {
    os << format_double(curve.grid[i]) << ',' << format_double(curve.means[i]) << ','
       << format_double(curve.stderrs[i]) << '\n';
  }
}

double convergence_slope(std::span<const std::pair<double, double>> n_and_error) {
  if (n_and_error.size() < 3) throw ConfigError("convergence slope needs at least three points");
  std::vector<double> xs;
  std::vector<double> ys;
  for (const auto& [n, err] : n_and_error) {
    if (!(n > 0.0) || !(std::abs(err) > 0.0)) {
      throw ConfigError("convergence slope needs positive N and nonzero errors");
    }
    xs.push_back(std::log(n));
    ys.push_back(std::log(std::abs(err)));
  }
  return fit_slope(xs, ys);
}

double log_slope(std::span<const double> values, int lo, int hi, double floor) {
  hi = std::min<int>(hi, static_cast<int>(values.size()));
  std::vector<double> xs;
  std::vector<double> ys;
  for (int k = std::max(lo, 0); k < hi; ++k) {
    const double v = std::abs(values[static_cast<std::size_t>(k)]);
    if (v > floor) {
      xs.push_back(k);
      ys.push_back(std::log(v));
    }
  }
  if (xs.size() < 2) return -std::numeric_limits<double>::infinity();
  return fit_slope(xs, ys);
}

double s3_total_stderr(const SensitivityResult& r) {
  if (r.stderr_total > 0.0) return r.stderr_total;
  return r.stderr_stable + r.stderr_unstable;
}

OracleComparison compare_with_oracle(double t, const SensitivityResult& s3, const Estimate& fd,
                                     double rel_bias) {
  OracleComparison c;
  c.s = t;
  c.s3_total = s3.total;
  c.s3_stderr = s3_total_stderr(s3);
  c.fd = fd.value;
  c.fd_stderr = fd.std_error;
  c.tol = 3.0 * (c.s3_stderr + c.fd_stderr) + rel_bias * std::abs(fd.value);
  c.pass = std::abs(c.s3_total - c.fd) <= c.tol;
  return c;
}

}  // namespace spacesplit
