#include "spacesplit/response.hpp"

#include <cmath>

namespace spacesplit {

StableAccumulator::StableAccumulator(const Observable& J, long N, int batches)
    : J_(J), sums_(N, batches) {}

double StableAccumulator::add(const Point& x_n, const TangentFrame& frame) {
  const double sample = J_.gradient(x_n).dot(frame.v);
  sums_.add(sample);
  return sample;
}

UnstableAccumulator::UnstableAccumulator(std::vector<double> j_values, long N, int K,
                                         Centering centering, int batches)
    : j_(std::move(j_values)), N_(N), K_(K), per_k_(static_cast<std::size_t>(K), 0.0),
      sums_(N, batches) {
  if (K < 1) throw ConfigError("truncation K must be >= 1");
  if (static_cast<long>(j_.size()) < N + K - 1) {
    throw ConfigError("insufficient trajectory length for the lagged correlations");
  }
  if (centering == Centering::kCentered) {
    double total = 0.0;
    for (long n = 0; n < N; ++n) total += j_[static_cast<std::size_t>(n)];
    j_mean_ = total / static_cast<double>(N);
    for (double& j : j_) j -= j_mean_;
  }
}

double UnstableAccumulator::add(const TangentFrame& frame) {
  const long n = sums_.count();
  double row = 0.0;
  for (int k = 0; k < K_; ++k) {
    const double term = -j_[static_cast<std::size_t>(n + k)] * frame.c;
    per_k_[static_cast<std::size_t>(k)] += term;
    row += term;
  }
  sums_.add(row);
  return row;
}

UnstableEstimate UnstableAccumulator::result() const {
  UnstableEstimate out;
  const double count = static_cast<double>(std::max<long>(sums_.count(), 1));
  out.per_k_terms.resize(per_k_.size());
  for (std::size_t k = 0; k < per_k_.size(); ++k) out.per_k_terms[k] = per_k_[k] / count;
  // Summing the per-k terms (rather than the row means) keeps value == sum(per_k_terms).
  for (double t : out.per_k_terms) out.value += t;
  out.std_error = sums_.std_error();
  return out;
}

namespace {

void check_frames(std::span<const TangentFrame> frames, const Trajectory& trajectory) {
  if (frames.empty()) throw ConfigError("no tangent frames");
  if (static_cast<long>(frames.size()) > trajectory.length()) {
    throw ConfigError("more tangent frames than trajectory points");
  }
  if (frames.front().n != 0 || frames.back().n != static_cast<long>(frames.size()) - 1) {
    throw ConfigError("tangent frames are not aligned with trajectory indices 0..N-1");
  }
}

std::vector<double> observable_series(const Trajectory& trajectory, const Observable& J,
                                      long count) {
  std::vector<double> out(static_cast<std::size_t>(count));
  for (long n = 0; n < count; ++n) out[static_cast<std::size_t>(n)] = J.value(trajectory.point(n));
  return out;
}

}  // namespace

Estimate stable_contribution(std::span<const TangentFrame> frames, const Trajectory& trajectory,
                             const Observable& J) {
  check_frames(frames, trajectory);
  StableAccumulator acc(J, static_cast<long>(frames.size()));
  for (const auto& f : frames) acc.add(trajectory.point(f.n), f);
  return acc.result();
}

UnstableEstimate unstable_contribution(std::span<const TangentFrame> frames,
                                       const Trajectory& trajectory, const Observable& J, int K,
                                       Centering centering) {
  check_frames(frames, trajectory);
  if (K < 1) throw ConfigError("truncation K must be >= 1");
  const long N = static_cast<long>(frames.size());
  if (trajectory.length() < N + K - 1) {
    throw ConfigError("insufficient trajectory length for the lagged correlations");
  }
  UnstableAccumulator acc(observable_series(trajectory, J, N + K - 1), N, K, centering);
  for (const auto& f : frames) acc.add(f);
  return acc.result();
}

SensitivityResult s3_sensitivity(const MapModel& model, const ParamVector& s,
                                 const Perturbation& direction, const Observable& J,
                                 const S3Config& config) {
  model.check_params(s);
  if (config.N < 1) throw ConfigError("N must be >= 1");
  if (config.K < 1) throw ConfigError("K must be >= 1");
  if (config.runup < 0) throw ConfigError("runup must be >= 0");

  const Trajectory traj =
      generate_trajectory(model, s, config.seed, config.runup, config.N + config.K);

  StableAccumulator stable(J, config.N, config.batches);
  UnstableAccumulator unstable(observable_series(traj, J, config.N + config.K - 1), config.N,
                               config.K, config.centering, config.batches);
  BatchMeans joint(config.N, config.batches);
  run_tangent_stack(
      traj, model, s, direction, TangentOptions{},
      [&](const TangentFrame& f, const DiagnosticFrame*) {
        joint.add(stable.add(traj.point(f.n), f) + unstable.add(f));
      },
      config.N);

  const Estimate st = stable.result();
  const UnstableEstimate un = unstable.result();

  SensitivityResult r;
  r.s = s;
  r.direction = direction.weights();
  for (int k = 0; k < r.direction.size(); ++k) {
    if (r.direction == Perturbation::along(k, model.param_dim()).weights()) r.param_index = k;
  }
  r.K = config.K;
  r.N = config.N;
  r.runup = config.runup;
  r.seed = config.seed;
  r.stable = st.value;
  r.stderr_stable = st.std_error;
  r.unstable = un.value;
  r.stderr_unstable = un.std_error;
  r.stderr_total = joint.std_error();
  r.per_k_terms = un.per_k_terms;
  r.total = r.stable + r.unstable;
  return r;
}

SensitivityResult s3_sensitivity(const MapModel& model, const ParamVector& s, int param_index,
                                 const Observable& J, const S3Config& config) {
  model.check_param_index(param_index);
  return s3_sensitivity(model, s, Perturbation::along(param_index, model.param_dim()), J,
                        config);
}

DirectRuelleResult direct_ruelle_estimate(const MapModel& model, const ParamVector& s,
                                          const Perturbation& direction, const Observable& J,
                                          const DirectRuelleConfig& config) {
  model.check_params(s);
  if (config.ensemble < 2) throw ConfigError("direct Ruelle needs an ensemble of at least 2");
  if (config.K < 1) throw ConfigError("truncation K must be >= 1");
  if (config.runup < 0) throw ConfigError("runup must be >= 0");

  const auto K = static_cast<std::size_t>(config.K);
  std::vector<RunningStats> per_k(K);
  std::vector<double> terms(K);
  RunningStats total;

  for (long e = 0; e < config.ensemble; ++e) {
    Rng rng(derive_seed(config.seed, static_cast<std::uint64_t>(e)));
    Point x = model.sample_domain(rng);
    for (long i = 0; i < config.runup; ++i) x = model.apply(x, s);

    Vector u = Vector::Zero(model.dim());
    double prev = 0.0;
    for (std::size_t k = 0; k < K; ++k) {
      u = model.jacobian(x, s) * u + direction.velocity(model, x, s);
      x = model.apply(x, s);
      const double cur = J.gradient(x).dot(u);
      terms[k] = cur - prev;
      prev = cur;
    }
    if (!std::isfinite(prev)) throw InvalidStateError("direct Ruelle tangent overflowed");
    for (std::size_t k = 0; k < K; ++k) per_k[k].add(terms[k]);
    total.add(prev);
  }

  DirectRuelleResult r;
  r.per_k_mean.resize(K);
  r.per_k_variance.resize(K);
  for (std::size_t k = 0; k < K; ++k) {
    r.per_k_mean[k] = per_k[k].mean();
    r.per_k_variance[k] = per_k[k].variance();
  }
  r.value = total.mean();
  r.std_error = total.std_error();
  return r;
}

}  // namespace spacesplit
