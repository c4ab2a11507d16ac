#include "spacesplit/tangent_stack.hpp"

#include "spacesplit/format.hpp"

#include <ostream>

namespace spacesplit {

DirectionStep step_unstable_direction(const Vector& q, const Matrix& D, double min_norm) {
  Vector dq = D * q;
  const double alpha = dq.norm();
  if (!(alpha >= min_norm)) {
    throw DegenerateTangentError("unstable direction collapsed: ||D q|| below tolerance");
  }
  return {dq / alpha, alpha};
}

RegularizedStep step_regularized_tangent(const Vector& v, const Matrix& D, const Vector& chi_next,
                                         const Vector& q_next) {
  Vector u = D * v + chi_next;
  const double a = q_next.dot(u);
  u -= a * q_next;
  return {std::move(u), a};
}

Vector step_p(const Vector& p, const Matrix& D, double alpha_next, const Vector& d2phi_qq) {
  return (d2phi_qq + D * p) / (alpha_next * alpha_next);
}

namespace {

// Shared part of both y recursions: (d2phi(q, v) + D y) / alpha' + dchi q'.
Vector y_source(const Vector& y, const YStepInputs& in) {
  return (in.d2phi_qv + in.D * y) / in.alpha_next + in.dchi_q;
}

}  // namespace

YStep step_y(const Vector& y, const YStepInputs& in) {
  Vector z = y_source(y, in) - in.a_next * in.p_next;
  const double c = z.dot(in.q_next) + in.v_next.dot(in.p_next);
  z -= c * in.q_next;
  return {std::move(z), c};
}

Vector step_w(const Vector& w, const Matrix& D, const Vector& q_next, double alpha_next,
              const Vector& d2phi_qq) {
  Vector r = (D * w + d2phi_qq) / (alpha_next * alpha_next);
  r -= q_next.dot(r) * q_next;
  return r;
}

double step_gamma(const Vector& w, const Matrix& D, const Vector& q_next, double alpha_next,
                  const Vector& d2phi_qq) {
  return q_next.dot(D * w + d2phi_qq) / alpha_next;
}

double step_g(double g, double alpha_next, double gamma_next) {
  return g / alpha_next - gamma_next / alpha_next;
}

BStep step_b(const Vector& y_w, const YStepInputs& in, const Vector& w_next) {
  Vector z = y_source(y_w, in) - in.a_next * w_next;
  const double b = z.dot(in.q_next) + in.v_next.dot(w_next);
  z -= b * in.q_next;
  return {std::move(z), b};
}

TangentStack::TangentStack(const MapModel& model, ParamVector s, Perturbation perturbation,
                           TangentOptions options)
    : model_(model),
      s_(std::move(s)),
      perturbation_(std::move(perturbation)),
      options_(options) {
  model_.check_params(s_);
  if (perturbation_.param_dim() != model_.param_dim()) {
    throw ConfigError("perturbation direction length does not match the model's parameters");
  }
}

void TangentStack::reset(long n0, const Vector& q0, const TangentInit& init) {
  const int m = model_.dim();
  auto pick = [m](const std::optional<Vector>& given) {
    if (!given) return Vector(Vector::Zero(m));
    if (given->size() != m) throw ConfigError("initial tangent vector has the wrong dimension");
    return *given;
  };
  if (q0.size() != m) throw ConfigError("initial direction has the wrong dimension");
  const double norm = q0.norm();
  if (!(norm > 0.0)) throw DegenerateTangentError("initial direction is zero");

  frame_ = TangentFrame{};
  frame_.n = n0;
  frame_.q = q0 / norm;
  frame_.v = pick(init.v);
  frame_.p = pick(init.p);
  frame_.y = pick(init.y);

  diag_ = DiagnosticFrame{};
  diag_.w = pick(init.w);
  diag_.y_w = pick(init.y_w);
  diag_.g = init.g;
}

void TangentStack::advance(const Point& x) {
  const Matrix D = model_.jacobian(x, s_);
  const Vector& q = frame_.q;
  const Vector& v = frame_.v;

  // Second-derivative terms use q_n, v_n before they are overwritten.
  const Vector d2_qq = model_.second_derivative(x, s_, q, q);
  const Vector d2_qv = model_.second_derivative(x, s_, q, v);
  const Vector chi_next = perturbation_.velocity(model_, x, s_);
  const Matrix dchi = perturbation_.mixed(model_, x, s_);

  auto [q_next, alpha_next] = step_unstable_direction(q, D, options_.min_expansion);
  // (d chi)_{n+1} q_{n+1} = (d_s dphi)_n dphi_n^{-1} q_{n+1} = (d_s dphi)_n q_n / alpha_{n+1}.
  const Vector dchi_q = dchi * q / alpha_next;
  auto [v_next, a_next] = step_regularized_tangent(v, D, chi_next, q_next);
  Vector p_next = step_p(frame_.p, D, alpha_next, d2_qq);

  const YStepInputs in{D, q_next, v_next, alpha_next, a_next, p_next, d2_qv, dchi_q};
  auto [y_next, c_next] = step_y(frame_.y, in);

  if (options_.diagnostics) {
    const double gamma_next = step_gamma(diag_.w, D, q_next, alpha_next, d2_qq);
    Vector w_next = step_w(diag_.w, D, q_next, alpha_next, d2_qq);
    auto [y_w_next, b_next] = step_b(diag_.y_w, in, w_next);
    diag_.g = step_g(diag_.g, alpha_next, gamma_next);
    diag_.gamma = gamma_next;
    diag_.w = std::move(w_next);
    diag_.y_w = std::move(y_w_next);
    diag_.b = b_next;
  }

  frame_.n += 1;
  frame_.q = std::move(q_next);
  frame_.alpha = alpha_next;
  frame_.v = std::move(v_next);
  frame_.a = a_next;
  frame_.p = std::move(p_next);
  frame_.y = std::move(y_next);
  frame_.c = c_next;
}

std::uint64_t direction_seed(std::uint64_t trajectory_seed) {
  return derive_seed(trajectory_seed, 0x7160u);
}

void run_tangent_stack(const Trajectory& trajectory, const MapModel& model,
                       const ParamVector& s, const Perturbation& perturbation,
                       const TangentOptions& options, const FrameSink& sink, long count,
                       const TangentInit& init) {
  if (trajectory.dim() != model.dim()) {
    throw ConfigError("trajectory dimension does not match the model");
  }
  if (count < 0) count = trajectory.length();
  if (count > trajectory.length()) {
    throw ConfigError("requested more tangent frames than trajectory points");
  }

  Vector q0;
  if (init.q) {
    q0 = *init.q;
  } else {
    Rng rng(direction_seed(trajectory.seed()));
    q0 = random_unit_vector(rng, model.dim());
  }

  TangentStack stack(model, s, perturbation, options);
  stack.reset(trajectory.first_index(), q0, init);
  const DiagnosticFrame* diag = options.diagnostics ? &stack.diagnostics() : nullptr;
  for (long n = trajectory.first_index(); n < count; ++n) {
    if (n >= 0) sink(stack.frame(), diag);
    if (n + 1 < count) stack.advance(trajectory.point(n));
  }
}

TangentRun collect_tangent_frames(const Trajectory& trajectory, const MapModel& model,
                                  const ParamVector& s, const Perturbation& perturbation,
                                  const TangentOptions& options, long count,
                                  const TangentInit& init) {
  TangentRun run;
  const long expected = count < 0 ? trajectory.length() : count;
  run.frames.reserve(static_cast<std::size_t>(expected));
  if (options.diagnostics) run.diagnostics.reserve(static_cast<std::size_t>(expected));
  run_tangent_stack(
      trajectory, model, s, perturbation, options,
      [&run](const TangentFrame& f, const DiagnosticFrame* d) {
        run.frames.push_back(f);
        if (d) run.diagnostics.push_back(*d);
      },
      count, init);
  return run;
}

void write_frame_csv_header(std::ostream& os, int dim, bool diagnostics) {
  auto vec = [&os, dim](const char* name) {
    for (int i = 1; i <= dim; ++i) os << ',' << name << i;
  };
  os << 'n';
  vec("q");
  os << ",alpha";
  vec("v");
  os << ",a";
  vec("p");
  vec("y");
  os << ",c";
  if (diagnostics) {
    vec("w");
    os << ",gamma,g,b";
  }
  os << '\n';
}

void write_frame_csv_row(std::ostream& os, const TangentFrame& f, const DiagnosticFrame* d) {
  auto vec = [&os](const Vector& x) {
    for (int i = 0; i < x.size(); ++i) os << ',' << format_double(x[i]);
  };
  auto num = [&os](double x) { os << ',' << format_double(x); };
  os << f.n;
  vec(f.q);
  num(f.alpha);
  vec(f.v);
  num(f.a);
  vec(f.p);
  vec(f.y);
  num(f.c);
  if (d) {
    vec(d->w);
    num(d->gamma);
    num(d->g);
    num(d->b);
  }
  os << '\n';
}

}  // namespace spacesplit
