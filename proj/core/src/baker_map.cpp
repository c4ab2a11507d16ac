#include "spacesplit/baker_map.hpp"

#include <cmath>

namespace spacesplit {

double BakerMap::wrap(double t) {
  double r = t - kTwoPi * std::floor(t / kTwoPi);
  // floor can leave r == 2pi after rounding when t is a hair below a multiple.
  if (r >= kTwoPi) r -= kTwoPi;
  if (r < 0.0) r = 0.0;
  return r;
}

void BakerMap::check_state(const Point& x) const {
  MapModel::check_state(x);
  for (int i = 0; i < 2; ++i) {
    if (x[i] < 0.0 || x[i] >= kTwoPi) {
      throw InvalidStateError("baker: coordinate outside [0, 2pi)");
    }
  }
}

Point BakerMap::apply(const Point& x, const ParamVector& s) const {
  if (!all_finite(x)) throw InvalidStateError("baker: non-finite state coordinate");
  const double x1 = x[0];
  const double x2 = x[1];
  const double sin1 = std::sin(x1);
  const double sin22 = std::sin(2.0 * x2);

  Point y(2);
  y[0] = wrap(2.0 * x1 + (s[0] + 0.5 * s[1] * sin22) * sin1);
  y[1] = wrap(0.5 * (x2 + (s[3] + s[2] * sin1) * sin22) + kPi * branch(x1));
  if (!std::isfinite(y[0] + y[1])) throw InvalidStateError("baker: non-finite image");
  return y;
}

Matrix BakerMap::jacobian(const Point& x, const ParamVector& s) const {
  const double sin1 = std::sin(x[0]);
  const double cos1 = std::cos(x[0]);
  const double sin22 = std::sin(2.0 * x[1]);
  const double cos22 = std::cos(2.0 * x[1]);
  const double amp1 = s[0] + 0.5 * s[1] * sin22;
  const double amp2 = s[3] + s[2] * sin1;

  Matrix d(2, 2);
  d(0, 0) = 2.0 + amp1 * cos1;
  d(0, 1) = s[1] * cos22 * sin1;
  d(1, 0) = 0.5 * s[2] * cos1 * sin22;
  d(1, 1) = 0.5 + amp2 * cos22;
  return d;
}

Vector BakerMap::second_derivative(const Point& x, const ParamVector& s, const Vector& u,
                                   const Vector& v) const {
  const double sin1 = std::sin(x[0]);
  const double cos1 = std::cos(x[0]);
  const double sin22 = std::sin(2.0 * x[1]);
  const double cos22 = std::cos(2.0 * x[1]);
  const double amp1 = s[0] + 0.5 * s[1] * sin22;
  const double amp2 = s[3] + s[2] * sin1;

  // Hessians of each output component.
  const double h0_11 = -amp1 * sin1;
  const double h0_12 = s[1] * cos22 * cos1;
  const double h0_22 = -2.0 * s[1] * sin22 * sin1;
  const double h1_11 = -0.5 * s[2] * sin1 * sin22;
  const double h1_12 = s[2] * cos1 * cos22;
  const double h1_22 = -2.0 * amp2 * sin22;

  const double uv11 = u[0] * v[0];
  const double uv12 = u[0] * v[1] + u[1] * v[0];
  const double uv22 = u[1] * v[1];

  Vector out(2);
  out[0] = h0_11 * uv11 + h0_12 * uv12 + h0_22 * uv22;
  out[1] = h1_11 * uv11 + h1_12 * uv12 + h1_22 * uv22;
  return out;
}

Vector BakerMap::parameter_velocity(const Point& x, const ParamVector& /*s*/, int k) const {
  check_param_index(k);
  const double sin1 = std::sin(x[0]);
  const double sin22 = std::sin(2.0 * x[1]);
  Vector chi = Vector::Zero(2);
  switch (k) {
    case 0: chi[0] = sin1; break;
    case 1: chi[0] = 0.5 * sin22 * sin1; break;
    case 2: chi[1] = 0.5 * sin1 * sin22; break;
    case 3: chi[1] = 0.5 * sin22; break;
  }
  return chi;
}

Matrix BakerMap::mixed_derivative(const Point& x, const ParamVector& /*s*/, int k) const {
  check_param_index(k);
  const double sin1 = std::sin(x[0]);
  const double cos1 = std::cos(x[0]);
  const double sin22 = std::sin(2.0 * x[1]);
  const double cos22 = std::cos(2.0 * x[1]);
  Matrix m = Matrix::Zero(2, 2);
  switch (k) {
    case 0:
      m(0, 0) = cos1;
      break;
    case 1:
      m(0, 0) = 0.5 * sin22 * cos1;
      m(0, 1) = cos22 * sin1;
      break;
    case 2:
      m(1, 0) = 0.5 * cos1 * sin22;
      m(1, 1) = sin1 * cos22;
      break;
    case 3:
      m(1, 1) = cos22;
      break;
  }
  return m;
}

Point BakerMap::sample_domain(Rng& rng) const {
  Point x(2);
  x[0] = wrap(kTwoPi * uniform01(rng));
  x[1] = wrap(kTwoPi * uniform01(rng));
  return x;
}

Vector BakerMap::displacement(const Point& from, const Point& to) const {
  Vector d = to - from;
  for (int i = 0; i < 2; ++i) d[i] -= kTwoPi * std::round(d[i] / kTwoPi);
  return d;
}

}  // namespace spacesplit
