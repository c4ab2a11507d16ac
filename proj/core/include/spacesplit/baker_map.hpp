#pragma once

#include "spacesplit/map_model.hpp"

#include <numbers>

namespace spacesplit {

/// Four-parameter perturbation of the Baker's map on the torus [0, 2pi)^2:
///
///   x1' = (2 x1 + (s1 + s2 sin(2 x2) / 2) sin x1)            mod 2pi
///   x2' = (x2 + (s4 + s3 sin x1) sin(2 x2)) / 2 + pi floor(x1 / pi)
///
/// At s = 0 this is the standard two-branch Baker's map (x2 expanded by 2
/// along x1, contracted by 1/2 along x2) with Lebesgue SRB measure.
/// s1 and s4 keep the stable/unstable directions axis aligned; s2 bends the
/// stable direction and s3 bends the unstable one.
class BakerMap final : public MapModel {
 public:
  static constexpr double kPi = std::numbers::pi;
  static constexpr double kTwoPi = 2.0 * std::numbers::pi;

  std::string_view name() const override { return "baker"; }
  int dim() const override { return 2; }
  int param_dim() const override { return 4; }

  Point apply(const Point& x, const ParamVector& s) const override;
  Matrix jacobian(const Point& x, const ParamVector& s) const override;
  Vector second_derivative(const Point& x, const ParamVector& s, const Vector& u,
                           const Vector& v) const override;
  Vector parameter_velocity(const Point& x, const ParamVector& s, int k) const override;
  Matrix mixed_derivative(const Point& x, const ParamVector& s, int k) const override;
  Point sample_domain(Rng& rng) const override;
  Vector displacement(const Point& from, const Point& to) const override;
  void check_state(const Point& x) const override;

  /// 0 on [0, pi), 1 on [pi, 2pi). The half-open branch owns its left edge.
  static int branch(double x1) { return x1 < kPi ? 0 : 1; }

  /// Reduce into [0, 2pi).
  static double wrap(double t);
};

}  // namespace spacesplit
