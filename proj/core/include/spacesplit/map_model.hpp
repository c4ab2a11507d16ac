#pragma once

#include "spacesplit/random.hpp"
#include "spacesplit/types.hpp"

#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace spacesplit {

/// A parameterized family of diffeomorphisms x -> phi_s(x) with hand-coded
/// first, second and mixed derivatives.
///
/// Parameter indices are zero-based here. Derivative methods take the point
/// x_n at which the map is applied, so parameter_velocity(x_n) is the
/// perturbation field attached to the image point x_{n+1}.
class MapModel {
 public:
  virtual ~MapModel() = default;

  virtual std::string_view name() const = 0;
  virtual int dim() const = 0;
  virtual int param_dim() const = 0;

  /// phi_s(x), reduced into the canonical domain.
  virtual Point apply(const Point& x, const ParamVector& s) const = 0;

  /// d(phi_s)_x, entry (i, j) = d phi_i / d x_j.
  virtual Matrix jacobian(const Point& x, const ParamVector& s) const = 0;

  /// The bilinear form d^2(phi_s)_x(u, v).
  virtual Vector second_derivative(const Point& x, const ParamVector& s, const Vector& u,
                                   const Vector& v) const = 0;

  /// d phi_s(x) / d s_k.
  virtual Vector parameter_velocity(const Point& x, const ParamVector& s, int k) const = 0;

  /// d/ds_k of the Jacobian at x.
  virtual Matrix mixed_derivative(const Point& x, const ParamVector& s, int k) const = 0;

  /// Draw a point uniformly (w.r.t. Lebesgue) from the domain.
  virtual Point sample_domain(Rng& rng) const = 0;

  /// Tangent displacement from `from` to `to`. Periodic domains return the
  /// minimal-image difference.
  virtual Vector displacement(const Point& from, const Point& to) const { return to - from; }

  /// Throws InvalidStateError unless x has dim() finite entries inside the domain.
  virtual void check_state(const Point& x) const;

  /// Throws ConfigError unless s has param_dim() finite entries.
  void check_params(const ParamVector& s) const;

  /// Throws ConfigError unless 0 <= k < param_dim().
  void check_param_index(int k) const;
};

/// Direction in parameter space along which a sensitivity is taken.
/// A single active parameter k is the unit direction e_k.
class Perturbation {
 public:
  /// Unit direction along parameter k (zero-based).
  static Perturbation along(int k, int param_dim);

  /// Arbitrary weights w, i.e. d/dt at s + t w.
  explicit Perturbation(Vector weights);

  const Vector& weights() const { return weights_; }
  int param_dim() const { return static_cast<int>(weights_.size()); }

  /// chi = sum_k w_k d phi / d s_k at x.
  Vector velocity(const MapModel& model, const Point& x, const ParamVector& s) const;

  /// sum_k w_k d/ds_k (d phi) at x.
  Matrix mixed(const MapModel& model, const Point& x, const ParamVector& s) const;

 private:
  Vector weights_;
  std::vector<int> active_;
};

/// Registered models by name ("baker"). Throws ConfigError for unknown names.
std::unique_ptr<MapModel> make_model(std::string_view name);
std::vector<std::string> model_names();

}  // namespace spacesplit
