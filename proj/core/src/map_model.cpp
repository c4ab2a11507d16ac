#include "spacesplit/map_model.hpp"

#include "spacesplit/baker_map.hpp"

#include <cmath>
#include <sstream>

namespace spacesplit {

void MapModel::check_state(const Point& x) const {
  if (x.size() != dim()) {
    std::ostringstream os;
    os << name() << ": state has " << x.size() << " coordinates, expected " << dim();
    throw InvalidStateError(os.str());
  }
  if (!all_finite(x)) {
    throw InvalidStateError(std::string(name()) + ": non-finite state coordinate");
  }
}

void MapModel::check_params(const ParamVector& s) const {
  if (s.size() != param_dim()) {
    std::ostringstream os;
    os << name() << ": parameter vector has " << s.size() << " entries, expected "
       << param_dim();
    throw ConfigError(os.str());
  }
  if (!all_finite(s)) throw ConfigError(std::string(name()) + ": non-finite parameter");
}

void MapModel::check_param_index(int k) const {
  if (k < 0 || k >= param_dim()) {
    std::ostringstream os;
    os << name() << ": parameter index " << k << " out of range [0, " << param_dim() << ")";
    throw ConfigError(os.str());
  }
}

Perturbation Perturbation::along(int k, int param_dim) {
  if (param_dim < 1 || param_dim > kMaxDim || k < 0 || k >= param_dim) {
    throw ConfigError("parameter index out of range");
  }
  Vector w = Vector::Zero(param_dim);
  w[k] = 1.0;
  return Perturbation(std::move(w));
}

Perturbation::Perturbation(Vector weights) : weights_(std::move(weights)) {
  if (weights_.size() < 1) throw ConfigError("empty perturbation direction");
  if (!all_finite(weights_)) throw ConfigError("non-finite perturbation direction");
  for (int k = 0; k < weights_.size(); ++k) {
    if (weights_[k] != 0.0) active_.push_back(k);
  }
}

Vector Perturbation::velocity(const MapModel& model, const Point& x,
                              const ParamVector& s) const {
  Vector chi = Vector::Zero(model.dim());
  for (int k : active_) chi += weights_[k] * model.parameter_velocity(x, s, k);
  return chi;
}

Matrix Perturbation::mixed(const MapModel& model, const Point& x, const ParamVector& s) const {
  Matrix m = Matrix::Zero(model.dim(), model.dim());
  for (int k : active_) m += weights_[k] * model.mixed_derivative(x, s, k);
  return m;
}

std::unique_ptr<MapModel> make_model(std::string_view name) {
  if (name == "baker") return std::make_unique<BakerMap>();
  throw ConfigError("unknown map '" + std::string(name) + "'");
}

std::vector<std::string> model_names() { return {"baker"}; }

}  // namespace spacesplit
