#include "spacesplit/observable.hpp"

#include <cmath>

namespace spacesplit {

CosineObservable::CosineObservable(int coord, double freq) : coord_(coord), freq_(freq) {
  if (coord < 0 || coord >= kMaxDim) throw ConfigError("observable coordinate out of range");
  const double rounded = std::round(freq);
  name_ = "cos" + (rounded == freq ? std::to_string(static_cast<long>(rounded)) : std::to_string(freq)) +
          "x" + std::to_string(coord + 1);
}

double CosineObservable::value(const Point& x) const { return std::cos(freq_ * x[coord_]); }

Vector CosineObservable::gradient(const Point& x) const {
  Vector g = Vector::Zero(x.size());
  g[coord_] = -freq_ * std::sin(freq_ * x[coord_]);
  return g;
}

std::unique_ptr<Observable> make_observable(std::string_view name) {
  if (name == "cos4x2") return std::make_unique<CosineObservable>(1, 4.0);
  if (name == "cos2x2") return std::make_unique<CosineObservable>(1, 2.0);
  if (name == "cos4x1") return std::make_unique<CosineObservable>(0, 4.0);
  if (name == "constant") return std::make_unique<ConstantObservable>(1.0);
  throw ConfigError("unknown observable '" + std::string(name) + "'");
}

std::vector<std::string> observable_names() { return {"cos4x2", "cos2x2", "cos4x1", "constant"}; }

}  // namespace spacesplit
