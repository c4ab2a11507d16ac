#pragma once

#include "spacesplit/types.hpp"

#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace spacesplit {

/// A smooth scalar objective J on the state space and its gradient.
class Observable {
 public:
  virtual ~Observable() = default;
  virtual std::string_view name() const = 0;
  virtual double value(const Point& x) const = 0;
  virtual Vector gradient(const Point& x) const = 0;
};

/// J(x) = cos(freq * x_coord). The default is the Baker benchmark cos(4 x2).
class CosineObservable final : public Observable {
 public:
  CosineObservable(int coord = 1, double freq = 4.0);
  std::string_view name() const override { return name_; }
  double value(const Point& x) const override;
  Vector gradient(const Point& x) const override;

 private:
  int coord_;
  double freq_;
  std::string name_;
};

/// J(x) = level.
class ConstantObservable final : public Observable {
 public:
  explicit ConstantObservable(double level = 1.0) : level_(level) {}
  std::string_view name() const override { return "constant"; }
  double value(const Point&) const override { return level_; }
  Vector gradient(const Point& x) const override { return Vector::Zero(x.size()); }

 private:
  double level_;
};

/// "cos4x2" (default benchmark), "cos2x2", "cos4x1", "constant".
std::unique_ptr<Observable> make_observable(std::string_view name);
std::vector<std::string> observable_names();

}  // namespace spacesplit
