#pragma once

#include <Eigen/Core>

#include <stdexcept>
#include <string>

namespace spacesplit {

/// Largest state or parameter dimension supported by the small-vector types.
/// Storage is inline (no heap traffic in the per-step recursions).
inline constexpr int kMaxDim = 8;

using Vector = Eigen::Matrix<double, Eigen::Dynamic, 1, Eigen::ColMajor, kMaxDim, 1>;
using Matrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::ColMajor,
                             kMaxDim, kMaxDim>;

/// A state x on the manifold M, in ambient coordinates.
using Point = Vector;

/// The parameter vector s of a map family.
using ParamVector = Vector;

/// Raised when a state holds NaN/inf or otherwise leaves the map's domain.
class InvalidStateError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when the unstable-direction power iteration collapses (||D q|| ~ 0).
class DegenerateTangentError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised for inconsistent inputs: wrong lengths, unknown names, bad counts.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

inline bool all_finite(const Vector& x) { return x.allFinite(); }

}  // namespace spacesplit
