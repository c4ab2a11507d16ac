#pragma once

#include "spacesplit/map_model.hpp"
#include "spacesplit/trajectory.hpp"

#include <functional>
#include <iosfwd>
#include <optional>
#include <vector>

namespace spacesplit {

/// Per-step state of the first- and second-order tangent recursions at x_n.
struct TangentFrame {
  long n = 0;
  Vector q;            ///< unit vector spanning the unstable direction
  double alpha = 0.0;  ///< one-step expansion ||D_{n-1} q_{n-1}||
  Vector v;            ///< regularized tangent solution, v . q = 0
  double a = 0.0;      ///< unstable coefficient removed from v
  Vector p;            ///< unprojected curvature recursion
  Vector y;            ///< unstable derivative of v, y . q = -v . p
  double c = 0.0;      ///< a g + b, weight of the unstable contribution
};

/// Quantities of the longer w/gamma/g/b route. Not needed for the response;
/// used to cross-check c and to inspect manifold curvature.
struct DiagnosticFrame {
  Vector w;            ///< curvature of the unstable manifold, w . q = 0
  double gamma = 0.0;  ///< unstable derivative of alpha
  double g = 0.0;      ///< unstable derivative of the log SRB density
  double b = 0.0;      ///< unstable derivative of a
  Vector y_w;          ///< y recomputed with w in place of p
};

// Single recursion steps. Inputs with suffix _next live at x_{n+1}; D is the
// Jacobian at x_n.

struct DirectionStep {
  Vector q;
  double alpha;
};
/// q' = D q / ||D q||, alpha' = ||D q||. Throws DegenerateTangentError if
/// ||D q|| < min_norm.
DirectionStep step_unstable_direction(const Vector& q, const Matrix& D, double min_norm = 1e-14);

struct RegularizedStep {
  Vector v;
  double a;
};
/// a' = q'.(D v + chi'), v' = D v + chi' - a' q'.
RegularizedStep step_regularized_tangent(const Vector& v, const Matrix& D, const Vector& chi_next,
                                         const Vector& q_next);

/// p' = (d2phi(q, q) + D p) / alpha'^2.
Vector step_p(const Vector& p, const Matrix& D, double alpha_next, const Vector& d2phi_qq);

struct YStepInputs {
  const Matrix& D;
  const Vector& q_next;
  const Vector& v_next;
  double alpha_next;
  double a_next;
  const Vector& p_next;
  const Vector& d2phi_qv;  ///< d2phi_n(q_n, v_n)
  const Vector& dchi_q;    ///< (d chi)_{n+1} q_{n+1}
};
struct YStep {
  Vector y;
  double c;
};
/// z = (d2phi(q, v) + D y) / alpha' + dchi q' - a' p'; c' makes y'.q' = -v'.p'.
YStep step_y(const Vector& y, const YStepInputs& in);

/// w' = (I - q'q'^T)(D w + d2phi(q, q)) / alpha'^2.
Vector step_w(const Vector& w, const Matrix& D, const Vector& q_next, double alpha_next,
              const Vector& d2phi_qq);

/// gamma' = q'.(D w + d2phi(q, q)) / alpha'.
double step_gamma(const Vector& w, const Matrix& D, const Vector& q_next, double alpha_next,
                  const Vector& d2phi_qq);

/// g' = g / alpha' - gamma' / alpha'.
double step_g(double g, double alpha_next, double gamma_next);

struct BStep {
  Vector y_w;
  double b;
};
/// y_w' = (d2phi(q, v) + D y_w) / alpha' + dchi q' - a' w' - b' q' with b'
/// chosen so that y_w'.q' = -v'.w'.
BStep step_b(const Vector& y_w, const YStepInputs& in, const Vector& w_next);

/// Optional overrides of the arbitrary initial values at n = -runup.
/// Unset fields default to: q random unit, all vectors zero, g = 0.
struct TangentInit {
  std::optional<Vector> q;
  std::optional<Vector> v;
  std::optional<Vector> p;
  std::optional<Vector> y;
  std::optional<Vector> w;
  std::optional<Vector> y_w;
  double g = 0.0;
};

struct TangentOptions {
  bool diagnostics = false;
  double min_expansion = 1e-14;
};

/// Steps all recursions along an orbit, one map application at a time.
class TangentStack {
 public:
  TangentStack(const MapModel& model, ParamVector s, Perturbation perturbation,
               TangentOptions options = {});

  /// Set the state at index n0 located at x_{n0}. `q0` must be nonzero.
  void reset(long n0, const Vector& q0, const TangentInit& init = {});

  /// Advance from x_n (the current index) to n + 1.
  void advance(const Point& x_n);

  const TangentFrame& frame() const { return frame_; }
  const DiagnosticFrame& diagnostics() const { return diag_; }
  bool has_diagnostics() const { return options_.diagnostics; }

 private:
  const MapModel& model_;
  ParamVector s_;
  Perturbation perturbation_;
  TangentOptions options_;
  TangentFrame frame_;
  DiagnosticFrame diag_;
};

/// Receives frames 0 ... count-1 in order. `diag` is null unless diagnostics
/// were requested.
using FrameSink = std::function<void(const TangentFrame& frame, const DiagnosticFrame* diag)>;

/// Runs the stack from x_{-runup} and streams frames for n = 0 ... count-1.
/// count < 0 means the whole trajectory. q at -runup is drawn from the
/// trajectory seed unless `init.q` is set.
void run_tangent_stack(const Trajectory& trajectory, const MapModel& model,
                       const ParamVector& s, const Perturbation& perturbation,
                       const TangentOptions& options, const FrameSink& sink, long count = -1,
                       const TangentInit& init = {});

struct TangentRun {
  std::vector<TangentFrame> frames;
  std::vector<DiagnosticFrame> diagnostics;  // empty unless requested
};

/// Retains every frame. Intended for tests and short orbits.
TangentRun collect_tangent_frames(const Trajectory& trajectory, const MapModel& model,
                                  const ParamVector& s, const Perturbation& perturbation,
                                  const TangentOptions& options = {}, long count = -1,
                                  const TangentInit& init = {});

/// Seed used for the random q at n = -runup of a trajectory with this seed.
std::uint64_t direction_seed(std::uint64_t trajectory_seed);

/// CSV `n,q1,q2,alpha,v1,v2,a,p1,p2,y1,y2,c[,w1,w2,gamma,g,b]` (vector
/// columns repeat per dimension).
void write_frame_csv_header(std::ostream& os, int dim, bool diagnostics);
void write_frame_csv_row(std::ostream& os, const TangentFrame& frame, const DiagnosticFrame* diag);

}  // namespace spacesplit
