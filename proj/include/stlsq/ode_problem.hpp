#pragma once

// Scalar model problem i u' = a cos(omega t) u, u(0) = eta0.

#include <cstddef>

#include "stlsq/baselines.hpp"
#include "stlsq/chebyshev.hpp"
#include "stlsq/lsq_core.hpp"

namespace stlsq {

struct CosineOde {
  double a = 5.0;
  double omega = 20.0;
  cplx eta0 = 1.0;
};

/// Affine map between a physical window [t0, t1] and the reference
/// interval [-1, 1].
struct TimeWindow {
  double t0 = -1.0;
  double t1 = 1.0;

  double half_width() const { return 0.5 * (t1 - t0); }
  double center() const { return 0.5 * (t0 + t1); }
  double to_physical(double s) const { return center() + half_width() * s; }
  double to_reference(double t) const { return (t - center()) / half_width(); }
};

/// eta0 exp(-i a sin(omega t) / omega); eta0 exp(-i a t) when omega = 0.
cplx exact_solution(const CosineOde& ode, double t);

/// Least-squares problem on the reference interval for the ODE posed on
/// `window` (which must contain t = 0, where the initial value sits).
LsqProblem build_problem(const CosineOde& ode, std::size_t K, std::size_t L,
                         TimeWindow window = {});

struct OdeSolution {
  ChebSeries series;  // first kind, reference variable
  SolveDiagnostics diagnostics;
};

OdeSolution solve(const CosineOde& ode, std::size_t K, std::size_t L, double cg_tol = 1e-12,
                  TimeWindow window = {});

/// E_w(u) = |u(0) - eta0|^2 + int w(s) |i u'(s) - B(s) u(s)|^2 ds on the
/// reference interval with the exact coefficient B (no collocation),
/// w(s) = sqrt(1 - s^2), by Gauss-Chebyshev quadrature with `nodes` points
/// (0 selects 2 K + 512).
double continuous_energy(const ChebSeries& u, const CosineOde& ode, std::size_t nodes = 0,
                         TimeWindow window = {});

/// max |u(t) - u*(t)| over `samples` uniformly spaced points of the window,
/// endpoints included.
double sup_error(const ChebSeries& u, const CosineOde& ode, std::size_t samples = 1000,
                 TimeWindow window = {});

/// -i a cos(omega t) y, for the time steppers.
Generator ode_generator(const CosineOde& ode);

/// Integrates from t = 0 to both ends of [-1, 1] with steps / 2 uniform
/// steps per side (steps even) and returns max |y_n - u*(t_n)| over all
/// grid nodes. Only CrankNicolson and RK4 are accepted.
double stepper_sup_error(const CosineOde& ode, SteppingMethod method, std::size_t steps);

}  // namespace stlsq
