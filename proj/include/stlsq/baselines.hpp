#pragma once

// Time-stepping references: Crank-Nicolson (order 2), classical RK4, and
// Picard iteration on the Duhamel formula.

#include <cstddef>
#include <functional>
#include <span>
#include <stdexcept>
#include <vector>

#include "stlsq/types.hpp"

namespace stlsq {

/// out = -i H(t) in, with H(t) self-adjoint. `in` and `out` never alias.
using Generator = std::function<void(double t, std::span<const cplx> in, std::span<cplx> out)>;

enum class SteppingMethod { CrankNicolson, RK4, Picard };

struct SteppedTrajectory {
  std::vector<double> times;
  std::vector<StateVector> states;
  SteppingMethod method = SteppingMethod::RK4;
};

/// Uniform grid t0, t0 + h, ..., t1 with `steps` steps.
std::vector<double> uniform_grid(double t0, double t1, std::size_t steps);

enum class CnCoefficients {
  EndpointAverage,  // H(t_n) on the explicit side, H(t_{n+1}) on the implicit side
  Midpoint,         // H(t_{n+1/2}) on both sides (Cayley transform, unitary)
};

struct CnOptions {
  CnCoefficients coefficients = CnCoefficients::EndpointAverage;
  double inner_tol = 1e-13;
  std::size_t inner_maxit = 500;
};

/// (I + i h/2 H(t_{n+1})) y_{n+1} = (I - i h/2 H(t_n)) y_n. The implicit
/// solve is a division for scalar states and CG on the normal equations
/// otherwise. Throws std::runtime_error if the inner solve stalls.
SteppedTrajectory crank_nicolson(const Generator& f, const StateVector& y0,
                                 std::span<const double> grid, const CnOptions& opts = {});

SteppedTrajectory rk4(const Generator& f, const StateVector& y0, std::span<const double> grid);

/// Evolution (i d/dt - H0 - B(t)) u = f(t) where H0 is diagonal, given by
/// its eigenvalues. B must be bounded and self-adjoint.
struct DuhamelProblem {
  Eigen::VectorXd free_symbol;
  std::function<void(double t, std::span<const cplx> in, std::span<cplx> out)> bounded;
  std::function<void(double t, std::span<cplx> out)> forcing;
};

struct PicardResult {
  SteppedTrajectory trajectory;
  /// max_n |u^{(m+1)}(t_n) - u^{(m)}(t_n)| per iteration.
  std::vector<double> increments;
};

class DivergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Iterates u <- e^{-itH0} u0 - i int_0^t e^{-i(t-s)H0} (f(s) + B(s) u(s)) ds
/// with the composite trapezoid rule on a uniform grid starting at t = 0.
/// The first iterate uses u = 0 inside the integral. Throws DivergenceError
/// after three consecutive increment increases.
PicardResult picard_duhamel(const DuhamelProblem& problem, const StateVector& u0,
                            std::span<const double> grid, std::size_t iters);

}  // namespace stlsq
