#pragma once

// Periodic Schrodinger equation on the 2-torus, restricted to the Fourier
// space of size N and rescaled from (-tau, tau) to (-1, 1):
//
//   i u' = tau (-Delta + pi_N V(t tau) pi_N) u,   u(0) = pi_N u0.
//
// It is solved in the interaction picture v(t) = e^{-i t tau Delta} u(t),
// i v' = tau S(t) v with S the skewed potential, which is bounded.

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "stlsq/baselines.hpp"
#include "stlsq/lsq_core.hpp"
#include "stlsq/torus_fourier.hpp"

namespace stlsq {

struct PeriodicSchrodinger {
  int N = 16;
  double tau = 0.5;
  MovingCosinePotential pot;
  FourierField2D u0;

  void validate() const;
};

/// Normalized coefficients proportional to exp(-(k^2 + l^2) / sigma^2),
/// sigma = N / 8 unless given.
FourierField2D default_initial_datum(int N, double sigma = 0.0);

/// Problem with the defaults used by the experiments (Gaussian u0).
PeriodicSchrodinger make_periodic_schrodinger(int N, double tau, MovingCosinePotential pot = {});

/// Right-hand side -i tau S(t) v of the interaction-picture equation.
Generator interaction_generator(const PeriodicSchrodinger& p);

LsqProblem build_problem(const PeriodicSchrodinger& p, std::size_t K, std::size_t L = 0);

struct InteractionSolution {
  int N = 0;
  SpaceTimeCoefficients v_coeffs;  // K rows, N*N columns
  SolveDiagnostics diagnostics;

  /// v(t) for |t| <= 1.
  FourierField2D at(double t) const;
};

/// Cosine-transform collocation by default: K in the hundreds is typical here.
InteractionSolution solve(const PeriodicSchrodinger& p, std::size_t K, std::size_t L = 0,
                          double cg_tol = 1e-12, std::size_t cg_maxit = 0,
                          TransformMode transform = TransformMode::Fast);

/// u_N(t) = e^{i t tau Delta} v(t).
FourierField2D to_schrodinger_picture(const InteractionSolution& sol,
                                      const PeriodicSchrodinger& p, double t);

class OracleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ReferenceSolution {
  std::vector<double> times;
  std::vector<FourierField2D> states;  // interaction picture
  /// max over samples of the difference between `steps` and 2 * `steps` runs.
  double richardson_gap = 0.0;
};

/// RK4 in the interaction picture from t = 0 towards every sample in
/// [-1, 1], with at most 2 / steps per step. Run at `steps` and 2 * `steps`;
/// the finer run is returned. Throws OracleError if the two runs differ by
/// more than `tol` at any sample.
ReferenceSolution reference_solution(const PeriodicSchrodinger& p,
                                     std::span<const double> t_samples,
                                     std::size_t steps = std::size_t{1} << 16, double tol = 1e-9);

/// Interaction-picture trajectory of a stepper over [-1, 1], integrated from
/// t = 0 in both directions with steps/2 steps each; `steps` must be even.
/// Returned times increase from -1 to 1.
SteppedTrajectory integrate_interaction(const PeriodicSchrodinger& p, SteppingMethod method,
                                        std::size_t steps);

/// max over the reference samples of ||v(t) - v_ref(t)||.
double c0_error(const InteractionSolution& sol, const ReferenceSolution& ref);

/// Uniform samples -1 = t_0 < ... < t_{2m} = 1.
std::vector<double> symmetric_samples(std::size_t per_side);

}  // namespace stlsq
