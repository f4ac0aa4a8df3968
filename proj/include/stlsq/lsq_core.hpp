#pragma once

// Space-time least-squares engine on the reference interval (-1, 1).
//
// For u(t) = sum_{k<K} u_k T_k(t) with u_k in a Hilbert space of dimension
// dim, the discrete weighted functional is
//
//   E_w(u) = |u(t0) - eta0|^2 + (pi/2) |R u|^2,
//   R u    = P D u - C (pi^L)^-1 A pi^L P u,
//
// where the residual R u is expressed in the U basis (orthogonal for the
// weight sqrt(1 - t^2) with norm pi/2), D is the derivative, C the T -> U
// change of basis, pi^L the collocation at L Gauss-Chebyshev nodes and A
// the skew operator applied node by node. The minimizer solves
// Q u = J^H eta0 with Q = (pi/2) R^H R + J^H J, and Q is inverted with
// conjugate gradient preconditioned by the free part (pi/2) D^H D + J^H J.

#include <cstddef>
#include <functional>
#include <span>
#include <stdexcept>
#include <vector>

#include "stlsq/chebyshev.hpp"
#include "stlsq/types.hpp"

namespace stlsq {

/// out = B(t) in. Must be self-adjoint for every t; `in` and `out` never alias.
using SkewOperator = std::function<void(double t, std::span<const cplx> in, std::span<cplx> out)>;

struct LsqProblem {
  std::size_t K = 1;
  std::size_t L = 1;
  StateVector eta0;
  /// Empty means B = 0.
  SkewOperator skew_op;
  double cg_tol = 1e-12;
  /// 0 selects 10 * K.
  std::size_t cg_maxit = 0;
  /// Reference time at which the initial datum is imposed.
  double initial_time = 0.0;
  TransformMode transform = TransformMode::Dense;

  std::size_t dim() const { return static_cast<std::size_t>(eta0.size()); }
  std::size_t max_iterations() const { return cg_maxit == 0 ? 10 * K : cg_maxit; }
  /// Throws std::invalid_argument on inconsistent sizes or tolerances.
  void validate() const;
};

struct SolveDiagnostics {
  std::size_t iterations = 0;
  double final_relative_residual = 0.0;
  double wall_time = 0.0;
  double energy = 0.0;
};

struct LsqSolution {
  SpaceTimeCoefficients coeffs;
  SolveDiagnostics diagnostics;
};

class SolveError : public std::runtime_error {
 public:
  SolveError(const std::string& what, SolveDiagnostics diagnostics)
      : std::runtime_error(what), diagnostics_(diagnostics) {}
  const SolveDiagnostics& diagnostics() const { return diagnostics_; }

 private:
  SolveDiagnostics diagnostics_;
};

/// Matrix-free pieces of the normal equations for one problem. Holds the
/// collocation tables so repeated applications do not rebuild them.
class NormalOperator {
 public:
  explicit NormalOperator(const LsqProblem& problem);

  const LsqProblem& problem() const { return problem_; }

  /// R u: U-basis coefficients (L rows) of i u' - B u.
  SpaceTimeCoefficients residual(const SpaceTimeCoefficients& u) const;
  /// R^H g for g with L rows; returns K rows.
  SpaceTimeCoefficients residual_adjoint(const SpaceTimeCoefficients& g) const;
  /// Q u.
  SpaceTimeCoefficients apply(const SpaceTimeCoefficients& u) const;
  /// J^H eta0.
  SpaceTimeCoefficients rhs() const;
  /// Exact inverse of the free operator (pi/2) D^H D + J^H J.
  SpaceTimeCoefficients precondition(const SpaceTimeCoefficients& f) const;
  /// E_w(u).
  double energy(const SpaceTimeCoefficients& u) const;

 private:
  void check_shape(const SpaceTimeCoefficients& u, std::size_t rows, const char* what) const;
  SpaceTimeCoefficients apply_skew_at_nodes(const SpaceTimeCoefficients& values) const;

  LsqProblem problem_;
  ChebTransform transform_;
  std::vector<double> initial_row_;
};

SpaceTimeCoefficients apply_residual(const LsqProblem& problem, const SpaceTimeCoefficients& u);
SpaceTimeCoefficients apply_normal(const LsqProblem& problem, const SpaceTimeCoefficients& u);
SpaceTimeCoefficients rhs(const LsqProblem& problem);
double energy(const LsqProblem& problem, const SpaceTimeCoefficients& u);

/// Solves ((pi/2) D^H D + J^H J) u = f where J = (T_k(initial_time))_k.
/// u_k = 2 (f_k - J_k f_0) / (pi k^2) for k >= 1 and u_0 from u(t0) = f_0.
SpaceTimeCoefficients free_precond_solve(const SpaceTimeCoefficients& f,
                                         double initial_time = 0.0);

using PcgObserver = std::function<void(std::size_t, const SpaceTimeCoefficients&)>;

/// Throws SolveError when the tolerance is not met within the iteration cap.
LsqSolution pcg_solve(const LsqProblem& problem, const PcgObserver& observe = {});

}  // namespace stlsq
