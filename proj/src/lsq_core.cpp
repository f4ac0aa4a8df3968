#include "stlsq/lsq_core.hpp"

#include <chrono>
#include <cmath>
#include <string>

#include "stlsq/conjugate_gradient.hpp"

namespace stlsq {

void LsqProblem::validate() const {
  if (K == 0) throw std::invalid_argument("LsqProblem: K must be at least 1");
  if (L < K) throw std::invalid_argument("LsqProblem: L must be at least K");
  if (eta0.size() == 0) throw std::invalid_argument("LsqProblem: empty initial datum");
  if (!(cg_tol > 0.0 && cg_tol < 1.0))
    throw std::invalid_argument("LsqProblem: cg_tol must lie in (0, 1)");
  if (!(std::abs(initial_time) <= 1.0))
    throw std::invalid_argument("LsqProblem: initial time outside [-1, 1]");
}

NormalOperator::NormalOperator(const LsqProblem& problem)
    : problem_((problem.validate(), problem)),
      transform_(problem.L, problem.transform),
      initial_row_(eval_row(problem.K, problem.initial_time)) {}

void NormalOperator::check_shape(const SpaceTimeCoefficients& u, std::size_t rows,
                                 const char* what) const {
  if (static_cast<std::size_t>(u.rows()) != rows ||
      static_cast<std::size_t>(u.cols()) != problem_.dim())
    throw std::invalid_argument(std::string(what) + ": expected " + std::to_string(rows) + "x" +
                                std::to_string(problem_.dim()) + " coefficients, got " +
                                std::to_string(u.rows()) + "x" + std::to_string(u.cols()));
}

SpaceTimeCoefficients NormalOperator::apply_skew_at_nodes(
    const SpaceTimeCoefficients& values) const {
  const auto& nodes = transform_.quadrature().nodes;
  const auto dim = problem_.dim();
  SpaceTimeCoefficients out(values.rows(), values.cols());
  for (Eigen::Index l = 0; l < values.rows(); ++l)
    problem_.skew_op(nodes[static_cast<std::size_t>(l)],
                     std::span<const cplx>(values.row(l).data(), dim),
                     std::span<cplx>(out.row(l).data(), dim));
  return out;
}

SpaceTimeCoefficients NormalOperator::residual(const SpaceTimeCoefficients& u) const {
  check_shape(u, problem_.K, "apply_residual");
  SpaceTimeCoefficients g = extend_rows(diff_to_second_kind_rows(u), problem_.L);
  if (!problem_.skew_op) return g;
  const SpaceTimeCoefficients values = transform_.collocate(extend_rows(u, problem_.L));
  g -= first_to_second_kind_rows(transform_.uncollocate(apply_skew_at_nodes(values)));
  return g;
}

SpaceTimeCoefficients NormalOperator::residual_adjoint(const SpaceTimeCoefficients& g) const {
  check_shape(g, problem_.L, "residual_adjoint");
  const auto K = static_cast<Eigen::Index>(problem_.K);
  SpaceTimeCoefficients u = diff_to_second_kind_adjoint_rows(g.topRows(K));
  if (!problem_.skew_op) return u;
  // Adjoint of (pi^L)^-1 A pi^L is diag(2,1,..) (pi^L)^-1 A pi^L diag(1/2,1,..)
  // when A is self-adjoint node by node.
  SpaceTimeCoefficients h = first_to_second_kind_transpose_rows(g);
  h.row(0) *= 0.5;
  SpaceTimeCoefficients w = transform_.uncollocate(apply_skew_at_nodes(transform_.collocate(h)));
  w.row(0) *= 2.0;
  u -= w.topRows(K);
  return u;
}

SpaceTimeCoefficients NormalOperator::apply(const SpaceTimeCoefficients& u) const {
  SpaceTimeCoefficients q = (pi / 2.0) * residual_adjoint(residual(u));
  Eigen::RowVectorXcd at_initial = Eigen::RowVectorXcd::Zero(u.cols());
  for (Eigen::Index k = 0; k < u.rows(); ++k)
    at_initial += initial_row_[static_cast<std::size_t>(k)] * u.row(k);
  for (Eigen::Index k = 0; k < u.rows(); ++k)
    q.row(k) += initial_row_[static_cast<std::size_t>(k)] * at_initial;
  return q;
}

SpaceTimeCoefficients NormalOperator::rhs() const {
  const auto K = static_cast<Eigen::Index>(problem_.K);
  SpaceTimeCoefficients b(K, problem_.eta0.size());
  for (Eigen::Index k = 0; k < K; ++k)
    b.row(k) = initial_row_[static_cast<std::size_t>(k)] * problem_.eta0.transpose();
  return b;
}

SpaceTimeCoefficients NormalOperator::precondition(const SpaceTimeCoefficients& f) const {
  check_shape(f, problem_.K, "free_precond_solve");
  return free_precond_solve(f, problem_.initial_time);
}

double NormalOperator::energy(const SpaceTimeCoefficients& u) const {
  check_shape(u, problem_.K, "energy");
  Eigen::RowVectorXcd mismatch = -problem_.eta0.transpose();
  for (Eigen::Index k = 0; k < u.rows(); ++k)
    mismatch += initial_row_[static_cast<std::size_t>(k)] * u.row(k);
  return mismatch.squaredNorm() + (pi / 2.0) * residual(u).squaredNorm();
}

SpaceTimeCoefficients apply_residual(const LsqProblem& problem, const SpaceTimeCoefficients& u) {
  return NormalOperator(problem).residual(u);
}

SpaceTimeCoefficients apply_normal(const LsqProblem& problem, const SpaceTimeCoefficients& u) {
  return NormalOperator(problem).apply(u);
}

SpaceTimeCoefficients rhs(const LsqProblem& problem) { return NormalOperator(problem).rhs(); }

double energy(const LsqProblem& problem, const SpaceTimeCoefficients& u) {
  return NormalOperator(problem).energy(u);
}

SpaceTimeCoefficients free_precond_solve(const SpaceTimeCoefficients& f, double initial_time) {
  if (f.rows() == 0) throw std::invalid_argument("free_precond_solve: empty input");
  const auto J = eval_row(static_cast<std::size_t>(f.rows()), initial_time);
  SpaceTimeCoefficients u(f.rows(), f.cols());
  u.row(0) = f.row(0);
  for (Eigen::Index k = 1; k < f.rows(); ++k) {
    const double kk = static_cast<double>(k);
    u.row(k) = (2.0 / (pi * kk * kk)) * (f.row(k) - J[static_cast<std::size_t>(k)] * f.row(0));
    u.row(0) -= J[static_cast<std::size_t>(k)] * u.row(k);
  }
  return u;
}

LsqSolution pcg_solve(const LsqProblem& problem, const PcgObserver& observe) {
  const NormalOperator op(problem);
  const auto start = std::chrono::steady_clock::now();
  const SpaceTimeCoefficients b = op.rhs();
  SpaceTimeCoefficients x = SpaceTimeCoefficients::Zero(b.rows(), b.cols());
  const CgResult cg = preconditioned_cg<SpaceTimeCoefficients>(
      [&](const SpaceTimeCoefficients& v) { return op.apply(v); },
      [&](const SpaceTimeCoefficients& v) { return op.precondition(v); }, b, x, problem.cg_tol,
      problem.max_iterations(), observe);
  const auto stop = std::chrono::steady_clock::now();

  SolveDiagnostics diag;
  diag.iterations = cg.iterations;
  diag.final_relative_residual = cg.relative_residual;
  diag.wall_time = std::chrono::duration<double>(stop - start).count();
  diag.energy = op.energy(x);
  if (!cg.converged)
    throw SolveError("pcg_solve: no convergence after " + std::to_string(cg.iterations) +
                         " iterations (relative residual " +
                         std::to_string(cg.relative_residual) + ")",
                     diag);
  return {std::move(x), diag};
}

}  // namespace stlsq
