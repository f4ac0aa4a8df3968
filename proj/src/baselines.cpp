#include "stlsq/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "stlsq/conjugate_gradient.hpp"

namespace stlsq {

namespace {

double check_uniform(std::span<const double> grid, const char* what) {
  if (grid.size() < 2) throw std::invalid_argument(std::string(what) + ": grid needs two points");
  const double h = grid[1] - grid[0];
  if (!(h > 0.0)) throw std::invalid_argument(std::string(what) + ": grid must increase");
  for (std::size_t n = 1; n < grid.size(); ++n) {
    const double hn = grid[n] - grid[n - 1];
    if (std::abs(hn - h) > 1e-9 * h)
      throw std::invalid_argument(std::string(what) + ": grid must be uniform");
  }
  return h;
}

StateVector call(const Generator& f, double t, const StateVector& y) {
  StateVector out(y.size());
  f(t, std::span<const cplx>(y.data(), static_cast<std::size_t>(y.size())),
    std::span<cplx>(out.data(), static_cast<std::size_t>(out.size())));
  return out;
}

}  // namespace

std::vector<double> uniform_grid(double t0, double t1, std::size_t steps) {
  if (steps == 0) throw std::invalid_argument("uniform_grid: steps must be positive");
  std::vector<double> g(steps + 1);
  for (std::size_t n = 0; n <= steps; ++n)
    g[n] = t0 + (t1 - t0) * static_cast<double>(n) / static_cast<double>(steps);
  g.back() = t1;
  return g;
}

SteppedTrajectory crank_nicolson(const Generator& f, const StateVector& y0,
                                 std::span<const double> grid, const CnOptions& opts) {
  const double h = check_uniform(grid, "crank_nicolson");
  SteppedTrajectory traj{{grid.begin(), grid.end()}, {y0}, SteppingMethod::CrankNicolson};
  traj.states.reserve(grid.size());
  StateVector y = y0;
  const bool midpoint = opts.coefficients == CnCoefficients::Midpoint;
  for (std::size_t n = 0; n + 1 < grid.size(); ++n) {
    const double t_expl = midpoint ? grid[n] + 0.5 * h : grid[n];
    const double t_impl = midpoint ? grid[n] + 0.5 * h : grid[n + 1];
    const StateVector b = y + 0.5 * h * call(f, t_expl, y);
    if (y.size() == 1) {
      const cplx g = call(f, t_impl, StateVector::Ones(1))(0);
      y(0) = b(0) / (1.0 - 0.5 * h * g);
    } else {
      // A = I - (h/2) f(t_impl) and A^H = I + (h/2) f(t_impl) since f is
      // anti-Hermitian. Solve A^H A y = A^H b.
      auto apply_a = [&](const StateVector& v) -> StateVector {
        return v - 0.5 * h * call(f, t_impl, v);
      };
      auto apply_ah = [&](const StateVector& v) -> StateVector {
        return v + 0.5 * h * call(f, t_impl, v);
      };
      const StateVector rhs = apply_ah(b);
      StateVector x = b;
      const CgResult cg = preconditioned_cg<StateVector>(
          [&](const StateVector& v) { return apply_ah(apply_a(v)); },
          [](const StateVector& v) { return v; }, rhs, x, opts.inner_tol, opts.inner_maxit);
      if (!cg.converged)
        throw std::runtime_error("crank_nicolson: inner solve did not converge at step " +
                                 std::to_string(n));
      y = std::move(x);
    }
    traj.states.push_back(y);
  }
  return traj;
}

SteppedTrajectory rk4(const Generator& f, const StateVector& y0, std::span<const double> grid) {
  const double h = check_uniform(grid, "rk4");
  SteppedTrajectory traj{{grid.begin(), grid.end()}, {y0}, SteppingMethod::RK4};
  traj.states.reserve(grid.size());
  StateVector y = y0;
  for (std::size_t n = 0; n + 1 < grid.size(); ++n) {
    const double t = grid[n];
    const StateVector k1 = call(f, t, y);
    const StateVector k2 = call(f, t + 0.5 * h, y + 0.5 * h * k1);
    const StateVector k3 = call(f, t + 0.5 * h, y + 0.5 * h * k2);
    const StateVector k4 = call(f, t + h, y + h * k3);
    y += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    traj.states.push_back(y);
  }
  return traj;
}

PicardResult picard_duhamel(const DuhamelProblem& problem, const StateVector& u0,
                            std::span<const double> grid, std::size_t iters) {
  const double h = check_uniform(grid, "picard_duhamel");
  if (grid.front() != 0.0) throw std::invalid_argument("picard_duhamel: grid must start at 0");
  if (iters == 0) throw std::invalid_argument("picard_duhamel: iters must be positive");
  const Eigen::Index dim = u0.size();
  if (problem.free_symbol.size() != dim)
    throw std::invalid_argument("picard_duhamel: free symbol size differs from state size");
  const std::size_t n_pts = grid.size();

  auto propagator = [&](double t) -> StateVector {
    StateVector ph(dim);
    for (Eigen::Index i = 0; i < dim; ++i) ph(i) = std::polar(1.0, -t * problem.free_symbol(i));
    return ph;
  };
  std::vector<StateVector> free_phase(n_pts);
  std::vector<StateVector> forcing(n_pts, StateVector::Zero(dim));
  for (std::size_t n = 0; n < n_pts; ++n) {
    free_phase[n] = propagator(grid[n]);
    if (problem.forcing)
      problem.forcing(grid[n], std::span<cplx>(forcing[n].data(), static_cast<std::size_t>(dim)));
  }

  PicardResult result;
  std::vector<StateVector> u(n_pts, StateVector::Zero(dim));
  StateVector scratch(dim);
  std::size_t growth = 0;
  for (std::size_t m = 0; m < iters; ++m) {
    // Integrand in the interaction frame: e^{isH0} (f(s) + B(s) u(s)).
    std::vector<StateVector> next(n_pts);
    StateVector integral = StateVector::Zero(dim);
    StateVector prev_integrand;
    double increment = 0.0;
    for (std::size_t n = 0; n < n_pts; ++n) {
      StateVector g = forcing[n];
      if (problem.bounded) {
        problem.bounded(grid[n], std::span<const cplx>(u[n].data(), static_cast<std::size_t>(dim)),
                        std::span<cplx>(scratch.data(), static_cast<std::size_t>(dim)));
        g += scratch;
      }
      StateVector integrand = free_phase[n].conjugate().cwiseProduct(g);
      if (n > 0) integral += 0.5 * h * (prev_integrand + integrand);
      prev_integrand = std::move(integrand);
      next[n] = free_phase[n].cwiseProduct(u0 - I * integral);
      increment = std::max(increment, (next[n] - u[n]).cwiseAbs().maxCoeff());
    }
    u.swap(next);
    double scale = 0.0;
    for (const auto& v : u) scale = std::max(scale, v.cwiseAbs().maxCoeff());
    // Increments at roundoff level fluctuate and say nothing about divergence.
    const bool above_roundoff = increment > 1e-13 * std::max(scale, 1.0);
    if (!result.increments.empty() && increment > result.increments.back() && above_roundoff) {
      if (++growth >= 3)
        throw DivergenceError("picard_duhamel: increments grew for three consecutive iterations");
    } else {
      growth = 0;
    }
    result.increments.push_back(increment);
  }
  result.trajectory = {{grid.begin(), grid.end()}, std::move(u), SteppingMethod::Picard};
  return result;
}

}  // namespace stlsq
