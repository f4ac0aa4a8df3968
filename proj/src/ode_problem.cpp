#include "stlsq/ode_problem.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace stlsq {

cplx exact_solution(const CosineOde& ode, double t) {
  const double phase = ode.omega == 0.0 ? ode.a * t : ode.a * std::sin(ode.omega * t) / ode.omega;
  return ode.eta0 * std::polar(1.0, -phase);
}

LsqProblem build_problem(const CosineOde& ode, std::size_t K, std::size_t L, TimeWindow window) {
  if (!(window.t1 > window.t0) || window.t0 > 0.0 || window.t1 < 0.0)
    throw std::invalid_argument("build_problem: window must be non-degenerate and contain 0");
  LsqProblem p;
  p.K = K;
  p.L = L;
  p.eta0 = StateVector::Constant(1, ode.eta0);
  p.initial_time = window.to_reference(0.0);
  if (ode.a != 0.0) {
    p.skew_op = [ode, window](double s, std::span<const cplx> in, std::span<cplx> out) {
      const double t = window.to_physical(s);
      out[0] = window.half_width() * ode.a * std::cos(ode.omega * t) * in[0];
    };
  }
  p.validate();
  return p;
}

OdeSolution solve(const CosineOde& ode, std::size_t K, std::size_t L, double cg_tol,
                  TimeWindow window) {
  LsqProblem p = build_problem(ode, K, L, window);
  p.cg_tol = cg_tol;
  LsqSolution sol = pcg_solve(p);
  ChebSeries series{ChebKind::FirstKind, std::vector<cplx>(sol.coeffs.data(),
                                                           sol.coeffs.data() + sol.coeffs.size())};
  return {std::move(series), sol.diagnostics};
}

double continuous_energy(const ChebSeries& u, const CosineOde& ode, std::size_t nodes,
                         TimeWindow window) {
  if (u.kind != ChebKind::FirstKind)
    throw std::invalid_argument("continuous_energy: expected a first-kind series");
  if (nodes == 0) nodes = 2 * u.size() + 512;
  const ChebQuadrature quad = gauss_cheb(nodes);
  const ChebSeries du = diff_to_second_kind(u);  // i u'
  const double h = window.half_width();
  double e = 0.0;
  for (std::size_t m = 0; m < quad.size(); ++m) {
    const double s = quad.nodes[m];
    const double b = h * ode.a * std::cos(ode.omega * window.to_physical(s));
    e += quad.weights[m] * (1.0 - s * s) * std::norm(cheb_eval(du, s) - b * cheb_eval(u, s));
  }
  return e + std::norm(cheb_eval(u, window.to_reference(0.0)) - ode.eta0);
}

double sup_error(const ChebSeries& u, const CosineOde& ode, std::size_t samples,
                 TimeWindow window) {
  if (samples < 2) throw std::invalid_argument("sup_error: need at least two samples");
  double err = 0.0;
  for (std::size_t j = 0; j < samples; ++j) {
    const double s = -1.0 + 2.0 * static_cast<double>(j) / static_cast<double>(samples - 1);
    err = std::max(err, std::abs(cheb_eval(u, s) - exact_solution(ode, window.to_physical(s))));
  }
  return err;
}

Generator ode_generator(const CosineOde& ode) {
  return [ode](double t, std::span<const cplx> in, std::span<cplx> out) {
    out[0] = -I * ode.a * std::cos(ode.omega * t) * in[0];
  };
}

double stepper_sup_error(const CosineOde& ode, SteppingMethod method, std::size_t steps) {
  if (steps < 2 || steps % 2 != 0)
    throw std::invalid_argument("stepper_sup_error: steps must be even and >= 2");
  const StateVector y0 = StateVector::Constant(1, ode.eta0);
  double err = 0.0;
  for (double direction : {1.0, -1.0}) {
    const Generator f = ode_generator(ode);
    // z(s) = y(direction * s) solves z' = direction * f(direction * s, z).
    const Generator g = [f, direction](double s, std::span<const cplx> in, std::span<cplx> out) {
      f(direction * s, in, out);
      out[0] *= direction;
    };
    const auto grid = uniform_grid(0.0, 1.0, steps / 2);
    SteppedTrajectory traj;
    switch (method) {
      case SteppingMethod::CrankNicolson: traj = crank_nicolson(g, y0, grid); break;
      case SteppingMethod::RK4: traj = rk4(g, y0, grid); break;
      default: throw std::invalid_argument("stepper_sup_error: unsupported method");
    }
    for (std::size_t n = 0; n < grid.size(); ++n)
      err = std::max(err, std::abs(traj.states[n](0) - exact_solution(ode, direction * grid[n])));
  }
  return err;
}

}  // namespace stlsq
