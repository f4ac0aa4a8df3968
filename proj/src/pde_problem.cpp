#include "stlsq/pde_problem.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace stlsq {

namespace {

// Generator of the time-reversed equation: z(s) = y(-s).
Generator reversed(const Generator& f) {
  return [f](double s, std::span<const cplx> in, std::span<cplx> out) {
    f(-s, in, out);
    for (auto& v : out) v = -v;
  };
}

// Integrates from t = 0 through the given non-negative, increasing times
// with RK4 and step size at most h_max; returns the state at each time.
std::vector<StateVector> march(const Generator& f, const StateVector& y0,
                               const std::vector<double>& targets, double h_max) {
  std::vector<StateVector> out;
  out.reserve(targets.size());
  StateVector y = y0;
  double t = 0.0;
  for (double target : targets) {
    if (target > t) {
      const auto n = static_cast<std::size_t>(std::ceil((target - t) / h_max - 1e-9));
      const auto grid = uniform_grid(t, target, std::max<std::size_t>(n, 1));
      y = rk4(f, y, grid).states.back();
      t = target;
    }
    out.push_back(y);
  }
  return out;
}

std::vector<StateVector> reference_run(const Generator& f, const StateVector& y0,
                                       std::span<const double> samples, std::size_t steps) {
  const double h_max = 2.0 / static_cast<double>(steps);
  std::vector<std::size_t> pos, neg;
  for (std::size_t i = 0; i < samples.size(); ++i) (samples[i] >= 0.0 ? pos : neg).push_back(i);
  auto by_abs = [&](std::size_t a, std::size_t b) {
    return std::abs(samples[a]) < std::abs(samples[b]);
  };
  std::sort(pos.begin(), pos.end(), by_abs);
  std::sort(neg.begin(), neg.end(), by_abs);

  std::vector<StateVector> states(samples.size());
  auto run_side = [&](const std::vector<std::size_t>& idx, const Generator& g) {
    std::vector<double> targets;
    for (auto i : idx) targets.push_back(std::abs(samples[i]));
    const auto s = march(g, y0, targets, h_max);
    for (std::size_t j = 0; j < idx.size(); ++j) states[idx[j]] = s[j];
  };
  run_side(pos, f);
  run_side(neg, reversed(f));
  return states;
}

}  // namespace

void PeriodicSchrodinger::validate() const {
  if (N < 4 || N % 2 != 0) throw std::invalid_argument("PeriodicSchrodinger: N must be even, >= 4");
  if (!(tau >= 0.0)) throw std::invalid_argument("PeriodicSchrodinger: tau must be non-negative");
  if (u0.modes() != N) throw std::invalid_argument("PeriodicSchrodinger: u0 has wrong size");
  if (!(u0.norm() > 0.0)) throw std::invalid_argument("PeriodicSchrodinger: u0 must be nonzero");
}

FourierField2D default_initial_datum(int N, double sigma) {
  if (sigma <= 0.0) sigma = N / 8.0;
  FourierField2D u(N);
  for (int k = -N / 2; k < N / 2; ++k)
    for (int l = -N / 2; l < N / 2; ++l)
      u(k, l) = std::exp(-(static_cast<double>(k * k + l * l)) / (sigma * sigma));
  u.coeffs() /= u.norm();
  return u;
}

PeriodicSchrodinger make_periodic_schrodinger(int N, double tau, MovingCosinePotential pot) {
  PeriodicSchrodinger p{N, tau, pot, default_initial_datum(N)};
  p.validate();
  return p;
}

Generator interaction_generator(const PeriodicSchrodinger& p) {
  const int N = p.N;
  const double tau = p.tau;
  const MovingCosinePotential pot = p.pot;
  return [N, tau, pot](double t, std::span<const cplx> in, std::span<cplx> out) {
    skewed_potential(N, in, out, pot, t, tau);
    for (auto& v : out) v *= -I * tau;
  };
}

LsqProblem build_problem(const PeriodicSchrodinger& p, std::size_t K, std::size_t L) {
  p.validate();
  LsqProblem lp;
  lp.K = K;
  lp.L = L == 0 ? K : L;
  lp.eta0 = p.u0.coeffs();
  if (p.tau != 0.0 && p.pot.amplitude != 0.0) {
    const int N = p.N;
    const double tau = p.tau;
    const MovingCosinePotential pot = p.pot;
    lp.skew_op = [N, tau, pot](double t, std::span<const cplx> in, std::span<cplx> out) {
      skewed_potential(N, in, out, pot, t, tau);
      for (auto& v : out) v *= tau;
    };
  }
  lp.validate();
  return lp;
}

FourierField2D InteractionSolution::at(double t) const {
  return FourierField2D(N, cheb_eval_rows(v_coeffs, t));
}

InteractionSolution solve(const PeriodicSchrodinger& p, std::size_t K, std::size_t L,
                          double cg_tol, std::size_t cg_maxit, TransformMode transform) {
  LsqProblem lp = build_problem(p, K, L);
  lp.cg_tol = cg_tol;
  lp.cg_maxit = cg_maxit;
  lp.transform = transform;
  LsqSolution sol = pcg_solve(lp);
  return {p.N, std::move(sol.coeffs), sol.diagnostics};
}

FourierField2D to_schrodinger_picture(const InteractionSolution& sol,
                                      const PeriodicSchrodinger& p, double t) {
  return free_propagate(sol.at(t), t * p.tau);
}

ReferenceSolution reference_solution(const PeriodicSchrodinger& p,
                                     std::span<const double> t_samples, std::size_t steps,
                                     double tol) {
  p.validate();
  if (steps < 2) throw std::invalid_argument("reference_solution: steps must be >= 2");
  for (double t : t_samples)
    if (!(std::abs(t) <= 1.0)) throw std::invalid_argument("reference_solution: |t| > 1");
  const Generator f = interaction_generator(p);
  const StateVector& y0 = p.u0.coeffs();
  const auto coarse = reference_run(f, y0, t_samples, steps);
  const auto fine = reference_run(f, y0, t_samples, 2 * steps);

  ReferenceSolution ref;
  ref.times.assign(t_samples.begin(), t_samples.end());
  for (std::size_t i = 0; i < fine.size(); ++i) {
    ref.richardson_gap = std::max(ref.richardson_gap, (fine[i] - coarse[i]).norm());
    ref.states.emplace_back(p.N, fine[i]);
  }
  if (!(ref.richardson_gap <= tol)) {
    std::ostringstream msg;
    msg << "reference_solution: step-halving gap " << ref.richardson_gap << " exceeds " << tol
        << " (steps = " << steps << ")";
    throw OracleError(msg.str());
  }
  return ref;
}

SteppedTrajectory integrate_interaction(const PeriodicSchrodinger& p, SteppingMethod method,
                                        std::size_t steps) {
  p.validate();
  if (steps < 2 || steps % 2 != 0)
    throw std::invalid_argument("integrate_interaction: steps must be even and >= 2");
  const Generator f = interaction_generator(p);
  const auto grid = uniform_grid(0.0, 1.0, steps / 2);
  auto run = [&](const Generator& g) {
    switch (method) {
      case SteppingMethod::CrankNicolson: return crank_nicolson(g, p.u0.coeffs(), grid);
      case SteppingMethod::RK4: return rk4(g, p.u0.coeffs(), grid);
      default: throw std::invalid_argument("integrate_interaction: unsupported method");
    }
  };
  const SteppedTrajectory fwd = run(f);
  const SteppedTrajectory bwd = run(reversed(f));
  SteppedTrajectory out{{}, {}, method};
  for (std::size_t n = bwd.times.size(); n-- > 1;) {
    out.times.push_back(-bwd.times[n]);
    out.states.push_back(bwd.states[n]);
  }
  out.times.insert(out.times.end(), fwd.times.begin(), fwd.times.end());
  out.states.insert(out.states.end(), fwd.states.begin(), fwd.states.end());
  return out;
}

double c0_error(const InteractionSolution& sol, const ReferenceSolution& ref) {
  if (ref.times.size() != ref.states.size())
    throw std::invalid_argument("c0_error: malformed reference");
  double err = 0.0;
  for (std::size_t i = 0; i < ref.times.size(); ++i) {
    if (ref.states[i].modes() != sol.N) throw std::invalid_argument("c0_error: size mismatch");
    err = std::max(err, (sol.at(ref.times[i]).coeffs() - ref.states[i].coeffs()).norm());
  }
  return err;
}

std::vector<double> symmetric_samples(std::size_t per_side) {
  if (per_side == 0) throw std::invalid_argument("symmetric_samples: per_side must be positive");
  std::vector<double> t(2 * per_side + 1);
  for (std::size_t j = 0; j < t.size(); ++j)
    t[j] = (static_cast<double>(j) - static_cast<double>(per_side)) / static_cast<double>(per_side);
  return t;
}

}  // namespace stlsq
