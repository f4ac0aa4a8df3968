#include <doctest.h>

#include "stlsq/pde_problem.hpp"

using namespace stlsq;

TEST_CASE("problem construction and validation") {
  const auto p = make_periodic_schrodinger(8, 0.5);
  CHECK(p.u0.norm() == doctest::Approx(1.0));
  CHECK(std::abs(p.u0(1, 0) - p.u0(-1, 0)) < 1e-15);
  CHECK_THROWS_AS(make_periodic_schrodinger(6 + 1, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(make_periodic_schrodinger(8, -1.0), std::invalid_argument);
  auto zero = p;
  zero.u0.coeffs().setZero();
  CHECK_THROWS_AS(zero.validate(), std::invalid_argument);
  CHECK(!build_problem(make_periodic_schrodinger(8, 0.0), 8).skew_op);
  CHECK(!build_problem(make_periodic_schrodinger(8, 0.5, {1.0, 0.5, 0.0}), 8).skew_op);
}

TEST_CASE("without a potential the interaction picture is constant") {
  const auto p = make_periodic_schrodinger(8, 0.5, {1.0, 0.5, 0.0});
  const auto sol = solve(p, 16);
  CHECK(sol.diagnostics.iterations == 1);
  for (double t : {-1.0, 0.2, 1.0}) {
    CHECK((sol.at(t).coeffs() - p.u0.coeffs()).norm() < 1e-13);
    CHECK((to_schrodinger_picture(sol, p, t).coeffs() - free_propagate(p.u0, t * p.tau).coeffs())
              .norm() < 1e-13);
  }
}

TEST_CASE("reference oracle is norm preserving and self-consistent") {
  const auto p = make_periodic_schrodinger(8, 0.5);
  const auto samples = symmetric_samples(4);
  CHECK(samples.size() == 9);
  CHECK(samples.front() == -1.0);
  CHECK(samples[4] == 0.0);
  const auto ref = reference_solution(p, samples, 1 << 11, 1e-9);
  CHECK(ref.richardson_gap < 1e-9);
  for (const auto& s : ref.states) CHECK(s.norm() == doctest::Approx(1.0).epsilon(1e-10));
  CHECK((ref.states[4].coeffs() - p.u0.coeffs()).norm() == 0.0);
  CHECK_THROWS_AS(reference_solution(p, samples, 16, 1e-9), OracleError);
  const std::vector<double> outside{1.5};
  CHECK_THROWS_AS(reference_solution(p, outside), std::invalid_argument);
}

TEST_CASE("Chebyshev solution converges to the reference") {
  const auto p = make_periodic_schrodinger(8, 0.5);
  const auto samples = symmetric_samples(8);
  const auto ref = reference_solution(p, samples, 1 << 12, 1e-9);
  double prev = 1.0;
  for (std::size_t K : {64u, 128u, 256u}) {
    const double err = c0_error(solve(p, K), ref);
    CAPTURE(K);
    CHECK(err < prev);
    prev = err;
  }
  CHECK(prev < 1e-4);
}

TEST_CASE("dense and fast collocation give the same minimizer") {
  const auto p = make_periodic_schrodinger(8, 0.5);
  const auto a = solve(p, 40, 48, 1e-13, 0, TransformMode::Dense);
  const auto b = solve(p, 40, 48, 1e-13, 0, TransformMode::Fast);
  CHECK((a.v_coeffs - b.v_coeffs).norm() < 1e-10);
}

TEST_CASE("steppers in the interaction picture") {
  const auto p = make_periodic_schrodinger(8, 0.5);
  const auto cn = integrate_interaction(p, SteppingMethod::CrankNicolson, 64);
  REQUIRE(cn.times.size() == 65);
  CHECK(cn.times.front() == -1.0);
  CHECK(cn.times[32] == 0.0);
  CHECK(cn.times.back() == 1.0);
  for (std::size_t i = 1; i < cn.times.size(); ++i) CHECK(cn.times[i] > cn.times[i - 1]);
  CHECK((cn.states[32] - p.u0.coeffs()).norm() == 0.0);
  // Endpoint-averaged coefficients are unitary only up to O(h^2) when H moves.
  for (const auto& y : cn.states) CHECK(std::abs(y.norm() - 1.0) < 1e-3);

  const std::vector<double> ends{-1.0, 1.0};
  const auto ref = reference_solution(p, ends, 1 << 11, 1e-9);
  const auto rk = integrate_interaction(p, SteppingMethod::RK4, 256);
  CHECK((rk.states.front() - ref.states[0].coeffs()).norm() < 1e-6);
  CHECK((rk.states.back() - ref.states[1].coeffs()).norm() < 1e-6);
  CHECK_THROWS_AS(integrate_interaction(p, SteppingMethod::RK4, 7), std::invalid_argument);
}

TEST_CASE("preconditioner iterations shrink with tau") {
  std::size_t prev = 1000;
  for (double tau : {1.0, 0.5, 0.25, 0.125}) {
    const auto it = solve(make_periodic_schrodinger(8, tau), 48).diagnostics.iterations;
    CAPTURE(tau);
    CHECK(it <= prev);
    prev = it;
  }
}
