#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "stlsq/baselines.hpp"
#include "stlsq/ode_problem.hpp"

using namespace stlsq;

namespace {

Generator frozen(const Eigen::MatrixXcd& H) {
  return [H](double, std::span<const cplx> in, std::span<cplx> out) {
    Eigen::Map<const Eigen::VectorXcd> x(in.data(), Eigen::Index(in.size()));
    Eigen::Map<Eigen::VectorXcd>(out.data(), Eigen::Index(out.size())) = -I * (H * x);
  };
}

Eigen::VectorXcd exp_step(const Eigen::MatrixXcd& H, const Eigen::VectorXcd& y, double t) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(H);
  const Eigen::VectorXcd phase =
      (-I * t * es.eigenvalues().cast<cplx>()).array().exp().matrix();
  return es.eigenvectors() * phase.asDiagonal() * es.eigenvectors().adjoint() * y;
}

DuhamelProblem cosine_duhamel(const CosineOde& ode) {
  DuhamelProblem dp;
  dp.free_symbol = Eigen::VectorXd::Zero(1);
  dp.bounded = [ode](double t, std::span<const cplx> in, std::span<cplx> out) {
    out[0] = ode.a * std::cos(ode.omega * t) * in[0];
  };
  return dp;
}

double picard_error(const CosineOde& ode, std::size_t points) {
  const auto grid = uniform_grid(0.0, 0.5, points);
  const auto res = picard_duhamel(cosine_duhamel(ode), StateVector::Constant(1, ode.eta0), grid, 40);
  double err = 0;
  for (std::size_t i = 0; i < grid.size(); ++i)
    err = std::max(err, std::abs(res.trajectory.states[i](0) - exact_solution(ode, grid[i])));
  return err;
}

}  // namespace

TEST_CASE("uniform grid") {
  const auto g = uniform_grid(-1.0, 1.0, 4);
  REQUIRE(g.size() == 5);
  CHECK(g.front() == -1.0);
  CHECK(g.back() == 1.0);
  CHECK(g[2] == doctest::Approx(0.0));
  CHECK_THROWS(uniform_grid(0.0, 1.0, 0));
}

TEST_CASE("Crank-Nicolson conserves the norm on frozen self-adjoint systems") {
  std::mt19937_64 rng(30);
  for (std::size_t d : {1u, 3u, 8u}) {
    const auto H = oracle::random_hermitian(d, rng);
    const auto y0 = oracle::random_vector(Eigen::Index(d), rng);
    const auto grid = uniform_grid(0.0, 2.0, 64);
    for (auto coeff : {CnCoefficients::EndpointAverage, CnCoefficients::Midpoint}) {
      const auto traj = crank_nicolson(frozen(H), y0, grid, {coeff});
      for (const auto& y : traj.states) CHECK(std::abs(y.norm() - y0.norm()) < 1e-12 * y0.norm());
    }
    // Order 2 against the matrix exponential.
    const auto e1 = (crank_nicolson(frozen(H), y0, uniform_grid(0.0, 1.0, 200)).states.back() -
                     exp_step(H, y0, 1.0)).norm();
    const auto e2 = (crank_nicolson(frozen(H), y0, uniform_grid(0.0, 1.0, 400)).states.back() -
                     exp_step(H, y0, 1.0)).norm();
    CHECK(e1 / e2 == doctest::Approx(4.0).epsilon(0.05));
  }
}

TEST_CASE("Crank-Nicolson midpoint mode is unitary for time-dependent H") {
  std::mt19937_64 rng(31);
  const auto H0 = oracle::random_hermitian(4, rng), H1 = oracle::random_hermitian(4, rng);
  const Generator f = [=](double t, std::span<const cplx> in, std::span<cplx> out) {
    Eigen::Map<const Eigen::VectorXcd> x(in.data(), 4);
    Eigen::Map<Eigen::VectorXcd>(out.data(), 4) = -I * ((H0 + std::cos(5 * t) * H1) * x);
  };
  const auto y0 = oracle::random_vector(4, rng);
  const auto traj = crank_nicolson(f, y0, uniform_grid(0.0, 1.0, 50), {CnCoefficients::Midpoint});
  for (const auto& y : traj.states) CHECK(std::abs(y.norm() - y0.norm()) < 1e-12 * y0.norm());
}

TEST_CASE("RK4 is fourth order") {
  std::mt19937_64 rng(32);
  const auto H = oracle::random_hermitian(3, rng);
  const auto y0 = oracle::random_vector(3, rng);
  const auto ref = exp_step(H, y0, 1.0);
  const double e1 = (rk4(frozen(H), y0, uniform_grid(0.0, 1.0, 40)).states.back() - ref).norm();
  const double e2 = (rk4(frozen(H), y0, uniform_grid(0.0, 1.0, 80)).states.back() - ref).norm();
  CHECK(e1 / e2 == doctest::Approx(16.0).epsilon(0.1));
}

TEST_CASE("Picard on the Duhamel formula reaches 1e-8 with 2^14 points") {
  const CosineOde ode;
  const double e12 = picard_error(ode, std::size_t{1} << 12);
  const double e14 = picard_error(ode, std::size_t{1} << 14);
  CHECK(e14 <= 1e-8);
  CHECK(e12 / e14 == doctest::Approx(16.0).epsilon(0.1));  // trapezoid rule, h^2
}

TEST_CASE("Picard continuity estimate with forcing and free part") {
  // (i d/dt - H0 - B) u = f on (0, T): ||u||_C0 <= sqrt(2) (|u0|^2 + T ||f||^2)^(1/2),
  // with ||f|| the L^2(0, T) norm.
  std::mt19937_64 rng(33);
  for (int trial = 0; trial < 5; ++trial) {
    const std::size_t d = 3;
    const double T = 0.25 + 0.15 * trial;
    const auto Bm = oracle::random_hermitian(d, rng);
    const auto fv = oracle::random_vector(Eigen::Index(d), rng);
    DuhamelProblem dp;
    dp.free_symbol = Eigen::VectorXd::LinSpaced(Eigen::Index(d), 0.0, 10.0);
    dp.bounded = [Bm](double t, std::span<const cplx> in, std::span<cplx> out) {
      Eigen::Map<const Eigen::VectorXcd> x(in.data(), Eigen::Index(in.size()));
      Eigen::Map<Eigen::VectorXcd>(out.data(), Eigen::Index(out.size())) = std::cos(t) * (Bm * x);
    };
    dp.forcing = [fv](double t, std::span<cplx> out) {
      Eigen::Map<Eigen::VectorXcd>(out.data(), Eigen::Index(out.size())) = std::sin(7 * t) * fv;
    };
    const auto u0 = oracle::random_vector(Eigen::Index(d), rng);
    const auto grid = uniform_grid(0.0, T, 2048);
    const auto res = picard_duhamel(dp, u0, grid, 60);
    double f_l2 = 0;  // int_0^T sin^2(7t) dt |fv|^2
    f_l2 = (T / 2 - std::sin(14 * T) / 28) * fv.squaredNorm();
    const double bound = std::sqrt(2.0) * std::sqrt(u0.squaredNorm() + T * f_l2);
    double sup = 0;
    for (const auto& y : res.trajectory.states) sup = std::max(sup, y.norm());
    CHECK(sup <= bound);
    // Without forcing the dynamics are unitary.
    dp.forcing = nullptr;
    const auto free_res = picard_duhamel(dp, u0, grid, 60);
    CHECK(std::abs(free_res.trajectory.states.back().norm() - u0.norm()) < 1e-5);
  }
}

TEST_CASE("Picard reports divergence and rejects bad grids") {
  DuhamelProblem dp;
  dp.free_symbol = Eigen::VectorXd::Zero(1);
  dp.bounded = [](double, std::span<const cplx> in, std::span<cplx> out) { out[0] = 400.0 * in[0]; };
  CHECK_THROWS_AS(picard_duhamel(dp, StateVector::Ones(1), uniform_grid(0.0, 1.0, 8), 50),
                  DivergenceError);
  CHECK_THROWS_AS(picard_duhamel(cosine_duhamel({}), StateVector::Ones(1), uniform_grid(0.1, 1.0, 8), 5),
                  std::invalid_argument);
}
