#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "stlsq/chebyshev.hpp"

using namespace stlsq;

namespace {

SpaceTimeCoefficients random_block(std::size_t rows, std::size_t cols, std::mt19937_64& rng) {
  SpaceTimeCoefficients m{Eigen::Index(rows), Eigen::Index(cols)};
  std::normal_distribution<double> g;
  for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = cplx(g(rng), g(rng));
  return m;
}

ChebSeries random_series(std::size_t K, std::mt19937_64& rng) {
  const auto v = oracle::random_vector(Eigen::Index(K), rng);
  return {ChebKind::FirstKind, std::vector<cplx>(v.data(), v.data() + K)};
}

cplx frob_inner(const SpaceTimeCoefficients& a, const SpaceTimeCoefficients& b) {
  return (a.array().conjugate() * b.array()).sum();
}

}  // namespace

TEST_CASE("gauss_cheb nodes, weights and exactness") {
  const auto q = gauss_cheb(7);
  REQUIRE(q.size() == 7);
  for (std::size_t l = 0; l < 7; ++l) {
    CHECK(q.nodes[l] == doctest::Approx(oracle::gauss_node(l, 7)).epsilon(1e-15));
    CHECK(q.weights[l] == doctest::Approx(pi / 7));
    if (l) CHECK(q.nodes[l] < q.nodes[l - 1]);
  }
  // int t^{2j} / sqrt(1 - t^2) = pi (2j-1)!! / (2j)!!, exact up to degree 13.
  for (int j = 0; j <= 6; ++j) {
    double s = 0, exact = pi;
    for (std::size_t l = 0; l < q.size(); ++l) s += q.weights[l] * std::pow(q.nodes[l], 2 * j);
    for (int i = 1; i <= j; ++i) exact *= (2.0 * i - 1.0) / (2.0 * i);
    CHECK(s == doctest::Approx(exact).epsilon(1e-14));
  }
  CHECK_THROWS_AS(gauss_cheb(0), std::invalid_argument);
}

TEST_CASE("cheb_eval matches trigonometric definitions") {
  std::mt19937_64 rng(1);
  const auto u = random_series(17, rng);
  ChebSeries v = u;
  v.kind = ChebKind::SecondKind;
  for (double t : {-1.0, -0.73, 0.0, 0.31, 0.999, 1.0}) {
    cplx ref_t = 0, ref_u = 0;
    for (std::size_t k = 0; k < u.size(); ++k) {
      ref_t += u.coeffs[k] * oracle::cheb_t(k, t);
      const double th = std::acos(std::clamp(t, -1.0, 1.0));
      const double uk = std::abs(std::sin(th)) < 1e-12 ? (k + 1.0) * std::pow(t, double(k))
                                                       : std::sin((k + 1.0) * th) / std::sin(th);
      ref_u += u.coeffs[k] * uk;
    }
    CHECK(std::abs(cheb_eval(u, t) - ref_t) < 1e-12);
    CHECK(std::abs(cheb_eval(v, t) - ref_u) < 1e-11);
  }
  CHECK_THROWS_AS(cheb_eval(u, 1.0 + 1e-9), std::domain_error);
  CHECK_THROWS_AS(cheb_eval(ChebSeries{}, 0.3), std::invalid_argument);
}

TEST_CASE("collocation round trip, dense and fast agree") {
  std::mt19937_64 rng(2);
  for (std::size_t L : {1u, 2u, 5u, 16u, 33u, 128u}) {
    const auto c = random_block(L, 3, rng);
    const ChebTransform dense(L, TransformMode::Dense), fast(L, TransformMode::Fast);
    const auto vd = dense.collocate(c);
    const auto vf = fast.collocate(c);
    CHECK((vd - vf).norm() <= 1e-12 * c.norm() * std::sqrt(double(L)));
    CHECK((dense.uncollocate(vd) - c).norm() <= 1e-12 * c.norm());
    CHECK((fast.uncollocate(vf) - c).norm() <= 1e-12 * c.norm());
    // Direct evaluation at the nodes.
    for (std::size_t l = 0; l < L; ++l) {
      cplx s = 0;
      for (std::size_t k = 0; k < L; ++k) s += c(Eigen::Index(k), 1) * oracle::cheb_t(k, oracle::gauss_node(l, L));
      CHECK(std::abs(vd(Eigen::Index(l), 1) - s) < 1e-11 * std::sqrt(double(L)));
    }
  }
  const ChebTransform t(4);
  CHECK_THROWS_AS(t.collocate(SpaceTimeCoefficients::Zero(5, 1)), std::invalid_argument);
}

TEST_CASE("scalar collocate/uncollocate wrappers") {
  std::mt19937_64 rng(3);
  const auto u = random_series(9, rng);
  const auto q = gauss_cheb(9);
  const auto vals = collocate(u.coeffs, q);
  for (std::size_t l = 0; l < 9; ++l) CHECK(std::abs(vals[l] - cheb_eval(u, q.nodes[l])) < 1e-13);
  const auto back = uncollocate(vals, q);
  for (std::size_t k = 0; k < 9; ++k) CHECK(std::abs(back.coeffs[k] - u.coeffs[k]) < 1e-13);
}

TEST_CASE("derivative into the U basis") {
  std::mt19937_64 rng(4);
  const auto u = random_series(12, rng);
  const auto du = diff_to_second_kind(u);
  CHECK(du.kind == ChebKind::SecondKind);
  REQUIRE(du.size() == u.size());
  CHECK(du.coeffs.back() == cplx(0));
  for (double t : {-0.9, -0.2, 0.4, 0.77}) {
    cplx ref = 0;
    for (std::size_t k = 0; k < u.size(); ++k) ref += u.coeffs[k] * oracle::cheb_t_prime(k, t);
    CHECK(std::abs(cheb_eval(du, t) - I * ref) < 1e-11);
  }
}

TEST_CASE("first-to-second kind change is exact") {
  std::mt19937_64 rng(5);
  for (std::size_t K : {1u, 2u, 3u, 10u}) {
    const auto u = random_series(K, rng);
    const auto v = first_to_second_kind(u);
    REQUIRE(v.size() == K);
    for (double t : {-1.0, -0.5, 0.1, 0.9, 1.0}) CHECK(std::abs(cheb_eval(v, t) - cheb_eval(u, t)) < 1e-12);
  }
}

TEST_CASE("adjoints of the structural maps") {
  std::mt19937_64 rng(6);
  const auto x = random_block(11, 4, rng);
  const auto y = random_block(11, 4, rng);
  CHECK(std::abs(frob_inner(diff_to_second_kind_rows(x), y) -
                 frob_inner(x, diff_to_second_kind_adjoint_rows(y))) < 1e-11);
  CHECK(std::abs(frob_inner(first_to_second_kind_rows(x), y) -
                 frob_inner(x, first_to_second_kind_transpose_rows(y))) < 1e-12);
}

TEST_CASE("evaluation row and zero padding") {
  const auto J = eval_at_zero_row(7);
  const std::vector<double> expected{1, 0, -1, 0, 1, 0, -1};
  for (std::size_t k = 0; k < 7; ++k) CHECK(J[k] == doctest::Approx(expected[k]));
  const auto r = eval_row(9, 0.37);
  for (std::size_t k = 0; k < 9; ++k) CHECK(r[k] == doctest::Approx(oracle::cheb_t(k, 0.37)).epsilon(1e-13));

  std::mt19937_64 rng(7);
  const auto u = random_series(5, rng);
  const auto e = extend(u, 9);
  REQUIRE(e.size() == 9);
  for (std::size_t k = 5; k < 9; ++k) CHECK(e.coeffs[k] == cplx(0));
  CHECK(std::abs(cheb_eval(e, 0.2) - cheb_eval(u, 0.2)) < 1e-14);
  CHECK_THROWS_AS(extend(u, 4), std::invalid_argument);
}
