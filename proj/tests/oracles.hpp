#pragma once

// Brute-force references for the tests. Nothing here calls into the
// library: polynomials are evaluated with the trigonometric formulas,
// interpolation is barycentric and integrals use plain Gauss-Chebyshev
// sums.

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <random>
#include <vector>

namespace oracle {

using cplx = std::complex<double>;
const double pi = std::acos(-1.0);

inline double cheb_t(std::size_t k, double x) { return std::cos(double(k) * std::acos(x)); }

// T_k'(cos th) = k sin(k th) / sin(th); endpoints are avoided by the callers.
inline double cheb_t_prime(std::size_t k, double x) {
  const double th = std::acos(x);
  return double(k) * std::sin(double(k) * th) / std::sin(th);
}

inline double gauss_node(std::size_t l, std::size_t L) {
  return std::cos(pi * (2.0 * double(l) + 1.0) / (2.0 * double(L)));
}

// Value at x of the degree L-1 interpolant through vals at the L
// first-kind Chebyshev nodes.
inline cplx barycentric(const std::vector<cplx>& vals, double x) {
  const std::size_t L = vals.size();
  cplx num = 0;
  double den = 0;
  for (std::size_t l = 0; l < L; ++l) {
    const double th = pi * (2.0 * double(l) + 1.0) / (2.0 * double(L));
    const double xl = std::cos(th);
    const double w = ((l % 2) ? -1.0 : 1.0) * std::sin(th);
    if (x == xl) return vals[l];
    num += w / (x - xl) * vals[l];
    den += w / (x - xl);
  }
  return num / den;
}

// B(t) as a dense Hermitian matrix.
using MatrixField = std::function<Eigen::MatrixXcd(double)>;

// Normal matrix Q of the collocated least-squares functional
//   |u(t0)|^2 + int sqrt(1 - t^2) |i u' - I_L[B u]|^2 dt
// for u = sum_{k<K} u_k T_k, u_k in C^d, flattened as k * d + a. Each
// residual is a polynomial of degree < L, so M = L + 1 Gauss-Chebyshev
// nodes for the weight (1 - t^2) times the Chebyshev weight are exact.
inline Eigen::MatrixXcd dense_normal(std::size_t K, std::size_t L, std::size_t d,
                                     const MatrixField& B, double t0 = 0.0) {
  const std::size_t M = std::max(K, L) + 1;
  const std::size_t n = K * d;
  std::vector<Eigen::MatrixXcd> Bl(L);
  for (std::size_t l = 0; l < L; ++l) Bl[l] = B(gauss_node(l, L));

  // res(m * d + b, j): component b of the residual of basis vector j at node m.
  Eigen::MatrixXcd res(M * d, n);
  for (std::size_t k = 0; k < K; ++k) {
    for (std::size_t a = 0; a < d; ++a) {
      const std::size_t j = k * d + a;
      for (std::size_t b = 0; b < d; ++b) {
        std::vector<cplx> vals(L);
        for (std::size_t l = 0; l < L; ++l)
          vals[l] = Bl[l](Eigen::Index(b), Eigen::Index(a)) * cheb_t(k, gauss_node(l, L));
        for (std::size_t m = 0; m < M; ++m) {
          const double x = gauss_node(m, M);
          const cplx deriv = a == b ? cplx(0, 1) * cheb_t_prime(k, x) : cplx(0);
          res(Eigen::Index(m * d + b), Eigen::Index(j)) = deriv - barycentric(vals, x);
        }
      }
    }
  }
  Eigen::MatrixXcd Q = Eigen::MatrixXcd::Zero(Eigen::Index(n), Eigen::Index(n));
  for (std::size_t m = 0; m < M; ++m) {
    const double x = gauss_node(m, M);
    const double w = pi / double(M) * (1.0 - x * x);
    const auto rows = res.middleRows(Eigen::Index(m * d), Eigen::Index(d));
    Q += w * rows.adjoint() * rows;
  }
  for (std::size_t k = 0; k < K; ++k)
    for (std::size_t kk = 0; kk < K; ++kk)
      for (std::size_t a = 0; a < d; ++a)
        Q(Eigen::Index(k * d + a), Eigen::Index(kk * d + a)) += cheb_t(k, t0) * cheb_t(kk, t0);
  return Q;
}

// Free part: B = 0.
inline Eigen::MatrixXcd dense_free_normal(std::size_t K, std::size_t d = 1, double t0 = 0.0) {
  return dense_normal(K, K, d, [d](double) {
    return Eigen::MatrixXcd::Zero(Eigen::Index(d), Eigen::Index(d)).eval();
  }, t0);
}

inline Eigen::MatrixXcd random_hermitian(std::size_t d, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Eigen::MatrixXcd A{Eigen::Index(d), Eigen::Index(d)};
  for (Eigen::Index i = 0; i < A.rows(); ++i)
    for (Eigen::Index j = 0; j < A.cols(); ++j) A(i, j) = cplx(g(rng), g(rng));
  return (A + A.adjoint()) / 2.0;
}

inline Eigen::VectorXcd random_vector(Eigen::Index n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Eigen::VectorXcd v(n);
  for (auto& x : v) x = cplx(g(rng), g(rng));
  return v;
}

}  // namespace oracle
