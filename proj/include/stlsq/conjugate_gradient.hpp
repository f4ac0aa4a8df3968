#pragma once

#include <cmath>
#include <cstddef>
#include <functional>

#include "stlsq/types.hpp"

namespace stlsq {

template <typename Vec>
cplx inner(const Vec& a, const Vec& b) {
  return (a.array().conjugate() * b.array()).sum();
}

struct CgResult {
  std::size_t iterations = 0;
  double relative_residual = 0.0;
  bool converged = false;
};

/// Preconditioned conjugate gradient for a Hermitian positive definite
/// operator, Hermitian inner product. Stops when
/// sqrt(<r, M^-1 r>) <= tol * sqrt(<b, M^-1 b>). x holds the initial guess
/// on entry and the iterate on exit. observe(iteration, x) runs after every
/// update when provided.
template <typename Vec, typename Apply, typename Precond>
CgResult preconditioned_cg(const Apply& apply, const Precond& precond, const Vec& b, Vec& x,
                           double tol, std::size_t maxit,
                           const std::function<void(std::size_t, const Vec&)>& observe = {}) {
  CgResult res;
  const Vec zb = precond(b);
  const double bnorm = std::sqrt(std::abs(inner(b, zb).real()));
  if (bnorm == 0.0) {
    x.setZero();
    res.converged = true;
    return res;
  }
  Vec r = b - apply(x);
  Vec z = precond(r);
  Vec p = z;
  double rz = inner(r, z).real();
  res.relative_residual = std::sqrt(std::abs(rz)) / bnorm;
  if (res.relative_residual <= tol) {
    res.converged = true;
    return res;
  }
  while (res.iterations < maxit) {
    const Vec q = apply(p);
    const double alpha = rz / inner(p, q).real();
    x += alpha * p;
    r -= alpha * q;
    ++res.iterations;
    if (observe) observe(res.iterations, x);
    z = precond(r);
    const double rz_next = inner(r, z).real();
    res.relative_residual = std::sqrt(std::abs(rz_next)) / bnorm;
    if (res.relative_residual <= tol) {
      res.converged = true;
      break;
    }
    p = z + (rz_next / rz) * p;
    rz = rz_next;
  }
  return res;
}

}  // namespace stlsq
