#pragma once

// Band-limited fields on the 2-torus (R/Z)^2, spanned by
// e_{k,l}(x, y) = exp(2 i pi (k x + l y)) with -N/2 <= k, l < N/2.
//
// Coefficients are stored in standard DFT order, row-major over (k, l):
// index(k, l) = ((k mod N) * N + (l mod N)). Grid points are x_j = j / N.

#include <span>

#include "stlsq/types.hpp"

namespace stlsq {

class FourierField2D {
 public:
  FourierField2D() = default;
  /// Zero field; N must be even and positive.
  explicit FourierField2D(int N);
  FourierField2D(int N, StateVector coeffs);

  int modes() const { return n_; }
  std::size_t dim() const { return static_cast<std::size_t>(n_) * static_cast<std::size_t>(n_); }

  /// Coefficient of e_{k,l}; k, l in [-N/2, N/2).
  cplx& operator()(int k, int l) { return coeffs_(index(n_, k, l)); }
  cplx operator()(int k, int l) const { return coeffs_(index(n_, k, l)); }

  StateVector& coeffs() { return coeffs_; }
  const StateVector& coeffs() const { return coeffs_; }
  std::span<cplx> span() { return {coeffs_.data(), dim()}; }
  std::span<const cplx> span() const { return {coeffs_.data(), dim()}; }

  /// L^2(T^2) norm; the e_{k,l} are orthonormal.
  double norm() const { return coeffs_.norm(); }

  static Eigen::Index index(int N, int k, int l);
  /// Signed frequency stored at storage position i in [0, N).
  static int frequency(int N, int i) { return i < N / 2 ? i : i - N; }

 private:
  int n_ = 0;
  StateVector coeffs_;
};

/// V(t, x, y) = amplitude * (cos 2pi(x - c1 t) + cos 2pi(y - c2 t) + cos 2pi(x - y)).
struct MovingCosinePotential {
  double c1 = 1.0;
  double c2 = 0.5;
  double amplitude = 1.0;

  double operator()(double t, double x, double y) const;
  /// sup |V| over the torus and all times.
  double sup_norm() const { return 3.0 * std::abs(amplitude); }
};

/// Point values u(x_j, y_m) on the N x N grid, stored row-major over (j, m).
/// field_from_values is its exact inverse.
Eigen::VectorXcd grid_values(const FourierField2D& field);
FourierField2D field_from_values(int N, const Eigen::VectorXcd& values);

/// Eigenvalue of -Delta on each mode: 4 pi^2 (k^2 + l^2), same layout as
/// the coefficients.
Eigen::VectorXd laplacian_symbol(int N);

/// exp(-i s (-Delta)): mode (k, l) picks up exp(-i s 4 pi^2 (k^2 + l^2)).
FourierField2D free_propagate(const FourierField2D& field, double s);
void free_propagate_inplace(int N, std::span<cplx> coeffs, double s);

/// pi_N V(t) pi_N u, computed by multiplying grid values and transforming
/// back. Modes with k or l in {-N/2, N/2 - 1} receive aliased contributions
/// from the frequencies +-(N/2 + 1) removed by the truncation.
FourierField2D apply_potential(const FourierField2D& field, const MovingCosinePotential& pot,
                               double t);
void apply_potential(int N, std::span<const cplx> in, std::span<cplx> out,
                     const MovingCosinePotential& pot, double t);

/// e^{-i t tau Delta} (pi_N V(t tau) pi_N) e^{i t tau Delta} v: the generator
/// seen by the interaction-picture unknown on the rescaled interval.
FourierField2D skewed_potential(const FourierField2D& field, const MovingCosinePotential& pot,
                                double t, double tau);
void skewed_potential(int N, std::span<const cplx> in, std::span<cplx> out,
                      const MovingCosinePotential& pot, double t, double tau);

}  // namespace stlsq
