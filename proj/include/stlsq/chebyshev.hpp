#pragma once

// Chebyshev machinery on (-1, 1): Clenshaw evaluation, Gauss-Chebyshev
// quadrature, collocation at the Gauss nodes, and the structural maps used
// by the least-squares assembly (derivative into the U basis, T -> U basis
// change, evaluation row at a point, zero-padding).
//
// The *_rows variants act on SpaceTimeCoefficients: each row is one
// coefficient and the columns are the spatial degrees of freedom. The
// ChebSeries overloads are the scalar case (one column).

#include <cstddef>
#include <span>
#include <vector>

#include "stlsq/types.hpp"

namespace stlsq {

enum class ChebKind { FirstKind, SecondKind };

struct ChebSeries {
  ChebKind kind = ChebKind::FirstKind;
  std::vector<cplx> coeffs;

  std::size_t size() const { return coeffs.size(); }
};

/// Gauss-Chebyshev rule for the weight (1 - t^2)^(-1/2).
/// Nodes are x_l = cos(pi (2l+1) / (2L)), l = 0..L-1 (decreasing); every
/// weight equals pi / L. Exact for polynomials of degree <= 2L - 1.
struct ChebQuadrature {
  std::vector<double> nodes;
  std::vector<double> weights;

  std::size_t size() const { return nodes.size(); }
};

ChebQuadrature gauss_cheb(std::size_t L);

/// Clenshaw summation of sum_k c_k T_k(t) (or U_k(t)). Throws
/// std::domain_error for |t| > 1.
cplx cheb_eval(const ChebSeries& series, double t);

/// Evaluates every column of a first-kind coefficient block at t.
StateVector cheb_eval_rows(const SpaceTimeCoefficients& coeffs, double t);

/// Dense O(L^2) tables or FFTW cosine transforms; both are exact to roundoff.
enum class TransformMode { Dense, Fast };

/// Collocation pi^L at the Gauss-Chebyshev nodes and its inverse, applied
/// column-wise to L x M coefficient blocks.
class ChebTransform {
 public:
  explicit ChebTransform(std::size_t L, TransformMode mode = TransformMode::Dense);

  std::size_t size() const { return quad_.size(); }
  const ChebQuadrature& quadrature() const { return quad_; }
  TransformMode mode() const { return mode_; }

  /// values(l, :) = sum_k coeffs(k, :) T_k(x_l)
  SpaceTimeCoefficients collocate(const SpaceTimeCoefficients& coeffs) const;
  /// Exact inverse of collocate.
  SpaceTimeCoefficients uncollocate(const SpaceTimeCoefficients& values) const;

 private:
  SpaceTimeCoefficients cosine_transform(const SpaceTimeCoefficients& in,
                                         bool forward) const;

  ChebQuadrature quad_;
  TransformMode mode_;
  // table_(l, k) = T_k(x_l)
  Eigen::MatrixXcd table_;
  // inverse_(k, l) = s_k T_k(x_l), s_0 = 1/L, s_k = 2/L
  Eigen::MatrixXcd inverse_;
};

std::vector<cplx> collocate(std::span<const cplx> coeffs, const ChebQuadrature& quad);
ChebSeries uncollocate(std::span<const cplx> values, const ChebQuadrature& quad);

/// Coefficients of i u' in the U basis (the matrix D^K). Same length as u,
/// last row zero.
SpaceTimeCoefficients diff_to_second_kind_rows(const SpaceTimeCoefficients& u);
ChebSeries diff_to_second_kind(const ChebSeries& u);
/// Adjoint of diff_to_second_kind_rows.
SpaceTimeCoefficients diff_to_second_kind_adjoint_rows(const SpaceTimeCoefficients& g);

/// T-basis to U-basis change (the matrix C^L). Exact: T_0 = U_0,
/// T_1 = U_1 / 2, T_k = (U_k - U_{k-2}) / 2.
SpaceTimeCoefficients first_to_second_kind_rows(const SpaceTimeCoefficients& u);
ChebSeries first_to_second_kind(const ChebSeries& u);
/// Transpose of the basis change.
SpaceTimeCoefficients first_to_second_kind_transpose_rows(
    const SpaceTimeCoefficients& g);

/// (T_k(t))_{k<K}; at t = 0 this is the row J^K = (1, 0, -1, 0, 1, ...).
std::vector<double> eval_row(std::size_t K, double t);
inline std::vector<double> eval_at_zero_row(std::size_t K) { return eval_row(K, 0.0); }

/// Zero-padding from K to L >= K coefficients (the matrix P^{L,K}).
SpaceTimeCoefficients extend_rows(const SpaceTimeCoefficients& u, std::size_t L);
ChebSeries extend(const ChebSeries& u, std::size_t L);

}  // namespace stlsq
