#pragma once

#include <complex>
#include <numbers>

#include <Eigen/Dense>

namespace stlsq {

using cplx = std::complex<double>;

// Space-time coefficient block: row k holds the k-th Chebyshev coefficient,
// which is itself an element of the spatial Hilbert space (length = cols).
using SpaceTimeCoefficients =
    Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

using StateVector = Eigen::VectorXcd;

inline constexpr double pi = std::numbers::pi;
inline constexpr cplx I{0.0, 1.0};

}  // namespace stlsq
