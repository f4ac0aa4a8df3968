#include "stlsq/torus_fourier.hpp"

#include <cmath>
#include <map>
#include <stdexcept>
#include <vector>

#include "fftw_support.hpp"

namespace stlsq {

namespace {

struct Plans {
  fftw_plan backward;  // coefficients -> grid values
  fftw_plan forward;   // grid values -> unnormalized coefficients
};

// In-place, unaligned plans cached per N; reused through fftw_execute_dft.
const Plans& plans_for(int N) {
  static std::map<int, Plans> cache;
  std::lock_guard lock(detail::fftw_planner_mutex());
  auto it = cache.find(N);
  if (it != cache.end()) return it->second;
  std::vector<fftw_complex> scratch(static_cast<std::size_t>(N) * N);
  Plans p{};
  p.backward = fftw_plan_dft_2d(N, N, scratch.data(), scratch.data(), FFTW_BACKWARD,
                                FFTW_ESTIMATE | FFTW_UNALIGNED);
  p.forward = fftw_plan_dft_2d(N, N, scratch.data(), scratch.data(), FFTW_FORWARD,
                               FFTW_ESTIMATE | FFTW_UNALIGNED);
  return cache.emplace(N, p).first->second;
}

fftw_complex* as_fftw(cplx* p) { return reinterpret_cast<fftw_complex*>(p); }

void check_modes(int N) {
  if (N <= 0 || N % 2 != 0)
    throw std::invalid_argument("torus field: N must be even and positive");
}

void check_span(int N, std::size_t size) {
  check_modes(N);
  if (size != static_cast<std::size_t>(N) * static_cast<std::size_t>(N))
    throw std::invalid_argument("torus field: coefficient count is not N*N");
}

// exp(-i s 4 pi^2 k^2) per storage index.
std::vector<cplx> axis_phases(int N, double s) {
  std::vector<cplx> ph(static_cast<std::size_t>(N));
  for (int i = 0; i < N; ++i) {
    const double k = FourierField2D::frequency(N, i);
    ph[static_cast<std::size_t>(i)] = std::polar(1.0, -s * 4.0 * pi * pi * k * k);
  }
  return ph;
}

}  // namespace

FourierField2D::FourierField2D(int N) : n_(N) {
  check_modes(N);
  coeffs_ = StateVector::Zero(static_cast<Eigen::Index>(dim()));
}

FourierField2D::FourierField2D(int N, StateVector coeffs) : n_(N), coeffs_(std::move(coeffs)) {
  check_span(N, static_cast<std::size_t>(coeffs_.size()));
}

Eigen::Index FourierField2D::index(int N, int k, int l) {
  if (k < -N / 2 || k >= N / 2 || l < -N / 2 || l >= N / 2)
    throw std::out_of_range("FourierField2D: frequency outside [-N/2, N/2)");
  const int i = (k + N) % N;
  const int j = (l + N) % N;
  return static_cast<Eigen::Index>(i) * N + j;
}

double MovingCosinePotential::operator()(double t, double x, double y) const {
  return amplitude * (std::cos(2.0 * pi * (x - c1 * t)) + std::cos(2.0 * pi * (y - c2 * t)) +
                      std::cos(2.0 * pi * (x - y)));
}

Eigen::VectorXcd grid_values(const FourierField2D& field) {
  const int N = field.modes();
  Eigen::VectorXcd values = field.coeffs();
  fftw_execute_dft(plans_for(N).backward, as_fftw(values.data()), as_fftw(values.data()));
  return values;
}

FourierField2D field_from_values(int N, const Eigen::VectorXcd& values) {
  check_span(N, static_cast<std::size_t>(values.size()));
  StateVector coeffs = values;
  fftw_execute_dft(plans_for(N).forward, as_fftw(coeffs.data()), as_fftw(coeffs.data()));
  coeffs /= static_cast<double>(N) * N;
  return FourierField2D(N, std::move(coeffs));
}

Eigen::VectorXd laplacian_symbol(int N) {
  check_modes(N);
  Eigen::VectorXd sym(static_cast<Eigen::Index>(N) * N);
  for (int i = 0; i < N; ++i) {
    const double k = FourierField2D::frequency(N, i);
    for (int j = 0; j < N; ++j) {
      const double l = FourierField2D::frequency(N, j);
      sym(static_cast<Eigen::Index>(i) * N + j) = 4.0 * pi * pi * (k * k + l * l);
    }
  }
  return sym;
}

void free_propagate_inplace(int N, std::span<cplx> coeffs, double s) {
  check_span(N, coeffs.size());
  if (s == 0.0) return;
  const auto ph = axis_phases(N, s);
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j)
      coeffs[static_cast<std::size_t>(i) * N + j] *= ph[static_cast<std::size_t>(i)] *
                                                      ph[static_cast<std::size_t>(j)];
}

FourierField2D free_propagate(const FourierField2D& field, double s) {
  FourierField2D out = field;
  free_propagate_inplace(out.modes(), out.span(), s);
  return out;
}

void apply_potential(int N, std::span<const cplx> in, std::span<cplx> out,
                     const MovingCosinePotential& pot, double t) {
  check_span(N, in.size());
  check_span(N, out.size());
  const auto n = static_cast<std::size_t>(N);
  std::vector<cplx> buf(in.begin(), in.end());
  const Plans& plans = plans_for(N);
  fftw_execute_dft(plans.backward, as_fftw(buf.data()), as_fftw(buf.data()));

  // V separates into x, y and (x - y) parts on the grid.
  std::vector<double> vx(n), vy(n), vxy(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double x = static_cast<double>(j) / N;
    vx[j] = std::cos(2.0 * pi * (x - pot.c1 * t));
    vy[j] = std::cos(2.0 * pi * (x - pot.c2 * t));
    vxy[j] = std::cos(2.0 * pi * x);
  }
  const double scale = pot.amplitude / (static_cast<double>(N) * N);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t m = 0; m < n; ++m)
      buf[j * n + m] *= scale * (vx[j] + vy[m] + vxy[(j + n - m) % n]);

  fftw_execute_dft(plans.forward, as_fftw(buf.data()), as_fftw(buf.data()));
  std::copy(buf.begin(), buf.end(), out.begin());
}

FourierField2D apply_potential(const FourierField2D& field, const MovingCosinePotential& pot,
                               double t) {
  FourierField2D out(field.modes());
  apply_potential(field.modes(), field.span(), out.span(), pot, t);
  return out;
}

void skewed_potential(int N, std::span<const cplx> in, std::span<cplx> out,
                      const MovingCosinePotential& pot, double t, double tau) {
  check_span(N, in.size());
  std::vector<cplx> buf(in.begin(), in.end());
  const double s = t * tau;
  free_propagate_inplace(N, buf, s);
  apply_potential(N, buf, out, pot, s);
  free_propagate_inplace(N, out, -s);
}

FourierField2D skewed_potential(const FourierField2D& field, const MovingCosinePotential& pot,
                                double t, double tau) {
  FourierField2D out(field.modes());
  skewed_potential(field.modes(), field.span(), out.span(), pot, t, tau);
  return out;
}

}  // namespace stlsq
