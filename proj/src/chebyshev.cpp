#include "stlsq/chebyshev.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "fftw_support.hpp"

namespace stlsq {

namespace {

SpaceTimeCoefficients as_column(std::span<const cplx> v) {
  SpaceTimeCoefficients m(static_cast<Eigen::Index>(v.size()), 1);
  for (std::size_t i = 0; i < v.size(); ++i) m(static_cast<Eigen::Index>(i), 0) = v[i];
  return m;
}

std::vector<cplx> from_column(const SpaceTimeCoefficients& m) {
  std::vector<cplx> v(static_cast<std::size_t>(m.rows()));
  for (Eigen::Index i = 0; i < m.rows(); ++i) v[static_cast<std::size_t>(i)] = m(i, 0);
  return v;
}

void require_nonempty(std::size_t n, const char* what) {
  if (n == 0) throw std::invalid_argument(std::string(what) + ": empty coefficient vector");
}

}  // namespace

ChebQuadrature gauss_cheb(std::size_t L) {
  if (L == 0) throw std::invalid_argument("gauss_cheb: L must be positive");
  ChebQuadrature q;
  q.nodes.resize(L);
  q.weights.assign(L, pi / static_cast<double>(L));
  for (std::size_t l = 0; l < L; ++l)
    q.nodes[l] = std::cos(pi * static_cast<double>(2 * l + 1) / static_cast<double>(2 * L));
  return q;
}

cplx cheb_eval(const ChebSeries& series, double t) {
  if (!(std::abs(t) <= 1.0)) throw std::domain_error("cheb_eval: |t| > 1");
  require_nonempty(series.size(), "cheb_eval");
  const auto& c = series.coeffs;
  cplx b1 = 0.0, b2 = 0.0;
  for (std::size_t k = c.size(); k-- > 1;) {
    const cplx b0 = c[k] + 2.0 * t * b1 - b2;
    b2 = b1;
    b1 = b0;
  }
  if (series.kind == ChebKind::FirstKind) return c[0] + t * b1 - b2;
  return c[0] + 2.0 * t * b1 - b2;
}

StateVector cheb_eval_rows(const SpaceTimeCoefficients& coeffs, double t) {
  if (!(std::abs(t) <= 1.0)) throw std::domain_error("cheb_eval_rows: |t| > 1");
  require_nonempty(static_cast<std::size_t>(coeffs.rows()), "cheb_eval_rows");
  const Eigen::Index m = coeffs.cols();
  StateVector b1 = StateVector::Zero(m), b2 = StateVector::Zero(m), b0(m);
  for (Eigen::Index k = coeffs.rows() - 1; k >= 1; --k) {
    b0 = coeffs.row(k).transpose() + 2.0 * t * b1 - b2;
    b2.swap(b1);
    b1.swap(b0);
  }
  return coeffs.row(0).transpose() + t * b1 - b2;
}

ChebTransform::ChebTransform(std::size_t L, TransformMode mode)
    : quad_(gauss_cheb(L)), mode_(mode) {
  if (mode_ == TransformMode::Fast) return;
  const auto n = static_cast<Eigen::Index>(L);
  table_.resize(n, n);
  inverse_.resize(n, n);
  for (Eigen::Index l = 0; l < n; ++l) {
    const double theta = pi * static_cast<double>(2 * l + 1) / static_cast<double>(2 * n);
    for (Eigen::Index k = 0; k < n; ++k) {
      const double v = std::cos(static_cast<double>(k) * theta);
      table_(l, k) = v;
      inverse_(k, l) = (k == 0 ? 1.0 : 2.0) / static_cast<double>(n) * v;
    }
  }
}

SpaceTimeCoefficients ChebTransform::collocate(const SpaceTimeCoefficients& coeffs) const {
  if (static_cast<std::size_t>(coeffs.rows()) != size())
    throw std::invalid_argument("collocate: coefficient count differs from quadrature size");
  if (mode_ == TransformMode::Fast) return cosine_transform(coeffs, false);
  return table_ * coeffs;
}

SpaceTimeCoefficients ChebTransform::uncollocate(const SpaceTimeCoefficients& values) const {
  if (static_cast<std::size_t>(values.rows()) != size())
    throw std::invalid_argument("uncollocate: value count differs from quadrature size");
  if (mode_ == TransformMode::Fast) return cosine_transform(values, true);
  return inverse_ * values;
}

// forward == true: values -> coefficients (REDFT10, i.e. DCT-II).
// forward == false: coefficients -> values (REDFT01, i.e. DCT-III).
SpaceTimeCoefficients ChebTransform::cosine_transform(const SpaceTimeCoefficients& in,
                                                      bool forward) const {
  const int n = static_cast<int>(in.rows());
  const int m = static_cast<int>(in.cols());
  const int howmany = 2 * m;
  // Column-major real buffer: column j holds the real (even j) or imaginary
  // (odd j) part of spatial column j / 2.
  std::vector<double> buf(static_cast<std::size_t>(n) * static_cast<std::size_t>(howmany));
  for (int j = 0; j < m; ++j) {
    double* re = buf.data() + static_cast<std::size_t>(2 * j) * n;
    double* im = re + n;
    for (int k = 0; k < n; ++k) {
      cplx v = in(k, j);
      if (!forward && k > 0) v *= 0.5;
      re[k] = v.real();
      im[k] = v.imag();
    }
  }
  const fftw_r2r_kind kind = forward ? FFTW_REDFT10 : FFTW_REDFT01;
  fftw_plan plan;
  {
    std::lock_guard lock(detail::fftw_planner_mutex());
    plan = fftw_plan_many_r2r(1, &n, howmany, buf.data(), nullptr, 1, n, buf.data(), nullptr,
                              1, n, &kind, FFTW_ESTIMATE);
  }
  fftw_execute(plan);
  {
    std::lock_guard lock(detail::fftw_planner_mutex());
    fftw_destroy_plan(plan);
  }
  SpaceTimeCoefficients out(n, m);
  for (int j = 0; j < m; ++j) {
    const double* re = buf.data() + static_cast<std::size_t>(2 * j) * n;
    const double* im = re + n;
    for (int k = 0; k < n; ++k) {
      cplx v{re[k], im[k]};
      if (forward) v /= (k == 0 ? 2.0 * n : static_cast<double>(n));
      out(k, j) = v;
    }
  }
  return out;
}

std::vector<cplx> collocate(std::span<const cplx> coeffs, const ChebQuadrature& quad) {
  if (coeffs.size() != quad.size())
    throw std::invalid_argument("collocate: coefficient count differs from quadrature size");
  return from_column(ChebTransform(quad.size()).collocate(as_column(coeffs)));
}

ChebSeries uncollocate(std::span<const cplx> values, const ChebQuadrature& quad) {
  if (values.size() != quad.size())
    throw std::invalid_argument("uncollocate: value count differs from quadrature size");
  return {ChebKind::FirstKind,
          from_column(ChebTransform(quad.size()).uncollocate(as_column(values)))};
}

SpaceTimeCoefficients diff_to_second_kind_rows(const SpaceTimeCoefficients& u) {
  require_nonempty(static_cast<std::size_t>(u.rows()), "diff_to_second_kind");
  SpaceTimeCoefficients g = SpaceTimeCoefficients::Zero(u.rows(), u.cols());
  for (Eigen::Index k = 0; k + 1 < u.rows(); ++k)
    g.row(k) = (I * static_cast<double>(k + 1)) * u.row(k + 1);
  return g;
}

SpaceTimeCoefficients diff_to_second_kind_adjoint_rows(const SpaceTimeCoefficients& g) {
  require_nonempty(static_cast<std::size_t>(g.rows()), "diff_to_second_kind_adjoint");
  SpaceTimeCoefficients u = SpaceTimeCoefficients::Zero(g.rows(), g.cols());
  for (Eigen::Index k = 0; k + 1 < g.rows(); ++k)
    u.row(k + 1) = (-I * static_cast<double>(k + 1)) * g.row(k);
  return u;
}

ChebSeries diff_to_second_kind(const ChebSeries& u) {
  return {ChebKind::SecondKind, from_column(diff_to_second_kind_rows(as_column(u.coeffs)))};
}

SpaceTimeCoefficients first_to_second_kind_rows(const SpaceTimeCoefficients& u) {
  const Eigen::Index n = u.rows();
  require_nonempty(static_cast<std::size_t>(n), "first_to_second_kind");
  SpaceTimeCoefficients g = 0.5 * u;
  g.row(0) = u.row(0);
  for (Eigen::Index k = 2; k < n; ++k) g.row(k - 2) -= 0.5 * u.row(k);
  return g;
}

SpaceTimeCoefficients first_to_second_kind_transpose_rows(const SpaceTimeCoefficients& g) {
  const Eigen::Index n = g.rows();
  require_nonempty(static_cast<std::size_t>(n), "first_to_second_kind_transpose");
  SpaceTimeCoefficients u = 0.5 * g;
  u.row(0) = g.row(0);
  for (Eigen::Index k = 2; k < n; ++k) u.row(k) -= 0.5 * g.row(k - 2);
  return u;
}

ChebSeries first_to_second_kind(const ChebSeries& u) {
  return {ChebKind::SecondKind, from_column(first_to_second_kind_rows(as_column(u.coeffs)))};
}

std::vector<double> eval_row(std::size_t K, double t) {
  if (!(std::abs(t) <= 1.0)) throw std::domain_error("eval_row: |t| > 1");
  std::vector<double> row(K);
  if (K > 0) row[0] = 1.0;
  if (K > 1) row[1] = t;
  for (std::size_t k = 2; k < K; ++k) row[k] = 2.0 * t * row[k - 1] - row[k - 2];
  return row;
}

SpaceTimeCoefficients extend_rows(const SpaceTimeCoefficients& u, std::size_t L) {
  if (L < static_cast<std::size_t>(u.rows()))
    throw std::invalid_argument("extend: target length smaller than series length");
  SpaceTimeCoefficients out = SpaceTimeCoefficients::Zero(static_cast<Eigen::Index>(L), u.cols());
  out.topRows(u.rows()) = u;
  return out;
}

ChebSeries extend(const ChebSeries& u, std::size_t L) {
  return {u.kind, from_column(extend_rows(as_column(u.coeffs), L))};
}

}  // namespace stlsq
