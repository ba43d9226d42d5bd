#include "gabor/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <vector>

#include "gabor/error.hpp"

namespace gabor {

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, cplx{0.0, 0.0}) {}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::without_row(std::size_t r) const {
  if (r >= rows_) throw Error(Errc::InvalidArgument, "row index out of range");
  ComplexMatrix out(rows_ - 1, cols_);
  for (std::size_t i = 0, k = 0; i < rows_; ++i) {
    if (i == r) continue;
    std::copy_n(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_), cols_,
                out.data_.begin() + static_cast<std::ptrdiff_t>(k * cols_));
    ++k;
  }
  return out;
}

ComplexMatrix ComplexMatrix::block(std::size_t r0, std::size_t c0, std::size_t nr,
                                   std::size_t nc) const {
  if (r0 + nr > rows_ || c0 + nc > cols_) throw Error(Errc::InvalidArgument, "block out of range");
  ComplexMatrix out(nr, nc);
  for (std::size_t i = 0; i < nr; ++i)
    for (std::size_t j = 0; j < nc; ++j) out(i, j) = (*this)(r0 + i, c0 + j);
  return out;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix out(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out(j, i) = std::conj((*this)(i, j));
  return out;
}

ComplexMatrix ComplexMatrix::operator*(const ComplexMatrix& rhs) const {
  if (cols_ != rhs.rows_) throw Error(Errc::InvalidArgument, "matrix product shape mismatch");
  ComplexMatrix out(rows_, rhs.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      const cplx a = (*this)(i, k);
      if (a == cplx{}) continue;
      for (std::size_t j = 0; j < rhs.cols_; ++j) out(i, j) += a * rhs(k, j);
    }
  return out;
}

ComplexMatrix& ComplexMatrix::operator*=(cplx s) {
  for (auto& v : data_) v *= s;
  return *this;
}

cplx det_lu(const ComplexMatrix& m) {
  if (!m.square()) throw Error(Errc::InvalidArgument, "det_lu needs a square matrix");
  const std::size_t n = m.rows();
  ComplexMatrix lu = m;
  cplx det{1.0, 0.0};
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    double best = std::abs(lu(k, k));
    for (std::size_t i = k + 1; i < n; ++i) {
      if (double v = std::abs(lu(i, k)); v > best) {
        best = v;
        piv = i;
      }
    }
    if (best == 0.0) return {0.0, 0.0};
    if (piv != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(lu(k, j), lu(piv, j));
      det = -det;
    }
    const cplx pivot = lu(k, k);
    det *= pivot;
    for (std::size_t i = k + 1; i < n; ++i) {
      const cplx f = lu(i, k) / pivot;
      if (f == cplx{}) continue;
      for (std::size_t j = k + 1; j < n; ++j) lu(i, j) -= f * lu(k, j);
    }
  }
  return det;
}

namespace {

struct QuadComplex {
  __float128 re = 0, im = 0;

  QuadComplex operator-(const QuadComplex& o) const { return {re - o.re, im - o.im}; }
  QuadComplex operator*(const QuadComplex& o) const { return {re * o.re - im * o.im, re * o.im + im * o.re}; }
  QuadComplex operator/(const QuadComplex& o) const {
    const __float128 d = o.re * o.re + o.im * o.im;
    return {(re * o.re + im * o.im) / d, (im * o.re - re * o.im) / d};
  }
  __float128 norm() const { return re * re + im * im; }
};

}  // namespace

cplx det_lu_quad(const ComplexMatrix& m) {
  if (!m.square()) throw Error(Errc::InvalidArgument, "det_lu_quad needs a square matrix");
  const std::size_t n = m.rows();
  std::vector<QuadComplex> lu(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) lu[i * n + j] = {m(i, j).real(), m(i, j).imag()};
  QuadComplex det{1, 0};
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    for (std::size_t i = k + 1; i < n; ++i)
      if (lu[i * n + k].norm() > lu[piv * n + k].norm()) piv = i;
    if (lu[piv * n + k].norm() == 0) return {0.0, 0.0};
    if (piv != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(lu[k * n + j], lu[piv * n + j]);
      det = {-det.re, -det.im};
    }
    const QuadComplex pivot = lu[k * n + k];
    det = det * pivot;
    for (std::size_t i = k + 1; i < n; ++i) {
      const QuadComplex f = lu[i * n + k] / pivot;
      for (std::size_t j = k + 1; j < n; ++j) lu[i * n + j] = lu[i * n + j] - f * lu[k * n + j];
    }
  }
  return {static_cast<double>(det.re), static_cast<double>(det.im)};
}

namespace {

// Column-major working copy so rotations touch contiguous memory.
struct Columns {
  std::size_t rows;
  std::vector<std::vector<cplx>> cols;
};

Columns to_columns(const ComplexMatrix& m) {
  Columns c{m.rows(), std::vector<std::vector<cplx>>(m.cols(), std::vector<cplx>(m.rows()))};
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) c.cols[j][i] = m(i, j);
  return c;
}

double norm2(const std::vector<cplx>& v) {
  double s = 0.0;
  for (const auto& x : v) s += std::norm(x);
  return s;
}

std::vector<double> jacobi_singular_values(Columns a, const SvdOptions& opts, int& sweeps_out) {
  const std::size_t n = a.cols.size();
  std::vector<double> nrm(n);
  for (std::size_t j = 0; j < n; ++j) nrm[j] = norm2(a.cols[j]);

  int sweep = 0;
  for (; sweep < opts.max_sweeps; ++sweep) {
    bool rotated = false;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double alpha = nrm[p];
        const double beta = nrm[q];
        if (alpha == 0.0 || beta == 0.0) continue;
        cplx gamma{};
        auto& x = a.cols[p];
        auto& y = a.cols[q];
        for (std::size_t i = 0; i < a.rows; ++i) gamma += std::conj(x[i]) * y[i];
        const double g = std::abs(gamma);
        if (g <= opts.tolerance * std::sqrt(alpha * beta)) continue;
        rotated = true;
        const cplx phase = gamma / g;
        const double zeta = (beta - alpha) / (2.0 * g);
        const double t = (zeta >= 0.0 ? 1.0 : -1.0) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = c * t;
        for (std::size_t i = 0; i < a.rows; ++i) {
          const cplx xi = x[i];
          const cplx yi = y[i] * std::conj(phase);
          x[i] = c * xi - s * yi;
          y[i] = s * xi + c * yi;
        }
        nrm[p] = norm2(x);
        nrm[q] = norm2(y);
      }
    }
    if (!rotated) break;
  }
  if (sweep == opts.max_sweeps) {
    double worst = 0.0;
    for (std::size_t p = 0; p + 1 < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) {
        if (nrm[p] == 0.0 || nrm[q] == 0.0) continue;
        cplx gamma{};
        for (std::size_t i = 0; i < a.rows; ++i) gamma += std::conj(a.cols[p][i]) * a.cols[q][i];
        worst = std::max(worst, std::abs(gamma) / std::sqrt(nrm[p] * nrm[q]));
      }
    throw Error(Errc::NoConvergence,
                "Jacobi sweeps exhausted; residual column coherence " + std::to_string(worst));
  }
  sweeps_out = sweep;
  std::vector<double> sv(n);
  for (std::size_t j = 0; j < n; ++j) sv[j] = std::sqrt(nrm[j]);
  std::sort(sv.begin(), sv.end(), std::greater<>());
  return sv;
}

}  // namespace

std::vector<double> singular_values(const ComplexMatrix& m, const SvdOptions& opts) {
  if (m.rows() == 0 || m.cols() == 0) throw Error(Errc::InvalidArgument, "empty matrix");
  int sweeps = 0;
  if (m.cols() > m.rows()) {
    auto sv = jacobi_singular_values(to_columns(m.adjoint()), opts, sweeps);
    sv.resize(m.cols(), 0.0);
    return sv;
  }
  return jacobi_singular_values(to_columns(m), opts, sweeps);
}

SingularExtremes svd_extremes(const ComplexMatrix& m, const SvdOptions& opts) {
  if (m.rows() == 0 || m.cols() == 0) throw Error(Errc::InvalidArgument, "empty matrix");
  SingularExtremes out;
  if (m.cols() > m.rows()) {
    auto sv = jacobi_singular_values(to_columns(m.adjoint()), opts, out.sweeps);
    out.sigma_max = sv.front();
    out.sigma_min = 0.0;
    return out;
  }
  auto sv = jacobi_singular_values(to_columns(m), opts, out.sweeps);
  out.sigma_max = sv.front();
  out.sigma_min = sv.back();
  return out;
}

namespace {

cplx midpoint_sum(const std::function<cplx(double)>& f, double a, double b, std::size_t n) {
  const double h = (b - a) / static_cast<double>(n);
  cplx s{};
  for (std::size_t i = 0; i < n; ++i) s += f(a + (static_cast<double>(i) + 0.5) * h);
  return s * h;
}

}  // namespace

IntegralResult integrate(const std::function<cplx(double)>& f, double a, double b,
                         const IntegrateOptions& opts) {
  if (!(a < b)) throw Error(Errc::InvalidArgument, "integrate needs a < b");
  std::size_t n = std::max<std::size_t>(opts.initial_nodes, 1);
  cplx coarse = midpoint_sum(f, a, b, n);
  cplx prev_extrap{};
  bool have_prev = false;
  std::size_t total = n;
  while (2 * n <= opts.max_nodes) {
    n *= 2;
    const cplx fine = midpoint_sum(f, a, b, n);
    total += n;
    const cplx extrap = (4.0 * fine - coarse) / 3.0;
    if (have_prev) {
      const double err = std::abs(extrap - prev_extrap);
      if (err <= opts.rtol * std::abs(extrap) || err <= opts.atol) return {extrap, err, total};
    }
    prev_extrap = extrap;
    have_prev = true;
    coarse = fine;
  }
  throw Error(Errc::ToleranceNotMet, "midpoint/Richardson did not settle within max_nodes");
}

cplx integrate_midpoint_samples(std::span<const cplx> samples, double a, double b) {
  if (samples.empty()) return {};
  const double h = (b - a) / static_cast<double>(samples.size());
  return std::accumulate(samples.begin(), samples.end(), cplx{}) * h;
}

Minimum golden_minimize(const std::function<double(double)>& f, double a, double b, double tol) {
  const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - invphi * (b - a);
  double d = a + invphi * (b - a);
  double fc = f(c);
  double fd = f(d);
  for (int it = 0; it < 200 && (b - a) > tol; ++it) {
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - invphi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + invphi * (b - a);
      fd = f(d);
    }
  }
  return fc <= fd ? Minimum{c, fc} : Minimum{d, fd};
}

double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * static_cast<double>(n - k + i) / static_cast<double>(i);
  return std::round(r);
}

double factorial(int n) {
  double r = 1.0;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

}  // namespace gabor
