#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace gabor {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr cplx kTwoPiI{0.0, 2.0 * kPi};

/// Dense row-major complex matrix. Sizes here stay in the low hundreds.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  ComplexMatrix(std::size_t rows, std::size_t cols);

  static ComplexMatrix identity(std::size_t n);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool square() const noexcept { return rows_ == cols_; }

  cplx& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const cplx& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<const cplx> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }
  std::span<const cplx> data() const noexcept { return data_; }

  ComplexMatrix without_row(std::size_t r) const;
  ComplexMatrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;
  ComplexMatrix adjoint() const;
  ComplexMatrix operator*(const ComplexMatrix& rhs) const;
  ComplexMatrix& operator*=(cplx s);

  friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<cplx> data_;
};

/// Determinant by LU with partial pivoting. Exactly singular input gives 0.
cplx det_lu(const ComplexMatrix& m);

/// Same elimination carried out in 113-bit binary floating point, rounded back at the end.
/// Partial pivoting loses relative accuracy on triangular-banded matrices with tiny
/// diagonals; the wider mantissa keeps the result usable as a reference there.
cplx det_lu_quad(const ComplexMatrix& m);

struct SvdOptions {
  double tolerance = 1e-15;  // off-diagonal threshold relative to column norms
  int max_sweeps = 80;
};

struct SingularExtremes {
  double sigma_min = 0.0;
  double sigma_max = 0.0;
  int sweeps = 0;
};

/// Extremal singular values via one-sided Jacobi rotations on the columns.
/// A column that is exactly zero stays exactly zero, so sigma_min is then 0.
/// Wide input (cols > rows) has sigma_min = 0 by rank.
/// Throws NoConvergence if max_sweeps is exhausted.
SingularExtremes svd_extremes(const ComplexMatrix& m, const SvdOptions& opts = {});

/// All singular values, descending.
std::vector<double> singular_values(const ComplexMatrix& m, const SvdOptions& opts = {});

struct IntegrateOptions {
  double rtol = 1e-8;
  double atol = 1e-14;
  std::size_t initial_nodes = 64;
  std::size_t max_nodes = std::size_t{1} << 22;
};

struct IntegralResult {
  cplx value;
  double error_estimate = 0.0;
  std::size_t nodes = 0;
};

/// Composite midpoint rule, doubled until two successive Richardson
/// extrapolants agree to rtol (or atol). Throws ToleranceNotMet past max_nodes.
IntegralResult integrate(const std::function<cplx(double)>& f, double a, double b,
                         const IntegrateOptions& opts = {});

/// Midpoint sum of pre-sampled values on n equal cells of [a, b].
cplx integrate_midpoint_samples(std::span<const cplx> samples, double a, double b);

struct Minimum {
  double x = 0.0;
  double value = 0.0;
};

/// Golden-section search for a minimum of f on [a, b]; stops at width <= tol.
Minimum golden_minimize(const std::function<double(double)>& f, double a, double b,
                        double tol = 1e-14);

double binomial(int n, int k);
double factorial(int n);

}  // namespace gabor
