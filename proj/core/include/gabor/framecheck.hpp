#pragma once

#include <map>
#include <vector>

#include "gabor/criterion_operator.hpp"
#include "gabor/lambda.hpp"
#include "gabor/numerics.hpp"
#include "gabor/symbols.hpp"
#include "gabor/windows.hpp"

namespace gabor {

/// Finite section of L_xi with its column range.
struct TruncatedMatrix {
  ComplexMatrix matrix;
  std::vector<RowSpec> rows;
  long first_column = 0;  // global column index of local column 0
};

/// Rows: all rows of `periods` whole periods starting at index 0.
/// Columns: the contiguous range touched by no row outside the window,
/// so L restricted to those columns has no entries outside these rows.
TruncatedMatrix truncated_matrix(double xi, const PeriodicPointSet& set, const SymbolFamily& family,
                                 int periods);

/// Local indices of identically zero columns.
std::vector<std::size_t> zero_columns(const ComplexMatrix& m);

struct FrameConfig {
  int xi_steps = 64;
  int periods = 8;
  double eta = 1e-3;
};

/// (i + 1/2)/steps, minus eta-neighbourhoods of the set's fractional parts and of {0, 1}.
std::vector<double> xi_grid(const PeriodicPointSet& set, int steps, double eta);

struct FrameEstimate {
  std::vector<double> xi;
  std::vector<double> sigma_min;
  std::vector<double> sigma_max;
  double A_est = 0.0;
  double B_est = 0.0;
  double xi_at_min = 0.0;
  int periods = 0;
  int xi_steps = 0;
  double eta = 0.0;
};

FrameEstimate frame_bounds_estimate(const SymbolFamily& family, const PeriodicPointSet& set,
                                    const FrameConfig& cfg = {});
/// Checks set.N == M and builds the symbol family.
FrameEstimate frame_bounds_estimate(const Window& w, const UniversalSet& set, const FrameConfig& cfg = {});

/// G(xi + b) = samples[b] for xi in [cell_lo, cell_hi), zero elsewhere.
struct TestFunction {
  std::map<long, cplx> samples;
  double cell_lo = 0.0;
  double cell_hi = 1.0;

  cplx operator()(double x) const;
  double norm2() const;  // squared L2 norm
};

struct CriterionConfig {
  int nodes = 2048;  // midpoint nodes on (0, 1)
};

/// sum_m int_0^1 |sum_s G(t + lambda_m + s) m_s(t)|^2 dt
double criterion_form(const TestFunction& G, const SymbolFamily& family, const PeriodicPointSet& set,
                      const CriterionConfig& cfg = {});

/// Midpoint samples of f on [a, b].
struct SampledFunction {
  double a = 0.0;
  double b = 1.0;
  std::vector<cplx> values;

  double step() const { return (b - a) / static_cast<double>(values.size()); }
  double node(std::size_t i) const { return a + (static_cast<double>(i) + 0.5) * step(); }
  double norm2() const;
};

SampledFunction sample(const std::function<cplx(double)>& f, double a, double b, std::size_t n);

struct OracleConfig {
  double lambda_range = 40.0;  // lambda in [-T, T]
  int n_shift = 40;            // n in [-n_shift, n_shift]
};

/// sum over lambda in [-T, T] and |n| <= n_shift of |(f, e^{2 pi i lambda t} g(t - n))|^2
double gabor_sum_oracle(const SampledFunction& f, const Window& w, const PeriodicPointSet& set,
                        const OracleConfig& cfg = {});

}  // namespace gabor
