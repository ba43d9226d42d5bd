#include "gabor/framecheck.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "gabor/error.hpp"

namespace gabor {

TruncatedMatrix truncated_matrix(double xi, const PeriodicPointSet& set, const SymbolFamily& family,
                                 int periods) {
  if (periods < 2) throw Error(Errc::InvalidArgument, "truncation needs at least 2 periods");
  const int M = family.M;
  const long n = set.count();
  TruncatedMatrix out;
  out.rows = rows_for(xi, set, 0, periods * n);
  const RowSpec before = row_spec(xi, set.lambda_at(-1), -1);
  const RowSpec after = row_spec(xi, set.lambda_at(periods * n), periods * n);
  const long c0 = before.b + M;  // first column no earlier row reaches
  const long c1 = after.b - 1;   // last column no later row reaches
  if (c1 < c0) throw Error(Errc::InvalidArgument, "truncation window has no interior columns");
  out.first_column = c0;
  out.matrix = ComplexMatrix(out.rows.size(), static_cast<std::size_t>(c1 - c0 + 1));
  for (std::size_t r = 0; r < out.rows.size(); ++r) {
    const auto& row = out.rows[r];
    for (int s = 0; s < M; ++s) {
      const long c = row.b + s;
      if (c < c0 || c > c1) continue;
      out.matrix(r, static_cast<std::size_t>(c - c0)) = family.m[static_cast<std::size_t>(s)](row.t);
    }
  }
  return out;
}

std::vector<std::size_t> zero_columns(const ComplexMatrix& m) {
  std::vector<std::size_t> out;
  for (std::size_t c = 0; c < m.cols(); ++c) {
    bool zero = true;
    for (std::size_t r = 0; r < m.rows() && zero; ++r) zero = m(r, c) == cplx{};
    if (zero) out.push_back(c);
  }
  return out;
}

std::vector<double> xi_grid(const PeriodicPointSet& set, int steps, double eta) {
  if (steps < 1) throw Error(Errc::InvalidArgument, "xi_steps must be positive");
  std::vector<double> fracs{0.0, 1.0};
  // a non-integer period shifts fractional parts from one period to the next
  const bool integer_period = std::abs(set.period() - std::round(set.period())) < 1e-12;
  const long span = integer_period ? set.count() : 64 * set.count();
  for (long i = 0; i < span; ++i) {
    const double x = set.lambda_at(i);
    fracs.push_back(x - std::floor(x));
  }
  std::vector<double> out;
  for (int i = 0; i < steps; ++i) {
    const double xi = (i + 0.5) / steps;
    const bool near = std::any_of(fracs.begin(), fracs.end(), [&](double f) { return std::abs(xi - f) < eta; });
    if (!near) out.push_back(xi);
  }
  return out;
}

FrameEstimate frame_bounds_estimate(const SymbolFamily& family, const PeriodicPointSet& set,
                                    const FrameConfig& cfg) {
  FrameEstimate est;
  est.periods = cfg.periods;
  est.xi_steps = cfg.xi_steps;
  est.eta = cfg.eta;
  est.xi = xi_grid(set, cfg.xi_steps, cfg.eta);
  if (est.xi.empty()) throw Error(Errc::InvalidArgument, "xi grid is empty after exclusions");
  est.A_est = std::numeric_limits<double>::infinity();
  for (double xi : est.xi) {
    const auto tm = truncated_matrix(xi, set, family, cfg.periods);
    const auto sv = svd_extremes(tm.matrix);
    est.sigma_min.push_back(sv.sigma_min);
    est.sigma_max.push_back(sv.sigma_max);
    if (sv.sigma_min * sv.sigma_min < est.A_est) {
      est.A_est = sv.sigma_min * sv.sigma_min;
      est.xi_at_min = xi;
    }
    est.B_est = std::max(est.B_est, sv.sigma_max * sv.sigma_max);
  }
  return est;
}

FrameEstimate frame_bounds_estimate(const Window& w, const UniversalSet& set, const FrameConfig& cfg) {
  if (total_multiplicity(w) != set.N)
    throw Error(Errc::ConfigError, "set must be built with N equal to the window's M");
  return frame_bounds_estimate(symbol_family(w), set.points, cfg);
}

cplx TestFunction::operator()(double x) const {
  const double b = std::floor(x);
  const double xi = x - b;
  if (xi < cell_lo || xi >= cell_hi) return {};
  const auto it = samples.find(static_cast<long>(b));
  return it == samples.end() ? cplx{} : it->second;
}

double TestFunction::norm2() const {
  double s = 0.0;
  for (const auto& [b, v] : samples) s += std::norm(v);
  return s * (cell_hi - cell_lo);
}

double criterion_form(const TestFunction& G, const SymbolFamily& family, const PeriodicPointSet& set,
                      const CriterionConfig& cfg) {
  if (G.samples.empty()) return 0.0;
  if (!(G.cell_lo >= 0.0 && G.cell_lo < G.cell_hi && G.cell_hi <= 1.0))
    throw Error(Errc::InvalidArgument, "test-function cell must satisfy 0 <= lo < hi <= 1");
  const int M = family.M;
  const double bmin = static_cast<double>(G.samples.begin()->first);
  const double bmax = static_cast<double>(G.samples.rbegin()->first);
  // t + lambda + s must reach [bmin, bmax + 1) for some t in (0,1), s < M
  const auto lambdas = set.points_in(bmin - M, bmax + 1.0 - (bmin - M));
  double total = 0.0;
  std::vector<cplx> mv(static_cast<std::size_t>(M));
  for (double lam : lambdas) {
    std::vector<double> cuts{0.0, 1.0};
    for (double edge : {G.cell_lo, G.cell_hi}) {
      const double c = edge - lam - std::floor(edge - lam);
      if (c > 0.0 && c < 1.0) cuts.push_back(c);
    }
    std::sort(cuts.begin(), cuts.end());
    for (std::size_t p = 0; p + 1 < cuts.size(); ++p) {
      const double a = cuts[p];
      const double b = cuts[p + 1];
      if (b - a <= 0.0) continue;
      const int nodes = std::max(16, static_cast<int>(std::ceil(cfg.nodes * (b - a))));
      const double h = (b - a) / nodes;
      double piece = 0.0;
      for (int i = 0; i < nodes; ++i) {
        const double t = a + (i + 0.5) * h;
        cplx v{};
        bool any = false;
        for (int s = 0; s < M; ++s) {
          const cplx g = G(t + lam + s);
          if (g == cplx{}) continue;
          v += g * family.m[static_cast<std::size_t>(s)](t);
          any = true;
        }
        if (any) piece += std::norm(v);
      }
      total += piece * h;
    }
  }
  return total;
}

double SampledFunction::norm2() const {
  double s = 0.0;
  for (const auto& v : values) s += std::norm(v);
  return s * step();
}

SampledFunction sample(const std::function<cplx(double)>& f, double a, double b, std::size_t n) {
  if (!(a < b) || n == 0) throw Error(Errc::InvalidArgument, "sample needs a < b and n > 0");
  SampledFunction s{a, b, std::vector<cplx>(n)};
  for (std::size_t i = 0; i < n; ++i) s.values[i] = f(s.node(i));
  return s;
}

double gabor_sum_oracle(const SampledFunction& f, const Window& w, const PeriodicPointSet& set,
                        const OracleConfig& cfg) {
  if (f.values.empty()) return 0.0;
  const auto terms = terms_of(w);
  const std::size_t n_nodes = f.values.size();
  const double h = f.step();
  const auto lambdas = set.points_in(-cfg.lambda_range, 2.0 * cfg.lambda_range);

  // f(t) conj(g(t - n)), one row per shift
  std::vector<std::vector<cplx>> fg;
  for (int n = -cfg.n_shift; n <= cfg.n_shift; ++n) {
    std::vector<cplx> row(n_nodes);
    for (std::size_t i = 0; i < n_nodes; ++i) row[i] = f.values[i] * std::conj(eval_window(terms, f.node(i) - n));
    fg.push_back(std::move(row));
  }
  double total = 0.0;
  std::vector<cplx> phase(n_nodes);
  for (double lam : lambdas) {
    for (std::size_t i = 0; i < n_nodes; ++i) phase[i] = std::polar(1.0, -2.0 * kPi * lam * f.node(i));
    for (const auto& row : fg) {
      cplx s{};
      for (std::size_t i = 0; i < n_nodes; ++i) s += row[i] * phase[i];
      total += std::norm(s * h);
    }
  }
  return total;
}

}  // namespace gabor
