#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace oracle {

cplx permutation_det(const ComplexMatrix& m) {
  const std::size_t n = m.rows();
  std::vector<std::size_t> p(n);
  std::iota(p.begin(), p.end(), 0);
  cplx det{};
  do {
    int inversions = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (p[i] > p[j]) ++inversions;
    cplx term = inversions % 2 ? -1.0 : 1.0;
    for (std::size_t i = 0; i < n; ++i) term *= m(i, p[i]);
    det += term;
  } while (std::next_permutation(p.begin(), p.end()));
  return det;
}

std::pair<double, double> singular_values_2x2(const ComplexMatrix& m) {
  // m^H m = [[a, b], [conj b, d]]
  const double a = std::norm(m(0, 0)) + std::norm(m(1, 0));
  const double d = std::norm(m(0, 1)) + std::norm(m(1, 1));
  const cplx b = std::conj(m(0, 0)) * m(0, 1) + std::conj(m(1, 0)) * m(1, 1);
  const double tr = a + d;
  const double disc = std::sqrt((a - d) * (a - d) + 4.0 * std::norm(b));
  const double hi = 0.5 * (tr + disc);
  // product of eigenvalues is |det m|^2; avoids cancellation in the small one
  const double det2 = std::norm(m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0));
  const double lo = hi > 0.0 ? det2 / hi : 0.0;
  return {std::sqrt(lo), std::sqrt(hi)};
}

double power_sigma_max(const ComplexMatrix& m, int iterations) {
  std::vector<cplx> v(m.cols(), cplx{1.0, 0.0});
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = cplx{1.0 + 0.1 * static_cast<double>(i), 0.3};
  double lambda = 0.0;
  for (int it = 0; it < iterations; ++it) {
    std::vector<cplx> w(m.rows());
    for (std::size_t r = 0; r < m.rows(); ++r)
      for (std::size_t c = 0; c < m.cols(); ++c) w[r] += m(r, c) * v[c];
    std::vector<cplx> u(m.cols());
    for (std::size_t c = 0; c < m.cols(); ++c)
      for (std::size_t r = 0; r < m.rows(); ++r) u[c] += std::conj(m(r, c)) * w[r];
    double nrm = 0.0;
    for (const auto& x : u) nrm += std::norm(x);
    nrm = std::sqrt(nrm);
    if (nrm == 0.0) return 0.0;
    for (auto& x : u) x /= nrm;
    const double prev = lambda;
    lambda = nrm;
    v = std::move(u);
    if (it > 10 && std::abs(lambda - prev) <= 1e-15 * lambda) break;
  }
  return std::sqrt(lambda);
}

cplx elementary_symmetric(const std::vector<cplx>& x, int l) {
  const std::size_t n = x.size();
  if (l == 0) return 1.0;
  cplx s{};
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    if (__builtin_popcount(mask) != l) continue;
    cplx p{1.0, 0.0};
    for (std::size_t i = 0; i < n; ++i)
      if (mask & (1u << i)) p *= x[i];
    s += p;
  }
  return s;
}

cplx cauchy_derivative(const std::function<cplx(cplx)>& f, cplx z0, int n, double r, int nodes) {
  cplx s{};
  for (int k = 0; k < nodes; ++k) {
    const cplx e = std::polar(1.0, 2.0 * gabor::kPi * k / nodes);
    s += f(z0 + r * e) / std::pow(e, n);
  }
  return s / static_cast<double>(nodes) * gabor::factorial(n) / std::pow(r, n);
}

cplx fourier_quadrature(const std::vector<gabor::PoleTerm>& terms, double tau, double L, int n) {
  const double h = 2.0 * L / n;
  auto f = [&](double t) { return gabor::eval_window(terms, t) * std::polar(1.0, 2.0 * gabor::kPi * t * tau); };
  cplx s = f(-L) + f(L);
  for (int i = 1; i < n; ++i) s += (i % 2 ? 4.0 : 2.0) * f(-L + i * h);
  s *= h / 3.0;
  // |t| > L: simple poles leave S/t, whose integral is 2iS(pi/2 - Si(x)) with the usual asymptotics
  cplx S{};
  for (const auto& p : terms)
    if (p.j == 1) S += p.a;
  if (tau != 0.0) {
    const double x = 2.0 * gabor::kPi * std::abs(tau) * L;
    const double x2 = x * x;
    const double tail = std::cos(x) / x * (1.0 - 2.0 / x2) + std::sin(x) / x2 * (1.0 - 6.0 / x2);
    s += cplx(0.0, tau > 0.0 ? 2.0 : -2.0) * S * tail;
  }
  return s;
}

cplx Rng::amplitude() {
  for (;;) {
    const cplx a = complex_box(1.0);
    if (std::abs(a) > 0.1) return a;
  }
}

double Rng::re_w(double lo, double hi, double band) {
  for (;;) {
    const double x = uniform(lo, hi);
    if (std::abs(x) > band) return x;
  }
}

ComplexMatrix random_matrix(Rng& rng, std::size_t rows, std::size_t cols) {
  ComplexMatrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = rng.complex_box(1.0);
  return m;
}

gabor::SimpleWindow random_simple_window(Rng& rng, int N) {
  for (;;) {
    std::vector<gabor::PoleTerm> t;
    for (int k = 0; k < N; ++k) t.push_back({rng.amplitude(), {rng.re_w(), rng.uniform(-0.5, 0.5)}, 1});
    try {
      return gabor::validate_simple(std::move(t));
    } catch (const std::exception&) {
    }
  }
}

gabor::GeneralWindow random_general_window(Rng& rng, int M) {
  for (;;) {
    std::vector<int> js;
    int left = M;
    while (left > 0) {
      const int j = rng.integer(1, std::min(left, 3));
      js.push_back(j);
      left -= j;
    }
    std::vector<gabor::PoleTerm> t;
    for (int j : js) t.push_back({rng.amplitude(), {rng.re_w(-0.6, 0.6, 0.05), rng.uniform(-0.5, 0.5)}, j});
    try {
      return gabor::as_general(gabor::validate(std::move(t)));
    } catch (const std::exception&) {
    }
  }
}

gabor::GeneralWindow random_all_simple_general(Rng& rng, int N) {
  return gabor::GeneralWindow{random_simple_window(rng, N).terms};
}

double rel_err(cplx a, cplx b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

}  // namespace oracle
