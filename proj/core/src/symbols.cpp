#include "gabor/symbols.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "gabor/error.hpp"

namespace gabor {

// ---------------------------------------------------------------- ExpPolynomial

void ExpPolynomial::add(cplx c, cplx w, int p) {
  if (p < 0) throw Error(Errc::InvalidArgument, "negative power in exponential polynomial");
  auto it = std::find_if(terms_.begin(), terms_.end(),
                         [&](const ExpTerm& t) { return t.w == w && t.p == p; });
  if (it == terms_.end()) {
    if (c != cplx{}) terms_.push_back({c, w, p});
    return;
  }
  it->c += c;
  if (it->c == cplx{}) terms_.erase(it);
}

cplx ExpPolynomial::operator()(double t) const {
  cplx s{};
  for (const auto& term : terms_) {
    double tp = 1.0;
    for (int i = 0; i < term.p; ++i) tp *= t;
    s += term.c * std::exp(2.0 * kPi * term.w * t) * tp;
  }
  return s;
}

cplx ExpPolynomial::coefficient(cplx w, int p) const {
  for (const auto& t : terms_)
    if (t.w == w && t.p == p) return t.c;
  return {};
}

double ExpPolynomial::max_abs(double a, double b, int points) const {
  double m = 0.0;
  for (int i = 0; i < points; ++i) {
    const double t = points == 1 ? a : a + (b - a) * i / (points - 1);
    m = std::max(m, std::abs((*this)(t)));
  }
  return m;
}

// ---------------------------------------------------------------- QPolynomial

QPolynomial::QPolynomial(std::vector<cplx> c) : c_(std::move(c)) { trim(); }

void QPolynomial::trim() {
  while (!c_.empty() && c_.back() == cplx{}) c_.pop_back();
}

QPolynomial QPolynomial::monomial(cplx c, int degree) {
  std::vector<cplx> v(static_cast<std::size_t>(degree) + 1);
  v.back() = c;
  return QPolynomial(std::move(v));
}

QPolynomial QPolynomial::one_minus_power(cplx u, int n) {
  std::vector<cplx> v(static_cast<std::size_t>(n) + 1);
  cplx up{1.0, 0.0};
  for (int s = 0; s <= n; ++s) {
    v[static_cast<std::size_t>(s)] = (s % 2 ? -1.0 : 1.0) * binomial(n, s) * up;
    up *= u;
  }
  return QPolynomial(std::move(v));
}

cplx QPolynomial::coeff(int d) const noexcept {
  return d >= 0 && d < static_cast<int>(c_.size()) ? c_[static_cast<std::size_t>(d)] : cplx{};
}

cplx QPolynomial::operator()(cplx q) const {
  cplx s{};
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) s = s * q + *it;
  return s;
}

QPolynomial QPolynomial::derivative() const {
  if (c_.size() <= 1) return {};
  std::vector<cplx> v(c_.size() - 1);
  for (std::size_t d = 1; d < c_.size(); ++d) v[d - 1] = static_cast<double>(d) * c_[d];
  return QPolynomial(std::move(v));
}

QPolynomial QPolynomial::operator+(const QPolynomial& o) const {
  std::vector<cplx> v(std::max(c_.size(), o.c_.size()));
  for (std::size_t i = 0; i < c_.size(); ++i) v[i] += c_[i];
  for (std::size_t i = 0; i < o.c_.size(); ++i) v[i] += o.c_[i];
  return QPolynomial(std::move(v));
}

QPolynomial QPolynomial::operator-(const QPolynomial& o) const { return *this + o * cplx{-1.0, 0.0}; }

QPolynomial QPolynomial::operator*(const QPolynomial& o) const {
  if (is_zero() || o.is_zero()) return {};
  std::vector<cplx> v(c_.size() + o.c_.size() - 1);
  for (std::size_t i = 0; i < c_.size(); ++i)
    for (std::size_t j = 0; j < o.c_.size(); ++j) v[i + j] += c_[i] * o.c_[j];
  return QPolynomial(std::move(v));
}

QPolynomial QPolynomial::operator*(cplx s) const {
  std::vector<cplx> v(c_);
  for (auto& x : v) x *= s;
  return QPolynomial(std::move(v));
}

QPolynomial::Division QPolynomial::divide_by_one_minus_q(int n) const {
  std::vector<cplx> p = c_;
  double residual = 0.0;
  for (int step = 0; step < n; ++step) {
    if (p.empty()) break;
    // P = (1 - q) Q + P(1): Q_d is the partial sum p_0 + ... + p_d
    std::vector<cplx> q(p.size() - 1);
    cplx acc{};
    for (std::size_t d = 0; d + 1 < p.size(); ++d) {
      acc += p[d];
      q[d] = acc;
    }
    residual = std::max(residual, std::abs(acc + p.back()));
    p = std::move(q);
  }
  return {QPolynomial(std::move(p)), QPolynomial({cplx{residual, 0.0}})};
}

// ---------------------------------------------------------------- f_l chain

std::vector<QRational> q_derivative_chain(int l) {
  if (l < 0 || l > kMaxChainOrder)
    throw Error(Errc::InvalidArgument, "derivative order must lie in [0, 12]");
  std::vector<QRational> out;
  out.reserve(static_cast<std::size_t>(l) + 1);
  const QPolynomial one_minus_q({cplx{1.0, 0.0}, cplx{-1.0, 0.0}});
  const QPolynomial q = QPolynomial::monomial(1.0, 1);
  QPolynomial num({cplx{1.0, 0.0}});
  QPolynomial den = one_minus_q;
  out.push_back({num, den});
  for (int i = 0; i < l; ++i) {
    // d/dz = 2 pi i q d/dq applied to num / (1-q)^{i+1}
    num = q * (num.derivative() * one_minus_q + num * cplx{static_cast<double>(i + 1), 0.0}) * kTwoPiI;
    den = den * one_minus_q;
    out.push_back({num, den});
  }
  return out;
}

// ---------------------------------------------------------------- trick table

std::vector<QPolynomial> trick_polynomials(int k) {
  if (k < 1 || k > kMaxChainOrder) throw Error(Errc::InvalidArgument, "multiplicity must lie in [1, 12]");
  std::vector<QPolynomial> row(static_cast<std::size_t>(k));
  const double inv_fact = 1.0 / factorial(k - 1);
  // (E - 1)^{k-1} = (-1)^{k-1} (1 - E)^{k-1}
  const QPolynomial e_minus_one = QPolynomial::one_minus_power(1.0, k - 1) * ((k - 1) % 2 ? -1.0 : 1.0);
  row[static_cast<std::size_t>(k - 1)] = e_minus_one * inv_fact;
  if (k == 1) return row;

  const auto chain = q_derivative_chain(k - 2);
  const QPolynomial E = QPolynomial::monomial(1.0, 1);
  const QPolynomial lead = E * e_minus_one * inv_fact;
  for (int l = 0; l <= k - 2; ++l) {
    const cplx outer = std::pow(kTwoPiI, k - l - 1) * binomial(k - 1, l);
    for (int j = 0; j <= l; ++j) {
      const auto& fj = chain[static_cast<std::size_t>(j)];
      const QPolynomial full = lead * fj.numerator;
      const auto div = full.divide_by_one_minus_q(j + 1);
      double scale = 0.0;
      for (const auto& c : full.coefficients()) scale += std::abs(c);
      if (div.remainder.coeff(0).real() > 1e-9 * std::max(scale, 1.0))
        throw Error(Errc::NoncancellingDenominator,
                    "f_" + std::to_string(j) + " leaves a pole in the trick expansion");
      row[static_cast<std::size_t>(l - j)] =
          row[static_cast<std::size_t>(l - j)] + div.quotient * (outer * binomial(l, j));
    }
  }
  for (const auto& r : row)
    if (r.degree() > k - 1)
      throw Error(Errc::NoncancellingDenominator, "trick expansion exceeds degree j-1 in E");
  return row;
}

TrickTable trick_table(int j, cplx w) {
  const auto rows = trick_polynomials(j);
  TrickTable t;
  t.j = j;
  t.w = w;
  const cplx u = std::exp(2.0 * kPi * w);
  t.a.assign(static_cast<std::size_t>(j), std::vector<cplx>(static_cast<std::size_t>(j)));
  for (int l = 0; l < j; ++l) {
    cplx ud{1.0, 0.0};
    for (int d = 0; d < j; ++d) {
      t.a[static_cast<std::size_t>(l)][static_cast<std::size_t>(d)] = rows[static_cast<std::size_t>(l)].coeff(d) * ud;
      ud *= u;
    }
  }
  return t;
}

// ---------------------------------------------------------------- families

namespace {

void check_finite(const SymbolFamily& f) {
  for (const auto& m : f.m)
    for (const auto& t : m.terms())
      if (!std::isfinite(t.c.real()) || !std::isfinite(t.c.imag()))
        throw Error(Errc::OverflowRisk, "symbol coefficient overflowed");
}

}  // namespace

SymbolFamily simple_symbol_family(const SimpleWindow& w) {
  const std::size_t N = w.N();
  if (N == 0) throw Error(Errc::InvalidArgument, "empty window");
  SymbolFamily f;
  f.M = static_cast<int>(N);
  f.A.assign(N, std::vector<cplx>(N));
  f.m.resize(N);
  for (std::size_t k = 0; k < N; ++k) {
    QPolynomial p({cplx{1.0, 0.0}});
    for (std::size_t j = 0; j < N; ++j)
      if (j != k) p = p * QPolynomial::one_minus_power(std::exp(2.0 * kPi * w.terms[j].w), 1);
    for (std::size_t l = 0; l < N; ++l) f.A[k][l] = p.coeff(static_cast<int>(l));
  }
  for (std::size_t l = 0; l < N; ++l)
    for (std::size_t k = 0; k < N; ++k) f.m[l].add(w.terms[k].a * f.A[k][l], w.terms[k].w, 0);
  check_finite(f);
  return f;
}

SymbolFamily general_symbol_family(const GeneralWindow& w) {
  const int M = w.M();
  if (M < 1 || M > kMaxChainOrder) throw Error(Errc::InvalidArgument, "M must lie in [1, 12]");
  const std::size_t N = w.N();
  SymbolFamily f;
  f.M = M;
  f.general = true;
  f.m.resize(static_cast<std::size_t>(M));
  f.A.resize(N);
  f.B.resize(N);
  for (std::size_t k = 0; k < N; ++k) {
    const auto& tk = w.terms[k];
    f.tricks.push_back(trick_table(tk.j, tk.w));
    QPolynomial p({cplx{1.0, 0.0}});
    for (std::size_t l = 0; l < N; ++l)
      if (l != k) p = p * QPolynomial::one_minus_power(std::exp(2.0 * kPi * w.terms[l].w), w.terms[l].j);
    f.A[k].resize(static_cast<std::size_t>(M - tk.j + 1));
    for (int s = 0; s <= M - tk.j; ++s) f.A[k][static_cast<std::size_t>(s)] = p.coeff(s);

    const auto& a = f.tricks.back().a;
    f.B[k].assign(static_cast<std::size_t>(M), std::vector<cplx>(static_cast<std::size_t>(tk.j)));
    for (int s = 0; s < M; ++s)
      for (int l = 0; l < tk.j; ++l) {
        cplx b{};
        for (int d = 0; d < tk.j && d <= s; ++d) b += a[static_cast<std::size_t>(l)][static_cast<std::size_t>(d)] * p.coeff(s - d);
        f.B[k][static_cast<std::size_t>(s)][static_cast<std::size_t>(l)] = b;
      }
  }
  for (int s = 0; s < M; ++s)
    for (std::size_t k = 0; k < N; ++k)
      for (int l = 0; l < w.terms[k].j; ++l)
        f.m[static_cast<std::size_t>(s)].add(
            w.terms[k].a * f.B[k][static_cast<std::size_t>(s)][static_cast<std::size_t>(l)] * std::pow(kTwoPiI, l),
            w.terms[k].w, l);
  check_finite(f);
  return f;
}

SymbolFamily symbol_family(const Window& w) {
  if (const auto* s = std::get_if<SimpleWindow>(&w)) return simple_symbol_family(*s);
  return general_symbol_family(std::get<GeneralWindow>(w));
}

ExpPolynomial top_symbol_closed_form(const GeneralWindow& w) {
  const int M = w.M();
  cplx total{};
  for (const auto& t : w.terms) total += t.w * static_cast<double>(t.j);
  ExpPolynomial out;
  for (const auto& t : w.terms) {
    const int n = t.j - 1;
    const cplx coef = ((M - t.j) % 2 ? -1.0 : 1.0) * std::exp(2.0 * kPi * (total - t.w)) * t.a *
                      std::pow(kTwoPiI, n) / factorial(n);
    for (int p = 0; p <= n; ++p) out.add(coef * binomial(n, p) * ((n - p) % 2 ? -1.0 : 1.0), t.w, p);
  }
  return out;
}

Minimum top_symbol_min(const SymbolFamily& family, double eps1, int points) {
  if (!(eps1 > 0.0 && eps1 < 0.5)) throw Error(Errc::InvalidArgument, "eps1 must lie in (0, 1/2)");
  if (family.m.empty()) throw Error(Errc::InvalidArgument, "empty symbol family");
  if (points < 3) points = 3;
  const auto& top = family.m.back();
  const double hi = 1.0 - eps1;
  auto f = [&](double t) { return std::abs(top(t)); };
  int best = 0;
  double best_v = f(0.0);
  for (int i = 1; i < points; ++i) {
    const double v = f(hi * i / (points - 1));
    if (v < best_v) {
      best_v = v;
      best = i;
    }
  }
  const double lo_t = hi * std::max(best - 1, 0) / (points - 1);
  const double hi_t = hi * std::min(best + 1, points - 1) / (points - 1);
  Minimum m = golden_minimize(f, lo_t, hi_t, 1e-13);
  // endpoints are not visited by the golden search
  const double at_grid = hi * best / (points - 1);
  if (best_v <= m.value) m = {at_grid, best_v};
  return m;
}

// ---------------------------------------------------------------- trick identity

namespace {

void check_support(const FiniteSequence& c, cplx z) {
  if (c.values.size() > 32) throw Error(Errc::InvalidArgument, "support larger than 32");
  for (std::size_t i = 0; i < c.values.size(); ++i) {
    const double n = c.first + static_cast<double>(i);
    if (std::abs(z - n) < 1e-8) throw Error(Errc::PoleHit, "z within 1e-8 of " + std::to_string(n));
  }
}

}  // namespace

cplx trick_lhs(int k, const FiniteSequence& c, cplx z) {
  if (k < 1) throw Error(Errc::InvalidArgument, "k must be positive");
  check_support(c, z);
  const cplx E = std::exp(kTwoPiI * z);
  cplx s{};
  for (std::size_t i = 0; i < c.values.size(); ++i)
    s += c.values[i] / std::pow(z - (c.first + static_cast<double>(i)), k);
  return std::pow(1.0 - E, k) * s;
}

cplx h_derivative(int l, const FiniteSequence& c, cplx z) {
  const cplx E = std::exp(kTwoPiI * z);
  auto S = [&](int r) {
    cplx s{};
    const double sign_fact = (r % 2 ? -1.0 : 1.0) * factorial(r);
    for (std::size_t i = 0; i < c.values.size(); ++i)
      s += c.values[i] / std::pow(z - (c.first + static_cast<double>(i)), r + 1);
    return sign_fact * s;
  };
  cplx out = (1.0 - E) * S(l);
  for (int i = 1; i <= l; ++i) out -= binomial(l, i) * std::pow(kTwoPiI, i) * E * S(l - i);
  return out;
}

cplx trick_rhs(int k, const FiniteSequence& c, cplx z) {
  if (k < 1 || k > kMaxChainOrder + 2) throw Error(Errc::InvalidArgument, "k out of range");
  check_support(c, z);
  const cplx E = std::exp(kTwoPiI * z);
  if (std::abs(1.0 - E) <= 1e-8) throw Error(Errc::PoleHit, "1 - e^{2 pi i z} vanishes");
  std::vector<cplx> h(static_cast<std::size_t>(k));
  for (int l = 0; l < k; ++l) h[static_cast<std::size_t>(l)] = h_derivative(l, c, z);
  const cplx pre = std::pow(E - 1.0, k - 1) / factorial(k - 1);
  cplx out = h[static_cast<std::size_t>(k - 1)] * pre;
  if (k == 1) return out;
  const auto chain = q_derivative_chain(k - 2);
  cplx sum{};
  for (int l = 0; l <= k - 2; ++l) {
    cplx inner{};
    for (int j = 0; j <= l; ++j)
      inner += binomial(l, j) * h[static_cast<std::size_t>(l - j)] * chain[static_cast<std::size_t>(j)](E);
    sum += std::pow(kTwoPiI, k - l - 1) * binomial(k - 1, l) * inner;
  }
  return out + E * pre * sum;
}

}  // namespace gabor
