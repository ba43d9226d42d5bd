#pragma once

#include <vector>

#include "gabor/numerics.hpp"
#include "gabor/windows.hpp"

namespace gabor {

/// c * e^{2 pi w t} * t^p
struct ExpTerm {
  cplx c;
  cplx w;
  int p = 0;
};

/// Finite sum of ExpTerms. Terms with identical (w, p) are merged exactly.
class ExpPolynomial {
 public:
  ExpPolynomial() = default;

  void add(cplx c, cplx w, int p);
  const std::vector<ExpTerm>& terms() const noexcept { return terms_; }
  bool empty() const noexcept { return terms_.empty(); }

  cplx operator()(double t) const;
  /// Coefficient of the (w, p) term, zero if absent.
  cplx coefficient(cplx w, int p) const;
  /// max |value| on a uniform grid of [a, b]
  double max_abs(double a, double b, int points = 1001) const;

 private:
  std::vector<ExpTerm> terms_;
};

/// sum_d c_d q^d, trailing zeros trimmed.
class QPolynomial {
 public:
  QPolynomial() = default;
  explicit QPolynomial(std::vector<cplx> c);

  static QPolynomial monomial(cplx c, int degree);
  /// (1 - u q)^n
  static QPolynomial one_minus_power(cplx u, int n);

  const std::vector<cplx>& coefficients() const noexcept { return c_; }
  int degree() const noexcept { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const noexcept { return c_.empty(); }
  cplx coeff(int d) const noexcept;

  cplx operator()(cplx q) const;
  QPolynomial derivative() const;

  QPolynomial operator+(const QPolynomial& o) const;
  QPolynomial operator-(const QPolynomial& o) const;
  QPolynomial operator*(const QPolynomial& o) const;
  QPolynomial operator*(cplx s) const;

  struct Division;
  /// Exact division by (1 - q)^n; the remainder is returned for checking.
  Division divide_by_one_minus_q(int n) const;

 private:
  void trim();
  std::vector<cplx> c_;
};

struct QPolynomial::Division {
  QPolynomial quotient;
  QPolynomial remainder;
};

struct QRational {
  QPolynomial numerator;
  QPolynomial denominator;

  cplx operator()(cplx q) const { return numerator(q) / denominator(q); }
};

inline constexpr int kMaxChainOrder = 12;

/// f_0 .. f_l where f_l(z) = (1/(1 - e^{2 pi i z}))^{(l)} as rational functions of q.
std::vector<QRational> q_derivative_chain(int l);

/// a_{l,d}: g_{m,j}(t - i w) = sum_{l,d < j} a_{l,d} h_m^{(l)}(t - i w) e^{2 pi i t d}
struct TrickTable {
  int j = 1;
  cplx w;
  std::vector<std::vector<cplx>> a;  // a[l][d]
};

TrickTable trick_table(int j, cplx w);

/// The same table before the substitution e^{2 pi i z} = e^{2 pi w} q:
/// row l holds the polynomial in E multiplying h^{(l)}.
std::vector<QPolynomial> trick_polynomials(int j);

struct SymbolFamily {
  int M = 0;
  bool general = false;
  std::vector<ExpPolynomial> m;                       // m[s], s = 0..M-1
  std::vector<std::vector<cplx>> A;                   // A[k][s]
  std::vector<std::vector<std::vector<cplx>>> B;      // B[k][s][l], general only
  std::vector<TrickTable> tricks;                     // per pole, general only
};

SymbolFamily simple_symbol_family(const SimpleWindow& w);
SymbolFamily general_symbol_family(const GeneralWindow& w);
/// Dispatches on the window kind.
SymbolFamily symbol_family(const Window& w);

/// m_{M-1} in closed form, expanded into (c, w, p) terms.
ExpPolynomial top_symbol_closed_form(const GeneralWindow& w);

/// min |m_{M-1}| on [0, 1 - eps1]: dense grid plus golden-section refinement.
Minimum top_symbol_min(const SymbolFamily& family, double eps1, int points = 10000);

/// c_n for n = first .. first + values.size() - 1
struct FiniteSequence {
  int first = 0;
  std::vector<cplx> values;
};

/// (1 - e^{2 pi i z})^k sum_n c_n / (z - n)^k
cplx trick_lhs(int k, const FiniteSequence& c, cplx z);
/// Right side of the trick identity, with exact derivatives of h(z) = (1 - e^{2 pi i z}) sum c_n/(z - n).
cplx trick_rhs(int k, const FiniteSequence& c, cplx z);
/// h^{(l)}(z) by the product rule.
cplx h_derivative(int l, const FiniteSequence& c, cplx z);

}  // namespace gabor
