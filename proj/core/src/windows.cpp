#include "gabor/windows.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "gabor/error.hpp"

namespace gabor {

int GeneralWindow::M() const noexcept {
  int m = 0;
  for (const auto& t : terms) m += t.j;
  return m;
}

namespace {

std::string describe(const PoleTerm& t) {
  return "w = (" + std::to_string(t.w.real()) + ", " + std::to_string(t.w.imag()) + ")";
}

void check_term(const PoleTerm& t) {
  if (t.j < 1) throw Error(Errc::NonpositiveMultiplicity, "multiplicity " + std::to_string(t.j));
  if (t.a == cplx{}) throw Error(Errc::ZeroAmplitude, "term with " + describe(t));
  if (!std::isfinite(t.a.real()) || !std::isfinite(t.a.imag()) || !std::isfinite(t.w.real()) ||
      !std::isfinite(t.w.imag()))
    throw Error(Errc::InvalidArgument, "non-finite pole data");
  if (std::abs(t.w.real()) <= kPoleTolerance)
    throw Error(Errc::ImaginaryPoleParameter, describe(t) + " lies on the imaginary axis");
  if (std::abs(2.0 * kPi * t.w.real()) > kMaxExponent)
    throw Error(Errc::OverflowRisk, describe(t) + " has |2 pi Re w| > 40");
}

}  // namespace

Window validate(std::vector<PoleTerm> spec) {
  if (spec.empty()) throw Error(Errc::InvalidArgument, "empty window specification");
  for (const auto& t : spec) check_term(t);
  for (std::size_t k = 0; k < spec.size(); ++k)
    for (std::size_t l = k + 1; l < spec.size(); ++l)
      if (std::abs(spec[k].w - spec[l].w) <= kPoleTolerance)
        throw Error(Errc::DuplicatePole, "repeated pole " + describe(spec[k]));

  const bool simple = std::all_of(spec.begin(), spec.end(), [](const PoleTerm& t) { return t.j == 1; });
  if (simple) {
    // e^{2 pi w} must separate the poles, not just w itself
    for (std::size_t k = 0; k < spec.size(); ++k)
      for (std::size_t l = k + 1; l < spec.size(); ++l) {
        const cplx uk = std::exp(2.0 * kPi * spec[k].w);
        const cplx ul = std::exp(2.0 * kPi * spec[l].w);
        if (std::abs(uk - ul) <= kPoleTolerance * std::max(std::abs(uk), std::abs(ul)))
          throw Error(Errc::DuplicatePole,
                      "e^{2 pi w} coincides for " + describe(spec[k]) + " and " + describe(spec[l]));
      }
    return SimpleWindow{std::move(spec)};
  }
  std::stable_sort(spec.begin(), spec.end(),
                   [](const PoleTerm& x, const PoleTerm& y) { return x.j < y.j; });
  return GeneralWindow{std::move(spec)};
}

SimpleWindow validate_simple(std::vector<PoleTerm> spec) {
  auto w = validate(std::move(spec));
  if (auto* s = std::get_if<SimpleWindow>(&w)) return std::move(*s);
  throw Error(Errc::UnsupportedWindow, "window has a multiple pole");
}

GeneralWindow as_general(const Window& w) {
  if (const auto* g = std::get_if<GeneralWindow>(&w)) return *g;
  return GeneralWindow{std::get<SimpleWindow>(w).terms};
}

std::span<const PoleTerm> terms_of(const Window& w) {
  return std::visit([](const auto& x) { return std::span<const PoleTerm>(x.terms); }, w);
}

int total_multiplicity(const Window& w) {
  int m = 0;
  for (const auto& t : terms_of(w)) m += t.j;
  return m;
}

cplx eval_window(std::span<const PoleTerm> terms, double t) {
  cplx s{};
  for (const auto& term : terms) {
    const cplx d = cplx{t, 0.0} - cplx{0.0, 1.0} * term.w;
    cplx p{1.0, 0.0};
    for (int i = 0; i < term.j; ++i) p *= d;
    s += term.a / p;
  }
  return s;
}

cplx eval_window(const Window& w, double t) { return eval_window(terms_of(w), t); }

cplx membership_function(std::span<const PoleTerm> terms, double t) {
  cplx s{};
  for (const auto& term : terms) {
    const int n = term.j - 1;
    s += term.a * std::exp(2.0 * kPi * term.w * t) * std::pow(kTwoPiI, n) / factorial(n) *
         std::pow(t, n);
  }
  return s;
}

double membership_ratio(std::span<const PoleTerm> terms, double t) {
  constexpr double kNegInf = -std::numeric_limits<double>::infinity();
  std::vector<double> logmag(terms.size(), kNegInf);
  std::vector<cplx> phase(terms.size());
  double top = kNegInf;
  for (std::size_t k = 0; k < terms.size(); ++k) {
    const auto& term = terms[k];
    const int n = term.j - 1;
    if (n > 0 && t == 0.0) continue;
    logmag[k] = std::log(std::abs(term.a)) + n * std::log(2.0 * kPi) - std::lgamma(n + 1.0) +
                (n > 0 ? n * std::log(std::abs(t)) : 0.0) + 2.0 * kPi * term.w.real() * t;
    const double sgn = (t < 0.0 && n % 2 == 1) ? -1.0 : 1.0;
    phase[k] = sgn * term.a / std::abs(term.a) * std::pow(cplx{0.0, 1.0}, n) *
               std::polar(1.0, 2.0 * kPi * term.w.imag() * t);
    top = std::max(top, logmag[k]);
  }
  if (top == kNegInf) return 0.0;
  cplx num{};
  double den = 0.0;
  for (std::size_t k = 0; k < terms.size(); ++k) {
    if (logmag[k] == kNegInf) continue;
    const double m = std::exp(logmag[k] - top);
    num += m * phase[k];
    den += m;
  }
  return std::abs(num) / den;
}

namespace {

// Dominance bound on (-inf, -T]: the term that wins as t -> -inf must outweigh
// all the others there. Returns false when no single term dominates.
bool certify_tail(std::span<const PoleTerm> terms, double T) {
  double rho = std::numeric_limits<double>::infinity();
  for (const auto& t : terms) rho = std::min(rho, t.w.real());
  int lead = -1;
  int lead_p = -1;
  int ties = 0;
  for (std::size_t k = 0; k < terms.size(); ++k) {
    if (std::abs(terms[k].w.real() - rho) > kPoleTolerance) continue;
    const int p = terms[k].j - 1;
    if (p > lead_p) {
      lead_p = p;
      lead = static_cast<int>(k);
      ties = 1;
    } else if (p == lead_p) {
      ++ties;
    }
  }
  if (ties != 1) return false;
  auto coef = [](const PoleTerm& t) {
    const int n = t.j - 1;
    return std::abs(t.a) * std::pow(2.0 * kPi, n) / factorial(n);
  };
  const double c_lead = coef(terms[static_cast<std::size_t>(lead)]);
  double bound = 0.0;
  for (std::size_t k = 0; k < terms.size(); ++k) {
    if (static_cast<int>(k) == lead) continue;
    const double dp = (terms[k].j - 1) - lead_p;
    const double gap = 2.0 * kPi * (terms[k].w.real() - rho);
    // sup over s >= T of s^dp e^{-gap s}
    double s = T;
    if (gap > kPoleTolerance && dp > 0.0) s = std::max(T, dp / gap);
    double f = std::exp(dp * std::log(s) - gap * s);
    if (gap <= kPoleTolerance && dp > 0.0) f = std::numeric_limits<double>::infinity();
    bound += coef(terms[k]) / c_lead * f;
  }
  return bound < 1.0;
}

}  // namespace

MembershipReport class_test(const Window& w, const ClassTestOptions& opts) {
  if (!(opts.t_max > 0.0) || opts.steps < 100)
    throw Error(Errc::InvalidArgument, "class_test needs t_max > 0 and steps >= 100");
  const auto terms = terms_of(w);
  const double h = opts.t_max / opts.steps;
  std::vector<double> r(static_cast<std::size_t>(opts.steps));
  auto grid_t = [&](int i) { return -opts.t_max + i * h; };
  for (int i = 0; i < opts.steps; ++i) r[static_cast<std::size_t>(i)] = membership_ratio(terms, grid_t(i));

  MembershipReport rep;
  rep.min_modulus = std::numeric_limits<double>::infinity();
  for (int i = 0; i < opts.steps; ++i) {
    if (r[static_cast<std::size_t>(i)] < rep.min_modulus) {
      rep.min_modulus = r[static_cast<std::size_t>(i)];
      rep.min_location = grid_t(i);
    }
  }

  auto ratio = [&](double t) { return membership_ratio(terms, t); };
  double best = std::numeric_limits<double>::infinity();
  for (int i = 0; i < opts.steps; ++i) {
    const double ri = r[static_cast<std::size_t>(i)];
    const double left = i > 0 ? r[static_cast<std::size_t>(i - 1)] : ri;
    const double right = i + 1 < opts.steps ? r[static_cast<std::size_t>(i + 1)] : ri;
    if (!(ri <= left && ri <= right && (ri < left || ri < right || ri < opts.atol))) continue;
    const double lo = i > 0 ? grid_t(i - 1) : grid_t(i);
    const double hi = i + 1 < opts.steps ? grid_t(i + 1) : -0.5 * h;
    const Minimum m = golden_minimize(ratio, lo, hi, 1e-15);
    if (m.value < rep.min_modulus) {
      rep.min_modulus = m.value;
      rep.min_location = m.x;
    }
    if (m.value < opts.atol && m.value < best) {
      best = m.value;
      rep.witness = m.x;
    }
  }
  rep.member = !rep.witness.has_value();
  rep.tail_certified = certify_tail(terms, opts.t_max);
  return rep;
}

cplx fourier_transform(const Window& w, double tau) {
  const auto* s = std::get_if<SimpleWindow>(&w);
  if (s == nullptr) throw Error(Errc::UnsupportedWindow, "Fourier transform needs simple poles");
  for (const auto& t : s->terms)
    if (std::abs(t.w.imag()) > kPoleTolerance || t.w.real() <= 0.0)
      throw Error(Errc::UnsupportedWindow, "Fourier transform needs real positive w_k");
  if (tau < 0.0) return {};
  cplx sum{};
  for (const auto& t : s->terms) sum += t.a * std::exp(-2.0 * kPi * t.w.real() * tau);
  return tau == 0.0 ? 0.5 * kTwoPiI * sum : kTwoPiI * sum;
}

}  // namespace gabor
