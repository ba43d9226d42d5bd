#include "gabor/lambda.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "gabor/error.hpp"

namespace gabor {

long strict_floor(double x) {
  const double r = std::round(x);
  if (std::abs(x - r) <= 1e-12 * std::max(1.0, std::abs(x))) return static_cast<long>(r) - 1;
  return static_cast<long>(std::floor(x));
}

Rational Rational::make(std::int64_t num, std::int64_t den) {
  if (den == 0) throw Error(Errc::InvalidArgument, "zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const std::int64_t g = std::gcd(num, den);
  return g > 1 ? Rational{num / g, den / g} : Rational{num, den};
}

std::string Rational::str() const { return std::to_string(num) + "/" + std::to_string(den); }

PeriodicPointSet::PeriodicPointSet(std::vector<double> base_points, double period)
    : base_(std::move(base_points)), period_(period) {
  if (base_.empty()) throw Error(Errc::InvalidArgument, "point set needs at least one base point");
  if (!(period_ > 0.0)) throw Error(Errc::InvalidArgument, "period must be positive");
  std::sort(base_.begin(), base_.end());
  if (base_.front() < 0.0 || base_.back() >= period_)
    throw Error(Errc::InvalidArgument, "base points must lie in [0, period)");
}

double PeriodicPointSet::lambda_at(long i) const {
  const long n = count();
  long q = i / n;
  long r = i % n;
  if (r < 0) {
    r += n;
    --q;
  }
  return base_[static_cast<std::size_t>(r)] + static_cast<double>(q) * period_;
}

std::vector<double> PeriodicPointSet::points_in(double R, double a) const {
  if (!(a > 0.0)) throw Error(Errc::InvalidArgument, "window length must be positive");
  std::vector<double> out;
  const long q0 = static_cast<long>(std::floor(R / period_)) - 1;
  const long q1 = static_cast<long>(std::floor((R + a) / period_)) + 1;
  for (long q = q0; q <= q1; ++q)
    for (double b : base_) {
      const double x = b + static_cast<double>(q) * period_;
      if (x >= R && x < R + a) out.push_back(x);
    }
  std::sort(out.begin(), out.end());
  return out;
}

UniversalSet build_universal(double eps, int N, const LambdaOverrides& overrides) {
  if (!(eps > 0.0) || !std::isfinite(eps)) throw Error(Errc::InvalidArgument, "eps must be positive");
  if (N < 1) throw Error(Errc::InvalidArgument, "N must be at least 1");
  UniversalSet s;
  s.eps = eps;
  s.N = N;
  s.N1 = static_cast<int>(strict_floor(static_cast<double>(N) / eps)) + 1;
  s.eps1 = 1.0 / (4.0 * s.N1);
  s.delta = 1.0 / (2.0 * s.N1);

  if (overrides.delta && overrides.eps1) {
    if (std::abs(*overrides.delta - 2.0 * *overrides.eps1) > 1e-15 * std::abs(*overrides.delta))
      throw Error(Errc::InvalidOverride, "delta must equal 2 * eps1");
    s.delta = *overrides.delta;
    s.eps1 = *overrides.eps1;
  } else if (overrides.delta) {
    s.delta = *overrides.delta;
    s.eps1 = s.delta / 2.0;
  } else if (overrides.eps1) {
    s.eps1 = *overrides.eps1;
    s.delta = 2.0 * s.eps1;
  }
  if (!(s.delta > 0.0) || !(s.delta * s.N1 < 1.0))
    throw Error(Errc::InvalidOverride, "delta must lie in (0, 1/N1)");
  if (!(s.delta > s.eps1)) throw Error(Errc::InvalidOverride, "j * delta > eps1 fails at j = 1");

  std::vector<double> base;
  base.reserve(static_cast<std::size_t>(N + 1 + s.N1));
  for (int j = 0; j <= N; ++j) base.push_back(static_cast<double>(j) / (N + 1));
  for (int j = 1; j <= s.N1; ++j) base.push_back(j + 1.0 - j * s.delta);
  s.points = PeriodicPointSet(std::move(base), s.N1 + 1.0);
  return s;
}

Rational density(const UniversalSet& set) { return Rational::make(set.N + 1 + set.N1, set.N1 + 1); }

}  // namespace gabor
