#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace gabor {

/// Largest integer strictly smaller than x. Values within 1e-12 (relative)
/// of an integer n are treated as n, so strict_floor(4/0.5) is 3.
long strict_floor(double x);

struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  static Rational make(std::int64_t num, std::int64_t den);
  double value() const noexcept { return static_cast<double>(num) / static_cast<double>(den); }
  std::string str() const;

  friend bool operator==(const Rational&, const Rational&) = default;
  friend bool operator<(const Rational& x, const Rational& y) { return x.num * y.den < y.num * x.den; }
};

/// base_points + period * Z, enumerated so that index 0 is base_points[0].
class PeriodicPointSet {
 public:
  PeriodicPointSet() = default;
  PeriodicPointSet(std::vector<double> base_points, double period);

  const std::vector<double>& base_points() const noexcept { return base_; }
  double period() const noexcept { return period_; }
  long count() const noexcept { return static_cast<long>(base_.size()); }

  double lambda_at(long i) const;
  /// Points in the half-open window [R, R + a), sorted.
  std::vector<double> points_in(double R, double a) const;
  /// Points per unit length.
  double density_value() const noexcept { return static_cast<double>(base_.size()) / period_; }

 private:
  std::vector<double> base_;
  double period_ = 1.0;
};

struct LambdaOverrides {
  std::optional<double> delta;
  std::optional<double> eps1;
};

struct UniversalSet {
  double eps = 0.0;
  int N = 0;
  int N1 = 0;
  double eps1 = 0.0;
  double delta = 0.0;
  PeriodicPointSet points;

  double period() const noexcept { return points.period(); }
  const std::vector<double>& base_points() const noexcept { return points.base_points(); }
  double lambda_at(long i) const { return points.lambda_at(i); }
  std::vector<double> points_in(double R, double a) const { return points.points_in(R, a); }
};

/// N1 = strict_floor(N/eps) + 1, base points j/(N+1) and j+1-j*delta, period N1+1.
UniversalSet build_universal(double eps, int N, const LambdaOverrides& overrides = {});

/// (N + 1 + N1) / (N1 + 1)
Rational density(const UniversalSet& set);

}  // namespace gabor
