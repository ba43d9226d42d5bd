#include <gtest/gtest.h>

#include <cmath>

#include "gabor/error.hpp"
#include "gabor/lambda.hpp"
#include "oracles.hpp"

using namespace gabor;

TEST(StrictFloor, BracketConvention) {
  EXPECT_EQ(strict_floor(2.0), 1);
  EXPECT_EQ(strict_floor(1.0 / 0.5 * 2.0), 3);
  EXPECT_EQ(strict_floor(2.5), 2);
  EXPECT_EQ(strict_floor(0.3), 0);
  EXPECT_EQ(strict_floor(1.0 / 0.25), 3);
}

TEST(Universal, HalfOne) {
  const auto s = build_universal(0.5, 1);
  EXPECT_EQ(s.N1, 2);
  EXPECT_DOUBLE_EQ(s.period(), 3.0);
  EXPECT_DOUBLE_EQ(s.delta, 0.25);
  EXPECT_DOUBLE_EQ(s.eps1, 0.125);
  const std::vector<double> expect{0.0, 0.5, 2.0 - 0.25, 3.0 - 0.5};
  ASSERT_EQ(s.base_points().size(), expect.size());
  for (std::size_t i = 0; i < expect.size(); ++i) EXPECT_DOUBLE_EQ(s.base_points()[i], expect[i]);
}

TEST(Universal, N1Values) {
  EXPECT_EQ(build_universal(1.0, 1).N1, 1);
  EXPECT_EQ(build_universal(0.5, 2).N1, 4);
  EXPECT_EQ(build_universal(0.25, 3).N1, 12);
  EXPECT_EQ(build_universal(0.3, 1).N1, 4);
}

TEST(Universal, TypeInvariants) {
  for (double eps : {0.25, 0.5, 1.0, 0.3, 0.7})
    for (int N = 1; N <= 4; ++N) {
      const auto s = build_universal(eps, N);
      const auto& bp = s.base_points();
      ASSERT_EQ(static_cast<long>(bp.size()), N + 1 + s.N1);
      EXPECT_TRUE(std::is_sorted(bp.begin(), bp.end()));
      for (int j = 0; j <= N; ++j) EXPECT_EQ(bp[static_cast<std::size_t>(j)], static_cast<double>(j) / (N + 1));
      for (int j = 1; j <= s.N1; ++j) {
        int inside = 0;
        for (double x : bp)
          if (x > j && x < j + 1) ++inside;
        EXPECT_EQ(inside, 1) << "interval " << j;
      }
      EXPECT_GT(s.delta, 0.0);
      EXPECT_LT(s.delta * s.N1, 1.0);
      EXPECT_DOUBLE_EQ(s.delta, 2.0 * s.eps1);
      // Step-2 guard
      for (int j = 1; j <= s.N1; ++j) EXPECT_LT(j + 1 - j * s.delta, j + 1 - s.eps1);
    }
}

TEST(Universal, Overrides) {
  LambdaOverrides o;
  o.delta = 0.2;
  const auto s = build_universal(0.5, 1, o);
  EXPECT_DOUBLE_EQ(s.eps1, 0.1);
  LambdaOverrides e;
  e.eps1 = 0.1;
  EXPECT_DOUBLE_EQ(build_universal(0.5, 1, e).delta, 0.2);
}

TEST(Universal, InvalidOverrides) {
  const auto code = [](LambdaOverrides o) {
    try {
      build_universal(0.5, 1, o);
    } catch (const Error& e) {
      return e.code();
    }
    return Errc::InvalidArgument;
  };
  EXPECT_EQ(code({0.6, std::nullopt}), Errc::InvalidOverride);   // delta >= 1/N1
  EXPECT_EQ(code({0.2, 0.05}), Errc::InvalidOverride);           // delta != 2 eps1
  EXPECT_EQ(code({-0.1, std::nullopt}), Errc::InvalidOverride);
  EXPECT_THROW(build_universal(0.0, 1), Error);
  EXPECT_THROW(build_universal(0.5, 0), Error);
}

TEST(LambdaAt, Examples) {
  const auto s = build_universal(0.5, 1);
  EXPECT_EQ(s.lambda_at(0), 0.0);
  EXPECT_DOUBLE_EQ(s.lambda_at(4), 3.0);
  EXPECT_DOUBLE_EQ(s.lambda_at(-1), -2.0 * s.delta);
  EXPECT_DOUBLE_EQ(s.lambda_at(-4), -3.0);
}

TEST(LambdaAt, SortedAndPeriodic) {
  for (int N = 1; N <= 3; ++N) {
    const auto s = build_universal(0.5, N);
    const long n = s.points.count();
    for (long i = -3 * n; i < 3 * n; ++i) {
      EXPECT_LE(s.lambda_at(i), s.lambda_at(i + 1));
      EXPECT_NEAR(s.lambda_at(i + n), s.lambda_at(i) + s.period(), 1e-12);
    }
  }
}

TEST(Density, Examples) {
  EXPECT_EQ(density(build_universal(0.5, 1)), Rational::make(4, 3));
  EXPECT_EQ(density(build_universal(0.5, 2)), Rational::make(7, 5));
  EXPECT_EQ(density(build_universal(1.0, 1)), Rational::make(3, 2));
  EXPECT_EQ(Rational::make(8, 6).str(), "4/3");
}

TEST(Density, BoundsOnGrid) {
  for (double eps : {0.1, 0.25, 0.3, 0.5, 0.75, 1.0})
    for (int N = 1; N <= 5; ++N) {
      const auto s = build_universal(eps, N);
      const Rational d = density(s);
      EXPECT_EQ(d, Rational::make(N + 1 + s.N1, s.N1 + 1));
      EXPECT_GT(d.value(), 1.0);
      EXPECT_LE(d.value(), 1.0 + eps + 1e-15);
      EXPECT_DOUBLE_EQ(s.points.density_value(), d.value());
    }
}

TEST(PointsIn, Examples) {
  const auto s = build_universal(0.5, 1);
  const auto p = s.points_in(0.0, 3.0);
  ASSERT_EQ(p.size(), 4u);
  EXPECT_EQ(p[0], 0.0);
  EXPECT_DOUBLE_EQ(p[3], 2.5);
  const auto q = s.points_in(3.0, 3.0);
  ASSERT_EQ(q.size(), 4u);
  for (std::size_t i = 0; i < 4; ++i) EXPECT_DOUBLE_EQ(q[i], p[i] + 3.0);
  EXPECT_TRUE(s.points_in(0.1, 0.1).empty());
}

TEST(PointsIn, CountingIsExactOnWholePeriods) {
  oracle::Rng rng(31);
  for (int N = 1; N <= 3; ++N) {
    const auto s = build_universal(0.5, N);
    for (int trial = 0; trial < 50; ++trial) {
      const double R = rng.uniform(-100.0, 100.0);
      const int m = rng.integer(1, 10);
      EXPECT_EQ(static_cast<long>(s.points_in(R, m * s.period()).size()), m * s.points.count());
    }
  }
}

TEST(PointsIn, MatchesEnumeration) {
  const auto s = build_universal(0.25, 2);
  oracle::Rng rng(32);
  for (int trial = 0; trial < 30; ++trial) {
    const double R = rng.uniform(-20.0, 20.0);
    const double a = rng.uniform(0.01, 15.0);
    std::vector<double> brute;
    for (long i = -200; i < 200; ++i) {
      const double x = s.lambda_at(i);
      if (x >= R && x < R + a) brute.push_back(x);
    }
    const auto got = s.points_in(R, a);
    ASSERT_EQ(got.size(), brute.size());
    for (std::size_t i = 0; i < got.size(); ++i) EXPECT_DOUBLE_EQ(got[i], brute[i]);
  }
}

TEST(PointSet, RejectsBadInput) {
  EXPECT_THROW(PeriodicPointSet({0.0, 2.5}, 2.0), Error);
  EXPECT_THROW(PeriodicPointSet({}, 2.0), Error);
  EXPECT_THROW(PeriodicPointSet({0.0}, 0.0), Error);
  const PeriodicPointSet two({0.0}, 2.0);
  EXPECT_DOUBLE_EQ(two.density_value(), 0.5);
  EXPECT_DOUBLE_EQ(two.lambda_at(-3), -6.0);
}
