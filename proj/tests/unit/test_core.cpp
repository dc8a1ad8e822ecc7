#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "ibmetric/core.hpp"

using namespace ibmetric;

TEST(Grid, UniformTwoPoints) {
  const auto g = make_uniform_grid(2);
  ASSERT_EQ(g.size(), 2u);
  EXPECT_EQ(g[0], 0.0);
  EXPECT_EQ(g[1], 1.0);
  EXPECT_EQ(g.weights()[0], 0.5);
  EXPECT_EQ(g.weights()[1], 0.5);
}

TEST(Grid, UniformThreePoints) {
  const auto g = make_uniform_grid(3);
  EXPECT_EQ(g[1], 0.5);
  for (double w : g.weights()) EXPECT_DOUBLE_EQ(w, 1.0 / 3.0);
}

TEST(Grid, Uniform101Spacing) {
  const auto g = make_uniform_grid(101);
  ASSERT_EQ(g.size(), 101u);
  for (std::size_t k = 1; k < g.size(); ++k) EXPECT_NEAR(g[k] - g[k - 1], 0.01, 1e-15);
  EXPECT_EQ(g[100], 1.0);
}

TEST(Grid, TrapezoidWeightsSumToOne) {
  const auto g = make_trapezoid_grid(11);
  double total = 0.0;
  for (double w : g.weights()) total += w;
  EXPECT_NEAR(total, 1.0, 1e-15);
  EXPECT_DOUBLE_EQ(g.weights()[0], 0.05);
  EXPECT_DOUBLE_EQ(g.weights()[5], 0.1);
}

TEST(Grid, RejectsInvalid) {
  EXPECT_THROW(make_uniform_grid(1), std::invalid_argument);
  EXPECT_THROW(Grid({0.0, 0.0}, {0.5, 0.5}), std::invalid_argument);
  EXPECT_THROW(Grid({0.0, 1.5}, {0.5, 0.5}), std::invalid_argument);
  EXPECT_THROW(Grid({-0.1, 1.0}, {0.5, 0.5}), std::invalid_argument);
  EXPECT_THROW(Grid({0.0, 1.0}, {0.5, 0.6}), std::invalid_argument);
  EXPECT_THROW(Grid({0.0, 1.0}, {1.5, -0.5}), std::invalid_argument);
  EXPECT_THROW(Grid({0.0}, {1.0}), std::invalid_argument);
}

TEST(SampledFunction, ValidatesShape) {
  const auto g = make_uniform_grid(3);
  EXPECT_THROW(SampledFunction(g, {1.0, 2.0}), std::invalid_argument);
  EXPECT_THROW(SampledFunction(g, {1.0, 2.0, NAN}), std::invalid_argument);
  EXPECT_THROW(SampledFunction(g, {1.0, 2.0, 3.0}, 0), std::invalid_argument);
  const SampledFunction f(g, {1, 2, 3, 4, 5, 6}, 2);
  EXPECT_EQ(f.dim(), 2u);
  EXPECT_EQ(f.value(1)[0], 3.0);
  EXPECT_EQ(f.value(1)[1], 4.0);
}

TEST(SampledFunction, EvaluateInterpolates) {
  const SampledFunction f(make_uniform_grid(3), {0.0, 2.0, 0.0});
  EXPECT_EQ(f.evaluate(0.5)[0], 2.0);
  EXPECT_DOUBLE_EQ(f.evaluate(0.25)[0], 1.0);
  EXPECT_DOUBLE_EQ(f.evaluate(0.75)[0], 1.0);
  EXPECT_EQ(f.evaluate(1.0)[0], 0.0);
}

TEST(CurvePoint, Validates) {
  EXPECT_THROW(CurvePoint(1.5, {0.0}), std::invalid_argument);
  EXPECT_THROW(CurvePoint(0.5, {}), std::invalid_argument);
  EXPECT_THROW(CurvePoint(0.5, {INFINITY}), std::invalid_argument);
}

TEST(WindowIndices, InteriorBall) {
  const auto g = make_uniform_grid(11);
  const auto w = window_indices(g, 0.5, 0.2);
  EXPECT_EQ(w.lo, 3u);
  EXPECT_EQ(w.hi, 7u);
}

TEST(WindowIndices, ZeroRadiusOnGridPoint) {
  const auto w = window_indices(make_uniform_grid(11), 0.5, 0.0);
  EXPECT_EQ(w.lo, 5u);
  EXPECT_EQ(w.hi, 5u);
}

TEST(WindowIndices, NearestPointFallback) {
  const auto g = make_uniform_grid(11);
  // |0 - 0.04| = 0.04 and |0.1 - 0.04| = 0.06: nothing within 0.01.
  const auto w = window_indices(g, 0.04, 0.01);
  EXPECT_EQ(w.lo, 0u);
  EXPECT_EQ(w.hi, 0u);
  // Exact tie between 0.0 and 0.1 goes to the lower index.
  const Grid coarse({0.0, 0.5, 1.0}, {0.25, 0.5, 0.25});
  const auto tie = window_indices(coarse, 0.25, 0.1);
  EXPECT_EQ(tie.lo, 0u);
  EXPECT_EQ(tie.hi, 0u);
}

TEST(WindowIndices, ClipsAtBoundary) {
  const auto w = window_indices(make_uniform_grid(11), 0.0, 0.25);
  EXPECT_EQ(w.lo, 0u);
  EXPECT_EQ(w.hi, 2u);
}

TEST(WindowIndices, RejectsOutsideDomain) {
  const auto g = make_uniform_grid(5);
  EXPECT_THROW(window_indices(g, 1.2, 0.1), std::invalid_argument);
  EXPECT_THROW(window_indices(g, 0.5, -0.1), std::invalid_argument);
}

TEST(WindowIndices, MonotoneInRadiusAndFullForLargeRadius) {
  const auto g = make_uniform_grid(37);
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 500; ++trial) {
    const double t = unit(rng);
    double e1 = unit(rng) * 0.5;
    double e2 = unit(rng) * 0.5;
    if (e1 > e2) std::swap(e1, e2);
    const auto a = window_indices(g, t, e1);
    const auto b = window_indices(g, t, e2);
    EXPECT_LE(b.lo, a.lo);
    EXPECT_GE(b.hi, a.hi);
    const auto full = window_indices(g, t, 1.0 + unit(rng));
    EXPECT_EQ(full.lo, 0u);
    EXPECT_EQ(full.hi, g.size() - 1);
  }
}

TEST(WindowIndices, MatchesEnumeration) {
  const Grid g({0.0, 0.1, 0.15, 0.4, 0.8, 0.95}, {0.1, 0.1, 0.2, 0.2, 0.2, 0.2});
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 2000; ++trial) {
    const double t = unit(rng);
    const double eps = unit(rng) * 0.3;
    std::size_t lo = g.size();
    std::size_t hi = 0;
    for (std::size_t k = 0; k < g.size(); ++k) {
      if (std::fabs(g[k] - t) <= eps) {
        lo = std::min(lo, k);
        hi = std::max(hi, k);
      }
    }
    if (lo == g.size()) {
      std::size_t best = 0;
      for (std::size_t k = 1; k < g.size(); ++k) {
        if (std::fabs(g[k] - t) < std::fabs(g[best] - t)) best = k;
      }
      lo = hi = best;
    }
    const auto w = window_indices(g, t, eps);
    EXPECT_EQ(w.lo, lo) << "t=" << t << " eps=" << eps;
    EXPECT_EQ(w.hi, hi) << "t=" << t << " eps=" << eps;
  }
}

TEST(PointDistance, Examples) {
  EXPECT_EQ(point_distance({0.0, {0.0}}, {0.0, {3.0}}, 2.0), 3.0);
  EXPECT_DOUBLE_EQ(point_distance({0.0, {0.0}}, {0.3, {0.4}}, 2.0), 0.5);
  EXPECT_DOUBLE_EQ(point_distance({0.0, {0.0}}, {0.3, {0.4}}, kInf), 0.4);
  EXPECT_DOUBLE_EQ(point_distance({0.0, {0.0}}, {0.3, {0.4}}, 1.0), 0.7);
  EXPECT_NEAR(point_distance({0.0, {0.0}}, {0.3, {0.4}}, 3.0),
              std::cbrt(0.027 + 0.064), 1e-15);
  // Euclidean distance on the values.
  EXPECT_DOUBLE_EQ(point_distance({0.0, {0.0, 0.0}}, {0.0, {3.0, 4.0}}, 1.0), 5.0);
}

TEST(PointDistance, RejectsDimensionMismatch) {
  EXPECT_THROW(point_distance({0.0, {0.0}}, {0.0, {1.0, 2.0}}, 2.0), std::invalid_argument);
}

TEST(PointDistance, MetricAxiomsRandomTriples) {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::normal_distribution<double> normal(0.0, 2.0);
  for (const double q : {1.0, 1.5, 2.0, 3.0, kInf}) {
    for (int trial = 0; trial < 1000; ++trial) {
      const CurvePoint a(unit(rng), {normal(rng), normal(rng)});
      const CurvePoint b(unit(rng), {normal(rng), normal(rng)});
      const CurvePoint c(unit(rng), {normal(rng), normal(rng)});
      const double ab = point_distance(a, b, q);
      EXPECT_EQ(ab, point_distance(b, a, q));
      EXPECT_GT(ab, 0.0);
      EXPECT_EQ(point_distance(a, a, q), 0.0);
      EXPECT_LE(ab, point_distance(a, c, q) + point_distance(c, b, q) + 1e-12);
    }
  }
}

TEST(PointMetric, FinishOfReducedIsDistance) {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> normal(0.0, 1.0);
  for (const double q : {1.0, 2.0, 2.5, kInf}) {
    const PointMetric m(q);
    for (int trial = 0; trial < 200; ++trial) {
      const double dt = normal(rng) * 0.3;
      const double a[] = {normal(rng)};
      const double b[] = {normal(rng)};
      const double r = m.reduced(dt, a, b);
      EXPECT_LE(m.time_part(dt), r);
      const double expected = q == kInf ? std::max(std::fabs(dt), std::fabs(a[0] - b[0]))
                                        : std::pow(std::pow(std::fabs(dt), q) +
                                                       std::pow(std::fabs(a[0] - b[0]), q),
                                                   1.0 / q);
      EXPECT_NEAR(m.finish(r), expected, 1e-14 * (1.0 + expected));
    }
  }
}

TEST(Orders, ParseAndFormat) {
  EXPECT_EQ(parse_order("2"), 2.0);
  EXPECT_EQ(parse_order("inf"), kInf);
  EXPECT_EQ(parse_order("1.5"), 1.5);
  EXPECT_THROW(parse_order("0.5"), std::invalid_argument);
  EXPECT_THROW(parse_order("x"), std::invalid_argument);
  EXPECT_EQ(format_order(kInf), "inf");
  EXPECT_EQ(format_order(2.0), "2");
}

TEST(MetricConfig, Validates) {
  EXPECT_NO_THROW((MetricConfig{2.0, kInf, 0.0}.validate()));
  EXPECT_THROW((MetricConfig{0.5, 2.0, 0.0}.validate()), std::invalid_argument);
  EXPECT_THROW((MetricConfig{2.0, 0.9, 0.0}.validate()), std::invalid_argument);
  EXPECT_THROW((MetricConfig{2.0, 2.0, -1.0}.validate()), std::invalid_argument);
}
