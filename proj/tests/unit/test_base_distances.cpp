#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "ibmetric/base_distances.hpp"

using namespace ibmetric;

namespace {

PolyPoints random_polyline(std::mt19937_64& rng, std::size_t n, std::size_t dim = 1) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<double> times(n);
  for (double& t : times) t = unit(rng);
  std::sort(times.begin(), times.end());
  std::vector<double> values(n * dim);
  for (double& v : values) v = unit(rng);
  return PolyPoints(std::move(times), std::move(values), dim);
}

SampledFunction random_function(std::mt19937_64& rng, const std::shared_ptr<const Grid>& grid) {
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<double> v(grid->size());
  double level = normal(rng);
  for (double& x : v) {
    level += 0.3 * normal(rng);
    x = level;
  }
  return SampledFunction(grid, std::move(v));
}

// Plain sup-inf over finished point distances.
double naive_hausdorff(const PolyPoints& a, const PolyPoints& b, double q) {
  auto directed = [q](const PolyPoints& x, const PolyPoints& y) {
    double sup = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      double inf = kInf;
      for (std::size_t j = 0; j < y.size(); ++j) {
        inf = std::min(inf, point_distance(x.point(i), y.point(j), q));
      }
      sup = std::max(sup, inf);
    }
    return sup;
  };
  return std::max(directed(a, b), directed(b, a));
}

}  // namespace

TEST(DirectedHausdorff, Examples) {
  const PolyPoints p({CurvePoint(0.0, {0.0}), CurvePoint(1.0, {0.0})});
  const PolyPoints q({CurvePoint(0.0, {1.0}), CurvePoint(1.0, {1.0})});
  EXPECT_EQ(directed_hausdorff(p, p, 2.0), 0.0);
  EXPECT_EQ(directed_hausdorff(p, q, 2.0), 1.0);
  const PolyPoints single({CurvePoint(0.0, {0.0})});
  const PolyPoints pair({CurvePoint(0.0, {1.0}), CurvePoint(0.3, {0.4})});
  EXPECT_DOUBLE_EQ(directed_hausdorff(single, pair, 2.0), 0.5);
}

TEST(PolyPoints, RejectsInvalid) {
  EXPECT_THROW(PolyPoints({}, {}, 1), std::invalid_argument);
  EXPECT_THROW(PolyPoints({0.5, 0.2}, {0.0, 0.0}, 1), std::invalid_argument);
  EXPECT_THROW(PolyPoints(std::vector<CurvePoint>{}), std::invalid_argument);
  const PolyPoints a({0.0}, {0.0}, 1);
  const PolyPoints b({0.0}, {0.0, 1.0}, 2);
  EXPECT_THROW(directed_hausdorff(a, b, 2.0), std::invalid_argument);
  EXPECT_THROW(discrete_frechet(a, b, 2.0), std::invalid_argument);
}

TEST(HausdorffRestricted, ParallelConstants) {
  for (const std::size_t n : {2u, 7u, 101u}) {
    const auto g = make_uniform_grid(n);
    const SampledFunction zero(g, std::vector<double>(n, 0.0));
    const SampledFunction one(g, std::vector<double>(n, 1.0));
    const Window all{0, n - 1};
    EXPECT_EQ(hausdorff_restricted(zero, all, one, all, 2.0), 1.0);
    EXPECT_EQ(hausdorff_restricted(one, all, one, all, 2.0), 0.0);
  }
}

TEST(HausdorffRestricted, DifferentWindows) {
  const auto g = make_uniform_grid(3);
  const SampledFunction zero(g, {0.0, 0.0, 0.0});
  // Farthest f point (1, 0) to the lone g point (0, 0).
  EXPECT_EQ(hausdorff_restricted(zero, {0, 2}, zero, {0, 0}, 2.0), 1.0);
}

TEST(HausdorffRestricted, MatchesEnumerationAndIsSymmetric) {
  std::mt19937_64 rng(21);
  auto grid = std::make_shared<const Grid>(make_uniform_grid(40));
  std::uniform_int_distribution<std::size_t> idx(0, 39);
  for (int trial = 0; trial < 200; ++trial) {
    const auto f = random_function(rng, grid);
    const auto g = random_function(rng, grid);
    std::size_t a = idx(rng), b = idx(rng), c = idx(rng), d = idx(rng);
    if (a > b) std::swap(a, b);
    if (c > d) std::swap(c, d);
    for (const double q : {1.0, 2.0, kInf}) {
      const double h = hausdorff_restricted(f, {a, b}, g, {c, d}, q);
      EXPECT_EQ(h, hausdorff_restricted(g, {c, d}, f, {a, b}, q));
      EXPECT_NEAR(h, naive_hausdorff(window_samples(f, {a, b}), window_samples(g, {c, d}), q),
                  1e-14);
    }
  }
}

TEST(HausdorffRestricted, TriangleInequalityOnSharedWindow) {
  std::mt19937_64 rng(23);
  auto grid = std::make_shared<const Grid>(make_uniform_grid(30));
  std::uniform_int_distribution<std::size_t> idx(0, 29);
  for (int trial = 0; trial < 300; ++trial) {
    const auto f = random_function(rng, grid);
    const auto g = random_function(rng, grid);
    const auto h = random_function(rng, grid);
    std::size_t a = idx(rng), b = idx(rng);
    if (a > b) std::swap(a, b);
    const Window w{a, b};
    EXPECT_LE(hausdorff_restricted(f, w, g, w, 2.0),
              hausdorff_restricted(f, w, h, w, 2.0) + hausdorff_restricted(h, w, g, w, 2.0) +
                  1e-12);
  }
}

TEST(Reparametrize, IdentityInterval) {
  std::mt19937_64 rng(1);
  auto grid = std::make_shared<const Grid>(make_uniform_grid(9));
  const auto f = random_function(rng, grid);
  const auto p = reparametrize(f, 0.0, 1.0, 9);
  for (std::size_t i = 0; i < 9; ++i) {
    EXPECT_NEAR(p.time(i), f.time(i), 1e-15);
    EXPECT_NEAR(p.value(i)[0], f.value(i)[0], 1e-12);
  }
}

TEST(Reparametrize, DegenerateInterval) {
  const SampledFunction f(make_uniform_grid(3), {0.0, 2.0, 4.0});
  const auto p = reparametrize(f, 0.5, 0.5, 4);
  ASSERT_EQ(p.size(), 4u);
  for (std::size_t i = 0; i < 4; ++i) {
    EXPECT_EQ(p.time(i), 0.5);
    EXPECT_EQ(p.value(i)[0], 2.0);
  }
}

TEST(Reparametrize, LinearFunctionSubinterval) {
  auto grid = std::make_shared<const Grid>(make_uniform_grid(11));
  const auto f = SampledFunction::from_rule(grid, [](double t) { return t; });
  const auto p = reparametrize(f, 0.2, 0.6, 3);
  const double expected[] = {0.2, 0.4, 0.6};
  for (std::size_t i = 0; i < 3; ++i) {
    EXPECT_NEAR(p.time(i), expected[i], 1e-15);
    EXPECT_NEAR(p.value(i)[0], expected[i], 1e-15);
  }
}

TEST(Reparametrize, RejectsInvalid) {
  const SampledFunction f(make_uniform_grid(3), {0.0, 2.0, 4.0});
  EXPECT_THROW(reparametrize(f, 0.6, 0.5, 3), std::invalid_argument);
  EXPECT_THROW(reparametrize(f, 0.1, 0.5, 1), std::invalid_argument);
}

TEST(DiscreteFrechet, Examples) {
  const PolyPoints p({CurvePoint(0.0, {0.0}), CurvePoint(1.0, {0.0})});
  const PolyPoints q({CurvePoint(0.0, {1.0}), CurvePoint(1.0, {1.0})});
  for (const auto v : {FrechetVariant::symmetric, FrechetVariant::one_sided}) {
    EXPECT_EQ(discrete_frechet(p, p, 2.0, v), 0.0);
    EXPECT_EQ(discrete_frechet(p, q, 2.0, v), 1.0);
  }
}

TEST(DiscreteFrechet, OneSidedNeedsTwoPointsToCoverSeveral) {
  const PolyPoints single({CurvePoint(0.0, {0.0})});
  const PolyPoints pair({CurvePoint(0.0, {0.0}), CurvePoint(1.0, {0.0})});
  EXPECT_THROW(discrete_frechet(single, pair, 2.0, FrechetVariant::one_sided),
               std::invalid_argument);
  EXPECT_EQ(discrete_frechet(single, pair, 2.0, FrechetVariant::symmetric), 1.0);
  EXPECT_EQ(discrete_frechet(pair, single, 2.0, FrechetVariant::one_sided), 1.0);
}

TEST(BruteForceFrechet, SmallCases) {
  const PolyPoints p({CurvePoint(0.0, {0.0}), CurvePoint(0.5, {1.0}), CurvePoint(1.0, {0.0})});
  EXPECT_EQ(brute_force_frechet(p, p, 2.0), 0.0);
  const PolyPoints a({CurvePoint(0.2, {0.0})});
  const PolyPoints b({CurvePoint(0.5, {0.4})});
  EXPECT_DOUBLE_EQ(brute_force_frechet(a, b, 2.0), 0.5);
  std::mt19937_64 rng(2);
  EXPECT_THROW(brute_force_frechet(random_polyline(rng, 9), random_polyline(rng, 3), 2.0),
               std::invalid_argument);
}

TEST(DiscreteFrechet, MatchesBruteForceExactly) {
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<std::size_t> size(1, 6);
  for (int trial = 0; trial < 400; ++trial) {
    const auto p = random_polyline(rng, size(rng));
    const auto q = random_polyline(rng, size(rng));
    for (const double order : {1.0, 2.0, kInf}) {
      EXPECT_EQ(discrete_frechet(p, q, order), brute_force_frechet(p, q, order));
      if (p.size() >= 2 || q.size() == 1) {
        EXPECT_EQ(discrete_frechet(p, q, order, FrechetVariant::one_sided),
                  brute_force_frechet(p, q, order, FrechetVariant::one_sided));
      }
    }
  }
}

TEST(DiscreteFrechet, MultivariateMatchesBruteForce) {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<std::size_t> size(2, 6);
  for (int trial = 0; trial < 100; ++trial) {
    const auto p = random_polyline(rng, size(rng), 3);
    const auto q = random_polyline(rng, size(rng), 3);
    EXPECT_EQ(discrete_frechet(p, q, 2.0), brute_force_frechet(p, q, 2.0));
    EXPECT_EQ(discrete_frechet(p, q, 2.0, FrechetVariant::one_sided),
              brute_force_frechet(p, q, 2.0, FrechetVariant::one_sided));
  }
}

TEST(DiscreteFrechet, OneSidedDominatesSymmetric) {
  std::mt19937_64 rng(12);
  std::uniform_int_distribution<std::size_t> size(2, 20);
  for (int trial = 0; trial < 300; ++trial) {
    const auto p = random_polyline(rng, size(rng));
    const auto q = random_polyline(rng, size(rng));
    EXPECT_GE(discrete_frechet(p, q, 2.0, FrechetVariant::one_sided), discrete_frechet(p, q, 2.0));
  }
}

TEST(FrechetRestricted, Examples) {
  const auto n = 11u;
  auto grid = std::make_shared<const Grid>(make_uniform_grid(n));
  const SampledFunction zero(grid, std::vector<double>(n, 0.0));
  const SampledFunction one(grid, std::vector<double>(n, 1.0));
  EXPECT_EQ(frechet_restricted(zero, 0.0, 1.0, one, 0.0, 1.0, 2.0), 1.0);
  EXPECT_EQ(frechet_restricted(one, 0.2, 0.7, one, 0.2, 0.7, 2.0), 0.0);
  const auto id = SampledFunction::from_rule(grid, [](double t) { return t; });
  EXPECT_NEAR(frechet_restricted(id, 0.0, 0.5, id, 0.5, 1.0, 2.0, 2), std::sqrt(0.5), 1e-15);
}

TEST(FrechetRestricted, SymmetricInArguments) {
  std::mt19937_64 rng(31);
  auto grid = std::make_shared<const Grid>(make_uniform_grid(25));
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 100; ++trial) {
    const auto f = random_function(rng, grid);
    const auto g = random_function(rng, grid);
    double a = unit(rng), b = unit(rng), c = unit(rng), d = unit(rng);
    if (a > b) std::swap(a, b);
    if (c > d) std::swap(c, d);
    EXPECT_EQ(frechet_restricted(f, a, b, g, c, d, 2.0), frechet_restricted(g, c, d, f, a, b, 2.0));
  }
}

TEST(BaseDistances, DominanceVerticalBoundAndPointLimit) {
  std::mt19937_64 rng(41);
  auto grid = std::make_shared<const Grid>(make_uniform_grid(50));
  std::uniform_int_distribution<std::size_t> idx(0, 49);
  for (int trial = 0; trial < 300; ++trial) {
    const auto f = random_function(rng, grid);
    const auto g = random_function(rng, grid);
    std::size_t a = idx(rng), b = idx(rng);
    if (a > b) std::swap(a, b);
    const Window w{a, b};
    double vertical = 0.0;
    for (std::size_t k = a; k <= b; ++k) {
      vertical = std::max(vertical, std::fabs(f.value(k)[0] - g.value(k)[0]));
    }
    for (const double q : {1.0, 2.0, kInf}) {
      const double h = hausdorff_restricted(f, w, g, w, q);
      const double fr = frechet_windowed(f, w, g, w, q);
      const double fo = frechet_windowed(f, w, g, w, q, FrechetVariant::one_sided);
      EXPECT_GE(fr - h, -1e-15);
      EXPECT_GE(fo - h, -1e-15);
      EXPECT_LE(h, vertical);
      EXPECT_LE(fr, vertical);
      EXPECT_LE(fo, vertical);
    }
    const Window point{a, a};
    const double gap = std::fabs(f.value(a)[0] - g.value(a)[0]);
    EXPECT_EQ(hausdorff_restricted(f, point, g, point, 2.0), gap);
    EXPECT_EQ(frechet_windowed(f, point, g, point, 2.0), gap);
    EXPECT_EQ(frechet_windowed(f, point, g, point, 2.0, FrechetVariant::one_sided), gap);
  }
}

TEST(BaseDistance, Names) {
  EXPECT_EQ(to_string(BaseDistance::hausdorff()), "hausdorff");
  EXPECT_EQ(to_string(BaseDistance::frechet()), "frechet");
  EXPECT_EQ(parse_base_distance("frechet", FrechetVariant::one_sided),
            BaseDistance::frechet(FrechetVariant::one_sided));
  EXPECT_EQ(parse_frechet_variant("one-sided"), FrechetVariant::one_sided);
  EXPECT_EQ(to_string(FrechetVariant::one_sided), "one-sided");
  EXPECT_THROW(parse_base_distance("l2"), std::invalid_argument);
  EXPECT_THROW(parse_frechet_variant("weak"), std::invalid_argument);
}

TEST(FrechetRestricted, GridAlignedWindowMatchesWindowSamples) {
  std::mt19937_64 rng(77);
  auto grid = std::make_shared<const Grid>(make_uniform_grid(201));
  std::uniform_int_distribution<std::size_t> idx(0, 200);
  for (int trial = 0; trial < 200; ++trial) {
    const auto f = random_function(rng, grid);
    const auto g = random_function(rng, grid);
    std::size_t a = idx(rng), b = idx(rng);
    if (a > b) std::swap(a, b);
    const Window w{a, b};
    EXPECT_EQ(frechet_restricted(f, (*grid)[a], (*grid)[b], g, (*grid)[a], (*grid)[b], 2.0),
              frechet_windowed(f, w, g, w, 2.0));
  }
}
