#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "starbody.hpp"

using namespace starbody;

TEST(XReal, ReciprocalRules) {
  EXPECT_EQ(xreal::reciprocal(0.0), kInf);
  EXPECT_EQ(xreal::reciprocal(kInf), 0.0);
  EXPECT_EQ(xreal::reciprocal(4.0), 0.25);
}

TEST(XReal, DifferencesWithInfinity) {
  EXPECT_EQ(xreal::abs_diff(kInf, kInf), 0.0);
  EXPECT_EQ(xreal::abs_diff(kInf, 3.0), kInf);
  EXPECT_EQ(xreal::abs_diff(1.0, 3.5), 2.5);
  EXPECT_EQ(xreal::excess(kInf, kInf), 0.0);
  EXPECT_EQ(xreal::excess(kInf, 2.0), kInf);
  EXPECT_EQ(xreal::excess(1.0, 2.0), 0.0);
  EXPECT_EQ(xreal::truncate(kInf, 3.0), 3.0);
  EXPECT_THROW(xreal::sub(kInf, 1.0), std::domain_error);
  EXPECT_FALSE(xreal::is_valid(-1.0));
  EXPECT_FALSE(xreal::is_valid(std::nan("")));
}

TEST(Direction, RejectsNonUnitAndOrigin) {
  EXPECT_THROW(Direction::from_unit(make_point({1.0, 0.1})), std::invalid_argument);
  EXPECT_FALSE(Direction::of(Point::Zero(3)).has_value());
  const auto u = Direction::of(make_point({3.0, 4.0}));
  ASSERT_TRUE(u);
  EXPECT_NEAR((*u)[0], 0.6, 1e-15);
  EXPECT_NEAR(u->coords().norm(), 1.0, 1e-15);
}

class GridTest : public ::testing::TestWithParam<std::tuple<int, int>> {};

TEST_P(GridTest, UnitDirectionsCoveredWithinResolution) {
  const auto [d, count] = GetParam();
  const auto grid = make_grid(d, count, 7, true);
  EXPECT_EQ(grid.dimension(), d);
  EXPECT_GE(grid.size(), static_cast<std::size_t>(count));
  for (const auto& t : grid) EXPECT_NEAR(t.coords().norm(), 1.0, 1e-12);

  std::mt19937_64 rng(3);
  std::normal_distribution<double> g;
  for (int k = 0; k < 300; ++k) {
    Point p(d);
    for (int i = 0; i < d; ++i) p[i] = g(rng);
    const auto t = *Direction::of(p);
    EXPECT_LE(angle_between(grid[grid.nearest(t)], t), grid.resolution());
  }
}

TEST_P(GridTest, SymmetricGridsContainAntipodes) {
  const auto [d, count] = GetParam();
  const auto grid = make_grid(d, count, 7, true);
  for (const auto& t : grid) {
    const auto& m = grid[grid.nearest(-t)];
    EXPECT_LE((m.coords() + t.coords()).norm(), 1e-12);
  }
}

INSTANTIATE_TEST_SUITE_P(Dimensions, GridTest,
                         ::testing::Values(std::make_tuple(2, 64), std::make_tuple(2, 2048), std::make_tuple(3, 600),
                                           std::make_tuple(4, 800)));

TEST(Grid, PlanarGridContainsAxes) {
  const auto grid = make_grid(2, 2048, 0, true);
  for (int a = 0; a < 2; ++a) {
    const auto e = Direction::axis(2, a);
    EXPECT_EQ(grid[grid.nearest(e)].coords(), e.coords());
  }
}

TEST(Grid, RefinedAddsMissingDirectionsInAngleOrder) {
  const auto grid = make_grid(2, 64, 0, true);
  const auto extra = Direction::planar(2, 0.123);
  const auto r = grid.refined({extra, extra, grid[5]});
  EXPECT_EQ(r.size(), grid.size() + 1);
  EXPECT_TRUE(r.angular_order());
  EXPECT_EQ(r[r.nearest(extra)].coords(), extra.coords());
  for (std::size_t i = 1; i < r.size(); ++i)
    EXPECT_LT(SphereGrid::angle_of(r[i - 1]), SphereGrid::angle_of(r[i]));
}

TEST(StarBody, MembershipFollowsRadialFunction) {
  const auto b = bodies::ball(3, 2.0);
  EXPECT_TRUE(membership(b, make_point({1.0, 1.0, 1.0})));
  EXPECT_FALSE(membership(b, make_point({2.0, 1.0, 0.0})));
  EXPECT_TRUE(membership(bodies::origin(3), Point::Zero(3)));
  EXPECT_FALSE(membership(bodies::origin(3), make_point({1e-9, 0, 0})));
  EXPECT_THROW(membership(b, make_point({1.0, 0.0})), DimensionMismatch);
}

TEST(StarBody, SegmentsRaysAndHalfspaces) {
  const Point x = make_point({3.0, 4.0});
  const auto seg = bodies::segment(x);
  EXPECT_DOUBLE_EQ(seg.radial(*Direction::of(x)), 5.0);
  EXPECT_EQ(seg.radial(Direction::planar(2, 0.3)), 0.0);
  EXPECT_EQ(seg.radial(*Direction::of(-x)), 0.0);
  const auto sym = bodies::symmetric_segment(x);
  EXPECT_DOUBLE_EQ(sym.radial(*Direction::of(-x)), 5.0);

  const auto r = bodies::ray(make_point({0.0, 2.0}));
  EXPECT_EQ(r.radial(Direction::axis(2, 1)), kInf);
  EXPECT_EQ(r.radial(Direction::axis(2, 0)), 0.0);

  const auto h = bodies::closed_halfspace(make_point({0.0, 1.0}));
  EXPECT_EQ(h.radial(Direction::axis(2, 0)), kInf);
  EXPECT_EQ(h.radial(-Direction::axis(2, 1)), kInf);
  EXPECT_EQ(h.radial(Direction::axis(2, 1)), 0.0);

  const auto o = bodies::open_halfspace_with_origin(make_point({0.0, 1.0}));
  EXPECT_EQ(o.radial(Direction::axis(2, 0)), 0.0);
  EXPECT_EQ(o.radial(Direction::axis(2, 1)), kInf);
  EXPECT_EQ(o.radial(-Direction::axis(2, 1)), 0.0);
}

TEST(StarBody, RadialSumScaleTruncate) {
  const auto grid = make_grid(2, 256, 0, true);
  const auto a = corpus("xn_powers", 2)(3);
  const auto b = bodies::ball(2, 0.5);
  const auto s = radial_sum(a, b);
  const auto sc = scale(a, 2.5);
  const auto t = truncate(bodies::ray(make_point({1.0, 0.0})), 4.0);
  for (const auto& u : grid) {
    EXPECT_EQ(s.radial(u), a.radial(u) + 0.5);
    EXPECT_EQ(sc.radial(u), 2.5 * a.radial(u));
    EXPECT_LE(t.radial(u), 4.0);
  }
  EXPECT_EQ(t.radial(Direction::axis(2, 0)), 4.0);
  EXPECT_EQ(radial_sum(bodies::whole_space(2), b).radial(Direction::axis(2, 0)), kInf);
  EXPECT_THROW(scale(a, 0.0), std::invalid_argument);
  EXPECT_THROW(truncate(a, kInf), std::invalid_argument);
  EXPECT_THROW(radial_sum(a, bodies::ball(3)), DimensionMismatch);
}

TEST(StarBody, SampledBodiesUseNearestGridValue) {
  auto grid = std::make_shared<const SphereGrid>(make_grid(2, 8, 0, true));
  std::vector<XReal> v(grid->size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = static_cast<double>(i);
  const auto a = bodies::sampled(grid, v);
  for (std::size_t i = 0; i < v.size(); ++i) EXPECT_EQ(a.radial((*grid)[i]), v[i]);
  EXPECT_EQ(a.radial(Direction::planar(2, 0.05)), a.radial((*grid)[grid->nearest(Direction::planar(2, 0.05))]));
  EXPECT_THROW(bodies::sampled(grid, {1.0, 2.0}), std::invalid_argument);
  v[0] = -1.0;
  EXPECT_THROW(bodies::sampled(grid, v), std::invalid_argument);
}

TEST(StarBody, BoundedOnGrid) {
  const auto grid = make_grid(3, 200, 0, true);
  EXPECT_TRUE(bounded_on(bodies::ball(3), grid));
  EXPECT_FALSE(bounded_on(bodies::closed_halfspace(basis(3, 2)), grid));
}

TEST(ConvexSeed, SupportAndRadialOfPolygon) {
  const auto sq = seeds::square(2.0);
  EXPECT_DOUBLE_EQ(sq.support(Direction::axis(2, 0)), 2.0);
  EXPECT_NEAR(sq.support(*Direction::of(make_point({1, 1}))), 2.0 * std::sqrt(2.0), 1e-12);
  EXPECT_NEAR(sq.radial()(*Direction::of(make_point({1, 1}))), 2.0 * std::sqrt(2.0), 1e-12);
  EXPECT_NEAR(sq.radial()(Direction::planar(2, 0.3)), 2.0 / std::cos(0.3), 1e-12);
  EXPECT_THROW(seeds::polygon({make_point({1, 1}), make_point({2, 1}), make_point({1, 2})}), std::invalid_argument);
}

TEST(ConvexSeed, StripAndWedge) {
  const auto k = seeds::strip();
  EXPECT_EQ(k.radial()(Direction::axis(2, 1)), kInf);
  EXPECT_DOUBLE_EQ(k.radial()(Direction::axis(2, 0)), 1.0);
  EXPECT_EQ(k.support(Direction::axis(2, 1)), kInf);
  EXPECT_DOUBLE_EQ(k.support(Direction::axis(2, 0)), 1.0);
  const auto w = seeds::wedge(4);
  EXPECT_EQ(w.support(Direction::axis(2, 0)), kInf);
  EXPECT_EQ(w.radial()(*Direction::of(make_point({1, 5}))), kInf);
  EXPECT_NEAR(w.radial()(*Direction::of(make_point({1, 1}))), 4.0 / 3.0 * std::sqrt(2.0), 1e-12);
  EXPECT_NEAR(w.radial()(*Direction::of(make_point({1, 0.5}))), 8.0 / 7.0 * std::hypot(1.0, 0.5), 1e-12);
}

TEST(ConvexSeed, BodiesAreConvexOnTheGrid) {
  const auto grid = make_grid(2, 720, 0, true);
  for (const auto& k : {seeds::square(), seeds::strip(), seeds::wedge(5), seeds::ball(2, 1.5)})
    EXPECT_EQ(convexity_violations(k.body(), grid, 2000, 9), 0u) << k.name();
  EXPECT_GT(convexity_violations(corpus("xn_powers", 2)(4), grid, 2000, 9), 0u);
}

TEST(Corpus, UnknownNamesAndPlanarOnly) {
  EXPECT_THROW(corpus("nope", 2), UnknownCorpus);
  EXPECT_THROW(corpus("truncated_parabolas", 3), std::invalid_argument);
  EXPECT_THROW(corpus("en_spikes", 2)(0), std::out_of_range);
  EXPECT_THROW(corpus("en_spikes", 2).candidate("nope"), std::invalid_argument);
}

TEST(Corpus, MoszynskaReachesQuarterAlongAxis) {
  for (int d : {2, 3, 4})
    for (int n : {1, 5, 60}) {
      const auto a = corpus("moszynska_cones", d)(n);
      EXPECT_DOUBLE_EQ(a.radial(Direction::axis(d, d - 1)), 0.25);
      EXPECT_EQ(a.radial(-Direction::axis(d, d - 1)), 1.0);
    }
}

TEST(Corpus, MoszynskaMatchesConeGeometry) {
  for (int d : {2, 3})
    for (int n : {1, 2, 7, 30}) {
      const oracle::MoszynskaSet ref(d, n);
      const auto a = corpus("moszynska_cones", d)(n);
      const auto grid = make_grid(d, d == 2 ? 360 : 300, 0, true);
      for (const auto& t : grid) EXPECT_NEAR(a.radial(t), ref.radial(t.coords()), 1e-9) << "d=" << d << " n=" << n;
    }
}

TEST(Corpus, TruncatedParabolaMatchesRasterScan) {
  for (int n : {1, 4, 25})
    for (int k = 0; k < 360; ++k) {
      const auto u = oracle::planar(2.0 * std::numbers::pi * (k + 0.5) / 360);
      EXPECT_NEAR(shapes::truncated_parabola_radial(n, u[0], u[1]), oracle::parabola_radial(n, u[0], u[1]), 1e-9);
    }
}

TEST(Corpus, SpikePeakIsOneOverE) {
  const auto grid = make_grid(2, 4096, 0, true);
  for (int n : {1, 3, 10}) {
    const auto s = corpus("en_spikes", 2)(n).sample(grid);
    EXPECT_NEAR(*std::max_element(s.begin(), s.end()), oracle::spike_peak(), 1e-3);
  }
}
