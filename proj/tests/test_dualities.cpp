#include <cmath>
#include <memory>
#include <random>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "starbody.hpp"

using namespace starbody;

TEST(StarDual, ReciprocalProfile) {
  const auto grid = make_grid(2, 256, 0, true);
  const auto b = bodies::ball(2, 4.0);
  for (const auto& t : grid) EXPECT_EQ(star_dual(b).radial(t), 0.25);
  EXPECT_EQ(star_dual(bodies::origin(2)).radial(grid[3]), kInf);
  EXPECT_EQ(star_dual(bodies::whole_space(2)).radial(grid[3]), 0.0);
  EXPECT_EQ(star_dual(star_dual(b)).name(), b.name());
}

TEST(StarDual, InvolutionOnCorpus) {
  for (int d : {2, 3}) {
    const auto grid = make_grid(d, d == 2 ? 720 : 600, 0, true);
    for (const auto& name : corpus_names()) {
      if (name == "truncated_parabolas" && d != 2) continue;
      const auto seq = corpus(name, d);
      for (int n : {1, 2, 9, 40}) EXPECT_EQ(star_dual(star_dual(seq(n))).sample(grid), seq(n).sample(grid)) << name;
    }
  }
}

TEST(StarDual, InversionIdentity) {
  const auto grid = make_grid(2, 180, 0, true);
  for (const auto& a : {bodies::ball(2, 0.7), corpus("en_spikes", 2)(4), corpus("moszynska_cones", 2)(3),
                        bodies::segment(basis(2, 0)), bodies::closed_halfspace(basis(2, 1))}) {
    const auto rep = inversion_check(a, grid, 25);
    EXPECT_EQ(rep.violations, 0u) << a.name();
    EXPECT_GT(rep.checked, 0u);
  }
  EXPECT_THROW(inversion_check(bodies::ball(2), grid, 2), std::invalid_argument);
}

TEST(StarDual, OrderReversal) {
  const auto grid = std::make_shared<const SphereGrid>(make_grid(3, 300, 0, true));
  std::mt19937_64 rng(8);
  for (int k = 0; k < 20; ++k) {
    const auto a = checks::random_body(grid, rng);
    const auto bigger = radial_sum(a, bodies::ball(3, 0.3));
    const auto pa = star_dual(a).sample(*grid), pb = star_dual(bigger).sample(*grid);
    for (std::size_t i = 0; i < grid->size(); ++i) EXPECT_LE(pb[i], pa[i]);
  }
}

TEST(StarDual, PhiModulus) {
  const auto grid = make_grid(2, 720, 0, true);
  const auto a = bodies::ball(2);
  const auto x = corpus("xn_powers", 2)(2);
  const auto rep = phi_modulus_check(a, radial_sum(bodies::ball(2, 0.9), scale(x, 0.05)), 0.9, grid);
  EXPECT_TRUE(rep.precondition_ok);
  EXPECT_TRUE(rep.holds);
  const auto far = phi_modulus_check(a, bodies::ball(2, 3.0), 1.0, grid);
  EXPECT_FALSE(far.precondition_ok);
}

TEST(Flower, RadialFunctionIsSupport) {
  const auto grid = make_grid(2, 720, 0, true);
  const auto k = seeds::square();
  const auto f = flower(k, grid);
  for (const auto& t : grid) EXPECT_EQ(f.body.radial(t), k.support(t));
  EXPECT_THROW(flower(seeds::vrep(2, {make_point({1, 1}), make_point({2, 1}), make_point({1, 2})}, {}), grid),
               FlowerError);
}

TEST(Flower, PolarDecomposition) {
  const auto grid = make_grid(2, 1024, 0, true);
  for (const auto& k : {seeds::square(0.5), seeds::strip(), seeds::wedge(2), seeds::segment(make_point({1, 2}))}) {
    const auto p = star_dual(flower(k, grid).body);
    for (const auto& t : grid) {
      const double h = k.support(t);
      if (h > 0.0 && std::isfinite(h)) {
        EXPECT_NEAR(p.radial(t) * h, 1.0, 4e-16);
      }
    }
  }
}

TEST(Polar, MatchesBisectionOracle) {
  const auto grid = make_grid(2, 720, 0, true);
  const oracle::Generators strip_g{{make_point({0, 0}), make_point({1, 0})}, {make_point({0, 1})}};
  const oracle::Generators tri_g{{make_point({2, 0}), make_point({-1, 1}), make_point({-1, -1})}, {}};
  const auto strip = polar(seeds::strip(), grid);
  const auto tri = polar(seeds::polygon({make_point({2, 0}), make_point({-1, 1}), make_point({-1, -1})}), grid);
  const auto ball = polar(seeds::ball(2, 3.0), grid);
  for (const auto& t : grid) {
    const double s = oracle::convex_reach([&](const Point& y) { return strip_g.polar_contains(y); }, t.coords());
    const double r = oracle::convex_reach([&](const Point& y) { return tri_g.polar_contains(y); }, t.coords());
    const double b = oracle::convex_reach([](const Point& y) { return oracle::ball_polar_contains(3.0, y); }, t.coords());
    if (std::isinf(s)) {
      EXPECT_TRUE(std::isinf(strip.radial(t)));
    } else {
      EXPECT_NEAR(strip.radial(t), s, 1e-9);
    }
    EXPECT_NEAR(tri.radial(t), r, 1e-9);
    EXPECT_NEAR(ball.radial(t), b, 1e-9);
  }
}

TEST(Flower, UnionOfDiameterBallsApproachesSupport) {
  const auto grid = make_grid(2, 360, 0, true);
  const auto k = seeds::square();
  std::vector<Point> samples = {make_point({0, 0})};
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int i = 0; i < 500; ++i) samples.push_back(make_point({u(rng), u(rng)}));
  for (const auto& v : {make_point({1, 1}), make_point({-1, 1}), make_point({-1, -1}), make_point({1, -1})})
    samples.push_back(v);
  const auto rep = flower_union_check(k, grid, samples);
  EXPECT_LE(rep.max_overshoot, 1e-12);
  EXPECT_LE(rep.max_gap, 1e-12);
  EXPECT_TRUE(rep.monotone);
  EXPECT_THROW(flower_union_check(k, grid, {make_point({3, 0})}), std::invalid_argument);
}

TEST(Flower, IsometryForCompactSeeds) {
  const auto grid = make_grid(2, 2048, 0, true);
  const std::vector<ConvexSeed> list = {seeds::ball(2), seeds::square(), seeds::segment(make_point({0.2, 0.9})),
                                        seeds::polygon({make_point({2, 0}), make_point({-1, 1}), make_point({-1, -1})})};
  for (std::size_t i = 0; i < list.size(); ++i)
    for (std::size_t j = i + 1; j < list.size(); ++j) {
      const double dh = hausdorff(list[i].body(), list[j].body(), grid).value;
      const double df = radial_metric(flower(list[i], grid).body, flower(list[j], grid).body, grid);
      EXPECT_NEAR(dh, df, 2 * grid.resolution()) << list[i].name() << " / " << list[j].name();
    }
}

TEST(Flower, WedgeFlowersAreInfiniteAlongE1) {
  const auto e1 = Direction::axis(2, 0);
  for (int n : {1, 5, 60}) EXPECT_EQ(flower(seeds::wedge(n)).body.radial(e1), kInf);
  EXPECT_EQ(flower(seeds::strip()).body.radial(e1), 1.0);
}

TEST(BallContainment, SmallRadialAWKeepsABall) {
  const auto grid = make_grid(2, 360, 0, true);
  const auto rep = ball_containment_check(bodies::ball(2), radial_sum(bodies::ball(2, 0.9), bodies::origin(2)), 2, grid);
  EXPECT_TRUE(rep.precondition_ok);
  EXPECT_TRUE(rep.triggered);
  EXPECT_TRUE(rep.pass);
}
