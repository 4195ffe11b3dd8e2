#include <cmath>
#include <map>
#include <numbers>

#include <gtest/gtest.h>

#include "starbody.hpp"

using namespace starbody;

namespace {

const ConvergenceReport& report(const std::string& seq, const std::string& cand) {
  static std::map<std::string, ConvergenceReport> cache;
  const std::string key = seq + "/" + cand;
  auto it = cache.find(key);
  if (it == cache.end()) it = cache.emplace(key, analyze(corpus(seq, 2), cand, 60, analysis_grid(2, 60))).first;
  return it->second;
}

NotionEntry synthetic(std::vector<double> values) {
  NotionEntry e;
  e.notion = Notion::Delta;
  for (std::size_t i = 0; i < values.size(); ++i) e.trace.push_back({static_cast<int>(i + 1), values[i]});
  return e;
}

}  // namespace

TEST(Classify, ThresholdRule) {
  Thresholds th;
  auto flat = synthetic(std::vector<double>(40, 0.5));
  detail::classify(flat, 0.001, th);
  EXPECT_EQ(flat.verdict, Verdict::Diverges);

  std::vector<double> v;
  for (int n = 1; n <= 40; ++n) v.push_back(n < 20 ? 1.0 : 0.0);
  auto zero = synthetic(v);
  detail::classify(zero, 0.001, th);
  EXPECT_EQ(zero.verdict, Verdict::Converges);
}

TEST(Classify, PowerLawDecay) {
  Thresholds th;
  std::vector<double> v;
  for (int n = 1; n <= 60; ++n) v.push_back(1.0 / std::sqrt(n));
  auto e = synthetic(v);
  detail::classify(e, 0.001, th);
  EXPECT_EQ(e.verdict, Verdict::Converges);
  ASSERT_TRUE(e.decay_exponent);
  EXPECT_NEAR(*e.decay_exponent, 0.5, 1e-9);

  th.power_law = false;
  auto strict = synthetic(v);
  detail::classify(strict, 0.001, th);
  EXPECT_EQ(strict.verdict, Verdict::Diverges);
}

TEST(Classify, SlowDriftIsNotConvergence) {
  Thresholds th;
  std::vector<double> v;
  for (int n = 1; n <= 60; ++n) v.push_back(1.0 - std::pow(0.5, n));
  auto e = synthetic(v);
  detail::classify(e, 0.001, th);
  EXPECT_EQ(e.verdict, Verdict::Diverges);
}

TEST(Separation, EnSpikes) {
  const auto& r = report("en_spikes", "origin");
  EXPECT_EQ(r.entry(Notion::PointwiseRadial).verdict, Verdict::Converges);
  EXPECT_EQ(r.entry(Notion::Delta).verdict, Verdict::Diverges);
  EXPECT_EQ(r.entry(Notion::RadialAW).verdict, Verdict::Diverges);
  // Peak of t e^{-t} is flat to second order: grid error <= (n res)^2 / 2.
  const double res = r.grid.resolution;
  for (const auto& p : r.entry(Notion::Delta).trace) {
    EXPECT_LE(p.value, std::exp(-1.0) + 1e-15);
    EXPECT_GE(p.value, std::exp(-1.0) - 0.5 * (p.n * res) * (p.n * res));
  }
}

TEST(Separation, Moszynska) {
  const auto& r = report("moszynska_cones", "unit-ball");
  EXPECT_EQ(r.entry(Notion::Delta).verdict, Verdict::Diverges);
  EXPECT_EQ(r.entry(Notion::Hausdorff).verdict, Verdict::Converges);
  EXPECT_EQ(r.entry(Notion::AW).verdict, Verdict::Converges);
  for (const auto& p : r.entry(Notion::Delta).trace) EXPECT_GE(p.value, 0.75 - r.slack);
}

TEST(Separation, RotatingSegments) {
  const auto& e2 = report("rotating_segments", "segment-e2");
  EXPECT_EQ(e2.entry(Notion::Hausdorff).verdict, Verdict::Converges);
  EXPECT_EQ(e2.entry(Notion::AW).verdict, Verdict::Converges);
  EXPECT_EQ(e2.entry(Notion::Delta).verdict, Verdict::Diverges);
  const auto& e1 = report("rotating_segments", "segment-e1");
  EXPECT_EQ(e1.entry(Notion::Hausdorff).verdict, Verdict::Diverges);
  for (const auto& p : e1.entry(Notion::Delta).trace) {
    if (p.n > 1) {
      EXPECT_EQ(p.value, 1.0);
    }
  }
}

TEST(Separation, FlowerWedgeFlagsTopologyGap) {
  const auto& r = report("flower_wedge", "strip");
  EXPECT_EQ(r.entry(Notion::AW).verdict, Verdict::Converges);
  EXPECT_TRUE(r.has_flag("flower_topology_gap"));
  bool saw_rho = false;
  for (const auto& aux : r.auxiliary)
    if (aux.name == "flower_rho_e1") {
      saw_rho = true;
      for (const auto& p : aux.trace) EXPECT_EQ(p.value, kInf);
    }
  EXPECT_TRUE(saw_rho);
}

TEST(Separation, TiltingHalfspaces) {
  const auto& r = report("tilting_halfspaces", "halfspace-limit");
  EXPECT_EQ(r.entry(Notion::PointwiseRadial).verdict, Verdict::Converges);
  EXPECT_EQ(r.entry(Notion::RadialAW).verdict, Verdict::Diverges);
  EXPECT_TRUE(r.entry(Notion::Delta).trace.empty());
  EXPECT_NE(r.entry(Notion::AW).reason.find("closedness_unverified"), std::string::npos);
}

TEST(Separation, TruncatedParabolaCandidates) {
  const auto& stated = report("truncated_parabolas", "origin");
  const auto& derived = report("truncated_parabolas", "segment-pm-e1");
  EXPECT_NE(stated.entry(Notion::PointwiseRadial).verdict, Verdict::Converges);
  EXPECT_EQ(derived.entry(Notion::PointwiseRadial).verdict, Verdict::Converges);
  auto prefixed = [](const ConvergenceReport& r, const std::string& p) {
    for (const auto& f : r.flags)
      if (f.rfind(p, 0) == 0) return true;
    return false;
  };
  EXPECT_TRUE(prefixed(stated, "stated_limit_rejected"));
  EXPECT_TRUE(prefixed(derived, "derived_limit_accepted"));
}

TEST(Separation, ImplicationsHoldAcrossCorpus) {
  // Radial AW convergence implies pointwise radial convergence; delta bounds d_H.
  for (const auto& name : corpus_names()) {
    const auto seq = corpus(name, 2);
    for (const auto& c : seq.candidates) {
      const auto& r = report(name, c.tag);
      EXPECT_FALSE(r.has_flag("implication_violation")) << name << "/" << c.tag;
      const auto& d = r.entry(Notion::Delta).trace;
      const auto& h = r.entry(Notion::Hausdorff).trace;
      for (std::size_t i = 0; i < std::min(d.size(), h.size()); ++i) EXPECT_LE(h[i].value, d[i].value + r.slack);
    }
  }
}

TEST(Analyze, RejectsShortSequences) {
  EXPECT_THROW(analyze(corpus("en_spikes", 2), "origin", 5, analysis_grid(2, 5)), std::invalid_argument);
  EXPECT_THROW(analyze(corpus("en_spikes", 2), "origin", 20, make_grid(3, 100, 0, true)), std::invalid_argument);
}

TEST(Analyze, ThreeDimensionalCorpus) {
  const auto grid = make_grid(3, 1200, 0, true);
  const auto r = analyze(corpus("en_spikes", 3), "origin", 12, grid);
  EXPECT_EQ(r.dimension, 3);
  EXPECT_EQ(r.entry(Notion::PointwiseRadial).trace.size(), 12u);
  const auto suite = separation_suite(grid, 10);
  for (const auto& rep : suite) EXPECT_NE(rep.sequence, "truncated_parabolas");
}

TEST(Analyze, InscribedPolygonsWithCommonInnerBall) {
  // Regular (n+2)-gons on the unit circle contain B/2 and tend radially to B.
  SequenceSpec seq;
  seq.name = "inscribed_polygons";
  seq.generator = [](int n) {
    std::vector<Point> v;
    for (int k = 0; k < n + 2; ++k) {
      const double a = 2.0 * std::numbers::pi * k / (n + 2);
      v.push_back(make_point({std::cos(a), std::sin(a)}));
    }
    return seeds::polygon(v).body();
  };
  seq.candidates.push_back({"unit-ball", bodies::ball(2), "derived", "", std::nullopt});
  const auto r = analyze(seq, "unit-ball", 40, make_grid(2, 1024, 0, true));
  EXPECT_EQ(r.entry(Notion::PointwiseRadial).verdict, Verdict::Converges);
  EXPECT_EQ(r.entry(Notion::RadialAW).verdict, Verdict::Converges);
  EXPECT_EQ(r.entry(Notion::AW).verdict, Verdict::Converges);
  EXPECT_LE(r.entry(Notion::AW).trace.back().value, r.entry(Notion::RadialAW).trace.back().value + r.slack);
}
