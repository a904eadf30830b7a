#include <gtest/gtest.h>

#include <random>

#include "support/fixtures.hpp"
#include "support/oracles.hpp"
#include "vadkit/space.hpp"

namespace vadkit {
namespace {

std::vector<std::pair<std::string, oracle::Triple>> as_oracle(const EmotionSpace& s) {
  std::vector<std::pair<std::string, oracle::Triple>> out;
  for (const auto& e : s.entries()) {
    out.push_back({e.term, {e.point.valence, e.point.arousal, e.point.dominance}});
  }
  return out;
}

std::vector<std::pair<std::string, double>> flatten(const std::vector<Neighbor>& ns) {
  std::vector<std::pair<std::string, double>> out;
  for (const auto& n : ns) out.emplace_back(n.term, n.distance);
  return out;
}

VadPoint random_point(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  return {u(rng), u(rng), u(rng)};
}

EmotionSpace toy_space() {
  return EmotionSpace({{"a", {0, 0, 0}}, {"b", {0.3, 0, 0}}, {"c", {0, 0.4, 0}}}, {});
}

TEST(L2Distance, Basics) {
  const VadPoint x{0.1, -0.7, 0.3};
  EXPECT_EQ(l2_distance(x, x), 0.0);
  EXPECT_EQ(l2_distance({0, 0, 0}, {1, 0, 0}), 1.0);
  // sqrt(0.25 + 0.09 + 0.16) = sqrt(0.5), 30-digit reference 0.707106781186547524400844362105
  EXPECT_NEAR(l2_distance({0.2, -0.1, 0.4}, {-0.3, 0.2, 0.0}), 0.70710678118654752, 1e-15);
}

TEST(L2Distance, SymmetricAndTriangle) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 2000; ++i) {
    const auto a = random_point(rng), b = random_point(rng), c = random_point(rng);
    EXPECT_EQ(l2_distance(a, b), l2_distance(b, a));
    EXPECT_LE(l2_distance(a, c), l2_distance(a, b) + l2_distance(b, c) + 1e-12);
  }
}

TEST(EmotionSpaceType, RejectsDuplicatesAndOutOfRange) {
  EXPECT_THROW(EmotionSpace({{"a", {0, 0, 0}}, {"a", {0.1, 0, 0}}}, {}), Error);
  EXPECT_THROW(EmotionSpace({{"a", {1.5, 0, 0}}}, {}), Error);
}

TEST(NeighborsWithin, ZeroRadiusAtEntry) {
  const auto& s = fixtures::space();
  const auto p = *s.find("glad");
  const auto hits = neighbors_within(s, p, 0.0);
  ASSERT_FALSE(hits.empty());
  EXPECT_EQ(hits[0].term, "glad");
  for (const auto& h : hits) EXPECT_EQ(h.distance, 0.0);
}

TEST(NeighborsWithin, SaturatesAtDiameter) {
  const auto& s = fixtures::space();
  EXPECT_EQ(neighbors_within(s, {0, 0, 0}, 2.0 * std::sqrt(3.0)).size(), s.size());
}

TEST(NeighborsWithin, SeedQueryMatchesExhaustiveScan) {
  const auto& s = fixtures::space();
  const auto entries = as_oracle(s);
  for (BasicEmotion e : kBasicEmotions) {
    const auto q = s.seed(e);
    EXPECT_EQ(flatten(neighbors_within(s, q, 0.25)),
              oracle::scan(entries, {q.valence, q.arousal, q.dominance}, 0.25))
        << name(e);
  }
}

TEST(NeighborsWithin, TiesBreakByTerm) {
  const EmotionSpace s({{"zeta", {0.1, 0, 0}}, {"alpha", {-0.1, 0, 0}}, {"mid", {0, 0, 0}}}, {});
  const auto hits = neighbors_within(s, {0, 0, 0}, 0.1);
  ASSERT_EQ(hits.size(), 3u);
  EXPECT_EQ(hits[0].term, "mid");
  EXPECT_EQ(hits[1].term, "alpha");
  EXPECT_EQ(hits[2].term, "zeta");
}

TEST(NeighborsWithin, NegativeRadiusRejected) {
  EXPECT_THROW(neighbors_within(toy_space(), {0, 0, 0}, -0.1), Error);
}

TEST(NeighborsWithin, NestedInRadius) {
  const auto& s = fixtures::space();
  std::mt19937_64 rng(5);
  for (int i = 0; i < 200; ++i) {
    const auto q = random_point(rng);
    const auto small = neighbors_within(s, q, 0.2);
    const auto large = neighbors_within(s, q, 0.35);
    for (const auto& n : small) {
      EXPECT_NE(std::find(large.begin(), large.end(), n), large.end());
    }
  }
}

TEST(Nearest, CountBounds) {
  const auto& s = fixtures::space();
  try {
    nearest(s, {0, 0, 0}, 0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InvalidCount);
  }
  EXPECT_THROW(nearest(s, {0, 0, 0}, s.size() + 1), Error);
  EXPECT_EQ(nearest(s, {0, 0, 0}, s.size()).size(), s.size());
}

TEST(Nearest, OwnPointFirst) {
  const auto& s = fixtures::space();
  const auto hit = nearest(s, *s.find("gloomy"), 1);
  EXPECT_EQ(hit[0].term, "gloomy");
  EXPECT_EQ(hit[0].distance, 0.0);
}

TEST(Nearest, MatchesExhaustiveScanAndPrefixOfFullBall) {
  const auto& s = fixtures::space();
  const auto entries = as_oracle(s);
  std::mt19937_64 rng(99);
  for (int i = 0; i < 200; ++i) {
    const auto q = random_point(rng);
    auto expected = oracle::scan(entries, {q.valence, q.arousal, q.dominance}, 10.0);
    expected.resize(5);
    EXPECT_EQ(flatten(nearest(s, q, 5)), expected);
    const auto all = neighbors_within(s, q, 10.0);
    EXPECT_EQ(nearest(s, q, 5), std::vector<Neighbor>(all.begin(), all.begin() + 5));
  }
}

TEST(MeanNeighborCount, EdgeCases) {
  const auto& s = fixtures::space();
  const std::vector<VadPoint> off = {{0.999, -0.999, 0.999}, {-0.999, -0.999, 0.999}};
  EXPECT_EQ(mean_neighbor_count(s, off, 0.0), 0.0);
  EXPECT_EQ(mean_neighbor_count(s, off, 4.0), static_cast<double>(s.size()));
  try {
    mean_neighbor_count(s, {}, 0.25);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::EmptyProbeSet);
  }
}

TEST(MeanNeighborCount, SelfProbesMatchDoubleLoop) {
  const auto& s = fixtures::space();
  std::vector<VadPoint> probes;
  for (const auto& e : s.entries()) probes.push_back(e.point);
  const auto entries = as_oracle(s);
  std::size_t count = 0;
  for (const auto& [ta, a] : entries) {
    for (const auto& [tb, b] : entries) {
      if (oracle::dist(a, b) <= 0.25) ++count;
    }
  }
  EXPECT_EQ(mean_neighbor_count(s, probes, 0.25), static_cast<double>(count) / entries.size());
}

TEST(CalibrateRadius, ToySpaceByHandEnumeration) {
  // Self-probe distances: 0 x3, 0.3 x2 (a-b), 0.4 x2 (a-c), 0.5 x2 (b-c).
  const auto s = toy_space();
  std::vector<VadPoint> probes;
  for (const auto& e : s.entries()) probes.push_back(e.point);
  EXPECT_EQ(calibrate_radius(s, probes, 1.0), 0.0);        // needs 3 hits
  EXPECT_EQ(calibrate_radius(s, probes, 5.0 / 3.0), 0.3);  // needs 5
  EXPECT_EQ(calibrate_radius(s, probes, 2.0), 0.4);        // needs 6; 0.4 gives 7
  EXPECT_DOUBLE_EQ(calibrate_radius(s, probes, 3.0), 0.5);
  EXPECT_NEAR(mean_neighbor_count(s, probes, 0.4), 7.0 / 3.0, 1e-15);
  EXPECT_NEAR(mean_neighbor_count(s, probes, 0.3), 5.0 / 3.0, 1e-15);
}

TEST(CalibrateRadius, SaturationAndErrors) {
  const auto& s = fixtures::space();
  std::vector<VadPoint> probes;
  for (const auto& e : s.entries()) probes.push_back(e.point);
  double max_d = 0.0;
  for (const auto& p : probes) {
    for (const auto& e : s.entries()) max_d = std::max(max_d, l2_distance(p, e.point));
  }
  EXPECT_EQ(calibrate_radius(s, probes, static_cast<double>(s.size())), max_d);
  try {
    calibrate_radius(s, probes, s.size() + 1.0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::TargetUnreachable);
  }
  EXPECT_THROW(calibrate_radius(s, {}, 5.0), Error);
  EXPECT_THROW(calibrate_radius(s, probes, 0.0), Error);
}

TEST(CalibrateRadius, GeneralizedInverseOnFixture) {
  const auto& s = fixtures::space();
  std::vector<VadPoint> probes;
  for (const auto& e : s.entries()) probes.push_back(e.point);
  for (double target : {1.5, 3.0, 5.0, 12.0}) {
    const double r = calibrate_radius(s, probes, target);
    EXPECT_GE(mean_neighbor_count(s, probes, r), target);
    double below = -1.0;
    for (const auto& p : probes) {
      for (const auto& e : s.entries()) {
        const double d = l2_distance(p, e.point);
        if (d < r) below = std::max(below, d);
      }
    }
    if (below >= 0.0) {
      EXPECT_LT(mean_neighbor_count(s, probes, below), target);
    }
  }
}

}  // namespace
}  // namespace vadkit
