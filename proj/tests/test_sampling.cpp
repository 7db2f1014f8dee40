#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <set>

#include "nbaudit/sampling.hpp"
#include "oracles.hpp"

using namespace nbaudit;

namespace {

/// Class of m members whose record index equals its input position.
ClassPosteriorDistribution dist_of(std::vector<double> scores, double prior = 0.5) {
  std::vector<std::size_t> members(scores.size());
  std::iota(members.begin(), members.end(), std::size_t{0});
  return make_distribution(ClassLabel("c"), 0, prior, std::move(members), std::move(scores));
}

std::vector<double> random_scores(std::mt19937_64& rng, std::size_t m, bool with_ties) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> s(m);
  for (auto& x : s) x = with_ties ? std::round(u(rng) * 4) / 4 : u(rng);
  return s;
}

bool subset_of(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

}  // namespace

TEST(Distribution, OrderingAndCdf) {
  auto d = dist_of({0.8, 0.2});
  EXPECT_EQ(d.member_indices, (std::vector<std::size_t>{1, 0}));
  EXPECT_DOUBLE_EQ(d.normalized_cdf[0], 0.2);
  EXPECT_DOUBLE_EQ(d.normalized_cdf[1], 1.0);
  EXPECT_EQ(d.position_of(0), 1u);
  EXPECT_FALSE(d.position_of(7));
}

TEST(Distribution, TiesBrokenByRecordIndex) {
  auto d = make_distribution(ClassLabel("c"), 0, 0.5, {9, 3, 5}, {0.4, 0.4, 0.1});
  EXPECT_EQ(d.member_indices, (std::vector<std::size_t>{5, 3, 9}));
}

TEST(Distribution, ZeroMassIsUniform) {
  auto d = dist_of({0, 0, 0, 0});
  EXPECT_EQ(d.normalized_cdf, (std::vector<double>{0.25, 0.5, 0.75, 1.0}));
}

TEST(Distribution, CdfNonDecreasing) {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 100; ++t) {
    auto d = dist_of(random_scores(rng, 1 + rng() % 50, t % 2));
    EXPECT_TRUE(std::is_sorted(d.scores.begin(), d.scores.end()));
    EXPECT_TRUE(std::is_sorted(d.normalized_cdf.begin(), d.normalized_cdf.end()));
    EXPECT_EQ(d.normalized_cdf.back(), 1.0);
  }
}

TEST(Bounds, FromConfidence) {
  auto b = PercentileBounds::from_confidence(95);
  EXPECT_DOUBLE_EQ(b.lower(), 2.5);
  EXPECT_DOUBLE_EQ(b.upper(), 97.5);
  EXPECT_THROW(PercentileBounds(60, 40), Error);
  EXPECT_THROW(PercentileBounds(-1, 40), Error);
  EXPECT_THROW(PercentileBounds::from_confidence(0), Error);
}

TEST(Bounds, RankMidpointRule) {
  PercentileBounds b(25, 75);
  // m = 4: midpoints 12.5, 37.5, 62.5, 87.5
  EXPECT_FALSE(b.contains_rank(1, 4));
  EXPECT_TRUE(b.contains_rank(2, 4));
  EXPECT_TRUE(b.contains_rank(3, 4));
  EXPECT_FALSE(b.contains_rank(4, 4));
}

TEST(Representativeness, FullClassIsOne) {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 300; ++t) {
    std::size_t m = 1 + rng() % 200;
    auto d = dist_of(random_scores(rng, m, t % 3 == 0));
    EXPECT_NEAR(representativeness_index(d, d.member_indices), 1.0, 1e-9);
  }
}

TEST(Representativeness, HandComputedSmallCases) {
  // m = 2, only the lower member: F = 1/4, reference 1/2, factor 12/3.
  std::vector<std::size_t> p{0};
  EXPECT_DOUBLE_EQ(representativeness_from_positions(2, p), 0.75);
  // m = 4, the middle two: F = 3/8, 5/8 vs 1/4, 3/4; sum = 2/64; factor 24/15.
  std::vector<std::size_t> mid{1, 2};
  EXPECT_DOUBLE_EQ(representativeness_from_positions(4, mid), 1.0 - 24.0 / 15.0 * 2.0 / 64.0);
}

TEST(Representativeness, MatchesTermByTermOracleAndStaysInRange) {
  std::mt19937_64 rng(12);
  for (int t = 0; t < 500; ++t) {
    std::size_t m = 1 + rng() % 60;
    std::vector<std::size_t> all(m);
    std::iota(all.begin(), all.end(), std::size_t{0});
    std::shuffle(all.begin(), all.end(), rng);
    std::size_t n = 1 + rng() % m;
    std::vector<std::size_t> pos(all.begin(), all.begin() + static_cast<long>(n));
    std::vector<std::size_t> ranks;
    for (auto p : pos) ranks.push_back(p + 1);
    double ri = representativeness_from_positions(m, pos);
    EXPECT_NEAR(ri, oracle::representativeness(m, ranks), 1e-12);
    EXPECT_GE(ri, -1e-12);
    EXPECT_LE(ri, 1.0 + 1e-12);
  }
}

TEST(Representativeness, Errors) {
  std::vector<std::size_t> none, dup{1, 1}, out{5};
  EXPECT_THROW(representativeness_from_positions(3, none), Error);
  EXPECT_THROW(representativeness_from_positions(3, dup), Error);
  EXPECT_THROW(representativeness_from_positions(3, out), Error);
  auto d = dist_of({0.1, 0.2});
  std::vector<std::size_t> stranger{42};
  EXPECT_THROW(representativeness_index(d, stranger), Error);
}

TEST(UserBased, FullWindowReturnsClass) {
  auto d = dist_of({0.3, 0.1, 0.9, 0.5});
  auto ev = user_based_sample(d, PercentileBounds(0, 100));
  EXPECT_EQ(ev.indices, (std::vector<std::size_t>{0, 1, 2, 3}));
  ASSERT_TRUE(ev.ri);
  EXPECT_NEAR(*ev.ri, 1.0, 1e-12);
}

TEST(UserBased, HalfWindowOfFiveHundred) {
  std::mt19937_64 rng(1);
  auto d = dist_of(random_scores(rng, 500, false));
  auto ev = user_based_sample(d, PercentileBounds::from_confidence(50));
  EXPECT_EQ(ev.size(), 250u);
  EXPECT_TRUE(std::is_sorted(ev.indices.begin(), ev.indices.end()));
  // The window is the contiguous middle half of the ordering: positions 125..374.
  std::set<std::size_t> expect(d.member_indices.begin() + 125, d.member_indices.begin() + 375);
  EXPECT_EQ(std::set<std::size_t>(ev.indices.begin(), ev.indices.end()), expect);
}

TEST(UserBased, NarrowWindowOnTinyClassIsEmpty) {
  auto d = dist_of({0.2, 0.7});
  auto ev = user_based_sample(d, PercentileBounds(30, 60));
  EXPECT_TRUE(ev.empty());
  EXPECT_FALSE(ev.ri);
  EXPECT_EQ(ev.warnings.size(), 1u);
}

TEST(ItemBased, Sigma1Filter) {
  auto d = dist_of({0.3, 0.95, 0.999});
  auto ev = item_based_sample(d, 0.9);
  EXPECT_EQ(ev.indices, (std::vector<std::size_t>{1, 2}));
  EXPECT_EQ(ev.scores, (std::vector<double>{0.95, 0.999}));
  EXPECT_THROW(item_based_sample(d, 1.01), Error);
  EXPECT_THROW(item_based_sample(d, 0.0), Error);
}

TEST(JointPosterior, PairAndKwise) {
  EXPECT_NEAR(joint_posterior_pair(0.999, 0.999, 0.5), 1.996002, 1e-9);
  std::vector<double> ones{1, 1, 1};
  EXPECT_EQ(joint_posterior_kwise(ones, 0.5), 4.0);
  std::vector<double> dy{0.5, 0.25, 0.75, 0.125};
  EXPECT_EQ(joint_posterior_kwise(dy, 0.25), 0.5 * 0.25 * 0.75 * 0.125 / (0.25 * 0.25 * 0.25));
  EXPECT_THROW(joint_posterior_pair(0.5, 0.5, 0.0), Error);
  EXPECT_THROW(joint_posterior_pair(0.5, 0.5, 1.0), Error);
  EXPECT_THROW(joint_posterior_pair(1.5, 0.5, 0.5), Error);
}

TEST(JointPosterior, KwiseOfTwoEqualsPair) {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(0, 1), up(0.01, 0.99);
  for (int t = 0; t < 200; ++t) {
    double a = u(rng), b = u(rng), pr = up(rng);
    std::vector<double> s{a, b};
    EXPECT_NEAR(joint_posterior_kwise(s, pr), joint_posterior_pair(a, b, pr),
                1e-14 * joint_posterior_pair(a, b, pr) + 1e-300);
  }
}

TEST(GroupSearch, SinglePairJustBelowTheBound) {
  auto d = dist_of({0.999, 0.999, 0.4});
  auto r = item_based_group_search(d, {0.9, 1.9, 1.0});
  ASSERT_EQ(r.levels.size(), 1u);
  ASSERT_EQ(r.levels[0].size(), 1u);
  EXPECT_EQ(r.levels[0][0].indices, (std::vector<std::size_t>{0, 1}));
  EXPECT_NEAR(*r.levels[0][0].joint_score, 1.996002, 1e-9);
  EXPECT_EQ(r.levels[0][0].strategy, Strategy::item_pair);
}

TEST(GroupSearch, EqualsBruteForce) {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> u(0, 1);
  std::size_t nonempty = 0, deep = 0;
  for (int t = 0; t < 200; ++t) {
    std::size_t m = 1 + rng() % 12;
    auto scores = random_scores(rng, m, t % 4 == 0);
    for (auto& s : scores) s = 0.5 + s / 2;  // keep groups plentiful
    double prior = 0.2 + 0.6 * u(rng);
    Thresholds th{0.5 + 0.5 * u(rng), 0.5 + 2.0 * u(rng), 0.5 + 3.0 * u(rng)};
    auto d = dist_of(scores, prior);
    auto r = item_based_group_search(d, th, {5, 1'000'000});
    std::set<std::vector<std::size_t>> got;
    for (const auto& lvl : r.levels)
      for (const auto& ev : lvl) got.insert(ev.indices);
    // record index == input position in dist_of, so oracle positions are record indices
    auto expect = oracle::brute_force_groups(scores, prior, th.sigma1, th.sigma2, th.sigma3, 5);
    EXPECT_EQ(got, expect) << "trial " << t;
    nonempty += !expect.empty();
    deep += r.levels.size() >= 2;
  }
  EXPECT_GT(nonempty, 50u);
  EXPECT_GT(deep, 10u);
}

TEST(GroupSearch, CandidateCapOverflows) {
  std::vector<double> s(40, 0.99);
  auto d = dist_of(s);
  try {
    item_based_group_search(d, {0.5, 0.1, 0.1}, {3, 100});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::overflow);
  }
}

TEST(Hybrid, ContainmentAndMonotonicity) {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> u(0, 1);
  for (int t = 0; t < 500; ++t) {
    std::size_t m = 1 + rng() % 80;
    auto d = dist_of(random_scores(rng, m, t % 2));
    double lo = 49.0 * u(rng), hi = 51.0 + 49.0 * u(rng);
    double s1 = 0.01 + 0.99 * u(rng);
    PercentileBounds outer(lo, hi), inner(lo + (50 - lo) * u(rng), hi - (hi - 50) * u(rng));
    Thresholds th{s1, 1, 1}, tighter{s1 + (1 - s1) * u(rng), 1, 1};

    auto cls = d.member_indices;
    std::sort(cls.begin(), cls.end());
    auto user = user_based_sample(d, outer);
    auto hyb = hybrid_sample(d, outer, th);
    EXPECT_TRUE(subset_of(user.indices, cls));
    EXPECT_TRUE(subset_of(hyb.indices, user.indices));
    EXPECT_TRUE(subset_of(user_based_sample(d, inner).indices, user.indices));
    EXPECT_TRUE(subset_of(hybrid_sample(d, inner, th).indices, hyb.indices));
    EXPECT_TRUE(subset_of(hybrid_sample(d, outer, tighter).indices, hyb.indices));
    EXPECT_TRUE(subset_of(item_based_sample(d, tighter.sigma1).indices,
                          item_based_sample(d, th.sigma1).indices));
  }
}
