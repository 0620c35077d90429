#include "ccl/character.hpp"
#include "ccl/root_system.hpp"

#include <gtest/gtest.h>

using namespace ccl;

namespace {

// Exhaustive W_J orbit of a J-regular weight; BFS distance equals Coxeter length.
std::pair<int, Weight> farthest_in_parabolic_orbit(const RootSystem& rs, const NodeSet& J, const Weight& v) {
  std::map<Weight, int> dist{{v, 0}};
  std::deque<Weight> q{v};
  Weight far = v;
  int best = 0;
  while (!q.empty()) {
    Weight x = q.front();
    q.pop_front();
    for (int j : J) {
      Weight y = rs.reflect(j, x);
      if (!dist.count(y)) {
        dist[y] = dist[x] + 1;
        if (dist[y] > best) {
          best = dist[y];
          far = y;
        }
        q.push_back(y);
      }
    }
  }
  return {best, far};
}

}  // namespace

TEST(RootSystem, PositiveRootCounts) {
  const std::map<std::string, std::size_t> expect = {{"A1", 1}, {"A2", 3}, {"A3", 6}, {"A4", 10},
                                                     {"B2", 4}, {"C2", 4}, {"G2", 6}, {"D4", 12}};
  for (const auto& [t, n] : expect) {
    auto rs = RootSystem::build(t);
    EXPECT_EQ(rs.positive_roots().size(), n) << t;
    EXPECT_EQ(rs.rank(), t[1] - '0');
  }
}

TEST(RootSystem, RejectsUnknownTypes) {
  EXPECT_THROW(RootSystem::build("E8"), Error);
  EXPECT_THROW(RootSystem::build("A9"), Error);
  EXPECT_THROW(RootSystem::build(""), Error);
}

TEST(RootSystem, CartanInvariantsAndPairing) {
  for (auto t : {"A1", "A2", "A3", "A4", "B2", "C2", "G2", "D4"}) {
    auto rs = RootSystem::build(t);
    for (int i = 0; i < rs.rank(); ++i)
      for (int j = 0; j < rs.rank(); ++j) {
        EXPECT_EQ(rs.simple_root(j)[i], Q(rs.cartan()[i][j]));
        if (i == j) EXPECT_EQ(rs.cartan()[i][j], 2);
        else EXPECT_LE(rs.cartan()[i][j], 0);
        // simple coroot pairing through the general formula
        std::vector<int> e(rs.rank(), 0);
        e[i] = 1;
        EXPECT_EQ(rs.coroot_pairing(rs.simple_root(j), e), Q(rs.cartan()[i][j]));
      }
  }
}

TEST(RootSystem, ReflectionsPreserveRoots) {
  for (auto t : {"A3", "B2", "C2", "G2", "D4"}) {
    auto rs = RootSystem::build(t);
    std::set<std::vector<int>> roots(rs.positive_roots().begin(), rs.positive_roots().end());
    for (auto b : rs.positive_roots()) {
      std::vector<int> nb(b.size());
      for (std::size_t k = 0; k < b.size(); ++k) nb[k] = -b[k];
      roots.insert(nb);
    }
    for (const auto& b : roots)
      for (int i = 0; i < rs.rank(); ++i) EXPECT_TRUE(roots.count(rs.reflect_root(i, b))) << t;
  }
}

TEST(RootSystem, LongestElementMatchesExhaustiveSearch) {
  for (auto t : {"A1", "A2", "A3", "A4", "B2", "C2", "G2", "D4"}) {
    auto rs = RootSystem::build(t);
    for (int mask = 1; mask < (1 << rs.rank()); ++mask) {
      NodeSet J;
      for (int i = 0; i < rs.rank(); ++i)
        if (mask & (1 << i)) J.push_back(i);
      Weight v(rs.rank(), Q(0));
      for (int j : J) v[j] = 1;
      auto [len, far] = farthest_in_parabolic_orbit(rs, J, v);
      WeylWord w = rs.longest_element(J);
      EXPECT_EQ(static_cast<int>(w.length()), len) << t;
      EXPECT_EQ(w.length(), rs.count_positive_roots_in(J)) << t;
      EXPECT_EQ(rs.apply(w, v), far) << t;
    }
  }
  EXPECT_EQ(RootSystem::build("A1").longest_element().letters, std::vector<int>{0});
  EXPECT_EQ(RootSystem::build("A2").longest_element().length(), 3u);
  EXPECT_EQ(RootSystem::build("G2").longest_element().length(), 6u);
}

TEST(RootSystem, W0SquaredIsIdentity) {
  for (auto t : {"A1", "A2", "A3", "A4", "B2", "C2", "G2", "D4"}) {
    auto rs = RootSystem::build(t);
    auto w0 = rs.longest_element();
    for (int i = 0; i < rs.rank(); ++i) EXPECT_EQ(rs.apply(w0, rs.apply(w0, rs.simple_root(i))), rs.simple_root(i));
  }
}

TEST(RootSystem, ThetaInvolution) {
  auto a1 = RootSystem::build("A1");
  EXPECT_EQ(a1.theta({0}).at(0), 0);
  auto a2 = RootSystem::build("A2");
  auto th = a2.theta({0, 1});
  EXPECT_EQ(th.at(0), 1);
  EXPECT_EQ(th.at(1), 0);
  auto b2 = RootSystem::build("B2").theta({0, 1});
  EXPECT_EQ(b2.at(0), 0);
  EXPECT_EQ(b2.at(1), 1);
  auto a3 = RootSystem::build("A3");
  EXPECT_EQ(a3.theta({0, 1, 2}).at(0), 2);
  EXPECT_EQ(a3.theta({0, 1}).at(0), 1);
  EXPECT_EQ(a3.theta({1}).at(1), 1);
  EXPECT_THROW(a3.theta({0, 2}), Error);
  EXPECT_THROW(a3.theta({}), Error);
  for (auto t : {"A3", "A4", "D4", "G2"}) {
    auto rs = RootSystem::build(t);
    auto th2 = rs.theta(rs.all_nodes());
    for (auto [j, k] : th2) EXPECT_EQ(th2.at(k), j);
  }
}

TEST(RootSystem, WeylDimensionExamples) {
  auto a1 = RootSystem::build("A1");
  for (int m = 0; m <= 6; ++m) EXPECT_EQ(weyl_dimension(a1, make_weight({m})), static_cast<std::uint64_t>(m + 1));
  EXPECT_EQ(weyl_dimension(RootSystem::build("A2"), make_weight({1, 1})), 8u);
  EXPECT_EQ(weyl_dimension(RootSystem::build("B2"), make_weight({0, 1})), 4u);
  EXPECT_EQ(weyl_dimension(RootSystem::build("B2"), make_weight({1, 0})), 5u);
  EXPECT_EQ(weyl_dimension(RootSystem::build("G2"), make_weight({1, 0})), 7u);
  EXPECT_EQ(weyl_dimension(RootSystem::build("G2"), make_weight({0, 1})), 14u);
  EXPECT_EQ(weyl_dimension(RootSystem::build("D4"), make_weight({0, 1, 0, 0})), 28u);
  EXPECT_THROW(weyl_dimension(a1, make_weight({-1})), Error);
}

// Independent oracle: sum of Freudenthal multiplicities.
TEST(RootSystem, WeylDimensionAgreesWithFreudenthal) {
  for (auto t : {"A2", "A3", "B2", "C2", "G2"}) {
    auto rs = RootSystem::build(t);
    const int r = rs.rank();
    for (int mask = 0; mask < 9 && (r == 2 || mask < 4); ++mask) {
      std::vector<int> c(r, 0);
      c[0] = mask % 3;
      c[r - 1] += mask / 3;
      Weight lam = make_weight(c);
      long long total = 0;
      for (auto& [w, m] : character(rs, lam)) total += m;
      EXPECT_EQ(static_cast<std::uint64_t>(total), weyl_dimension(rs, lam)) << t << to_string(lam);
    }
  }
}
