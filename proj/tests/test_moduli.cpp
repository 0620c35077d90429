#include "ccl/moduli.hpp"

#include <gtest/gtest.h>

#include <numeric>
#include <random>

using namespace ccl;

namespace {

Tree random_tree(std::mt19937& rng, std::vector<int> labels) {
  if (labels.size() == 1) return Tree::make_leaf(labels[0]);
  std::uniform_int_distribution<std::size_t> cut(1, labels.size() - 1);
  const std::size_t c = cut(rng);
  return Tree::join(random_tree(rng, {labels.begin(), labels.begin() + c}),
                    random_tree(rng, {labels.begin() + c, labels.end()}));
}

std::vector<int> iota_labels(int n) {
  std::vector<int> v(n);
  std::iota(v.begin(), v.end(), 1);
  return v;
}

std::vector<Q> qv(std::initializer_list<int> xs) {
  std::vector<Q> v;
  for (int x : xs) v.push_back(Q(x));
  return v;
}

}  // namespace

TEST(Moduli, ParsePrintRoundTrip) {
  std::mt19937 rng(7);
  for (int n = 1; n <= 8; ++n)
    for (int rep = 0; rep < 20; ++rep) {
      auto labels = iota_labels(n);
      std::shuffle(labels.begin(), labels.end(), rng);
      Tree t = random_tree(rng, labels);
      EXPECT_EQ(parse_tree(print_tree(t)), t);
      EXPECT_EQ(parse_tree(print_tree_compact(t)), t);
    }
  EXPECT_EQ(print_tree(parse_tree("(12)3")), "((1 2) 3)");
  EXPECT_EQ(print_tree(parse_tree("1(23)")), "(1 (2 3))");
  Tree big = parse_tree("((10 2) ((3 (4 5)) ((6 7) ((8 9) (1 11)))))");
  EXPECT_EQ(big.size(), 11);
  EXPECT_EQ(print_tree(big).substr(0, 7), "((10 2)");
}

TEST(Moduli, ParseRejectsMalformed) {
  EXPECT_THROW(parse_tree("123"), Error);
  EXPECT_THROW(parse_tree("(12"), Error);
  EXPECT_THROW(parse_tree("(11)"), Error);
  EXPECT_THROW(parse_tree("(13)"), Error);
  EXPECT_THROW(parse_tree("(1x)"), Error);
}

TEST(Moduli, NestedSetExamples) {
  auto a = tree_to_nested_set(parse_tree("(12)3"));
  ASSERT_EQ(a.sets.size(), 2u);
  EXPECT_EQ(a.sets[0], (std::vector<int>{1, 2, 3}));
  EXPECT_EQ(a.sets[1], (std::vector<int>{1, 2}));
  EXPECT_EQ(a.basis[0], (std::pair<int, int>{2, 3}));
  EXPECT_EQ(a.basis[1], (std::pair<int, int>{1, 2}));
  auto b = tree_to_nested_set(parse_tree("1(23)"));
  EXPECT_EQ(b.basis[0], (std::pair<int, int>{1, 2}));
  EXPECT_EQ(b.basis[1], (std::pair<int, int>{2, 3}));
  auto c = tree_to_nested_set(parse_tree("12"));
  EXPECT_EQ(c.sets.size(), 1u);
  EXPECT_EQ(c.basis[0], (std::pair<int, int>{1, 2}));
}

TEST(Moduli, AdaptedBasisSpansEveryMember) {
  std::mt19937 rng(11);
  for (int n = 2; n <= 8; ++n)
    for (int rep = 0; rep < 10; ++rep) {
      auto labels = iota_labels(n);
      std::shuffle(labels.begin(), labels.end(), rng);
      EXPECT_TRUE(check_adapted_basis(tree_to_nested_set(random_tree(rng, labels))));
    }
}

TEST(Moduli, DualBasisPairing) {
  std::mt19937 rng(3);
  for (int n = 2; n <= 7; ++n) {
    auto labels = iota_labels(n);
    std::shuffle(labels.begin(), labels.end(), rng);
    auto ns = tree_to_nested_set(random_tree(rng, labels));
    auto dual = dual_basis(ns);
    for (std::size_t a = 0; a < ns.basis.size(); ++a)
      for (std::size_t b = 0; b < dual.size(); ++b) {
        const auto [l, r] = ns.basis[a];
        EXPECT_EQ(dual[b][l - 1] - dual[b][r - 1], Q(a == b ? 1 : 0));
        EXPECT_EQ(dual[b][n - 1], Q(0));
      }
  }
}

TEST(Moduli, ChartExample) {
  auto ns = tree_to_nested_set(parse_tree("(12)3"));
  auto z = chart_to_configuration(ns, qv({1, 1}));
  ASSERT_TRUE(std::holds_alternative<std::vector<Q>>(z));
  EXPECT_EQ(std::get<std::vector<Q>>(z), qv({2, 1, 0}));
  // gap z1 - z2 equals u on the inner cluster
  auto w = chart_to_configuration(ns, {Q(1), Q(1, 5)});
  EXPECT_EQ(std::get<std::vector<Q>>(w)[0] - std::get<std::vector<Q>>(w)[1], Q(1, 5));
  auto d = chart_to_configuration(ns, qv({1, 0}));
  ASSERT_TRUE(std::holds_alternative<Degeneration>(d));
  EXPECT_EQ(std::get<Degeneration>(d).collapsed, (std::vector<std::vector<int>>{{1, 2}}));
  EXPECT_THROW(chart_to_configuration(ns, qv({1})), Error);
}

TEST(Moduli, ChartPositivity) {
  std::mt19937 rng(5);
  std::uniform_int_distribution<int> num(1, 9);
  for (int n = 2; n <= 8; ++n)
    for (int rep = 0; rep < 10; ++rep) {
      auto ns = tree_to_nested_set(random_tree(rng, iota_labels(n)));
      std::vector<Q> u(ns.sets.size());
      for (auto& x : u) x = Q(num(rng), num(rng));
      auto z = std::get<std::vector<Q>>(chart_to_configuration(ns, u));
      for (int i = 0; i + 1 < n; ++i) EXPECT_GT(z[i], z[i + 1]);
    }
}

TEST(Moduli, OperadExamplesAndUnit) {
  auto t12 = parse_tree("12");
  EXPECT_EQ(print_tree_compact(operad_compose(t12, {t12, t12})), "(12)(34)");
  std::mt19937 rng(9);
  for (int n = 1; n <= 6; ++n) {
    auto labels = iota_labels(n);
    std::shuffle(labels.begin(), labels.end(), rng);
    Tree t = random_tree(rng, labels);
    EXPECT_EQ(operad_compose(t, std::vector<Tree>(n, Tree::make_leaf(1))), t);
    EXPECT_EQ(operad_compose(Tree::make_leaf(1), {t}), t);
  }
  EXPECT_THROW(operad_compose(t12, {t12}), Error);
}

TEST(Moduli, OperadAssociativity) {
  std::mt19937 rng(21);
  std::uniform_int_distribution<int> arity(1, 3);
  for (int rep = 0; rep < 20; ++rep) {
    const int n = arity(rng) + 1;
    Tree outer = random_tree(rng, iota_labels(n));
    std::vector<Tree> mid;
    std::vector<std::vector<Tree>> low;
    for (int i = 0; i < n; ++i) {
      const int k = arity(rng);
      auto l = iota_labels(k);
      std::shuffle(l.begin(), l.end(), rng);
      mid.push_back(random_tree(rng, l));
      low.emplace_back();
      for (int j = 0; j < k; ++j) {
        auto m = iota_labels(arity(rng));
        std::shuffle(m.begin(), m.end(), rng);
        low.back().push_back(random_tree(rng, m));
      }
    }
    // left side: (outer o mid) o flattened low, ordered by the labels of the mid composite
    std::vector<Tree> flat;
    for (int i = 0; i < n; ++i) flat.insert(flat.end(), low[i].begin(), low[i].end());
    Tree lhs = operad_compose(operad_compose(outer, mid), flat);
    std::vector<Tree> grafted;
    for (int i = 0; i < n; ++i) grafted.push_back(operad_compose(mid[i], low[i]));
    Tree rhs = operad_compose(outer, grafted);
    EXPECT_EQ(lhs, rhs);
  }
}

TEST(Moduli, OperadEquivariance) {
  std::mt19937 rng(33);
  std::uniform_int_distribution<int> arity(1, 3);
  for (int rep = 0; rep < 20; ++rep) {
    const int n = arity(rng) + 1;
    Tree outer = random_tree(rng, iota_labels(n));
    std::vector<Tree> inners;
    std::vector<int> k(n);
    for (int i = 0; i < n; ++i) {
      k[i] = arity(rng);
      inners.push_back(random_tree(rng, iota_labels(k[i])));
    }
    // outer relabelling w
    std::vector<int> w = iota_labels(n);
    std::shuffle(w.begin(), w.end(), rng);
    std::vector<int> winv(n);
    for (int i = 0; i < n; ++i) winv[w[i] - 1] = i + 1;
    std::vector<Tree> permuted;
    for (int j = 1; j <= n; ++j) permuted.push_back(inners[winv[j - 1] - 1]);
    std::vector<int> off(n + 1, 0), off2(n + 1, 0);
    for (int i = 0; i < n; ++i) off[i + 1] = off[i] + k[i];
    for (int j = 0; j < n; ++j) off2[j + 1] = off2[j] + k[winv[j] - 1];
    std::vector<int> block(off[n]);
    for (int i = 0; i < n; ++i)
      for (int a = 0; a < k[i]; ++a) block[off[i] + a] = off2[w[i] - 1] + a + 1;
    EXPECT_EQ(operad_compose(relabel(outer, w), permuted), relabel(operad_compose(outer, inners), block));
    // inner relabellings act blockwise
    std::vector<Tree> relabelled;
    std::vector<int> sum(off[n]);
    for (int i = 0; i < n; ++i) {
      auto wi = iota_labels(k[i]);
      std::shuffle(wi.begin(), wi.end(), rng);
      relabelled.push_back(relabel(inners[i], wi));
      for (int a = 0; a < k[i]; ++a) sum[off[i] + a] = off[i] + wi[a];
    }
    EXPECT_EQ(operad_compose(outer, relabelled), relabel(operad_compose(outer, inners), sum));
  }
}

TEST(Moduli, ScheduleExamples) {
  auto full = cactus_path_schedule(3, 1, 3, {1, 2, 3}, 0.1);
  EXPECT_EQ(full.action, "flip");
  ASSERT_EQ(full.segments.size(), 1u);
  EXPECT_EQ(full.segments[0].z_end, (std::vector<double>{-1, 0, 1}));
  EXPECT_FALSE(full.segments[0].handoff.has_value());

  auto part = cactus_path_schedule(3, 1, 2, {1, 2, 3}, 0.1);
  EXPECT_EQ(part.action, "cluster");
  ASSERT_EQ(part.segments.size(), 1u);
  EXPECT_NEAR(part.segments[0].z_end[0], 1.45, 1e-15);
  EXPECT_NEAR(part.segments[0].z_end[1], 1.55, 1e-15);
  EXPECT_EQ(part.segments[0].z_end[2], 3.0);
  ASSERT_TRUE(part.segments[0].handoff.has_value());
  ASSERT_TRUE(part.inner);
  EXPECT_EQ(part.inner->action, "swap");

  auto two = cactus_path_schedule(2, 1, 2, {0, 1}, 0.1);
  EXPECT_EQ(two.action, "swap");
  EXPECT_TRUE(two.segments.empty());

  auto j = schedule_json(part);
  EXPECT_TRUE(j["segments"][0].contains("t0"));
  EXPECT_TRUE(j["segments"][0]["handoff"].is_object());
  EXPECT_TRUE(schedule_json(full)["segments"][0]["handoff"].is_null());

  EXPECT_THROW(cactus_path_schedule(3, 1, 2, {1, 2, 3}, 0.6), Error);
  EXPECT_THROW(cactus_path_schedule(3, 1, 2, {2, 1, 3}, 0.1), Error);
}

TEST(Moduli, ScheduleKeepsGaps) {
  std::mt19937 rng(17);
  std::uniform_real_distribution<double> gap(0.5, 2.0);
  for (int n = 3; n <= 6; ++n)
    for (int p = 1; p < n; ++p)
      for (int q = p + 1; q <= n; ++q) {
        if (q - p + 1 == n) continue;
        std::vector<double> z(n);
        for (int i = 1; i < n; ++i) z[i] = z[i - 1] + gap(rng);
        const double delta = 0.4 * min_gap(z);
        auto s = cactus_path_schedule(n, p, q, z, delta);
        for (double t : {0.0, 0.25, 0.5, 0.75, 1.0}) {
          std::vector<double> x(n);
          for (int i = 0; i < n; ++i) x[i] = (1 - t) * s.segments[0].z_start[i] + t * s.segments[0].z_end[i];
          for (int i = 0; i + 1 < n; ++i) {
            const bool inside = i + 1 >= p && i + 2 <= q;
            if (!inside) {
              EXPECT_GE(x[i + 1] - x[i], delta);
            }
            EXPECT_GT(x[i + 1] - x[i], 0.0);
          }
        }
        const auto& e = s.segments[0].z_end;
        EXPECT_NEAR(e[q - 1] - e[p - 1], delta, 1e-12);
      }
}
