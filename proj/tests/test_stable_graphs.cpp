#include <gtest/gtest.h>

#include <set>

#include "cohft/stable_graphs.hpp"
#include "cohft/topft.hpp"
#include "support.hpp"

namespace cohft {
namespace {

LegMask mask_of(std::initializer_list<int> legs) {
  LegMask mask = 0;
  for (int leg : legs) mask |= LegMask{1} << (leg - 1);
  return mask;
}

struct Counts {
  int irr = 0;
  int sep = 0;
};

Counts count(int g, int n) {
  Counts c;
  for (const auto& graph : enumerate_one_edge_graphs(g, n)) (graph.is_separating() ? c.sep : c.irr) += 1;
  return c;
}

// Unordered separating splits by brute force over all (g1, S1).
std::set<std::pair<std::pair<int, LegMask>, std::pair<int, LegMask>>> brute_force_splits(int g, int n) {
  std::set<std::pair<std::pair<int, LegMask>, std::pair<int, LegMask>>> out;
  const LegMask all = n == 0 ? 0 : (LegMask{1} << n) - 1;
  for (int g1 = 0; g1 <= g; ++g1) {
    for (LegMask s1 = 0; s1 <= all; ++s1) {
      const LegMask s2 = all & ~s1;
      const int n1 = std::popcount(s1);
      const int n2 = std::popcount(s2);
      if (!is_stable(g1, n1 + 1) || !is_stable(g - g1, n2 + 1)) continue;
      auto x = std::make_pair(g1, s1);
      auto y = std::make_pair(g - g1, s2);
      if (y < x) std::swap(x, y);
      out.insert({x, y});
    }
  }
  return out;
}

TEST(StableGraphs, CountExamples) {
  EXPECT_EQ(count(0, 4).sep, 3);
  EXPECT_EQ(count(0, 4).irr, 0);
  EXPECT_EQ(count(1, 1).irr, 1);
  EXPECT_EQ(count(1, 1).sep, 0);
  EXPECT_EQ(count(1, 2).irr, 1);
  EXPECT_EQ(count(1, 2).sep, 1);
  EXPECT_THROW(enumerate_one_edge_graphs(0, 2), DomainError);
}

TEST(StableGraphs, EnumerationMatchesBruteForce) {
  for (int g = 0; g <= 4; ++g) {
    for (int n = 0; n <= 7; ++n) {
      if (!is_stable(g, n)) continue;
      const auto graphs = enumerate_one_edge_graphs(g, n);
      std::set<std::pair<std::pair<int, LegMask>, std::pair<int, LegMask>>> seen;
      for (const auto& graph : graphs) {
        if (!graph.is_separating()) {
          EXPECT_GE(g, 1);
          continue;
        }
        const int g1 = graph.vertex_genus(1);
        const int g2 = graph.vertex_genus(2);
        EXPECT_EQ(g1 + g2, g);
        EXPECT_LE(g1, g2);
        EXPECT_EQ(graph.vertex_legs(1) & graph.vertex_legs(2), 0u);
        EXPECT_TRUE(is_stable(g1, graph.vertex_leg_count(1) + 1));
        EXPECT_TRUE(is_stable(g2, graph.vertex_leg_count(2) + 1));
        if (g1 == g2 && graph.vertex_legs(2) != 0) {
          EXPECT_LT(std::countr_zero(graph.vertex_legs(1)), std::countr_zero(graph.vertex_legs(2)));
        }
        auto x = std::make_pair(g1, graph.vertex_legs(1));
        auto y = std::make_pair(g2, graph.vertex_legs(2));
        if (y < x) std::swap(x, y);
        EXPECT_TRUE(seen.insert({x, y}).second) << "duplicate " << graph.describe();
      }
      EXPECT_EQ(seen, brute_force_splits(g, n)) << "g=" << g << " n=" << n;
      EXPECT_EQ(count(g, n).irr, g >= 1 ? 1 : 0);
    }
  }
}

TEST(StableGraphs, SeparatingValidation) {
  EXPECT_THROW(OneEdgeGraph::separating(0, mask_of({1}), 1, mask_of({2}), 2), DomainError);
  EXPECT_THROW(OneEdgeGraph::separating(0, mask_of({1, 2}), 0, mask_of({2, 3}), 3), StructuralError);
  EXPECT_THROW(OneEdgeGraph::separating(0, mask_of({1, 2}), 0, mask_of({4}), 4), StructuralError);
  EXPECT_EQ(OneEdgeGraph::separating(0, mask_of({1, 2}), 1, mask_of({3}), 3).describe(), "0{1,2}|1{3}");
}

TEST(StableGraphs, StabilizationExamples) {
  // a-legs on a genus-0 vertex, b-legs on the genus-h vertex.
  const auto case3 = OneEdgeGraph::separating(0, mask_of({1, 2}), 1, mask_of({3, 4}), 4);
  const std::vector<int> keep34{3, 4};
  const auto onto2 = stabilize_after_forgetting(case3, keep34, 1, 2);
  ASSERT_TRUE(onto2.onto());
  EXPECT_EQ(onto2.surviving_factor, 2);
  EXPECT_EQ(onto2.retained_legs, (std::vector<int>{2, 3}));

  const auto case1 = OneEdgeGraph::separating(1, mask_of({1, 2}), 0, mask_of({3, 4}), 4);
  const std::vector<int> keep12{1, 2};
  const auto onto1 = stabilize_after_forgetting(case1, keep12, 1, 2);
  ASSERT_TRUE(onto1.onto());
  EXPECT_EQ(onto1.surviving_factor, 1);
  EXPECT_EQ(onto1.retained_legs, (std::vector<int>{1, 2}));

  // A single kept leg on the contracted vertex lands on the node.
  const std::vector<int> keep13{1, 3};
  const auto moved = stabilize_after_forgetting(case1, keep13, 1, 2);
  ASSERT_TRUE(moved.onto());
  EXPECT_EQ(moved.retained_legs, (std::vector<int>{1, 3}));

  const auto both_positive = OneEdgeGraph::separating(1, mask_of({1, 2}), 1, mask_of({3, 4}), 4);
  const std::vector<int> keep_mixed{1, 3};
  EXPECT_FALSE(stabilize_after_forgetting(both_positive, keep_mixed, 2, 2).onto());

  EXPECT_THROW(stabilize_after_forgetting(case1, keep12, 1, 3), DomainError);
}

TEST(StableGraphs, StabilizationAgreesWithContractionRule) {
  std::mt19937_64 rng(5);
  for (int g = 0; g <= 3; ++g) {
    for (int n = 1; n <= 7; ++n) {
      if (!is_stable(g, n)) continue;
      for (const auto& graph : enumerate_one_edge_graphs(g, n)) {
        if (!graph.is_separating()) continue;
        for (int m = 0; m <= n; ++m) {
          for (int h = 0; h <= g; ++h) {
            if (!is_stable(h, m)) continue;
            auto keep = testing::random_permutation(static_cast<std::size_t>(n), rng);
            std::vector<int> legs;
            for (int j = 0; j < m; ++j) legs.push_back(static_cast<int>(keep[static_cast<std::size_t>(j)]) + 1);
            const auto result = stabilize_after_forgetting(graph, legs, h, m);

            int kept[3] = {0, 0, 0};
            for (int leg : legs) ++kept[(graph.vertex_legs(1) >> (leg - 1)) & 1 ? 1 : 2];
            const bool contract1 = graph.vertex_genus(1) == 0 && kept[1] <= 1;
            const bool contract2 = graph.vertex_genus(2) == 0 && kept[2] <= 1;
            const int survivor = contract1 && !contract2 ? 2 : (contract2 && !contract1 ? 1 : 0);
            const bool expected = survivor != 0 && graph.vertex_genus(survivor) == h;
            ASSERT_EQ(result.onto(), expected) << graph.describe() << " h=" << h << " m=" << m;
            if (!expected) continue;
            EXPECT_EQ(result.surviving_factor, survivor);
            ASSERT_EQ(result.retained_legs.size(), static_cast<std::size_t>(m));
            const int n1 = graph.vertex_leg_count(1);
            const LegMask own = graph.vertex_legs(survivor);
            for (int j = 0; j < m; ++j) {
              const int leg = legs[static_cast<std::size_t>(j)];
              int local = 0;
              if ((own >> (leg - 1)) & 1) {
                const int rank = std::popcount(own & ((LegMask{1} << (leg - 1)) - 1)) + 1;
                local = survivor == 1 ? rank : rank + 1;
              } else {
                local = survivor == 1 ? n1 + 1 : 1;
              }
              EXPECT_EQ(result.retained_legs[static_cast<std::size_t>(j)], local);
            }
          }
        }
      }
    }
  }
}

TEST(StableGraphs, NonseparatingImageIsBoundary) {
  const std::vector<int> keep{1, 2};
  EXPECT_TRUE(q_image_is_boundary(2, 3, 1, keep));
  EXPECT_TRUE(q_image_is_boundary(1, 2, 1, keep));
}

}  // namespace
}  // namespace cohft
