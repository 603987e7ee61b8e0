#include "cohft/stable_graphs.hpp"

#include <algorithm>
#include <bit>

#include "cohft/rational.hpp"
#include "cohft/topft.hpp"

namespace cohft {

namespace {

LegMask full_mask(int n) { return n == 0 ? 0 : (~LegMask{0} >> (64 - n)); }

void require_markings(int n) {
  if (n < 0 || n > kMaxMarkings) {
    throw DomainError("marking count " + std::to_string(n) + " outside 0.." + std::to_string(kMaxMarkings));
  }
}

std::string mask_string(LegMask mask) {
  std::string out = "{";
  bool first = true;
  for (int leg : legs_of(mask)) {
    if (!first) out += ",";
    out += std::to_string(leg);
    first = false;
  }
  return out + "}";
}

}  // namespace

std::vector<int> legs_of(LegMask mask) {
  std::vector<int> legs;
  legs.reserve(static_cast<std::size_t>(std::popcount(mask)));
  while (mask) {
    legs.push_back(std::countr_zero(mask) + 1);
    mask &= mask - 1;
  }
  return legs;
}

OneEdgeGraph OneEdgeGraph::irreducible(int g, int n) {
  require_markings(n);
  require_stable(g, n);
  if (g < 1) throw DomainError("irreducible graph needs g >= 1, got g=" + std::to_string(g));
  OneEdgeGraph graph;
  graph.kind_ = Kind::Irr;
  graph.g_ = g;
  graph.n_ = n;
  return graph;
}

OneEdgeGraph OneEdgeGraph::separating(int g1, LegMask legs1, int g2, LegMask legs2, int n) {
  require_markings(n);
  if (g1 < 0 || g2 < 0) throw DomainError("negative vertex genus");
  if (legs1 & legs2) throw StructuralError("separating graph: leg sets overlap");
  if ((legs1 | legs2) != full_mask(n)) throw StructuralError("separating graph: legs do not cover 1..n");
  int n1 = std::popcount(legs1);
  int n2 = std::popcount(legs2);
  if (!is_stable(g1, n1 + 1) || !is_stable(g2, n2 + 1)) {
    throw DomainError("separating graph " + std::to_string(g1) + mask_string(legs1) + "|" +
                      std::to_string(g2) + mask_string(legs2) + " has an unstable vertex");
  }
  OneEdgeGraph graph;
  graph.kind_ = Kind::Sep;
  graph.g_ = g1 + g2;
  graph.n_ = n;
  graph.g1_ = g1;
  graph.g2_ = g2;
  graph.legs1_ = legs1;
  graph.legs2_ = legs2;
  return graph;
}

int OneEdgeGraph::vertex_leg_count(int vertex) const { return std::popcount(vertex_legs(vertex)); }

std::string OneEdgeGraph::describe() const {
  if (kind_ == Kind::Irr) return "irr";
  return std::to_string(g1_) + mask_string(legs1_) + "|" + std::to_string(g2_) + mask_string(legs2_);
}

std::vector<OneEdgeGraph> enumerate_one_edge_graphs(int g, int n) {
  require_markings(n);
  require_stable(g, n);
  std::vector<OneEdgeGraph> graphs;
  if (g >= 1) graphs.push_back(OneEdgeGraph::irreducible(g, n));
  const LegMask all = full_mask(n);
  for (int g1 = 0; 2 * g1 <= g; ++g1) {
    const int g2 = g - g1;
    for (LegMask s1 = 0;; ++s1) {
      const LegMask s2 = all & ~s1;
      const int n1 = std::popcount(s1);
      const int n2 = std::popcount(s2);
      bool canonical = true;
      if (g1 == g2) {
        // Equal genera: keep the orientation whose first vertex has the smallest marking.
        canonical = n == 0 ? true : (s1 & 1) != 0;
      }
      if (canonical && is_stable(g1, n1 + 1) && is_stable(g2, n2 + 1)) {
        graphs.push_back(OneEdgeGraph::separating(g1, s1, g2, s2, n));
      }
      if (s1 == all) break;
    }
  }
  return graphs;
}

ContractionResult stabilize_after_forgetting(const OneEdgeGraph& graph, std::span<const int> keep, int h, int m) {
  if (static_cast<int>(keep.size()) != m) {
    throw DomainError("stabilize_after_forgetting: |keep|=" + std::to_string(keep.size()) +
                      " but m=" + std::to_string(m));
  }
  if (!graph.is_separating()) throw StructuralError("stabilize_after_forgetting needs a separating graph");
  LegMask kept = 0;
  for (int leg : keep) {
    if (leg < 1 || leg > graph.markings()) throw StructuralError("kept marking out of range");
    kept |= LegMask{1} << (leg - 1);
  }
  const int retained1 = std::popcount(graph.vertex_legs(1) & kept);
  const int retained2 = std::popcount(graph.vertex_legs(2) & kept);
  const bool contract1 = graph.vertex_genus(1) == 0 && retained1 <= 1;
  const bool contract2 = graph.vertex_genus(2) == 0 && retained2 <= 1;
  if (contract1 == contract2) return {};

  const int survivor = contract1 ? 2 : 1;
  if (graph.vertex_genus(survivor) != h) return {};
  const LegMask survivor_legs = graph.vertex_legs(survivor);
  const int n1 = graph.vertex_leg_count(1);

  ContractionResult result;
  result.kind = ContractionResult::Kind::Onto;
  result.surviving_factor = survivor;
  result.retained_legs.reserve(keep.size());
  for (int leg : keep) {
    const LegMask bit = LegMask{1} << (leg - 1);
    if (survivor_legs & bit) {
      // Rank of the leg among the survivor's legs.
      const int rank = std::popcount(survivor_legs & (bit - 1)) + 1;
      result.retained_legs.push_back(survivor == 1 ? rank : rank + 1);
    } else {
      result.retained_legs.push_back(survivor == 1 ? n1 + 1 : 1);
    }
  }
  return result;
}

bool q_image_is_boundary(int g, int n, int h, std::span<const int> keep) {
  (void)g;
  (void)n;
  (void)h;
  (void)keep;
  return true;
}

}  // namespace cohft
