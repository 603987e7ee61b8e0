#pragma once

// One-edge stable graphs indexing the boundary divisors of M_{g,n}, and the
// stabilization of a separating graph after forgetting markings.
//
// Local marking conventions for the two factors of a separating graph
// (g1, S1 | g2, S2):
//   factor 1 = M_{g1, |S1|+1}: S1 in ascending order is 1..n1, the node is n1+1;
//   factor 2 = M_{g2, |S2|+1}: the node is 1, S2 in ascending order is 2..n2+1.
// The irreducible graph lives on M_{g-1, n+2}: legs 1..n, then the two half-edges.

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace cohft {

/// Markings are 1-based; bit (i-1) of a mask stands for marking i.
using LegMask = std::uint64_t;
inline constexpr int kMaxMarkings = 62;

std::vector<int> legs_of(LegMask mask);

class OneEdgeGraph {
 public:
  enum class Kind : std::uint8_t { Irr, Sep };

  /// Nonseparating node: q : M_{g-1,n+2} -> M_{g,n}.
  static OneEdgeGraph irreducible(int g, int n);
  /// Separating node: r : M_{g1,n1+1} x M_{g2,n2+1} -> M_{g,n}. Validates
  /// disjointness, coverage of 1..n and stability of both vertices.
  static OneEdgeGraph separating(int g1, LegMask legs1, int g2, LegMask legs2, int n);

  Kind kind() const { return kind_; }
  bool is_separating() const { return kind_ == Kind::Sep; }
  int genus() const { return g_; }
  int markings() const { return n_; }

  // Separating data; vertex is 1 or 2.
  int vertex_genus(int vertex) const { return vertex == 1 ? g1_ : g2_; }
  LegMask vertex_legs(int vertex) const { return vertex == 1 ? legs1_ : legs2_; }
  int vertex_leg_count(int vertex) const;

  /// "irr" or e.g. "0{1,2}|1{3}".
  std::string describe() const;

  friend bool operator==(const OneEdgeGraph&, const OneEdgeGraph&) = default;

 private:
  OneEdgeGraph() = default;

  Kind kind_ = Kind::Irr;
  int g_ = 0;
  int n_ = 0;
  int g1_ = 0;
  int g2_ = 0;
  LegMask legs1_ = 0;
  LegMask legs2_ = 0;
};

/// The irreducible graph (when g >= 1) followed by every separating graph
/// once, oriented with the smaller genus first and, on equal genera, the
/// vertex holding the smallest marking first. Sorted by (g1, legs1).
std::vector<OneEdgeGraph> enumerate_one_edge_graphs(int g, int n);

struct ContractionResult {
  enum class Kind : std::uint8_t { Onto, Boundary };

  Kind kind = Kind::Boundary;
  int surviving_factor = 0;
  /// Local markings on the surviving factor; entry j carries the j-th kept marking.
  std::vector<int> retained_legs;

  bool onto() const { return kind == Kind::Onto; }
  friend bool operator==(const ContractionResult&, const ContractionResult&) = default;
};

/// Composes r with the map forgetting every marking outside `keep` (keep[j]
/// becomes marking j+1 of M_{h,m}) and stabilizes. A vertex is contracted when
/// it has genus 0 and at most one kept leg; a single kept leg on a contracted
/// vertex moves to the node of the survivor.
ContractionResult stabilize_after_forgetting(const OneEdgeGraph& graph, std::span<const int> keep, int h, int m);

/// A nonseparating node survives every forgetful map, so q composed with
/// forgetting always lands in the boundary of M_{h,m}. Always true.
bool q_image_is_boundary(int g, int n, int h, std::span<const int> keep);

}  // namespace cohft
