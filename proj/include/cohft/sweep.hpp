#pragma once

// Sweep plumbing shared by the CohFT-axiom and deformation checkers: bounds,
// insertion-tuple sets (exhaustive or seeded samples), per-tuple graph
// selection and a deterministic worker pool.

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "cohft/report.hpp"
#include "cohft/stable_graphs.hpp"
#include "cohft/state_space.hpp"

namespace cohft {

struct SweepBounds {
  int g_max = 0;
  int n_max = 0;
  int n_exh = 6;
  std::uint64_t sample_count = 10000;
  std::uint64_t seed = 0;
  /// Exhaustive enumeration also needs |basis|^n <= exhaustive_cap.
  std::uint64_t exhaustive_cap = 100000;
  /// Tuples with at most this many separating graphs are checked against all
  /// of them; otherwise against graph_samples random graphs plus the graphs
  /// with a genus-0 vertex carrying at most one non-a leg.
  std::size_t graph_cap = 512;
  std::size_t graph_samples = 24;
  std::size_t targeted_cap = 256;
  /// Random permutations per sampled tuple on top of adjacent transpositions.
  std::size_t permutation_samples = 2;
  int jobs = 0;  // <= 0: hardware concurrency
};

SweepInfo sweep_info(const SweepBounds& bounds);

/// Platform-independent seeded generator (splitmix64), cheap to seed per tuple.
class SeededRng {
 public:
  explicit SeededRng(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  std::uint64_t below(std::uint64_t bound) { return next() % bound; }

 private:
  std::uint64_t state_;
};

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b, std::uint64_t c = 0);

using Tuple = std::vector<BasisVector>;

struct TupleSet {
  bool exhaustive = false;
  std::vector<Tuple> tuples;
};

/// All |basis|^n tuples when allowed by the bounds, otherwise sample_count
/// tuples: half uniform, half close to a permutation of (b_1..b_m, a..a).
/// Forced tuples are always included; duplicates are dropped.
TupleSet make_tuple_set(const StateSpace& space, int g, int n, const SweepBounds& bounds,
                        std::span<const Tuple> forced = {});

/// (b_1, .., b_m, a, .., a) with n entries, or empty when n < m.
Tuple canonical_correction_tuple(int m, int n);

/// Separating graphs of (g,n) that the sweep checks for this tuple.
std::vector<OneEdgeGraph> select_graphs(std::span<const OneEdgeGraph> separating, int g,
                                        std::span<const BasisVector> tuple, const SweepBounds& bounds,
                                        SeededRng& rng);

/// Separating graphs of enumerate_one_edge_graphs(g, n).
std::vector<OneEdgeGraph> separating_graphs(int g, int n);

/// Runs work(task, tally) for task = 0..tasks-1 on a pool of threads and
/// merges the per-task tallies in task order.
Tally run_tasks(std::size_t tasks, int jobs, const std::function<void(std::size_t, Tally&)>& work);

int effective_jobs(int requested);

/// Permutations checked for graded symmetry of a tuple of length n: all of
/// them when n <= 6 (exhaustive_perms), else adjacent transpositions plus
/// `samples` random ones.
std::vector<std::vector<std::size_t>> symmetry_permutations(std::size_t n, bool exhaustive_perms,
                                                            std::size_t samples, SeededRng& rng);

}  // namespace cohft
