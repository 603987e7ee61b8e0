#include "cohft/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <exception>
#include <mutex>
#include <numeric>
#include <set>
#include <thread>

#include "cohft/topft.hpp"

namespace cohft {

SweepInfo sweep_info(const SweepBounds& bounds) {
  return {bounds.g_max, bounds.n_max, bounds.n_exh, bounds.seed, bounds.sample_count};
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b, std::uint64_t c) {
  // splitmix64 finalizer over the combined words
  auto mix = [](std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
  };
  return mix(mix(mix(mix(seed) ^ a) ^ b) ^ c);
}

Tuple canonical_correction_tuple(int m, int n) {
  if (n < m) return {};
  Tuple tuple;
  tuple.reserve(static_cast<std::size_t>(n));
  for (int j = 1; j <= m; ++j) tuple.push_back(BasisVector::b(j));
  tuple.resize(static_cast<std::size_t>(n), BasisVector::a());
  return tuple;
}

namespace {

bool exhaustive_allowed(std::size_t basis_size, int n, const SweepBounds& bounds) {
  if (n > bounds.n_exh) return false;
  std::uint64_t count = 1;
  for (int i = 0; i < n; ++i) {
    count *= basis_size;
    if (count > bounds.exhaustive_cap) return false;
  }
  return true;
}

Tuple near_correction_tuple(const StateSpace& space, int n, SeededRng& rng) {
  const int m = space.m();
  const auto& basis = space.basis();
  Tuple tuple;
  if (n >= m) {
    tuple = canonical_correction_tuple(m, n);
    for (std::size_t i = tuple.size(); i > 1; --i) std::swap(tuple[i - 1], tuple[rng.below(i)]);
    const auto substitutions = rng.below(3);
    for (std::uint64_t s = 0; s < substitutions && n > 0; ++s) {
      tuple[rng.below(static_cast<std::uint64_t>(n))] = basis[rng.below(basis.size())];
    }
  } else {
    // Isotropic insertions only.
    for (int i = 0; i < n; ++i) {
      auto pick = rng.below(static_cast<std::uint64_t>(m) + 1);
      tuple.push_back(pick == 0 ? BasisVector::a() : BasisVector::b(static_cast<int>(pick)));
    }
  }
  return tuple;
}

}  // namespace

TupleSet make_tuple_set(const StateSpace& space, int g, int n, const SweepBounds& bounds,
                        std::span<const Tuple> forced) {
  TupleSet set;
  const auto& basis = space.basis();
  std::set<Tuple> seen;
  auto push = [&](Tuple t) {
    if (seen.insert(t).second) set.tuples.push_back(std::move(t));
  };
  if (exhaustive_allowed(basis.size(), n, bounds)) {
    // Every forced tuple of length n is already in the full set.
    set.exhaustive = true;
    std::vector<std::size_t> digits(static_cast<std::size_t>(n), 0);
    while (true) {
      Tuple t(static_cast<std::size_t>(n));
      for (std::size_t i = 0; i < digits.size(); ++i) t[i] = basis[digits[i]];
      set.tuples.push_back(std::move(t));
      std::size_t pos = digits.size();
      while (pos > 0 && ++digits[pos - 1] == basis.size()) digits[--pos] = 0;
      if (pos == 0) break;
    }
    return set;
  }
  SeededRng rng(mix_seed(bounds.seed, static_cast<std::uint64_t>(g), static_cast<std::uint64_t>(n)));
  Tuple canonical = canonical_correction_tuple(space.m(), n);
  if (canonical.empty()) canonical.assign(static_cast<std::size_t>(n), BasisVector::a());
  push(std::move(canonical));
  for (std::uint64_t s = 0; s < bounds.sample_count; ++s) {
    if (s % 2 == 0) {
      Tuple t(static_cast<std::size_t>(n));
      for (auto& v : t) v = basis[rng.below(basis.size())];
      push(std::move(t));
    } else {
      push(near_correction_tuple(space, n, rng));
    }
  }
  for (const auto& t : forced) {
    if (static_cast<int>(t.size()) == n) push(t);
  }
  return set;
}

std::vector<OneEdgeGraph> separating_graphs(int g, int n) {
  auto graphs = enumerate_one_edge_graphs(g, n);
  std::erase_if(graphs, [](const OneEdgeGraph& graph) { return !graph.is_separating(); });
  return graphs;
}

namespace {

// Orients a separating graph the way enumerate_one_edge_graphs does.
OneEdgeGraph oriented(int g1, LegMask legs1, int g2, LegMask legs2, int n) {
  bool swap = g1 > g2 || (g1 == g2 && n > 0 && (legs1 & 1) == 0);
  return swap ? OneEdgeGraph::separating(g2, legs2, g1, legs1, n) : OneEdgeGraph::separating(g1, legs1, g2, legs2, n);
}

}  // namespace

std::vector<OneEdgeGraph> select_graphs(std::span<const OneEdgeGraph> separating, int g,
                                        std::span<const BasisVector> tuple, const SweepBounds& bounds,
                                        SeededRng& rng) {
  if (separating.size() <= bounds.graph_cap) return {separating.begin(), separating.end()};

  const int n = static_cast<int>(tuple.size());
  std::vector<OneEdgeGraph> chosen;
  std::set<std::pair<int, LegMask>> keys;
  auto push = [&](const OneEdgeGraph& graph) {
    if (keys.emplace(graph.vertex_genus(1), graph.vertex_legs(1)).second) chosen.push_back(graph);
  };

  // Genus-0 vertex with a-legs and at most one other leg: the only shapes on
  // which a gamma term can survive.
  LegMask a_legs = 0;
  std::vector<int> other_legs;
  for (int i = 0; i < n; ++i) {
    if (tuple[static_cast<std::size_t>(i)].is_a()) {
      a_legs |= LegMask{1} << i;
    } else {
      other_legs.push_back(i);
    }
  }
  const LegMask all = n == 0 ? 0 : (~LegMask{0} >> (64 - n));
  const int k = std::popcount(a_legs);
  const std::uint64_t choices = (k >= 62 ? ~std::uint64_t{0} : (std::uint64_t{1} << k)) * (other_legs.size() + 1);
  auto consider = [&](LegMask subset, int extra) {
    LegMask zero_legs = 0;
    // Scatter subset bits onto the a-leg positions.
    LegMask bits = a_legs;
    for (LegMask s = subset; bits; bits &= bits - 1, s >>= 1) {
      if (s & 1) zero_legs |= bits & (~bits + 1);
    }
    if (extra >= 0) zero_legs |= LegMask{1} << extra;
    const int n0 = std::popcount(zero_legs);
    if (!is_stable(0, n0 + 1) || !is_stable(g, n - n0 + 1)) return;
    push(oriented(0, zero_legs, g, all & ~zero_legs, n));
  };
  if (choices <= bounds.targeted_cap) {
    for (LegMask subset = 0; subset < (LegMask{1} << k); ++subset) {
      consider(subset, -1);
      for (int leg : other_legs) consider(subset, leg);
    }
  } else {
    for (std::size_t s = 0; s < bounds.targeted_cap; ++s) {
      const LegMask subset = k >= 64 ? rng.next() : rng.below(LegMask{1} << k);
      const auto extra = rng.below(other_legs.size() + 1);
      consider(subset, extra == other_legs.size() ? -1 : other_legs[extra]);
    }
  }
  for (std::size_t s = 0; s < bounds.graph_samples; ++s) push(separating[rng.below(separating.size())]);
  return chosen;
}

int effective_jobs(int requested) {
  if (requested > 0) return requested;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

Tally run_tasks(std::size_t tasks, int jobs, const std::function<void(std::size_t, Tally&)>& work) {
  std::vector<Tally> results(tasks);
  const auto workers = static_cast<std::size_t>(std::max(1, std::min<int>(effective_jobs(jobs), static_cast<int>(tasks))));
  if (workers <= 1) {
    for (std::size_t t = 0; t < tasks; ++t) work(t, results[t]);
  } else {
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t t = next++; t < tasks; t = next++) {
          try {
            work(t, results[t]);
          } catch (...) {
            std::lock_guard lock(failure_mutex);
            if (!failure) failure = std::current_exception();
          }
        }
      });
    }
    pool.clear();
    if (failure) std::rethrow_exception(failure);
  }
  Tally merged;
  for (auto& r : results) merged.merge(std::move(r));
  return merged;
}

std::vector<std::vector<std::size_t>> symmetry_permutations(std::size_t n, bool exhaustive_perms,
                                                            std::size_t samples, SeededRng& rng) {
  std::vector<std::vector<std::size_t>> perms;
  std::vector<std::size_t> identity(n);
  std::iota(identity.begin(), identity.end(), std::size_t{0});
  if (exhaustive_perms) {
    auto perm = identity;
    do {
      perms.push_back(perm);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return perms;
  }
  for (std::size_t i = 0; i + 1 < n; ++i) {
    auto perm = identity;
    std::swap(perm[i], perm[i + 1]);
    perms.push_back(std::move(perm));
  }
  for (std::size_t s = 0; s < samples && n > 1; ++s) {
    auto perm = identity;
    for (std::size_t i = n; i > 1; --i) std::swap(perm[i - 1], perm[rng.below(i)]);
    perms.push_back(std::move(perm));
  }
  return perms;
}

}  // namespace cohft
