#pragma once

// Hand-rolled generators and small reference computations shared by the tests.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <string_view>
#include <vector>

#include "cohft/state_space.hpp"
#include "cohft/sweep.hpp"

namespace cohft::testing {

inline Tuple tuple_of(std::string_view text) {
  Tuple out;
  while (!text.empty()) {
    const auto comma = text.find(',');
    out.push_back(parse_basis_vector(text.substr(0, comma)));
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  return out;
}

inline Tuple random_tuple(const StateSpace& space, std::size_t n, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::size_t> pick(0, space.dimension() - 1);
  Tuple out(n);
  for (auto& v : out) v = space.basis()[pick(rng)];
  return out;
}

inline std::vector<std::size_t> random_permutation(std::size_t n, std::mt19937_64& rng) {
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  return perm;
}

/// Calls f on every tuple of length n over the basis, in lexicographic order.
template <class F>
void for_each_tuple(const StateSpace& space, std::size_t n, F&& f) {
  const auto& basis = space.basis();
  std::vector<std::size_t> digits(n, 0);
  Tuple tuple(n, basis.front());
  while (true) {
    f(static_cast<const Tuple&>(tuple));
    std::size_t i = 0;
    while (i < n && ++digits[i] == basis.size()) {
      digits[i] = 0;
      tuple[i] = basis.front();
      ++i;
    }
    if (i == n) return;
    tuple[i] = basis[digits[i]];
  }
}

/// Reference Koszul sign: (-1)^(inversions among odd entries) of the
/// reordering result[i] = input[perm[i]].
inline int reference_koszul(const std::vector<std::size_t>& perm, const std::vector<int>& parities) {
  int inversions = 0;
  for (std::size_t i = 0; i < perm.size(); ++i) {
    for (std::size_t j = i + 1; j < perm.size(); ++j) {
      if (perm[i] > perm[j] && parities[perm[i]] == 1 && parities[perm[j]] == 1) ++inversions;
    }
  }
  return inversions % 2 == 0 ? 1 : -1;
}

inline std::vector<int> parities_of(const StateSpace& space, const Tuple& tuple) {
  std::vector<int> out;
  for (auto v : tuple) out.push_back(space.parity(v));
  return out;
}

}  // namespace cohft::testing
