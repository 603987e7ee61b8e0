#include "cohft/topft.hpp"

#include <string>

namespace cohft {

void require_stable(int g, int n) {
  if (!is_stable(g, n)) {
    throw DomainError("unstable (g,n)=(" + std::to_string(g) + "," + std::to_string(n) +
                      "): 2g-2+n must be > 0");
  }
}

namespace detail {

std::int64_t topft_value(const StateSpace& space, int g, std::span<const BasisVector> insertions) {
  if (g >= 2) return 0;
  if (g == 1) {
    for (auto v : insertions) {
      if (!v.is_a()) return 0;
    }
    return space.graded() ? 2 - 2 * space.m() : 2 + 2 * space.m();
  }
  // Genus 0: the non-a insertions must be {d} or {b_i, c_i}.
  const BasisVector* first = nullptr;
  const BasisVector* second = nullptr;
  for (const auto& v : insertions) {
    if (v.is_a()) continue;
    if (!first) {
      first = &v;
    } else if (!second) {
      second = &v;
    } else {
      return 0;
    }
  }
  if (!first) return 0;
  if (!second) return first->is_d() ? 1 : 0;
  if (first->index != second->index) return 0;
  if (first->is_b() && second->is_c()) return 1;
  if (first->is_c() && second->is_b()) return space.graded() ? -1 : 1;
  return 0;
}

}  // namespace detail

Rational evaluate_topft_closed(const StateSpace& space, int g, std::span<const BasisVector> insertions) {
  require_stable(g, static_cast<int>(insertions.size()));
  for (auto v : insertions) space.require(v);
  return Rational(detail::topft_value(space, g, insertions));
}

Rational evaluate_topft_oracle(const StateSpace& space, int g, std::span<const BasisVector> insertions) {
  require_stable(g, static_cast<int>(insertions.size()));
  Vector product(space.unit());
  for (auto v : insertions) {
    space.require(v);
    product = star(product, Vector(v), space);
    if (product.is_zero()) return Rational(0);
  }
  const Vector handle = handle_element(space);
  for (int i = 0; i < g && !product.is_zero(); ++i) product = star(product, handle, space);
  return space.eta(product, Vector(space.unit()));
}

Rational evaluate_trivial_cohft(int g, int n) {
  require_stable(g, n);
  return Rational(1);
}

}  // namespace cohft
