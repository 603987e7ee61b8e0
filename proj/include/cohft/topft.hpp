#pragma once

// The topological field theory omega^m of the genus-m surface algebra.
//
// Two independent evaluators: a closed form (genus 0: the d / b_i c_i
// insertions, genus 1: the Euler characteristic on all-a insertions, zero
// from genus 2 on) and a product oracle eta(v_1 * ... * v_n * H^g, a) where H
// is the handle element.

#include <cstdint>
#include <span>

#include "cohft/rational.hpp"
#include "cohft/state_space.hpp"

namespace cohft {

inline bool is_stable(int g, int n) { return g >= 0 && n >= 0 && 2 * g - 2 + n > 0; }

/// Throws DomainError naming (g,n) when 2g-2+n <= 0.
void require_stable(int g, int n);

/// Closed-form value; canonical orders (d,a,..,a) and (b_i,c_i,a,..,a),
/// permuted tuples pick up the Koszul sign.
Rational evaluate_topft_closed(const StateSpace& space, int g, std::span<const BasisVector> insertions);

/// eta(v_1 * v_2 * ... * v_n * H^g, a), multiplied left to right.
Rational evaluate_topft_oracle(const StateSpace& space, int g, std::span<const BasisVector> insertions);

/// Value of the trivial CohFT on (V = Q, eta = 1): 1 on every stable (g,n).
Rational evaluate_trivial_cohft(int g, int n);

namespace detail {
// Closed form without range checks; callers validate insertions.
std::int64_t topft_value(const StateSpace& space, int g, std::span<const BasisVector> insertions);
}  // namespace detail

}  // namespace cohft
