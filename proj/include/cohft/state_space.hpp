#pragma once

// The state space (V, eta, 1) of the genus-m surface algebra: basis
// a, b_1..b_m, c_1..c_m, d with the cohomological Z-grading, the pairing eta,
// its inverse bi-vector and the star product.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cohft/rational.hpp"

namespace cohft {

enum class Mode : std::uint8_t { Graded, Ungraded };

std::string_view to_string(Mode mode);
Mode parse_mode(std::string_view text);

struct BasisVector {
  enum class Kind : std::uint8_t { A, B, C, D };

  Kind kind = Kind::A;
  int index = 0;  // 1..m for B and C, 0 for A and D

  static constexpr BasisVector a() { return {Kind::A, 0}; }
  static constexpr BasisVector b(int i) { return {Kind::B, i}; }
  static constexpr BasisVector c(int i) { return {Kind::C, i}; }
  static constexpr BasisVector d() { return {Kind::D, 0}; }

  constexpr bool is_a() const { return kind == Kind::A; }
  constexpr bool is_b() const { return kind == Kind::B; }
  constexpr bool is_c() const { return kind == Kind::C; }
  constexpr bool is_d() const { return kind == Kind::D; }

  /// Z-grading: a -> 0, b_i and c_i -> 1, d -> 2.
  constexpr int z_grade() const {
    switch (kind) {
      case Kind::A: return 0;
      case Kind::B:
      case Kind::C: return 1;
      case Kind::D: return 2;
    }
    return 0;
  }
  constexpr int parity() const { return z_grade() % 2; }

  // Kind first, then index: a < b_1 < .. < b_m < c_1 < .. < c_m < d.
  constexpr auto operator<=>(const BasisVector&) const = default;
};

std::string to_string(BasisVector v);
/// Tokens "a", "b<i>", "c<i>", "d" (also "1" for the unit a).
BasisVector parse_basis_vector(std::string_view token);
std::string to_string(std::span<const BasisVector> tuple);

/// Element of V. Zero coefficients are never stored.
class Vector {
 public:
  Vector() = default;
  explicit Vector(BasisVector v, Rational coeff = Rational(1));

  void add(BasisVector v, const Rational& coeff);
  Rational coefficient(BasisVector v) const;
  bool is_zero() const { return terms_.empty(); }
  const std::map<BasisVector, Rational>& terms() const { return terms_; }

  Vector& operator+=(const Vector& other);
  friend Vector operator*(const Rational& scalar, const Vector& v);
  friend bool operator==(const Vector&, const Vector&) = default;

 private:
  std::map<BasisVector, Rational> terms_;
};

std::string to_string(const Vector& v);

struct BivectorTerm {
  BasisVector left;
  BasisVector right;
  int coeff;
};

class StateSpace {
 public:
  StateSpace(int m, Mode mode);

  int m() const { return m_; }
  Mode mode() const { return mode_; }
  bool graded() const { return mode_ == Mode::Graded; }
  std::size_t dimension() const { return basis_.size(); }
  const std::vector<BasisVector>& basis() const { return basis_; }
  BasisVector unit() const { return BasisVector::a(); }

  bool contains(BasisVector v) const {
    return (v.is_a() || v.is_d()) ? v.index == 0 : v.index >= 1 && v.index <= m_;
  }
  /// Throws StructuralError if v is not a basis vector of this space.
  void require(BasisVector v) const {
    if (!contains(v)) throw_out_of_range(v);
  }
  std::size_t position(BasisVector v) const;

  /// Z_2-parity used for Koszul signs; identically 0 in ungraded mode.
  int parity(BasisVector v) const { return graded() ? v.parity() : 0; }

  int eta(BasisVector x, BasisVector y) const;
  Rational eta(const Vector& x, const Vector& y) const;
  /// eta as a dense matrix in basis order.
  const std::vector<std::vector<Rational>>& eta_matrix() const { return eta_matrix_; }

  /// Terms of the inverse bi-vector sum eta^{jk} e_j (x) e_k.
  const std::vector<BivectorTerm>& bivector() const { return bivector_; }

 private:
  [[noreturn]] void throw_out_of_range(BasisVector v) const;

  int m_;
  Mode mode_;
  std::vector<BasisVector> basis_;
  std::vector<std::vector<Rational>> eta_matrix_;
  std::vector<BivectorTerm> bivector_;
};

StateSpace build_state_space(int m, Mode mode);

struct BasisProduct {
  int coeff;  // -1, 0 or 1
  BasisVector value;
};

BasisProduct star(BasisVector x, BasisVector y, const StateSpace& space);
Vector star(const Vector& x, const Vector& y, const StateSpace& space);

/// Star-contraction of the bi-vector. Equals (2-2m)d in graded mode and
/// (2+2m)d in ungraded mode.
Vector handle_element(const StateSpace& space);

/// Sign of reordering a tuple of graded vectors. `perm` is 0-based with
/// result[i] = input[perm[i]]; each transposition of two odd entries
/// contributes -1.
int koszul_sign(std::span<const std::size_t> perm, std::span<const int> parities);

}  // namespace cohft
