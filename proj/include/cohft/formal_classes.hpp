#pragma once

// Formal cohomology classes built from the unit class [1] and pullbacks
// p*gamma of a formal minimal class gamma in H^*(M_{h,m}). Minimality is
// encoded in the pullback rules: every restriction of a gamma term to a
// boundary stratum is zero.

#include <compare>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cohft/rational.hpp"
#include "cohft/stable_graphs.hpp"
#include "cohft/state_space.hpp"

namespace cohft {

/// A rejected FormalGamma or sweep configuration. The message names the rule.
class ValidationError : public DomainError {
 public:
  using DomainError::DomainError;
};

class FormalGamma {
 public:
  /// Validates stability, positivity of the degree and the parity rule of
  /// the mode. (h,m) = (0,3) is accepted with deg = 0 only; it is served by
  /// the trivial CohFT.
  static FormalGamma make(int h, int m, int deg, Mode mode);

  int h() const { return h_; }
  int m() const { return m_; }
  int deg() const { return deg_; }
  Mode mode() const { return mode_; }
  bool trivial_corner() const { return h_ == 0 && m_ == 3; }

  friend bool operator==(const FormalGamma&, const FormalGamma&) = default;

 private:
  FormalGamma(int h, int m, int deg, Mode mode) : h_(h), m_(m), deg_(deg), mode_(mode) {}

  int h_;
  int m_;
  int deg_;
  Mode mode_;
};

struct Space {
  int g = 0;
  int n = 0;
  friend auto operator<=>(const Space&, const Space&) = default;
};

struct Symbol {
  enum class Kind : std::uint8_t { Unit, Gamma };

  Kind kind = Kind::Unit;
  /// Gamma only: keep[j] is the marking carrying b_{j+1}, i.e. the marking
  /// sent to marking j+1 of M_{h,m} by the forgetful map.
  std::vector<int> keep;

  static Symbol unit() { return {}; }
  static Symbol gamma(std::vector<int> keep) { return {Kind::Gamma, std::move(keep)}; }
  bool is_gamma() const { return kind == Kind::Gamma; }

  friend auto operator<=>(const Symbol&, const Symbol&) = default;
};

struct Term {
  Symbol first;
  Symbol second;  // Unit for single-factor classes
  Rational coeff;

  friend bool operator==(const Term&, const Term&) = default;
};

/// Rational combination of symbols on M_{g,n} or on a product of two moduli
/// spaces. Terms are kept sorted with nonzero coefficients, so equality is
/// term-wise.
class FormalClass {
 public:
  static FormalClass zero(Space space) { return FormalClass(1, space, {}); }
  static FormalClass zero(Space first, Space second) { return FormalClass(2, first, second); }
  static FormalClass unit(Space space, const Rational& coeff);

  int factor_count() const { return factors_; }
  Space space(int factor = 0) const { return factor == 0 ? first_ : second_; }

  void add(const Symbol& symbol, const Rational& coeff) { add(symbol, Symbol::unit(), coeff); }
  void add(const Symbol& first, const Symbol& second, const Rational& coeff);

  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool has_gamma() const;
  Rational unit_coefficient() const;
  /// Part of the class made of gamma symbols only (drops Unit (x) Unit).
  FormalClass gamma_part() const;
  FormalClass without_gamma() const;

  FormalClass& operator+=(const FormalClass& other);
  FormalClass& operator-=(const FormalClass& other);
  FormalClass& operator*=(const Rational& scalar);
  friend FormalClass operator+(FormalClass lhs, const FormalClass& rhs) { return lhs += rhs; }
  friend FormalClass operator-(FormalClass lhs, const FormalClass& rhs) { return lhs -= rhs; }
  friend FormalClass operator*(const Rational& scalar, FormalClass cls) { return cls *= scalar; }

  friend bool operator==(const FormalClass&, const FormalClass&) = default;

 private:
  FormalClass(int factors, Space first, Space second) : factors_(factors), first_(first), second_(second) {}
  void require_same_spaces(const FormalClass& other) const;

  int factors_ = 1;
  Space first_;
  Space second_;
  std::vector<Term> terms_;
};

/// Graded tensor product of two single-factor classes.
FormalClass tensor(const FormalClass& left, const FormalClass& right);

/// Readable form: "0", "-4", "1·γ", "-1·p*γ(2,1,3)", "1·[1 ⊗ p*γ(1,2)]".
std::string to_string(const FormalClass& cls);

/// q* along the irreducible boundary map: units survive, gamma terms vanish.
FormalClass pullback_gamma_q(const FormalClass& cls, const OneEdgeGraph& graph);

/// r* along a separating boundary map. Unit -> Unit (x) Unit; a gamma term
/// survives only when forgetting and stabilizing maps the stratum onto
/// M_{h,m}, and then becomes gamma on the surviving factor tensored with 1.
FormalClass pullback_gamma_r(const FormalClass& cls, const OneEdgeGraph& graph);

/// p* along the map M_{g,n+1} -> M_{g,n} forgetting the last marking.
FormalClass pullback_forget_last(const FormalClass& cls);

/// Transport under the relabeling result[i] = input[perm[i]] of markings.
FormalClass relabel(const FormalClass& cls, std::span<const std::size_t> perm);

/// True iff target lies in the rational span of the values that live on the
/// same space as target.
bool check_takes_value(std::span<const FormalClass> values, const FormalClass& target);

}  // namespace cohft
