#include "cohft/state_space.hpp"

#include <charconv>
#include <numeric>

namespace cohft {

std::string_view to_string(Mode mode) {
  return mode == Mode::Graded ? "graded" : "ungraded";
}

Mode parse_mode(std::string_view text) {
  if (text == "graded") return Mode::Graded;
  if (text == "ungraded") return Mode::Ungraded;
  throw StructuralError("unknown mode '" + std::string(text) + "' (expected graded or ungraded)");
}

std::string to_string(BasisVector v) {
  switch (v.kind) {
    case BasisVector::Kind::A: return "a";
    case BasisVector::Kind::B: return "b" + std::to_string(v.index);
    case BasisVector::Kind::C: return "c" + std::to_string(v.index);
    case BasisVector::Kind::D: return "d";
  }
  return "?";
}

BasisVector parse_basis_vector(std::string_view token) {
  if (token == "a" || token == "1") return BasisVector::a();
  if (token == "d") return BasisVector::d();
  if (token.size() >= 2 && (token[0] == 'b' || token[0] == 'c')) {
    auto digits = token.substr(token[1] == '_' ? 2 : 1);
    int index = 0;
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), index);
    if (!digits.empty() && ec == std::errc() && ptr == digits.data() + digits.size() && index >= 1) {
      return token[0] == 'b' ? BasisVector::b(index) : BasisVector::c(index);
    }
  }
  throw StructuralError("unknown basis vector '" + std::string(token) + "'");
}

std::string to_string(std::span<const BasisVector> tuple) {
  std::string out = "(";
  for (std::size_t i = 0; i < tuple.size(); ++i) {
    if (i) out += ",";
    out += to_string(tuple[i]);
  }
  return out + ")";
}

Vector::Vector(BasisVector v, Rational coeff) { add(v, coeff); }

void Vector::add(BasisVector v, const Rational& coeff) {
  if (cohft::is_zero(coeff)) return;
  auto [it, inserted] = terms_.try_emplace(v, coeff);
  if (!inserted) {
    it->second += coeff;
    if (cohft::is_zero(it->second)) terms_.erase(it);
  }
}

Rational Vector::coefficient(BasisVector v) const {
  auto it = terms_.find(v);
  return it == terms_.end() ? Rational(0) : it->second;
}

Vector& Vector::operator+=(const Vector& other) {
  for (const auto& [v, c] : other.terms_) add(v, c);
  return *this;
}

Vector operator*(const Rational& scalar, const Vector& v) {
  Vector out;
  if (is_zero(scalar)) return out;
  for (const auto& [b, c] : v.terms_) out.add(b, scalar * c);
  return out;
}

std::string to_string(const Vector& v) {
  if (v.is_zero()) return "0";
  std::string out;
  for (const auto& [b, c] : v.terms()) {
    if (!out.empty()) out += " + ";
    out += to_string(c) + "*" + to_string(b);
  }
  return out;
}

StateSpace::StateSpace(int m, Mode mode) : m_(m), mode_(mode) {
  if (m < 0) throw DomainError("state space requires m >= 0, got m=" + std::to_string(m));
  basis_.push_back(BasisVector::a());
  for (int i = 1; i <= m; ++i) basis_.push_back(BasisVector::b(i));
  for (int i = 1; i <= m; ++i) basis_.push_back(BasisVector::c(i));
  basis_.push_back(BasisVector::d());

  eta_matrix_.assign(basis_.size(), std::vector<Rational>(basis_.size(), Rational(0)));
  for (std::size_t i = 0; i < basis_.size(); ++i) {
    for (std::size_t j = 0; j < basis_.size(); ++j) {
      eta_matrix_[i][j] = Rational(eta(basis_[i], basis_[j]));
    }
  }

  const int bc = graded() ? -1 : 1;
  bivector_.push_back({BasisVector::a(), BasisVector::d(), 1});
  bivector_.push_back({BasisVector::d(), BasisVector::a(), 1});
  for (int i = 1; i <= m; ++i) {
    bivector_.push_back({BasisVector::b(i), BasisVector::c(i), bc});
    bivector_.push_back({BasisVector::c(i), BasisVector::b(i), 1});
  }
}

void StateSpace::throw_out_of_range(BasisVector v) const {
  throw StructuralError("basis vector " + to_string(v) + " out of range for m=" + std::to_string(m_));
}

std::size_t StateSpace::position(BasisVector v) const {
  require(v);
  switch (v.kind) {
    case BasisVector::Kind::A: return 0;
    case BasisVector::Kind::B: return static_cast<std::size_t>(v.index);
    case BasisVector::Kind::C: return static_cast<std::size_t>(m_ + v.index);
    case BasisVector::Kind::D: return static_cast<std::size_t>(2 * m_ + 1);
  }
  return 0;
}

int StateSpace::eta(BasisVector x, BasisVector y) const {
  using K = BasisVector::Kind;
  if ((x.kind == K::A && y.kind == K::D) || (x.kind == K::D && y.kind == K::A)) return 1;
  if (x.index != y.index) return 0;
  if (x.kind == K::B && y.kind == K::C) return 1;
  if (x.kind == K::C && y.kind == K::B) return graded() ? -1 : 1;
  return 0;
}

Rational StateSpace::eta(const Vector& x, const Vector& y) const {
  Rational total(0);
  for (const auto& [u, cu] : x.terms()) {
    for (const auto& [v, cv] : y.terms()) {
      int e = eta(u, v);
      if (e != 0) total += cu * cv * Rational(e);
    }
  }
  return total;
}

StateSpace build_state_space(int m, Mode mode) { return StateSpace(m, mode); }

BasisProduct star(BasisVector x, BasisVector y, const StateSpace& space) {
  space.require(x);
  space.require(y);
  if (x.is_a()) return {1, y};
  if (y.is_a()) return {1, x};
  if (x.index == y.index) {
    if (x.is_b() && y.is_c()) return {1, BasisVector::d()};
    if (x.is_c() && y.is_b()) return {space.graded() ? -1 : 1, BasisVector::d()};
  }
  return {0, BasisVector::a()};
}

Vector star(const Vector& x, const Vector& y, const StateSpace& space) {
  Vector out;
  for (const auto& [u, cu] : x.terms()) {
    for (const auto& [v, cv] : y.terms()) {
      auto p = star(u, v, space);
      if (p.coeff != 0) out.add(p.value, cu * cv * Rational(p.coeff));
    }
  }
  return out;
}

Vector handle_element(const StateSpace& space) {
  Vector out;
  for (const auto& term : space.bivector()) {
    auto p = star(term.left, term.right, space);
    if (p.coeff != 0) out.add(p.value, Rational(term.coeff * p.coeff));
  }
  return out;
}

int koszul_sign(std::span<const std::size_t> perm, std::span<const int> parities) {
  if (perm.size() != parities.size()) {
    throw StructuralError("koszul_sign: permutation has length " + std::to_string(perm.size()) +
                          " but parities have length " + std::to_string(parities.size()));
  }
  std::vector<bool> seen(perm.size(), false);
  for (auto p : perm) {
    if (p >= perm.size() || seen[p]) throw StructuralError("koszul_sign: not a permutation");
    seen[p] = true;
  }
  int sign = 1;
  for (std::size_t i = 0; i < perm.size(); ++i) {
    if (!parities[perm[i]]) continue;
    for (std::size_t j = i + 1; j < perm.size(); ++j) {
      if (parities[perm[j]] && perm[i] > perm[j]) sign = -sign;
    }
  }
  return sign;
}

}  // namespace cohft
