#include "cohft/formal_classes.hpp"

#include <algorithm>
#include <map>

#include "cohft/topft.hpp"

namespace cohft {

FormalGamma FormalGamma::make(int h, int m, int deg, Mode mode) {
  auto id = [&] {
    return "h=" + std::to_string(h) + ", m=" + std::to_string(m) + ", deg=" + std::to_string(deg);
  };
  if (h < 0 || m < 0) throw ValidationError("genus and marking count must be nonnegative: " + id());
  if (!is_stable(h, m)) {
    throw ValidationError("stability violated: 2h-2+m = " + std::to_string(2 * h - 2 + m) +
                          " must be > 0 (h=" + std::to_string(h) + ", m=" + std::to_string(m) + ")");
  }
  if (m > kMaxMarkings) throw ValidationError("marking count too large: m=" + std::to_string(m));
  if (h == 0 && m == 3) {
    if (deg != 0) {
      throw ValidationError("H^*(M_{0,3}) is concentrated in degree 0, trivial-CohFT corner needs deg=0: " +
                            id());
    }
    return FormalGamma(h, m, deg, mode);
  }
  if (deg <= 0) throw ValidationError("a minimal class off (0,3) has positive degree: " + id());
  if (mode == Mode::Graded && (deg - m) % 2 != 0) {
    throw ValidationError("parity condition violated: deg=" + std::to_string(deg) + ", m=" + std::to_string(m) +
                          " (graded mode needs deg = m mod 2)");
  }
  if (mode == Mode::Ungraded && deg % 2 != 0) {
    throw ValidationError("ungraded mode requires even degree: deg=" + std::to_string(deg));
  }
  return FormalGamma(h, m, deg, mode);
}

FormalClass FormalClass::unit(Space space, const Rational& coeff) {
  FormalClass out = zero(space);
  out.add(Symbol::unit(), coeff);
  return out;
}

void FormalClass::add(const Symbol& first, const Symbol& second, const Rational& coeff) {
  if (cohft::is_zero(coeff)) return;
  auto less = [](const Term& t, const std::pair<const Symbol*, const Symbol*>& key) {
    if (t.first != *key.first) return t.first < *key.first;
    return t.second < *key.second;
  };
  auto key = std::make_pair(&first, &second);
  auto it = std::lower_bound(terms_.begin(), terms_.end(), key, less);
  if (it != terms_.end() && it->first == first && it->second == second) {
    it->coeff += coeff;
    if (cohft::is_zero(it->coeff)) terms_.erase(it);
    return;
  }
  terms_.insert(it, Term{first, second, coeff});
}

bool FormalClass::has_gamma() const {
  return std::any_of(terms_.begin(), terms_.end(),
                     [](const Term& t) { return t.first.is_gamma() || t.second.is_gamma(); });
}

Rational FormalClass::unit_coefficient() const {
  for (const auto& t : terms_) {
    if (!t.first.is_gamma() && !t.second.is_gamma()) return t.coeff;
  }
  return Rational(0);
}

FormalClass FormalClass::gamma_part() const {
  FormalClass out(factors_, first_, second_);
  for (const auto& t : terms_) {
    if (t.first.is_gamma() || t.second.is_gamma()) out.terms_.push_back(t);
  }
  return out;
}

FormalClass FormalClass::without_gamma() const {
  FormalClass out(factors_, first_, second_);
  for (const auto& t : terms_) {
    if (!t.first.is_gamma() && !t.second.is_gamma()) out.terms_.push_back(t);
  }
  return out;
}

void FormalClass::require_same_spaces(const FormalClass& other) const {
  if (factors_ != other.factors_ || first_ != other.first_ || (factors_ == 2 && second_ != other.second_)) {
    throw StructuralError("formal classes live on different spaces");
  }
}

FormalClass& FormalClass::operator+=(const FormalClass& other) {
  require_same_spaces(other);
  for (const auto& t : other.terms_) add(t.first, t.second, t.coeff);
  return *this;
}

FormalClass& FormalClass::operator-=(const FormalClass& other) {
  require_same_spaces(other);
  for (const auto& t : other.terms_) add(t.first, t.second, -t.coeff);
  return *this;
}

FormalClass& FormalClass::operator*=(const Rational& scalar) {
  if (cohft::is_zero(scalar)) {
    terms_.clear();
    return *this;
  }
  for (auto& t : terms_) t.coeff *= scalar;
  return *this;
}

FormalClass tensor(const FormalClass& left, const FormalClass& right) {
  if (left.factor_count() != 1 || right.factor_count() != 1) {
    throw StructuralError("tensor needs two single-factor classes");
  }
  FormalClass out = FormalClass::zero(left.space(), right.space());
  for (const auto& l : left.terms()) {
    for (const auto& r : right.terms()) out.add(l.first, r.first, l.coeff * r.coeff);
  }
  return out;
}

namespace {

std::string symbol_string(const Symbol& s, Space space) {
  if (!s.is_gamma()) return "1";
  bool identity = static_cast<int>(s.keep.size()) == space.n;
  for (std::size_t j = 0; identity && j < s.keep.size(); ++j) identity = s.keep[j] == static_cast<int>(j) + 1;
  if (identity) return "γ";
  std::string out = "p*γ(";
  for (std::size_t j = 0; j < s.keep.size(); ++j) {
    if (j) out += ",";
    out += std::to_string(s.keep[j]);
  }
  return out + ")";
}

}  // namespace

std::string to_string(const FormalClass& cls) {
  if (cls.is_zero()) return "0";
  std::string out;
  for (const auto& t : cls.terms()) {
    std::string coeff = to_string(t.coeff);
    std::string body;
    if (cls.factor_count() == 1) {
      body = t.first.is_gamma() ? coeff + "·" + symbol_string(t.first, cls.space(0)) : coeff;
    } else if (!t.first.is_gamma() && !t.second.is_gamma()) {
      body = coeff;
    } else {
      body = coeff + "·[" + symbol_string(t.first, cls.space(0)) + " ⊗ " + symbol_string(t.second, cls.space(1)) +
             "]";
    }
    if (!out.empty()) {
      out += (body.front() == '-') ? " - " + body.substr(1) : " + " + body;
    } else {
      out = body;
    }
  }
  return out;
}

FormalClass pullback_gamma_q(const FormalClass& cls, const OneEdgeGraph& graph) {
  if (cls.factor_count() != 1 || graph.is_separating() || cls.space() != Space{graph.genus(), graph.markings()}) {
    throw StructuralError("pullback_gamma_q: class does not live on the target of " + graph.describe());
  }
  return FormalClass::unit({graph.genus() - 1, graph.markings() + 2}, cls.unit_coefficient());
}

FormalClass pullback_gamma_r(const FormalClass& cls, const OneEdgeGraph& graph) {
  if (cls.factor_count() != 1 || !graph.is_separating() ||
      cls.space() != Space{graph.genus(), graph.markings()}) {
    throw StructuralError("pullback_gamma_r: class does not live on the target of " + graph.describe());
  }
  const Space first{graph.vertex_genus(1), graph.vertex_leg_count(1) + 1};
  const Space second{graph.vertex_genus(2), graph.vertex_leg_count(2) + 1};
  FormalClass out = FormalClass::zero(first, second);
  for (const auto& t : cls.terms()) {
    if (!t.first.is_gamma()) {
      out.add(Symbol::unit(), Symbol::unit(), t.coeff);
      continue;
    }
    const int m = static_cast<int>(t.first.keep.size());
    auto result = stabilize_after_forgetting(graph, t.first.keep, cls.space().g, m);
    if (!result.onto()) continue;
    auto gamma = Symbol::gamma(std::move(result.retained_legs));
    if (result.surviving_factor == 1) {
      out.add(gamma, Symbol::unit(), t.coeff);
    } else {
      out.add(Symbol::unit(), gamma, t.coeff);
    }
  }
  return out;
}

FormalClass pullback_forget_last(const FormalClass& cls) {
  if (cls.factor_count() != 1) throw StructuralError("pullback_forget_last needs a single-factor class");
  FormalClass out = FormalClass::zero({cls.space().g, cls.space().n + 1});
  for (const auto& t : cls.terms()) out.add(t.first, t.coeff);
  return out;
}

FormalClass relabel(const FormalClass& cls, std::span<const std::size_t> perm) {
  if (cls.factor_count() != 1 || static_cast<int>(perm.size()) != cls.space().n) {
    throw StructuralError("relabel: permutation length does not match the class");
  }
  std::vector<int> inverse(perm.size());
  for (std::size_t i = 0; i < perm.size(); ++i) inverse[perm[i]] = static_cast<int>(i);
  FormalClass out = FormalClass::zero(cls.space());
  for (const auto& t : cls.terms()) {
    if (!t.first.is_gamma()) {
      out.add(t.first, t.coeff);
      continue;
    }
    std::vector<int> keep;
    keep.reserve(t.first.keep.size());
    for (int leg : t.first.keep) keep.push_back(inverse[static_cast<std::size_t>(leg - 1)] + 1);
    out.add(Symbol::gamma(std::move(keep)), t.coeff);
  }
  return out;
}

bool check_takes_value(std::span<const FormalClass> values, const FormalClass& target) {
  // Coordinates over the symbols that occur; Gaussian elimination on the
  // value rows, then reduce the target.
  std::map<std::pair<Symbol, Symbol>, std::size_t> column;
  auto coords = [&](const FormalClass& cls) {
    std::map<std::size_t, Rational> row;
    for (const auto& t : cls.terms()) {
      auto key = std::make_pair(t.first, t.second);
      auto it = column.try_emplace(key, column.size()).first;
      row[it->second] = t.coeff;
    }
    return row;
  };
  auto same_space = [&](const FormalClass& cls) {
    return cls.factor_count() == target.factor_count() && cls.space(0) == target.space(0) &&
           (cls.factor_count() == 1 || cls.space(1) == target.space(1));
  };

  // Reduced rows keyed by pivot column.
  std::map<std::size_t, std::map<std::size_t, Rational>> pivots;
  auto reduce = [&](std::map<std::size_t, Rational> row) {
    bool changed = true;
    while (changed && !row.empty()) {
      changed = false;
      for (const auto& [col, coeff] : row) {
        auto p = pivots.find(col);
        if (p == pivots.end()) continue;
        Rational factor = coeff / p->second.at(col);
        for (const auto& [c, v] : p->second) {
          row[c] -= factor * v;
          if (is_zero(row[c])) row.erase(c);
        }
        changed = true;
        break;
      }
    }
    return row;
  };

  for (const auto& value : values) {
    if (!same_space(value)) continue;
    auto row = reduce(coords(value));
    if (!row.empty()) pivots.emplace(row.begin()->first, std::move(row));
  }
  return reduce(coords(target)).empty();
}

}  // namespace cohft
