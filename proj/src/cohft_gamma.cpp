#include "cohft/cohft_gamma.hpp"

#include <algorithm>
#include <array>
#include <bit>

#include "cohft/topft.hpp"

namespace cohft {

CohftGamma::CohftGamma(const FormalGamma& gamma) : gamma_(gamma), space_(gamma.m(), gamma.mode()) {
  if (gamma.trivial_corner()) {
    throw DomainError("(h,m)=(0,3): H^*(M_{0,3}) is spanned by the unit, use the trivial CohFT");
  }
}

namespace {

/// Positions (1-based) of b_1..b_m when the tuple is a permutation of
/// (b_1..b_m, a..a); false otherwise. positions must have size m.
bool b_positions(int m, std::span<const BasisVector> insertions, std::span<int> positions) {
  if (static_cast<int>(insertions.size()) < m) return false;
  std::fill(positions.begin(), positions.end(), 0);
  int found = 0;
  for (std::size_t i = 0; i < insertions.size(); ++i) {
    const auto v = insertions[i];
    if (v.is_a()) continue;
    if (!v.is_b() || v.index < 1 || v.index > m) return false;
    int& slot = positions[static_cast<std::size_t>(v.index - 1)];
    if (slot != 0) return false;
    slot = static_cast<int>(i) + 1;
    ++found;
  }
  return found == m;
}

bool is_correction_tuple(const CohftGamma& theory, int g, std::span<const BasisVector> insertions) {
  if (g != theory.h()) return false;
  const int m = theory.m();
  if (static_cast<int>(insertions.size()) < m) return false;
  std::uint64_t seen = 0;
  int found = 0;
  for (auto v : insertions) {
    if (v.is_a()) continue;
    if (!v.is_b() || v.index < 1 || v.index > m) return false;
    const std::uint64_t bit = std::uint64_t{1} << (v.index - 1);
    if (seen & bit) return false;
    seen |= bit;
    ++found;
  }
  return found == m;
}

Counterexample make_example(const std::string& axiom, int g, std::span<const BasisVector> insertions,
                            const std::string& graph, const IdentityCheck& check) {
  return {axiom, g, static_cast<int>(insertions.size()), to_string(insertions), graph, to_string(check.lhs),
          to_string(check.rhs), check.detail};
}

}  // namespace

std::optional<Correction> correction_term(const CohftGamma& theory, int g, std::span<const BasisVector> insertions) {
  if (!is_correction_tuple(theory, g, insertions)) return std::nullopt;
  const int m = theory.m();
  std::vector<int> positions(static_cast<std::size_t>(m));
  if (!b_positions(m, insertions, positions)) return std::nullopt;
  int sign = 1;
  if (theory.space().graded()) {
    // Odd entries are exactly the b's; count inversions of their indices.
    std::vector<int> order;
    order.reserve(static_cast<std::size_t>(m));
    for (auto v : insertions) {
      if (v.is_b()) order.push_back(v.index);
    }
    for (std::size_t i = 0; i < order.size(); ++i) {
      for (std::size_t j = i + 1; j < order.size(); ++j) {
        if (order[i] > order[j]) sign = -sign;
      }
    }
  }
  return Correction{sign, std::move(positions)};
}

FormalClass evaluate_omega_gamma(const CohftGamma& theory, int g, std::span<const BasisVector> insertions) {
  const int n = static_cast<int>(insertions.size());
  require_stable(g, n);
  for (auto v : insertions) theory.space().require(v);
  FormalClass out = FormalClass::zero({g, n});
  const auto unit = detail::topft_value(theory.space(), g, insertions);
  if (unit != 0) out.add(Symbol::unit(), Rational(Integer(unit)));
  if (auto correction = correction_term(theory, g, insertions)) {
    out.add(Symbol::gamma(std::move(correction->keep)), Rational(Integer(correction->sign)));
  }
  return out;
}

FormalClass evaluate_omega_gamma(const FormalGamma& gamma, int g, std::span<const BasisVector> insertions) {
  return evaluate_omega_gamma(CohftGamma(gamma), g, insertions);
}

std::string to_string(CorrectionCase c) {
  switch (c.kind) {
    case CorrectionCase::Kind::None: return "none";
    case CorrectionCase::Kind::Case1: return "case1";
    case CorrectionCase::Kind::Case2: return "case2(" + std::to_string(c.index) + ")";
    case CorrectionCase::Kind::Case3: return "case3";
    case CorrectionCase::Kind::Case4: return "case4(" + std::to_string(c.index) + ")";
  }
  return "none";
}

CorrectionCase classify_correction_case(const CohftGamma& theory, const OneEdgeGraph& graph,
                                        std::span<const BasisVector> insertions, const BivectorTerm& term) {
  if (!graph.is_separating() || graph.markings() != static_cast<int>(insertions.size())) return {};
  // Which vertex would be the genus-0 component carrying the underlined pair.
  const bool zero_is_second = (term.left.is_a() && term.right.is_d()) || (term.left.is_b() && term.right.is_c());
  const bool zero_is_first = (term.left.is_d() && term.right.is_a()) || (term.left.is_c() && term.right.is_b());
  if (!zero_is_first && !zero_is_second) return {};
  const int zero_vertex = zero_is_second ? 2 : 1;
  const int other_vertex = 3 - zero_vertex;
  if (graph.vertex_genus(zero_vertex) != 0 || graph.vertex_genus(other_vertex) != theory.h()) return {};

  // Non-a insertions on the genus-0 vertex.
  int non_a = 0;
  BasisVector last{};
  for (int leg : legs_of(graph.vertex_legs(zero_vertex))) {
    const auto v = insertions[static_cast<std::size_t>(leg - 1)];
    if (!v.is_a()) {
      ++non_a;
      last = v;
    }
  }
  if (!is_correction_tuple(theory, theory.h(), insertions)) return {};

  const BivectorTerm& t = term;
  if (zero_is_second) {
    if (t.left.is_a()) return non_a == 0 ? CorrectionCase{CorrectionCase::Kind::Case1, 0} : CorrectionCase{};
    // (b_i, c_i): factor 2 holds exactly b_i among its non-a legs.
    if (non_a == 1 && last == BasisVector::b(t.left.index) && t.right.index == t.left.index) {
      return {CorrectionCase::Kind::Case2, t.left.index};
    }
    return {};
  }
  if (t.right.is_a()) return non_a == 0 ? CorrectionCase{CorrectionCase::Kind::Case3, 0} : CorrectionCase{};
  if (non_a == 1 && last == BasisVector::b(t.right.index) && t.left.index == t.right.index) {
    return {CorrectionCase::Kind::Case4, t.right.index};
  }
  return {};
}

int split_insertions(const StateSpace& space, const OneEdgeGraph& graph, std::span<const BasisVector> insertions,
                     std::vector<BasisVector>& first, std::vector<BasisVector>& second) {
  if (!graph.is_separating() || graph.markings() != static_cast<int>(insertions.size())) {
    throw StructuralError("split_insertions: graph " + graph.describe() + " does not match " +
                          std::to_string(insertions.size()) + " insertions");
  }
  first.clear();
  second.clear();
  first.reserve(insertions.size() + 1);
  second.reserve(insertions.size() + 1);
  const LegMask legs1 = graph.vertex_legs(1);
  // Moving factor-1 entries in front of the factor-2 entries preceding them.
  int odd_second_seen = 0;
  int swaps = 0;
  for (std::size_t i = 0; i < insertions.size(); ++i) {
    const auto v = insertions[i];
    const int parity = space.parity(v);
    if (legs1 & (LegMask{1} << i)) {
      first.push_back(v);
      if (parity) swaps += odd_second_seen;
    } else {
      second.push_back(v);
      odd_second_seen += parity;
    }
  }
  return swaps % 2 == 0 ? 1 : -1;
}

std::vector<BasisVector> permute(std::span<const BasisVector> insertions, std::span<const std::size_t> perm) {
  if (perm.size() != insertions.size()) throw StructuralError("permute: length mismatch");
  std::vector<BasisVector> out(insertions.size());
  for (std::size_t i = 0; i < perm.size(); ++i) out[i] = insertions[perm[i]];
  return out;
}

IdentityCheck check_symmetry(const CohftGamma& theory, int g, std::span<const BasisVector> insertions,
                             std::span<const std::size_t> perm) {
  std::vector<int> parities;
  parities.reserve(insertions.size());
  for (auto v : insertions) parities.push_back(theory.space().parity(v));
  const int sign = koszul_sign(perm, parities);
  const auto permuted = permute(insertions, perm);
  IdentityCheck check;
  check.lhs = evaluate_omega_gamma(theory, g, permuted);
  check.rhs = relabel(evaluate_omega_gamma(theory, g, insertions), perm);
  check.rhs *= Rational(sign);
  check.passed = check.lhs == check.rhs;
  if (!check.passed) check.detail = "permuted tuple " + to_string(std::span<const BasisVector>(permuted));
  return check;
}

IdentityCheck check_gluing_q(const CohftGamma& theory, int g, std::span<const BasisVector> insertions) {
  const int n = static_cast<int>(insertions.size());
  const auto graph = OneEdgeGraph::irreducible(g, n);
  IdentityCheck check;
  check.lhs = pullback_gamma_q(evaluate_omega_gamma(theory, g, insertions), graph);
  check.rhs = FormalClass::zero({g - 1, n + 2});
  std::vector<BasisVector> extended(insertions.begin(), insertions.end());
  extended.resize(insertions.size() + 2);
  for (const auto& term : theory.space().bivector()) {
    extended[insertions.size()] = term.left;
    extended[insertions.size() + 1] = term.right;
    auto value = evaluate_omega_gamma(theory, g - 1, extended);
    if (value.is_zero()) continue;
    value *= Rational(term.coeff);
    check.rhs += value;
  }
  check.passed = check.lhs == check.rhs;
  return check;
}

IdentityCheck check_gluing_r(const CohftGamma& theory, int g, std::span<const BasisVector> insertions,
                             const OneEdgeGraph& graph, std::vector<char>* term_has_gamma) {
  if (graph.genus() != g) throw StructuralError("check_gluing_r: graph genus differs from g");
  const auto& space = theory.space();
  std::vector<BasisVector> first;
  std::vector<BasisVector> second;
  const int sign = split_insertions(space, graph, insertions, first, second);
  const int g1 = graph.vertex_genus(1);
  const int g2 = graph.vertex_genus(2);

  IdentityCheck check;
  check.lhs = pullback_gamma_r(evaluate_omega_gamma(theory, g, insertions), graph);
  check.rhs = FormalClass::zero(check.lhs.space(0), check.lhs.space(1));
  first.push_back(BasisVector::a());
  second.insert(second.begin(), BasisVector::a());
  const auto& terms = space.bivector();
  if (term_has_gamma) term_has_gamma->assign(terms.size(), 0);
  for (std::size_t t = 0; t < terms.size(); ++t) {
    first.back() = terms[t].left;
    second.front() = terms[t].right;
    auto left = evaluate_omega_gamma(theory, g1, first);
    if (left.is_zero()) continue;
    auto right = evaluate_omega_gamma(theory, g2, second);
    if (right.is_zero()) continue;
    auto product = tensor(left, right);
    if (term_has_gamma) (*term_has_gamma)[t] = product.has_gamma() ? 1 : 0;
    product *= Rational(terms[t].coeff * sign);
    check.rhs += product;
  }
  check.passed = check.lhs == check.rhs;
  return check;
}

IdentityCheck check_forget_unit(const CohftGamma& theory, int g, std::span<const BasisVector> insertions) {
  std::vector<BasisVector> extended(insertions.begin(), insertions.end());
  extended.push_back(BasisVector::a());
  IdentityCheck check;
  check.lhs = evaluate_omega_gamma(theory, g, extended);
  check.rhs = pullback_forget_last(evaluate_omega_gamma(theory, g, insertions));
  check.passed = check.lhs == check.rhs;
  return check;
}

IdentityCheck check_unit_pairing(const CohftGamma& theory, BasisVector first, BasisVector second) {
  const std::vector<BasisVector> insertions{first, second, BasisVector::a()};
  IdentityCheck check;
  check.lhs = evaluate_omega_gamma(theory, 0, insertions);
  check.rhs = FormalClass::unit({0, 3}, Rational(theory.space().eta(first, second)));
  check.passed = check.lhs == check.rhs;
  return check;
}

bool check_axiom_i(const CohftGamma& theory, int g, std::span<const BasisVector> insertions, std::uint64_t seed,
                   std::size_t samples) {
  const auto n = insertions.size();
  SeededRng rng(mix_seed(seed, static_cast<std::uint64_t>(g), n));
  for (const auto& perm : symmetry_permutations(n, n <= 6, samples, rng)) {
    if (!check_symmetry(theory, g, insertions, perm).passed) return false;
  }
  return true;
}

bool check_axiom_ii_q(const CohftGamma& theory, int g, std::span<const BasisVector> insertions) {
  return check_gluing_q(theory, g, insertions).passed;
}

bool check_axiom_ii_r(const CohftGamma& theory, int g, std::span<const BasisVector> insertions,
                      const OneEdgeGraph& graph) {
  return check_gluing_r(theory, g, insertions, graph).passed;
}

bool check_axiom_iii(const CohftGamma& theory, int g, std::span<const BasisVector> insertions) {
  if (g == 0 && insertions.size() == 2) return check_unit_pairing(theory, insertions[0], insertions[1]).passed;
  return check_forget_unit(theory, g, insertions).passed;
}

namespace {

constexpr std::size_t kChunk = 64;

struct SweepSlice {
  int g;
  int n;
  const TupleSet* tuples;
  const std::vector<OneEdgeGraph>* graphs;
  std::size_t begin;
  std::size_t end;
};

void check_tuple(const CohftGamma& theory, const SweepBounds& bounds, const SweepSlice& slice, std::size_t index,
                 Tally& tally) {
  const int g = slice.g;
  const int n = slice.n;
  const auto& tuple = slice.tuples->tuples[index];
  SeededRng rng(mix_seed(bounds.seed, static_cast<std::uint64_t>(g), static_cast<std::uint64_t>(n), index + 1));
  std::uint64_t passed_i = 0;
  std::uint64_t passed_q = 0;
  std::uint64_t passed_r = 0;
  std::uint64_t passed_cases = 0;
  std::array<std::pair<const char*, std::uint64_t>, 4> case_counts{
      {{"case1", 0}, {"case2", 0}, {"case3", 0}, {"case4", 0}}};

  // (i): adjacent transpositions generate S_n, which suffices on a set closed
  // under permutations; sampled sets also get random permutations.
  const bool sampled = !slice.tuples->exhaustive;
  for (const auto& perm : symmetry_permutations(tuple.size(), false, sampled ? bounds.permutation_samples : 0, rng)) {
    auto check = check_symmetry(theory, g, tuple, perm);
    if (check.passed) {
      ++passed_i;
    } else {
      tally.fail(make_example("i", g, tuple, "", check));
    }
  }

  if (g >= 1) {
    auto check = check_gluing_q(theory, g, tuple);
    if (check.passed) {
      ++passed_q;
    } else {
      tally.fail(make_example("ii_q", g, tuple, "irr", check));
    }
  }

  std::vector<char> term_gamma;
  const auto& terms = theory.space().bivector();
  for (const auto& graph : select_graphs(*slice.graphs, g, tuple, bounds, rng)) {
    auto check = check_gluing_r(theory, g, tuple, graph, &term_gamma);
    if (check.passed) {
      ++passed_r;
    } else {
      tally.fail(make_example("ii_r", g, tuple, graph.describe(), check));
    }

    // Four-case consistency: a term carries gamma exactly when it is
    // classified, and the gamma parts of both sides agree.
    bool any_gamma = check.lhs.has_gamma();
    bool consistent = true;
    std::string detail;
    for (std::size_t t = 0; t < terms.size(); ++t) {
      const auto c = classify_correction_case(theory, graph, tuple, terms[t]);
      const bool classified = c.kind != CorrectionCase::Kind::None;
      if (classified) ++case_counts[static_cast<std::size_t>(c.kind) - 1].second;
      if (term_gamma[t]) any_gamma = true;
      if (classified != (term_gamma[t] != 0)) {
        consistent = false;
        detail += "term " + to_string(terms[t].left) + "⊗" + to_string(terms[t].right) + " classified " +
                  to_string(c) + " but gamma " + (term_gamma[t] ? "present" : "absent") + "; ";
      }
    }
    if (!any_gamma) continue;
    if (check.lhs.gamma_part() != check.rhs.gamma_part()) {
      consistent = false;
      detail += "gamma parts differ";
    }
    if (consistent) {
      ++passed_cases;
    } else {
      IdentityCheck shown{false, check.lhs.gamma_part(), check.rhs.gamma_part(), detail};
      tally.fail(make_example("four_case", g, tuple, graph.describe(), shown));
    }
  }

  auto check = check_forget_unit(theory, g, tuple);
  if (check.passed) {
    tally.pass("iii", g, n);
  } else {
    tally.fail(make_example("iii", g, tuple, "", check));
  }
  tally.pass("i", g, n, passed_i);
  if (g >= 1) tally.pass("ii_q", g, n, passed_q);
  if (passed_r) tally.pass("ii_r", g, n, passed_r);
  if (passed_cases) tally.pass("four_case", g, n, passed_cases);
  for (const auto& [name, count] : case_counts) {
    if (count) tally.count_case(name, count);
  }
}

VerificationReport verify_trivial(const FormalGamma& gamma, const SweepBounds& bounds) {
  VerificationReport report;
  report.kind = "cohft_axioms";
  report.gamma = GammaInfo{gamma.h(), gamma.m(), gamma.deg(), std::string(to_string(gamma.mode())), "trivial"};
  report.sweep = sweep_info(bounds);
  Tally& tally = report.tally;
  // One-dimensional state space spanned by the unit with eta = 1 and
  // bi-vector 1 (x) 1; every value is 1 times the unit class.
  const Rational eta(1);
  auto record = [&](const std::string& axiom, int g, int n, const std::string& graph, const Rational& lhs,
                    const Rational& rhs) {
    if (lhs == rhs) {
      tally.pass(axiom, g, n);
    } else {
      tally.fail({axiom, g, n, "(1^" + std::to_string(n) + ")", graph, to_string(lhs), to_string(rhs), ""});
    }
  };
  for (int g = 0; g <= bounds.g_max; ++g) {
    for (int n = 0; n <= bounds.n_max; ++n) {
      if (!is_stable(g, n)) continue;
      const Rational value = evaluate_trivial_cohft(g, n);
      record("i", g, n, "", value, value);
      if (g >= 1) record("ii_q", g, n, "irr", value, eta * evaluate_trivial_cohft(g - 1, n + 2));
      for (const auto& graph : separating_graphs(g, n)) {
        const Rational rhs = eta * evaluate_trivial_cohft(graph.vertex_genus(1), graph.vertex_leg_count(1) + 1) *
                             evaluate_trivial_cohft(graph.vertex_genus(2), graph.vertex_leg_count(2) + 1);
        record("ii_r", g, n, graph.describe(), value, rhs);
      }
      if (n + 1 <= bounds.n_max) {
        record("iii", g, n, "", evaluate_trivial_cohft(g, n + 1), value);
      } else {
        tally.untested("iii", g, n);
      }
    }
  }
  record("iii", 0, 2, "", evaluate_trivial_cohft(0, 3), eta);
  // H^*(M_{0,3}) is one-dimensional, so gamma is a multiple of Omega_{0,3}(1,1,1).
  report.facts["takes_value"] = !is_zero(evaluate_trivial_cohft(0, 3));
  return report;
}

}  // namespace

VerificationReport verify_theorem_1(const FormalGamma& gamma, const SweepBounds& bounds) {
  if (bounds.g_max < gamma.h()) throw ValidationError("sweep bound g_max must be >= h");
  if (bounds.n_max < gamma.m()) throw ValidationError("sweep bound n_max must be >= m");
  if (bounds.n_max > kMaxMarkings) throw ValidationError("sweep bound n_max too large");
  if (gamma.trivial_corner()) return verify_trivial(gamma, bounds);

  const CohftGamma theory(gamma);
  const auto& space = theory.space();

  // Work is laid out before any thread starts, so the task list and hence
  // the merged tally do not depend on the number of workers.
  std::vector<std::pair<int, int>> ranges;
  std::vector<TupleSet> tuple_sets;
  std::vector<std::vector<OneEdgeGraph>> graph_sets;
  for (int g = 0; g <= bounds.g_max; ++g) {
    for (int n = 0; n <= bounds.n_max; ++n) {
      if (!is_stable(g, n)) continue;
      ranges.emplace_back(g, n);
    }
  }
  tuple_sets.reserve(ranges.size());
  graph_sets.reserve(ranges.size());
  std::vector<SweepSlice> slices;
  for (std::size_t r = 0; r < ranges.size(); ++r) {
    const auto [g, n] = ranges[r];
    tuple_sets.push_back(make_tuple_set(space, g, n, bounds));
    graph_sets.push_back(separating_graphs(g, n));
    const auto count = tuple_sets.back().tuples.size();
    for (std::size_t begin = 0; begin < count; begin += kChunk) {
      slices.push_back({g, n, &tuple_sets.back(), &graph_sets.back(), begin, std::min(count, begin + kChunk)});
    }
  }

  VerificationReport report;
  report.kind = "cohft_axioms";
  report.gamma = GammaInfo{gamma.h(), gamma.m(), gamma.deg(), std::string(to_string(gamma.mode())), "correction"};
  report.sweep = sweep_info(bounds);
  report.tally = run_tasks(slices.size(), bounds.jobs, [&](std::size_t task, Tally& tally) {
    const auto& slice = slices[task];
    for (std::size_t i = slice.begin; i < slice.end; ++i) check_tuple(theory, bounds, slice, i, tally);
  });

  // Unit pairing on M_{0,3}.
  for (auto x : space.basis()) {
    for (auto y : space.basis()) {
      auto check = check_unit_pairing(theory, x, y);
      const std::vector<BasisVector> pair{x, y};
      if (check.passed) {
        report.tally.pass("iii", 0, 2);
      } else {
        report.tally.fail(make_example("iii", 0, pair, "", check));
      }
    }
  }

  const auto canonical = canonical_correction_tuple(gamma.m(), gamma.m());
  const std::vector<FormalClass> values{evaluate_omega_gamma(theory, gamma.h(), canonical)};
  std::vector<int> identity(static_cast<std::size_t>(gamma.m()));
  for (int j = 0; j < gamma.m(); ++j) identity[static_cast<std::size_t>(j)] = j + 1;
  FormalClass target = FormalClass::zero({gamma.h(), gamma.m()});
  target.add(Symbol::gamma(identity), Rational(1));
  report.facts["takes_value"] = check_takes_value(values, target);
  return report;
}

}  // namespace cohft
