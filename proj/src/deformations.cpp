#include "cohft/deformations.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <sstream>

#include <json.hpp>

#include "cohft/topft.hpp"

namespace cohft {

DeformationTable::DeformationTable(int m, Mode mode) : space_(m, mode) {}

DeformationTable DeformationTable::correction_of(const FormalGamma& gamma) {
  DeformationTable table(gamma.m(), gamma.mode());
  table.declare_gamma(gamma.h(), gamma.deg());
  table.set_bounds(gamma.h() + 2, gamma.m() + 3);
  table.generator_ = gamma;
  table.theory_.emplace(gamma);
  return table;
}

void DeformationTable::declare_gamma(int h, int deg) {
  if (h < 0) throw StructuralError("declared h must be nonnegative");
  h_ = h;
  deg_ = deg;
}

void DeformationTable::set_bounds(int g_max, int n_max) {
  if (g_max < 0 || n_max < 0 || n_max > kMaxMarkings) {
    throw StructuralError("table bounds out of range: g_max=" + std::to_string(g_max) +
                          ", n_max=" + std::to_string(n_max));
  }
  bounds_ = std::make_pair(g_max, n_max);
}

int DeformationTable::g_max() const {
  if (bounds_) return bounds_->first;
  int out = 0;
  for (const auto& [key, value] : entries_) out = std::max(out, key.g);
  return out;
}

int DeformationTable::n_max() const {
  if (bounds_) return bounds_->second;
  int out = 0;
  for (const auto& [key, value] : entries_) out = std::max(out, static_cast<int>(key.insertions.size()));
  return out;
}

void DeformationTable::set(int g, Tuple insertions, FormalClass value) {
  const int n = static_cast<int>(insertions.size());
  if (!is_stable(g, n)) {
    throw StructuralError("table key (g,n)=(" + std::to_string(g) + "," + std::to_string(n) + ") is unstable");
  }
  for (auto v : insertions) space_.require(v);
  if (value.factor_count() != 1 || value.space() != Space{g, n}) {
    throw StructuralError("table value for " + to_string(std::span<const BasisVector>(insertions)) +
                          " does not live on M_{" + std::to_string(g) + "," + std::to_string(n) + "}");
  }
  for (const auto& term : value.terms()) {
    if (!term.first.is_gamma()) continue;
    const auto& keep = term.first.keep;
    if (static_cast<int>(keep.size()) != m()) {
      throw StructuralError("gamma keep-list must have m=" + std::to_string(m()) + " entries");
    }
    if (h_ && g != *h_) throw StructuralError("gamma terms are only allowed in genus h=" + std::to_string(*h_));
    std::vector<int> sorted = keep;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end() || (!sorted.empty() && sorted.front() < 1) ||
        (!sorted.empty() && sorted.back() > n)) {
      throw StructuralError("gamma keep-list must hold distinct markings in 1..n");
    }
  }
  entries_.insert_or_assign(TableKey{g, std::move(insertions)}, std::move(value));
}

FormalClass DeformationTable::value(int g, std::span<const BasisVector> insertions) const {
  const int n = static_cast<int>(insertions.size());
  require_stable(g, n);
  for (auto v : insertions) space_.require(v);
  if (!entries_.empty()) {
    auto it = entries_.find(TableKey{g, Tuple(insertions.begin(), insertions.end())});
    if (it != entries_.end()) return it->second;
  }
  FormalClass out = FormalClass::zero({g, n});
  if (theory_) {
    if (auto correction = correction_term(*theory_, g, insertions)) {
      out.add(Symbol::gamma(std::move(correction->keep)), Rational(Integer(correction->sign)));
    }
  }
  return out;
}

namespace {

using nlohmann::json;

FormalClass parse_value(const json& node, int g, int n) {
  FormalClass out = FormalClass::zero({g, n});
  if (!node.is_object()) throw StructuralError("entry value must be an object");
  auto rational_of = [](const json& field) {
    if (field.is_string()) return parse_rational(field.get<std::string>());
    if (field.is_number_integer()) return Rational(Integer(field.get<std::int64_t>()));
    throw StructuralError("coefficients must be strings \"p/q\" or integers");
  };
  if (node.contains("unit")) out.add(Symbol::unit(), rational_of(node.at("unit")));
  if (node.contains("gamma")) {
    const json& gamma = node.at("gamma");
    const json terms = gamma.is_array() ? gamma : json::array({gamma});
    for (const auto& term : terms) {
      if (!term.is_object() || !term.contains("keep")) throw StructuralError("gamma term needs a keep list");
      auto keep = term.at("keep").get<std::vector<int>>();
      Rational coeff = term.contains("coeff") ? rational_of(term.at("coeff")) : Rational(1);
      out.add(Symbol::gamma(std::move(keep)), coeff);
    }
  }
  return out;
}

json value_to_json(const FormalClass& value) {
  json out = json::object();
  out["unit"] = to_string(value.unit_coefficient());
  json gammas = json::array();
  for (const auto& term : value.terms()) {
    if (term.first.is_gamma()) gammas.push_back({{"coeff", to_string(term.coeff)}, {"keep", term.first.keep}});
  }
  if (gammas.size() == 1) {
    out["gamma"] = gammas.front();
  } else if (!gammas.empty()) {
    out["gamma"] = gammas;
  }
  return out;
}

}  // namespace

DeformationTable parse_deformation_table(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw StructuralError(std::string("table is not valid JSON: ") + e.what());
  }
  try {
    if (!doc.is_object() || !doc.contains("m")) throw StructuralError("table needs a top-level \"m\"");
    const int m = doc.at("m").get<int>();
    const Mode mode = doc.contains("mode") ? parse_mode(doc.at("mode").get<std::string>()) : Mode::Graded;
    DeformationTable table(m, mode);
    if (doc.contains("generator")) {
      const auto& gen = doc.at("generator");
      const auto gamma = FormalGamma::make(gen.at("h").get<int>(), gen.value("m", m), gen.at("deg").get<int>(), mode);
      if (gamma.m() != m) throw StructuralError("generator m differs from table m");
      table = DeformationTable::correction_of(gamma);
    }
    if (doc.contains("h")) table.declare_gamma(doc.at("h").get<int>(), doc.value("deg", 0));
    if (doc.contains("bounds")) {
      table.set_bounds(doc.at("bounds").at("g_max").get<int>(), doc.at("bounds").at("n_max").get<int>());
    }
    if (!doc.contains("entries") || !doc.at("entries").is_array()) {
      throw StructuralError("deformation table needs an \"entries\" array");
    }
    for (const auto& entry : doc.at("entries")) {
      const int g = entry.at("g").get<int>();
      Tuple insertions;
      for (const auto& token : entry.at("insertions")) insertions.push_back(parse_basis_vector(token.get<std::string>()));
      const int n = static_cast<int>(insertions.size());
      if (entry.contains("n") && entry.at("n").get<int>() != n) {
        throw StructuralError("entry n=" + std::to_string(entry.at("n").get<int>()) + " but " + std::to_string(n) +
                              " insertions");
      }
      table.set(g, std::move(insertions), parse_value(entry.at("value"), g, n));
    }
    return table;
  } catch (const json::exception& e) {
    throw StructuralError(std::string("malformed table: ") + e.what());
  }
}

DeformationTable load_deformation_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::ios_base::failure("cannot read " + path);
  std::ostringstream text;
  text << in.rdbuf();
  return parse_deformation_table(text.str());
}

std::string to_json(const DeformationTable& table) {
  nlohmann::ordered_json out;
  out["m"] = table.m();
  out["mode"] = std::string(to_string(table.mode()));
  if (table.h()) {
    out["h"] = *table.h();
    out["deg"] = table.deg().value_or(0);
  }
  out["bounds"] = {{"g_max", table.g_max()}, {"n_max", table.n_max()}};
  if (const auto& gen = table.generator()) out["generator"] = {{"h", gen->h()}, {"m", gen->m()}, {"deg", gen->deg()}};
  auto entries = nlohmann::ordered_json::array();
  for (const auto& [key, value] : table.entries()) {
    std::vector<std::string> tokens;
    for (auto v : key.insertions) tokens.push_back(to_string(v));
    entries.push_back({{"g", key.g},
                       {"n", key.insertions.size()},
                       {"insertions", tokens},
                       {"value", value_to_json(value)}});
  }
  out["entries"] = std::move(entries);
  return out.dump(2) + "\n";
}

SweepBounds table_bounds(const DeformationTable& table) {
  SweepBounds bounds;
  bounds.g_max = table.g_max();
  bounds.n_max = table.n_max();
  return bounds;
}

namespace {

constexpr std::size_t kChunk = 64;

Counterexample example(const std::string& axiom, int g, std::span<const BasisVector> insertions,
                       const std::string& graph, const FormalClass& lhs, const FormalClass& rhs,
                       std::string detail = {}) {
  return {axiom, g, static_cast<int>(insertions.size()), to_string(insertions), graph, to_string(lhs),
          to_string(rhs), std::move(detail)};
}

FormalClass unit_class(Space space, std::int64_t value) {
  return FormalClass::unit(space, Rational(Integer(value)));
}

/// Right-hand side of (iir): eps * sum coeff [omega(v1,l) (x) Lambda(r,v2) + Lambda(v1,l) (x) omega(r,v2)].
FormalClass gluing_r_rhs(const DeformationTable& table, const OneEdgeGraph& graph,
                         std::span<const BasisVector> insertions) {
  const auto& space = table.space();
  std::vector<BasisVector> first;
  std::vector<BasisVector> second;
  const int sign = split_insertions(space, graph, insertions, first, second);
  const int g1 = graph.vertex_genus(1);
  const int g2 = graph.vertex_genus(2);
  const Space s1{g1, static_cast<int>(first.size()) + 1};
  const Space s2{g2, static_cast<int>(second.size()) + 1};
  first.push_back(BasisVector::a());
  second.insert(second.begin(), BasisVector::a());
  FormalClass rhs = FormalClass::zero(s1, s2);
  for (const auto& term : space.bivector()) {
    first.back() = term.left;
    second.front() = term.right;
    const Rational factor(Integer(term.coeff * sign));
    if (const auto w1 = detail::topft_value(space, g1, first); w1 != 0) {
      auto lambda2 = table.value(g2, second);
      if (!lambda2.is_zero()) rhs += factor * tensor(unit_class(s1, w1), lambda2);
    }
    if (const auto w2 = detail::topft_value(space, g2, second); w2 != 0) {
      auto lambda1 = table.value(g1, first);
      if (!lambda1.is_zero()) rhs += factor * tensor(lambda1, unit_class(s2, w2));
    }
  }
  return rhs;
}

/// Right-hand side of (iiq): sum coeff Lambda_{g-1,n+2}(v, l, r).
FormalClass gluing_q_rhs(const DeformationTable& table, int g, std::span<const BasisVector> insertions) {
  const int n = static_cast<int>(insertions.size());
  FormalClass rhs = FormalClass::zero({g - 1, n + 2});
  std::vector<BasisVector> extended(insertions.begin(), insertions.end());
  extended.resize(insertions.size() + 2);
  for (const auto& term : table.space().bivector()) {
    extended[insertions.size()] = term.left;
    extended[insertions.size() + 1] = term.right;
    auto value = table.value(g - 1, extended);
    if (!value.is_zero()) rhs += Rational(term.coeff) * value;
  }
  return rhs;
}

std::vector<Tuple> forced_tuples(const DeformationTable& table, int g, int n) {
  std::vector<Tuple> out;
  for (const auto& [key, value] : table.entries()) {
    if (key.g == g && static_cast<int>(key.insertions.size()) == n) out.push_back(key.insertions);
  }
  return out;
}

struct Slice {
  int g;
  int n;
  const TupleSet* tuples;
  const std::vector<OneEdgeGraph>* graphs;
  std::size_t begin;
  std::size_t end;
};

void check_tuple(const DeformationTable& table, const SweepBounds& bounds, const Slice& slice, std::size_t index,
                 Tally& tally) {
  const int g = slice.g;
  const int n = slice.n;
  const auto& tuple = slice.tuples->tuples[index];
  const auto& space = table.space();
  SeededRng rng(mix_seed(bounds.seed, static_cast<std::uint64_t>(g), static_cast<std::uint64_t>(n), index + 1));
  const FormalClass base = table.value(g, tuple);

  std::vector<int> parities;
  for (auto v : tuple) parities.push_back(space.parity(v));
  std::uint64_t passed_i = 0;
  const bool sampled = !slice.tuples->exhaustive;
  for (const auto& perm : symmetry_permutations(tuple.size(), false, sampled ? bounds.permutation_samples : 0, rng)) {
    const auto permuted = permute(tuple, perm);
    auto lhs = table.value(g, permuted);
    auto rhs = Rational(koszul_sign(perm, parities)) * relabel(base, perm);
    if (lhs == rhs) {
      ++passed_i;
    } else {
      tally.fail(example("i", g, tuple, "", lhs, rhs, "permuted tuple " + to_string(std::span<const BasisVector>(permuted))));
    }
  }
  tally.pass("i", g, n, passed_i);

  if (g >= 1) {
    if (n + 2 <= bounds.n_max) {
      auto lhs = pullback_gamma_q(base, OneEdgeGraph::irreducible(g, n));
      auto rhs = gluing_q_rhs(table, g, tuple);
      if (lhs == rhs) {
        tally.pass("iiq", g, n);
      } else {
        tally.fail(example("iiq", g, tuple, "irr", lhs, rhs));
      }
    } else {
      tally.untested("iiq", g, n);
    }
  }

  std::uint64_t passed_r = 0;
  for (const auto& graph : select_graphs(*slice.graphs, g, tuple, bounds, rng)) {
    auto lhs = pullback_gamma_r(base, graph);
    auto rhs = gluing_r_rhs(table, graph, tuple);
    if (lhs == rhs) {
      ++passed_r;
    } else {
      tally.fail(example("iir", g, tuple, graph.describe(), lhs, rhs));
    }
  }
  if (passed_r) tally.pass("iir", g, n, passed_r);

  if (n + 1 <= bounds.n_max) {
    Tuple extended = tuple;
    extended.push_back(BasisVector::a());
    auto lhs = table.value(g, extended);
    auto rhs = pullback_forget_last(base);
    if (lhs == rhs) {
      tally.pass("iii", g, n);
    } else {
      tally.fail(example("iii", g, tuple, "", lhs, rhs));
    }
  } else {
    tally.untested("iii", g, n);
  }
}

void check_entry_bounds(const DeformationTable& table, const SweepBounds& bounds) {
  for (const auto& [key, value] : table.entries()) {
    const int n = static_cast<int>(key.insertions.size());
    if (key.g > bounds.g_max || n > bounds.n_max) {
      throw StructuralError("table entry at (g,n)=(" + std::to_string(key.g) + "," + std::to_string(n) +
                            ") lies outside the bounds g_max=" + std::to_string(bounds.g_max) +
                            ", n_max=" + std::to_string(bounds.n_max));
    }
  }
}

bool has_isotropic_violation_slot(std::span<const BasisVector> tuple) {
  return std::any_of(tuple.begin(), tuple.end(), [](BasisVector v) { return v.is_c() || v.is_d(); });
}

}  // namespace

VerificationReport check_deformation_axioms(const DeformationTable& table, const SweepBounds& bounds) {
  check_entry_bounds(table, bounds);
  const auto& space = table.space();

  std::vector<std::pair<int, int>> ranges;
  for (int g = 0; g <= bounds.g_max; ++g) {
    for (int n = 0; n <= bounds.n_max; ++n) {
      if (is_stable(g, n)) ranges.emplace_back(g, n);
    }
  }
  std::vector<TupleSet> tuple_sets;
  std::vector<std::vector<OneEdgeGraph>> graph_sets;
  tuple_sets.reserve(ranges.size());
  graph_sets.reserve(ranges.size());
  std::vector<Slice> slices;
  for (const auto& [g, n] : ranges) {
    const auto forced = forced_tuples(table, g, n);
    tuple_sets.push_back(make_tuple_set(space, g, n, bounds, forced));
    graph_sets.push_back(separating_graphs(g, n));
    const auto count = tuple_sets.back().tuples.size();
    for (std::size_t begin = 0; begin < count; begin += kChunk) {
      slices.push_back({g, n, &tuple_sets.back(), &graph_sets.back(), begin, std::min(count, begin + kChunk)});
    }
  }

  VerificationReport report;
  report.kind = "deformation";
  if (table.h()) {
    report.gamma = GammaInfo{*table.h(), table.m(), table.deg().value_or(0), std::string(to_string(table.mode())),
                             table.generator() ? "correction" : "table"};
  }
  report.sweep = sweep_info(bounds);
  report.tally = run_tasks(slices.size(), bounds.jobs, [&](std::size_t task, Tally& tally) {
    const auto& slice = slices[task];
    for (std::size_t i = slice.begin; i < slice.end; ++i) check_tuple(table, bounds, slice, i, tally);
  });

  // Lambda_{0,3}(v1, v2, a) = 0: the deformation keeps the pairing.
  if (bounds.n_max >= 3) {
    for (auto x : space.basis()) {
      for (auto y : space.basis()) {
        const Tuple triple{x, y, BasisVector::a()};
        auto value = table.value(0, triple);
        if (value.is_zero()) {
          report.tally.pass("iii", 0, 2);
        } else {
          report.tally.fail(example("iii", 0, triple, "", value, FormalClass::zero({0, 3}), "Lambda_{0,3} must vanish"));
        }
      }
    }
  }
  return report;
}

bool check_isotropic(const DeformationTable& table, const SweepBounds& bounds) {
  for (const auto& [key, value] : table.entries()) {
    if (has_isotropic_violation_slot(key.insertions) && !value.is_zero()) return false;
  }
  if (!table.generator()) return true;
  for (int g = 0; g <= bounds.g_max; ++g) {
    for (int n = 1; n <= bounds.n_max; ++n) {
      if (!is_stable(g, n)) continue;
      for (const auto& tuple : make_tuple_set(table.space(), g, n, bounds).tuples) {
        if (has_isotropic_violation_slot(tuple) && !table.value(g, tuple).is_zero()) return false;
      }
    }
  }
  return true;
}

bool check_isotropic(const DeformationTable& table) { return check_isotropic(table, table_bounds(table)); }

std::vector<MinimalCandidate> extract_minimal_candidates(const DeformationTable& table, const SweepBounds& bounds,
                                                         std::size_t candidate_cap, std::size_t candidate_samples) {
  std::vector<TableKey> keys;
  // With m = 0 the only all-b tuple is the empty one.
  auto all_b = [&](const Tuple& t) {
    if (t.empty()) return table.m() == 0;
    return std::all_of(t.begin(), t.end(), [](BasisVector v) { return v.is_b(); });
  };
  for (const auto& [key, value] : table.entries()) {
    if (all_b(key.insertions)) keys.push_back(key);
  }
  if (const auto& gen = table.generator()) {
    const auto m = static_cast<std::size_t>(gen->m());
    Tuple canonical = canonical_correction_tuple(gen->m(), gen->m());
    std::uint64_t factorial = 1;
    for (std::size_t i = 2; i <= m && factorial <= candidate_cap; ++i) factorial *= i;
    if (factorial <= candidate_cap) {
      Tuple perm = canonical;
      do {
        keys.push_back({gen->h(), perm});
      } while (std::next_permutation(perm.begin(), perm.end()));
    } else {
      keys.push_back({gen->h(), canonical});
      SeededRng rng(mix_seed(bounds.seed, static_cast<std::uint64_t>(gen->h()), m, 0x6d696eULL));
      for (std::size_t s = 0; s < candidate_samples; ++s) {
        Tuple perm = canonical;
        for (std::size_t i = m; i > 1; --i) std::swap(perm[i - 1], perm[rng.below(i)]);
        keys.push_back({gen->h(), std::move(perm)});
      }
    }
  }
  std::sort(keys.begin(), keys.end());
  keys.erase(std::unique(keys.begin(), keys.end()), keys.end());

  std::vector<MinimalCandidate> out;
  for (const auto& key : keys) {
    const int g = key.g;
    const int n = static_cast<int>(key.insertions.size());
    MinimalCandidate candidate;
    candidate.g = g;
    candidate.insertions = key.insertions;
    candidate.value = table.value(g, key.insertions);
    if (candidate.value.is_zero()) continue;
    auto note = [&](const std::string& what) {
      if (candidate.pullbacks_vanish) candidate.failure = what;
      candidate.pullbacks_vanish = false;
    };
    for (const auto& graph : enumerate_one_edge_graphs(g, n)) {
      ++candidate.graphs_checked;
      if (!graph.is_separating()) {
        if (!pullback_gamma_q(candidate.value, graph).is_zero()) note("q* nonzero");
        if (n + 2 <= bounds.n_max && !gluing_q_rhs(table, g, key.insertions).is_zero()) {
          note("(iiq) right-hand side nonzero");
        }
        continue;
      }
      if (!pullback_gamma_r(candidate.value, graph).is_zero()) note("r* nonzero on " + graph.describe());
      if (!gluing_r_rhs(table, graph, key.insertions).is_zero()) {
        note("(iir) right-hand side nonzero on " + graph.describe());
      }
    }
    out.push_back(std::move(candidate));
  }
  return out;
}

}  // namespace cohft
