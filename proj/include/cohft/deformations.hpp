#pragma once

// First-order deformations omega^m + eps*Lambda modulo eps^2: tables of
// Lambda values, the deformation axioms, isotropy, and extraction of the
// all-b entries, which must restrict to zero on every boundary divisor.

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cohft/cohft_gamma.hpp"
#include "cohft/formal_classes.hpp"
#include "cohft/report.hpp"
#include "cohft/state_space.hpp"
#include "cohft/sweep.hpp"

namespace cohft {

struct TableKey {
  int g = 0;
  Tuple insertions;
  friend auto operator<=>(const TableKey&, const TableKey&) = default;
};

/// Lambda_{g,n}(v) for explicitly declared keys, zero elsewhere. A table
/// may instead be generated from a FormalGamma as the correction
/// Omega^gamma - omega^m; declared entries then override the formula.
class DeformationTable {
 public:
  DeformationTable(int m, Mode mode);
  static DeformationTable correction_of(const FormalGamma& gamma);

  int m() const { return space_.m(); }
  Mode mode() const { return space_.mode(); }
  const StateSpace& space() const { return space_; }

  /// Genus carrying gamma symbols, when declared.
  std::optional<int> h() const { return h_; }
  std::optional<int> deg() const { return deg_; }
  void declare_gamma(int h, int deg);

  /// Declared bounds, or the largest (g, n) among the entries.
  int g_max() const;
  int n_max() const;
  void set_bounds(int g_max, int n_max);
  bool has_declared_bounds() const { return bounds_.has_value(); }

  /// Validates stability, insertion range and the shape of the value.
  void set(int g, Tuple insertions, FormalClass value);
  FormalClass value(int g, std::span<const BasisVector> insertions) const;

  const std::map<TableKey, FormalClass>& entries() const { return entries_; }
  const std::optional<FormalGamma>& generator() const { return generator_; }

 private:
  StateSpace space_;
  std::optional<int> h_;
  std::optional<int> deg_;
  std::optional<std::pair<int, int>> bounds_;
  std::optional<FormalGamma> generator_;
  std::optional<CohftGamma> theory_;
  std::map<TableKey, FormalClass> entries_;
};

/// JSON format:
///   { "m": 2, "mode": "graded", "h": 1, "deg": 2, "bounds": {"g_max": 3, "n_max": 5},
///     "generator": {"h": 1, "m": 2, "deg": 2},
///     "entries": [ {"g": 1, "n": 2, "insertions": ["b1","b2"],
///                   "value": {"unit": "0", "gamma": {"coeff": "1", "keep": [1,2]}}} ] }
/// Only m and entries are required; "gamma" may also be a list of terms.
DeformationTable parse_deformation_table(std::string_view json_text);
DeformationTable load_deformation_table(const std::string& path);
std::string to_json(const DeformationTable& table);

/// Axioms (i), (iiq), (iir) and (iii) for Lambda over the table range, with
/// omega^m as the base theory. Identities that would read entries beyond the
/// range are reported untested. Throws StructuralError if an entry lies
/// outside the bounds.
VerificationReport check_deformation_axioms(const DeformationTable& table, const SweepBounds& bounds);

/// Lambda vanishes on every key with a c_i or d insertion: declared
/// entries, and for generated tables the sweep tuples of the range.
bool check_isotropic(const DeformationTable& table, const SweepBounds& bounds);
bool check_isotropic(const DeformationTable& table);

struct MinimalCandidate {
  int g = 0;
  Tuple insertions;
  FormalClass value = FormalClass::zero({0, 0});
  /// Direct pullbacks along q and every r, and the axiom right-hand sides,
  /// all vanish.
  bool pullbacks_vanish = true;
  std::uint64_t graphs_checked = 0;
  std::string failure;
};

/// Nonzero entries whose insertions are all of type b. Generated tables
/// contribute every permutation of (b_1..b_m) when m! <= candidate_cap,
/// otherwise the canonical order plus candidate_samples seeded permutations.
std::vector<MinimalCandidate> extract_minimal_candidates(const DeformationTable& table, const SweepBounds& bounds,
                                                         std::size_t candidate_cap = 720,
                                                         std::size_t candidate_samples = 24);

/// Bounds for checking a table: its own range with sweep defaults.
SweepBounds table_bounds(const DeformationTable& table);

}  // namespace cohft
