#pragma once

// Verification reports: per (axiom, g, n) pass/fail/untested counts, the
// failing identities with full inputs, and serialization to JSON, CSV and text.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

namespace cohft {

struct Counterexample {
  std::string axiom;
  int g = 0;
  int n = 0;
  std::string insertions;
  std::string graph;
  std::string lhs;
  std::string rhs;
  std::string detail;

  friend bool operator==(const Counterexample&, const Counterexample&) = default;
};

struct CheckCounts {
  std::uint64_t passed = 0;
  std::uint64_t failed = 0;
  std::uint64_t untested = 0;

  CheckCounts& operator+=(const CheckCounts& other);
  friend bool operator==(const CheckCounts&, const CheckCounts&) = default;
};

/// Accumulates results of one worker. Merging in a fixed order gives the same
/// tally regardless of how work was scheduled.
class Tally {
 public:
  using Key = std::tuple<std::string, int, int>;  // axiom, g, n

  void pass(const std::string& axiom, int g, int n, std::uint64_t count = 1);
  void untested(const std::string& axiom, int g, int n, std::uint64_t count = 1);
  void fail(Counterexample example);
  void count_case(const std::string& name, std::uint64_t count = 1);

  void merge(Tally&& other);

  const std::map<Key, CheckCounts>& counts() const { return counts_; }
  const std::vector<Counterexample>& counterexamples() const { return examples_; }
  const std::map<std::string, std::uint64_t>& cases() const { return cases_; }
  CheckCounts totals() const;

  /// Counterexamples kept in full; the counts always include every failure.
  static constexpr std::size_t kMaxExamples = 100;

 private:
  std::map<Key, CheckCounts> counts_;
  std::vector<Counterexample> examples_;
  std::map<std::string, std::uint64_t> cases_;
};

struct GammaInfo {
  int h = 0;
  int m = 0;
  int deg = 0;
  std::string mode;
  std::string branch;  // "correction" or "trivial"
};

struct SweepInfo {
  int g_max = 0;
  int n_max = 0;
  int n_exh = 0;
  std::uint64_t seed = 0;
  std::uint64_t sample_count = 0;
};

struct VerificationReport {
  std::string kind;  // "cohft_axioms" or "deformation"
  std::optional<GammaInfo> gamma;
  SweepInfo sweep;
  Tally tally;
  /// Named boolean facts, e.g. takes_value, isotropic.
  std::map<std::string, bool> facts;

  bool passed() const;
};

std::string to_json(const VerificationReport& report);
std::string to_csv(const VerificationReport& report);
std::string to_text(const VerificationReport& report);

}  // namespace cohft
