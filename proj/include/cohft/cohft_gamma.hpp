#pragma once

// The CohFT Omega^gamma: the topological field theory omega^m plus the
// correction p*gamma on insertions that are a permutation of
// (b_1, .., b_m, a, .., a) in genus h, together with checkers for the CohFT
// axioms (i) symmetry, (ii) gluing along q and r, (iii) the unit.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cohft/formal_classes.hpp"
#include "cohft/report.hpp"
#include "cohft/stable_graphs.hpp"
#include "cohft/state_space.hpp"
#include "cohft/sweep.hpp"

namespace cohft {

class CohftGamma {
 public:
  /// The (0,3) corner is served by the trivial CohFT; constructing the
  /// correction theory for it throws DomainError.
  explicit CohftGamma(const FormalGamma& gamma);

  const FormalGamma& gamma() const { return gamma_; }
  const StateSpace& space() const { return space_; }
  int h() const { return gamma_.h(); }
  int m() const { return gamma_.m(); }

 private:
  FormalGamma gamma_;
  StateSpace space_;
};

/// Sign and keep-list of the correction term, or nullopt when the insertions
/// are not a permutation of (b_1..b_m, a..a) or g != h.
struct Correction {
  int sign = 1;
  std::vector<int> keep;
};
std::optional<Correction> correction_term(const CohftGamma& theory, int g, std::span<const BasisVector> insertions);

/// Omega^gamma_{g,n}(insertions) as a class on M_{g,n}.
FormalClass evaluate_omega_gamma(const CohftGamma& theory, int g, std::span<const BasisVector> insertions);
FormalClass evaluate_omega_gamma(const FormalGamma& gamma, int g, std::span<const BasisVector> insertions);

struct CorrectionCase {
  enum class Kind : std::uint8_t { None, Case1, Case2, Case3, Case4 };

  Kind kind = Kind::None;
  int index = 0;  // skipped b_i for Case2 and Case4

  friend bool operator==(const CorrectionCase&, const CorrectionCase&) = default;
};

std::string to_string(CorrectionCase c);

/// Which of the four gluing patterns carrying a gamma term the configuration
/// realizes:
///   Case1   (v_S1, a) is a correction tuple, factor 2 is (d, a..a) in genus 0;
///   Case2 i (v_S1, b_i) is a correction tuple, factor 2 is (c_i, b_i, a..a) in genus 0;
///   Case3   factor 1 is (a..a, d) in genus 0, (a, v_S2) is a correction tuple;
///   Case4 i factor 1 is (b_i, a.., c_i) in genus 0, (b_i, v_S2) is a correction tuple.
CorrectionCase classify_correction_case(const CohftGamma& theory, const OneEdgeGraph& graph,
                                        std::span<const BasisVector> insertions, const BivectorTerm& term);

/// Outcome of one identity check; sides are kept for counterexample reports.
struct IdentityCheck {
  bool passed = true;
  FormalClass lhs = FormalClass::zero({0, 0});
  FormalClass rhs = FormalClass::zero({0, 0});
  std::string detail;
};

/// Splits insertions along a separating graph: factor-1 legs ascending, then
/// factor-2 legs ascending, and returns the Koszul sign of that reordering.
int split_insertions(const StateSpace& space, const OneEdgeGraph& graph, std::span<const BasisVector> insertions,
                     std::vector<BasisVector>& first, std::vector<BasisVector>& second);

/// Permuted tuple result[i] = insertions[perm[i]].
std::vector<BasisVector> permute(std::span<const BasisVector> insertions, std::span<const std::size_t> perm);

// Single identities.
IdentityCheck check_symmetry(const CohftGamma& theory, int g, std::span<const BasisVector> insertions,
                             std::span<const std::size_t> perm);
IdentityCheck check_gluing_q(const CohftGamma& theory, int g, std::span<const BasisVector> insertions);
/// When term_has_gamma is given, entry t records whether bivector term t
/// contributes a gamma term to the right-hand side.
IdentityCheck check_gluing_r(const CohftGamma& theory, int g, std::span<const BasisVector> insertions,
                             const OneEdgeGraph& graph, std::vector<char>* term_has_gamma = nullptr);
IdentityCheck check_forget_unit(const CohftGamma& theory, int g, std::span<const BasisVector> insertions);
IdentityCheck check_unit_pairing(const CohftGamma& theory, BasisVector first, BasisVector second);

/// Every permutation for n <= 6; beyond that adjacent transpositions and
/// `samples` seeded random permutations.
bool check_axiom_i(const CohftGamma& theory, int g, std::span<const BasisVector> insertions,
                   std::uint64_t seed = 0, std::size_t samples = 64);
bool check_axiom_ii_q(const CohftGamma& theory, int g, std::span<const BasisVector> insertions);
bool check_axiom_ii_r(const CohftGamma& theory, int g, std::span<const BasisVector> insertions,
                      const OneEdgeGraph& graph);
/// Omega_{g,n+1}(v, a) = p*Omega_{g,n}(v); for (g,n) = (0,2) the unit
/// pairing Omega_{0,3}(v1, v2, a) = eta(v1, v2).
bool check_axiom_iii(const CohftGamma& theory, int g, std::span<const BasisVector> insertions);

/// Runs the four axiom checks over every stable (g,n) with g <= g_max and
/// n <= n_max, plus the four-case consistency of gamma terms under r* and
/// the takes-value fact. The (0,3) corner checks the trivial CohFT instead.
VerificationReport verify_theorem_1(const FormalGamma& gamma, const SweepBounds& bounds);

}  // namespace cohft
