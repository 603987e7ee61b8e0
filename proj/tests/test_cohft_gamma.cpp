#include <gtest/gtest.h>

#include "cohft/cohft_gamma.hpp"
#include "cohft/topft.hpp"
#include "support.hpp"

namespace cohft {
namespace {

using testing::tuple_of;

LegMask mask_of(std::initializer_list<int> legs) {
  LegMask mask = 0;
  for (int leg : legs) mask |= LegMask{1} << (leg - 1);
  return mask;
}

FormalClass gamma_class(Space space, std::vector<int> keep, int coeff) {
  auto cls = FormalClass::zero(space);
  cls.add(Symbol::gamma(std::move(keep)), Rational(coeff));
  return cls;
}

CohftGamma theory(int h, int m, int deg, Mode mode = Mode::Graded) {
  return CohftGamma(FormalGamma::make(h, m, deg, mode));
}

std::vector<int> iota_keep(int m) {
  std::vector<int> keep(static_cast<std::size_t>(m));
  std::iota(keep.begin(), keep.end(), 1);
  return keep;
}

TEST(CohftGamma, EvaluationExamples) {
  const auto t11 = theory(1, 11, 11);
  const auto canonical = canonical_correction_tuple(11, 11);
  EXPECT_EQ(evaluate_omega_gamma(t11, 1, canonical), gamma_class({1, 11}, iota_keep(11), 1));
  auto swapped = canonical;
  std::swap(swapped[0], swapped[1]);
  auto keep = iota_keep(11);
  std::swap(keep[0], keep[1]);
  EXPECT_EQ(evaluate_omega_gamma(t11, 1, swapped), gamma_class({1, 11}, keep, -1));

  const auto t2 = theory(1, 2, 2);
  EXPECT_EQ(evaluate_omega_gamma(t2, 1, tuple_of("b1,a,b2")), gamma_class({1, 3}, {1, 3}, 1));
  EXPECT_TRUE(evaluate_omega_gamma(t2, 1, tuple_of("b1,c1")).is_zero());
  EXPECT_EQ(evaluate_omega_gamma(t2, 1, tuple_of("a,a")), FormalClass::unit({1, 2}, Rational(-2)));
  EXPECT_FALSE(evaluate_omega_gamma(t2, 2, tuple_of("b1,b2")).has_gamma());
  EXPECT_FALSE(evaluate_omega_gamma(t2, 1, tuple_of("b1,b1")).has_gamma());

  // m = 0: every all-a tuple in genus h carries gamma.
  const auto t0 = theory(2, 0, 2);
  EXPECT_EQ(evaluate_omega_gamma(t0, 2, tuple_of("a,a")), gamma_class({2, 2}, {}, 1));

  EXPECT_THROW(CohftGamma(FormalGamma::make(0, 3, 0, Mode::Graded)), DomainError);
  EXPECT_THROW(evaluate_omega_gamma(t2, 1, tuple_of("b3,a")), StructuralError);
  EXPECT_THROW(evaluate_omega_gamma(t2, 0, tuple_of("b1,b2")), DomainError);
}

TEST(CohftGamma, CorrectionSignInUngradedMode) {
  const auto t = theory(1, 2, 2, Mode::Ungraded);
  EXPECT_EQ(evaluate_omega_gamma(t, 1, tuple_of("b2,b1")), gamma_class({1, 2}, {2, 1}, 1));
}

// Topological projection, evenness and locality of the correction.
TEST(CohftGamma, CorrectionInvariants) {
  std::mt19937_64 rng(21);
  const std::vector<std::tuple<int, int, int, Mode>> battery{
      {1, 2, 2, Mode::Graded}, {1, 3, 3, Mode::Graded}, {0, 4, 2, Mode::Graded},
      {2, 2, 2, Mode::Graded}, {1, 1, 2, Mode::Ungraded}, {2, 0, 2, Mode::Graded}};
  for (const auto& [h, m, deg, mode] : battery) {
    const auto t = theory(h, m, deg, mode);
    const auto& space = t.space();
    for (int trial = 0; trial < 3000; ++trial) {
      const int g = h + trial % 2;
      const std::size_t n = static_cast<std::size_t>(std::max(m, 3)) + static_cast<std::size_t>(trial % 3);
      Tuple tuple = trial % 3 == 0 ? testing::random_tuple(space, n, rng) : canonical_correction_tuple(m, n);
      if (trial % 3 != 0) {
        tuple = permute(tuple, testing::random_permutation(n, rng));
        if (trial % 5 == 0) tuple[0] = space.basis()[rng() % space.dimension()];
      }
      const auto value = evaluate_omega_gamma(t, g, tuple);
      EXPECT_EQ(value.without_gamma(), FormalClass::unit({g, static_cast<int>(n)},
                                                         evaluate_topft_closed(space, g, tuple)));
      if (!value.has_gamma()) continue;
      EXPECT_EQ(g, h);
      int parity = 0;
      for (auto v : tuple) {
        EXPECT_TRUE(v.is_a() || v.is_b());
        parity += v.parity();
      }
      if (mode == Mode::Graded) EXPECT_EQ(parity % 2, deg % 2);
    }
  }
}

TEST(CohftGamma, ClassificationExamples) {
  const auto t = theory(1, 2, 2);
  const BivectorTerm a_d{BasisVector::a(), BasisVector::d(), 1};
  const BivectorTerm d_a{BasisVector::d(), BasisVector::a(), 1};
  const BivectorTerm b2_c2{BasisVector::b(2), BasisVector::c(2), -1};
  const BivectorTerm c2_b2{BasisVector::c(2), BasisVector::b(2), 1};

  const auto g1 = OneEdgeGraph::separating(1, mask_of({1, 2}), 0, mask_of({3, 4}), 4);
  EXPECT_EQ(classify_correction_case(t, g1, tuple_of("b1,b2,a,a"), a_d).kind, CorrectionCase::Kind::Case1);
  EXPECT_EQ(classify_correction_case(t, g1, tuple_of("b1,b2,a,a"), d_a).kind, CorrectionCase::Kind::None);

  const auto g2 = OneEdgeGraph::separating(1, mask_of({1}), 0, mask_of({2, 3}), 3);
  const auto case2 = classify_correction_case(t, g2, tuple_of("b1,b2,a"), b2_c2);
  EXPECT_EQ(case2.kind, CorrectionCase::Kind::Case2);
  EXPECT_EQ(case2.index, 2);
  EXPECT_EQ(to_string(case2), "case2(2)");

  const auto g3 = OneEdgeGraph::separating(0, mask_of({1, 2}), 1, mask_of({3, 4}), 4);
  EXPECT_EQ(classify_correction_case(t, g3, tuple_of("a,a,b1,b2"), d_a).kind, CorrectionCase::Kind::Case3);

  const auto g4 = OneEdgeGraph::separating(0, mask_of({1, 2}), 1, mask_of({3}), 3);
  const auto case4 = classify_correction_case(t, g4, tuple_of("b2,a,b1"), c2_b2);
  EXPECT_EQ(case4.kind, CorrectionCase::Kind::Case4);
  EXPECT_EQ(case4.index, 2);

  const auto t2 = theory(2, 2, 2);
  const auto both = OneEdgeGraph::separating(1, mask_of({1}), 1, mask_of({2}), 2);
  for (const auto& term : t2.space().bivector()) {
    EXPECT_EQ(classify_correction_case(t2, both, tuple_of("b1,b2"), term).kind, CorrectionCase::Kind::None);
  }
}

TEST(CohftGamma, AxiomChecksOnExamples) {
  const auto t = theory(1, 2, 2);
  const auto canonical = tuple_of("b1,b2,a,a");
  EXPECT_TRUE(check_axiom_i(t, 1, canonical));
  EXPECT_TRUE(check_axiom_ii_q(t, 1, canonical));
  EXPECT_TRUE(check_axiom_ii_q(t, 2, canonical));
  EXPECT_TRUE(check_axiom_ii_q(t, 3, tuple_of("a,a")));
  for (const auto& graph : enumerate_one_edge_graphs(1, 4)) {
    if (graph.is_separating()) EXPECT_TRUE(check_axiom_ii_r(t, 1, canonical, graph)) << graph.describe();
  }
  for (const auto& graph : enumerate_one_edge_graphs(1, 4)) {
    if (graph.is_separating()) EXPECT_TRUE(check_axiom_ii_r(t, 1, tuple_of("c1,b2,a,b1"), graph));
  }
  EXPECT_TRUE(check_axiom_iii(t, 1, canonical));
  EXPECT_TRUE(check_axiom_iii(t, 0, tuple_of("b1,c1")));
  EXPECT_TRUE(check_axiom_iii(t, 0, tuple_of("d,a")));

  const auto pairing = check_unit_pairing(t, BasisVector::b(1), BasisVector::c(1));
  EXPECT_TRUE(pairing.passed);
  EXPECT_EQ(pairing.lhs.unit_coefficient(), Rational(1));
  const auto gluing = check_gluing_r(t, 1, canonical, OneEdgeGraph::separating(1, mask_of({1, 2}), 0, mask_of({3, 4}), 4));
  EXPECT_TRUE(gluing.lhs.has_gamma());
  EXPECT_EQ(gluing.lhs, gluing.rhs);
}

// Gluing along r checked for random tuples and every separating graph.
TEST(CohftGamma, GluingAlongSeparatingNodeRandomized) {
  std::mt19937_64 rng(9);
  for (const auto& [h, m, deg] : std::vector<std::tuple<int, int, int>>{{1, 2, 2}, {1, 3, 3}, {2, 1, 1}}) {
    const auto t = theory(h, m, deg);
    for (int trial = 0; trial < 300; ++trial) {
      const int g = h + trial % 2;
      const std::size_t n = static_cast<std::size_t>(m) + 1 + static_cast<std::size_t>(trial % 2);
      auto tuple = permute(canonical_correction_tuple(m, n), testing::random_permutation(n, rng));
      for (const auto& graph : enumerate_one_edge_graphs(g, static_cast<int>(n))) {
        if (!graph.is_separating()) {
          EXPECT_TRUE(check_axiom_ii_q(t, g, tuple));
          continue;
        }
        const auto check = check_gluing_r(t, g, tuple, graph);
        EXPECT_TRUE(check.passed) << graph.describe() << " " << to_string(std::span<const BasisVector>(tuple)) << ": "
                                  << to_string(check.lhs) << " vs " << to_string(check.rhs);
      }
    }
  }
}

SweepBounds small_bounds(int g_max, int n_max) {
  SweepBounds bounds;
  bounds.g_max = g_max;
  bounds.n_max = n_max;
  bounds.n_exh = 4;
  bounds.sample_count = 300;
  bounds.jobs = 2;
  return bounds;
}

TEST(CohftGamma, SmallSweepPasses) {
  const auto report = verify_theorem_1(FormalGamma::make(1, 2, 2, Mode::Graded), small_bounds(2, 5));
  EXPECT_TRUE(report.passed()) << to_text(report);
  EXPECT_TRUE(report.facts.at("takes_value"));
  EXPECT_EQ(report.tally.totals().failed, 0u);
  // Separating graphs put the smaller genus first, so for h >= 1 the genus-0
  // vertex is always vertex 1.
  const auto& cases = report.tally.cases();
  EXPECT_GT(cases.count("case3") ? cases.at("case3") : 0, 0u);
  EXPECT_GT(cases.count("case4") ? cases.at("case4") : 0, 0u);
  EXPECT_EQ(cases.count("case1") + cases.count("case2"), 0u);

  const auto genus0 = verify_theorem_1(FormalGamma::make(0, 4, 2, Mode::Graded), small_bounds(1, 6));
  EXPECT_TRUE(genus0.passed());
  for (const char* name : {"case1", "case2", "case3", "case4"}) EXPECT_EQ(genus0.tally.cases().count(name), 1u) << name;
}

TEST(CohftGamma, TrivialCornerSweep) {
  const auto report = verify_theorem_1(FormalGamma::make(0, 3, 0, Mode::Graded), small_bounds(2, 6));
  EXPECT_TRUE(report.passed());
  ASSERT_TRUE(report.gamma.has_value());
  EXPECT_EQ(report.gamma->branch, "trivial");
}

TEST(CohftGamma, SweepBoundsValidated) {
  EXPECT_THROW(verify_theorem_1(FormalGamma::make(2, 2, 2, Mode::Graded), small_bounds(1, 5)), ValidationError);
  EXPECT_THROW(verify_theorem_1(FormalGamma::make(1, 4, 2, Mode::Graded), small_bounds(2, 3)), ValidationError);
}

TEST(CohftGamma, SweepIsDeterministicAcrossJobs) {
  auto bounds = small_bounds(2, 5);
  bounds.n_exh = 3;
  bounds.jobs = 1;
  const auto one = to_json(verify_theorem_1(FormalGamma::make(1, 3, 3, Mode::Graded), bounds));
  bounds.jobs = 3;
  const auto three = to_json(verify_theorem_1(FormalGamma::make(1, 3, 3, Mode::Graded), bounds));
  EXPECT_EQ(one, three);
}

}  // namespace
}  // namespace cohft
