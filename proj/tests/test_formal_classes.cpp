#include <gtest/gtest.h>

#include "cohft/formal_classes.hpp"
#include "support.hpp"

namespace cohft {
namespace {

FormalClass gamma_class(Space space, std::vector<int> keep, Rational coeff = Rational(1)) {
  auto cls = FormalClass::zero(space);
  cls.add(Symbol::gamma(std::move(keep)), coeff);
  return cls;
}

LegMask mask_of(std::initializer_list<int> legs) {
  LegMask mask = 0;
  for (int leg : legs) mask |= LegMask{1} << (leg - 1);
  return mask;
}

std::string message_of(int h, int m, int deg, Mode mode) {
  try {
    FormalGamma::make(h, m, deg, mode);
  } catch (const ValidationError& e) {
    return e.what();
  }
  return "";
}

TEST(FormalGamma, Validation) {
  EXPECT_NO_THROW(FormalGamma::make(1, 11, 11, Mode::Graded));
  EXPECT_NO_THROW(FormalGamma::make(2, 0, 2, Mode::Graded));
  EXPECT_NO_THROW(FormalGamma::make(1, 1, 2, Mode::Ungraded));
  EXPECT_TRUE(FormalGamma::make(0, 3, 0, Mode::Graded).trivial_corner());
  EXPECT_NE(message_of(1, 3, 2, Mode::Graded).find("parity condition violated"), std::string::npos);
  EXPECT_NE(message_of(1, 2, 3, Mode::Ungraded).find("even degree"), std::string::npos);
  EXPECT_NE(message_of(1, 0, 2, Mode::Graded).find("stability violated"), std::string::npos);
  EXPECT_NE(message_of(0, 2, 2, Mode::Graded).find("stability violated"), std::string::npos);
  EXPECT_FALSE(message_of(1, 2, 0, Mode::Graded).empty());
  EXPECT_FALSE(message_of(0, 3, 2, Mode::Graded).empty());
}

TEST(FormalClass, CanonicalFormAndArithmetic) {
  const Space space{1, 3};
  auto cls = FormalClass::unit(space, Rational(3));
  cls += gamma_class(space, {1, 2}, Rational(2));
  cls -= gamma_class(space, {1, 2}, Rational(2));
  EXPECT_EQ(cls, FormalClass::unit(space, Rational(3)));
  EXPECT_FALSE(cls.has_gamma());
  EXPECT_TRUE((cls - cls).is_zero());
  EXPECT_EQ(to_string(FormalClass::zero(space)), "0");
  EXPECT_EQ(to_string(FormalClass::unit(space, Rational(-4))), "-4");
  EXPECT_EQ(to_string(gamma_class(space, {1, 2, 3})), "1·γ");
  EXPECT_THROW(cls += FormalClass::zero({2, 3}), StructuralError);
  const auto mixed = FormalClass::unit(space, Rational(1)) + gamma_class(space, {2, 3}, Rational(-1));
  EXPECT_EQ(mixed.gamma_part(), gamma_class(space, {2, 3}, Rational(-1)));
  EXPECT_EQ(mixed.without_gamma(), FormalClass::unit(space, Rational(1)));
  EXPECT_EQ(mixed.unit_coefficient(), Rational(1));
}

TEST(FormalClass, PullbackAlongIrreducible) {
  const Space space{2, 3};
  const auto irr = OneEdgeGraph::irreducible(2, 3);
  EXPECT_EQ(pullback_gamma_q(FormalClass::unit(space, Rational(1)), irr), FormalClass::unit({1, 5}, Rational(1)));
  EXPECT_TRUE(pullback_gamma_q(gamma_class(space, {1, 2}), irr).is_zero());
  const auto sum = FormalClass::unit(space, Rational(3)) + gamma_class(space, {1, 2}, Rational(2));
  EXPECT_EQ(pullback_gamma_q(sum, irr), FormalClass::unit({1, 5}, Rational(3)));
  EXPECT_THROW(pullback_gamma_q(FormalClass::unit({1, 3}, Rational(1)), irr), StructuralError);
}

TEST(FormalClass, PullbackAlongSeparating) {
  const Space space{1, 4};
  const auto graph = OneEdgeGraph::separating(0, mask_of({1, 2}), 1, mask_of({3, 4}), 4);
  const auto unit = pullback_gamma_r(FormalClass::unit(space, Rational(1)), graph);
  ASSERT_EQ(unit.factor_count(), 2);
  EXPECT_EQ(unit.space(0), (Space{0, 3}));
  EXPECT_EQ(unit.space(1), (Space{1, 3}));
  EXPECT_EQ(unit.unit_coefficient(), Rational(1));

  // Gamma retaining the legs on the genus-h vertex survives as 1 (x) gamma.
  const auto onto = pullback_gamma_r(gamma_class(space, {3, 4}), graph);
  auto expected = FormalClass::zero({0, 3}, {1, 3});
  expected.add(Symbol::unit(), Symbol::gamma({2, 3}), Rational(1));
  EXPECT_EQ(onto, expected);

  // Gamma on M_{2,4} with both genera positive vanishes.
  const auto split = OneEdgeGraph::separating(1, mask_of({1, 2}), 1, mask_of({3, 4}), 4);
  EXPECT_TRUE(pullback_gamma_r(gamma_class({2, 4}, {1, 3}), split).is_zero());
}

TEST(FormalClass, PullbacksAreLinear) {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> coeff(-5, 5);
  const Space space{1, 5};
  const auto graphs = enumerate_one_edge_graphs(1, 5);
  for (int trial = 0; trial < 200; ++trial) {
    const auto perm1 = testing::random_permutation(5, rng);
    const auto perm2 = testing::random_permutation(5, rng);
    const auto x = FormalClass::unit(space, Rational(coeff(rng))) +
                   gamma_class(space, {static_cast<int>(perm1[0]) + 1, static_cast<int>(perm1[1]) + 1},
                               Rational(coeff(rng)));
    const auto y = gamma_class(space, {static_cast<int>(perm2[0]) + 1, static_cast<int>(perm2[1]) + 1},
                               Rational(coeff(rng)));
    const Rational s(coeff(rng));
    for (const auto& graph : graphs) {
      if (graph.is_separating()) {
        EXPECT_EQ(pullback_gamma_r(x + s * y, graph), pullback_gamma_r(x, graph) + s * pullback_gamma_r(y, graph));
      } else {
        EXPECT_EQ(pullback_gamma_q(x + s * y, graph), pullback_gamma_q(x, graph) + s * pullback_gamma_q(y, graph));
      }
    }
  }
}

TEST(FormalClass, ForgetAndRelabel) {
  const auto cls = FormalClass::unit({1, 3}, Rational(2)) + gamma_class({1, 3}, {3, 1});
  const auto forgotten = pullback_forget_last(cls);
  EXPECT_EQ(forgotten, FormalClass::unit({1, 4}, Rational(2)) + gamma_class({1, 4}, {3, 1}));
  // result[i] = input[perm[i]]: marking 3 moves to position 1, marking 1 to position 2.
  const std::vector<std::size_t> perm{2, 0, 1};
  EXPECT_EQ(relabel(cls, perm), FormalClass::unit({1, 3}, Rational(2)) + gamma_class({1, 3}, {1, 2}));
}

TEST(FormalClass, TakesValue) {
  const Space target_space{1, 2};
  const auto target = gamma_class(target_space, {1, 2});
  std::vector<FormalClass> values{FormalClass::unit(target_space, Rational(3)), target};
  EXPECT_TRUE(check_takes_value(values, target));
  std::vector<FormalClass> units{FormalClass::unit(target_space, Rational(1))};
  EXPECT_FALSE(check_takes_value(units, target));
  std::vector<FormalClass> negated{gamma_class(target_space, {1, 2}, Rational(-1))};
  EXPECT_TRUE(check_takes_value(negated, target));
  std::vector<FormalClass> elsewhere{gamma_class({1, 3}, {1, 2})};
  EXPECT_FALSE(check_takes_value(elsewhere, target));
  // In the span only through a combination.
  std::vector<FormalClass> combo{FormalClass::unit(target_space, Rational(1)) + target,
                                 FormalClass::unit(target_space, Rational(1))};
  EXPECT_TRUE(check_takes_value(combo, target));
}

}  // namespace
}  // namespace cohft
