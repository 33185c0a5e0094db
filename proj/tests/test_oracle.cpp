#include "test_support.hpp"

#include "qip/errors.hpp"
#include "qip/oracle.hpp"

#include <doctest.h>

using namespace qip;
using qip::testing::example1;
using qip::testing::example2;

namespace {
const auto E = Quantifier::Existential;
const auto A = Quantifier::Universal;
}

TEST_SUITE("oracle") {

TEST_CASE("example 1 root and prefix values") {
  const QipInstance q = example1();
  CHECK(oracle::minimax(q, Assignment(4)) == ExtValue::finite(Rational(2)));
  CHECK(oracle::minimax(q, Assignment::prefix(4, {0})).is_infinite());
  const auto pv = oracle::principal_variation(q);
  REQUIRE(pv);
  CHECK(pv->to_vector() == std::vector<int>{1, 0, 0, 0});
}

TEST_CASE("example 2 values") {
  const QipInstance q = example2();
  CHECK(oracle::minimax(q, Assignment(5)) == ExtValue::finite(Rational(4)));
  CHECK(oracle::minimax(q, Assignment::prefix(5, {0, 0})) == ExtValue::finite(Rational(0)));
  const auto pv = oracle::principal_variation(q);
  REQUIRE(pv);
  CHECK(pv->to_vector() == std::vector<int>{0, 1, 0, 0, 1});
}

TEST_CASE("tiny instances") {
  const QipInstance one({E}, {}, {}, {1});
  CHECK(oracle::minimax(one, Assignment(1)) == ExtValue::finite(Rational(0)));
  CHECK(oracle::principal_variation(one)->to_vector() == std::vector<int>{0});

  const QipInstance adv({A}, {}, {}, {1});
  CHECK(oracle::minimax(adv, Assignment(1)) == ExtValue::finite(Rational(1)));

  const QipInstance lose({A}, {{1}}, {0}, {0});
  CHECK(oracle::minimax(lose, Assignment(1)).is_infinite());
  CHECK_FALSE(oracle::optimal_strategy(lose));
  CHECK_FALSE(oracle::principal_variation(lose));
}

TEST_CASE("prefix length must not exceed n") {
  CHECK_THROWS_AS(oracle::minimax(example2(), Assignment(4)), PreconditionError);
}

TEST_CASE("strategy tree of example 1") {
  const auto tree = oracle::optimal_strategy(example1());
  REQUIRE(tree);
  const StrategyNode& root = **tree;
  CHECK(root.kind == StrategyNode::Kind::ExistentialChoice);
  CHECK(root.chosen == 1);
  CHECK(root.value == ExtValue::finite(Rational(2)));
  CHECK(oracle::count_leaves(root) == 4);
  oracle::for_each_leaf(root, [&](const StrategyNode& leaf) {
    CHECK(evaluate_game(example1(), leaf.leaf).is_finite());
    CHECK(leaf.leaf[0] == 1);
  });
}

}  // TEST_SUITE
