#include "test_support.hpp"

#include "qip/errors.hpp"
#include "qip/oracle.hpp"
#include "qip/scp.hpp"

#include <doctest.h>

using namespace qip;
using qip::testing::example1;
using qip::testing::example2;

namespace {

RecycleContext oracle_context(const QipInstance& q, const Assignment& x) {
  RecycleContext ctx;
  ctx.existential_value = [&q, x](std::size_t k) -> std::optional<ExtValue> {
    std::vector<int> head = x.to_vector();
    head.resize(k);
    return oracle::minimax(q, Assignment::prefix(q.num_vars(), head));
  };
  return ctx;
}

}  // namespace

TEST_SUITE("scp") {

TEST_CASE("example 2 at x4") {
  const QipInstance q = example2();
  const Assignment x = Assignment::total({0, 1, 0, 0, 1});
  const ObjectiveCheck c1 = scp_objective_ok(q, x, 3);
  CHECK(c1.ok);
  CHECK(c1.lhs == -2);
  CHECK(scp_copied_value(q, x, 3) == 2);
  const ConstraintCheck c2 = scp_constraints_ok(q, x, 3);
  CHECK(c2.ok);
  REQUIRE(c2.lhs.size() == 2);
  CHECK(c2.lhs[0] == 1);
  CHECK(c2.lhs[1] == 1);
}

TEST_CASE("example 2 at x2") {
  const QipInstance q = example2();
  const Assignment x = Assignment::total({0, 1, 0, 0, 1});
  const ObjectiveCheck c1 = scp_objective_ok(q, x, 1);
  CHECK(c1.ok);
  CHECK(c1.lhs == -3);
  CHECK(scp_copied_value(q, x, 1) == 1);
  const ConstraintCheck c2 = scp_constraints_ok(q, x, 1);
  CHECK(c2.ok);
  CHECK(c2.lhs[0] == 2);
  CHECK(c2.lhs[1] == -1);
  CHECK_FALSE(c2.first_violated);
}

TEST_CASE("violated row is reported") {
  const QipInstance q({Quantifier::Universal, Quantifier::Existential}, {{1, 1}, {-1, -1}},
                      {1, -1}, {0, 0});
  const ConstraintCheck c = scp_constraints_ok(q, Assignment::total({0, 1}), 0);
  CHECK_FALSE(c.ok);
  REQUIRE(c.first_violated);
  CHECK(*c.first_violated == 0);
}

TEST_CASE("row subset") {
  const QipInstance q = example2();
  const Assignment x = Assignment::total({0, 1, 0, 0, 1});
  const std::vector<std::size_t> rows{1};
  const ConstraintCheck c = scp_constraints_ok(q, x, 3, rows);
  CHECK(c.ok);
  REQUIRE(c.lhs.size() == 1);
  CHECK(c.lhs[0] == 1);
}

TEST_CASE("preconditions") {
  const QipInstance q = example2();
  const Assignment x = Assignment::total({0, 1, 0, 0, 1});
  CHECK_THROWS_AS(scp_objective_ok(q, x, 2), PreconditionError);
  CHECK_THROWS_AS(scp_objective_ok(q, Assignment::prefix(5, {0}), 1), PreconditionError);
  CHECK_THROWS_AS(scp_constraints_ok(q, Assignment::total({1, 1, 1, 1, 1}), 1),
                  PreconditionError);
}

TEST_CASE("recycle walk on example 2") {
  const QipInstance q = example2();
  const Assignment x = Assignment::total({0, 1, 0, 0, 1});
  const auto effects =
      recycle_strategy(q, oracle_context(q, x), x, ExtValue::finite(Rational(4)));
  REQUIRE(effects.size() == 2);
  CHECK(effects[0].kind == RecycleEffectKind::SubtreePruned);
  CHECK(effects[0].k == 3);
  CHECK(effects[0].z_tilde == 4);
  CHECK(effects[0].z_hat == 2);
  CHECK(effects[1].kind == RecycleEffectKind::SubtreePruned);
  CHECK(effects[1].k == 1);
  CHECK(effects[1].z_hat == 1);
}

TEST_CASE("recycle walk switches to bounds when the value is unknown") {
  const QipInstance q = example2();
  const Assignment x = Assignment::total({0, 1, 0, 0, 1});
  RecycleContext ctx;
  ctx.existential_value = [](std::size_t) { return std::optional<ExtValue>{}; };
  const auto effects = recycle_strategy(q, ctx, x, ExtValue::finite(Rational(4)));
  REQUIRE(effects.size() == 2);
  CHECK(effects[0].kind == RecycleEffectKind::SubtreePruned);
  CHECK(effects[1].kind == RecycleEffectKind::BoundUpdated);
}

TEST_CASE("recycle walk stops on a failed condition") {
  const auto A = Quantifier::Universal;
  const auto E = Quantifier::Existential;
  const QipInstance q({A, E}, {{1, 1}, {-1, -1}}, {1, -1}, {0, 0});
  const Assignment x = Assignment::total({0, 1});
  const auto effects =
      recycle_strategy(q, oracle_context(q, x), x, ExtValue::finite(Rational(0)));
  REQUIRE(effects.size() == 1);
  CHECK(effects[0].kind == RecycleEffectKind::Stopped);
  CHECK(effects[0].k == 0);
  CHECK_FALSE(effects[0].reason.empty());
  CHECK(std::string(to_string(RecycleEffectKind::Stopped)) == "stopped");
}

}  // TEST_SUITE
