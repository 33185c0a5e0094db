#include "test_support.hpp"

#include "qip/errors.hpp"
#include "qip/instance.hpp"
#include "qip/integer_form.hpp"
#include "qip/rational.hpp"

#include <doctest.h>

using namespace qip;
using qip::testing::example1;
using qip::testing::example2;

namespace {
const auto E = Quantifier::Existential;
const auto A = Quantifier::Universal;

ValidationErrorKind validation_kind(const QipInstance& q) {
  try {
    validate(q);
  } catch (const ValidationError& e) {
    return e.kind();
  }
  FAIL("validate accepted the instance");
  return ValidationErrorKind::InvalidName;
}
}  // namespace

TEST_SUITE("core") {

TEST_CASE("rational parsing") {
  CHECK(parse_rational("3") == Rational(3));
  CHECK(parse_rational("-3/6") == Rational(-1, 2));
  CHECK(parse_rational("+4/2") == Rational(2));
  CHECK_FALSE(parse_rational("1/0"));
  CHECK_FALSE(parse_rational("1.5"));
  CHECK_FALSE(parse_rational(""));
  CHECK_FALSE(parse_rational("2/-3"));
  CHECK(to_string(*parse_rational("6/4")) == "3/2");
  CHECK(to_string(*parse_rational("-4/2")) == "-2");
}

TEST_CASE("common denominator") {
  std::vector<Rational> v{Rational(1, 4), Rational(5, 6), Rational(3)};
  CHECK(common_denominator(v) == 12);
}

TEST_CASE("validate accepts example 2") {
  CHECK_NOTHROW(validate(example2()));
  CHECK(example2().num_vars() == 5);
  CHECK(example2().num_rows() == 2);
}

TEST_CASE("validate names each failure") {
  QipInstance::Parts p;
  p.quantifiers = {E, A};
  p.rows = {{1, 1}, {1, 0}};
  p.rhs = {1};
  p.objective = {0, 0};
  p.column_index = {{0, 1}, {0}};
  CHECK(validation_kind(QipInstance::from_parts_unchecked(p)) ==
        ValidationErrorKind::DimensionMismatch);

  QipInstance::Parts empty;
  CHECK(validation_kind(QipInstance::from_parts_unchecked(empty)) ==
        ValidationErrorKind::EmptyVariableSet);

  p.rhs = {1, 1};
  p.column_index = {{0, 1}, {0, 1}};
  CHECK(validation_kind(QipInstance::from_parts_unchecked(p)) ==
        ValidationErrorKind::MalformedColumnIndex);

  p.column_index = {{0, 1}, {0}};
  CHECK_NOTHROW(validate(QipInstance::from_parts_unchecked(p)));

  CHECK_THROWS_AS(QipInstance({E}, {{1, 2}}, {0}, {0}), ValidationError);
  CHECK_THROWS_AS(QipInstance({}, {}, {}, {}), ValidationError);
}

TEST_CASE("column index") {
  const QipInstance q = example1();
  const auto rows = q.column_rows(1);
  CHECK(std::vector<std::size_t>(rows.begin(), rows.end()) == std::vector<std::size_t>{0, 2, 3});
  CHECK(q.column_rows(2).size() == 4);
}

TEST_CASE("block structure") {
  auto blocks_of = [](std::vector<Quantifier> qs) {
    const std::size_t n = qs.size();
    return block_structure(QipInstance(std::move(qs), {}, {}, std::vector<Rational>(n, 0)));
  };
  const BlockStructure b1 = blocks_of({E, A, E, A});
  CHECK(b1.beta() == 4);
  for (const Block& b : b1.blocks) CHECK(b.size() == 1);

  CHECK(blocks_of({E, E, E}).beta() == 1);

  const BlockStructure b3 = blocks_of({E, E, A, A, E});
  REQUIRE(b3.beta() == 3);
  CHECK(b3.blocks[0] == Block{E, 0, 2});
  CHECK(b3.blocks[1] == Block{A, 2, 4});
  CHECK(b3.blocks[2] == Block{E, 4, 5});
  CHECK(b3.block_of(3) == 1);
  CHECK(b3.block_of(4) == 2);
}

TEST_CASE("extended values order") {
  const ExtValue inf = ExtValue::plus_infinity();
  CHECK(ExtValue::finite(Rational(1000000)) < inf);
  CHECK(ExtValue::finite(Rational(-1, 2)) < ExtValue::finite(Rational(0)));
  CHECK(inf == ExtValue::plus_infinity());
  CHECK(inf.to_string() == "+inf");
  CHECK(ExtValue::finite(Rational(7, 3)).to_string() == "7/3");
}

TEST_CASE("assignments") {
  Assignment a(4);
  CHECK(a.to_string() == "- - - -");
  a.push(1);
  a.push(0);
  CHECK(a.prefix_length() == 2);
  CHECK(a.to_string() == "1 0 - -");
  a.pop();
  CHECK(a == Assignment::prefix(4, {1}));
  CHECK_THROWS_AS(Assignment::total({0, 2}), PreconditionError);
  CHECK(Assignment::total({0, 1}).is_total());
}

TEST_CASE("evaluate game") {
  const QipInstance q = example1();
  CHECK(evaluate_game(q, Assignment::total({1, 0, 0, 0})) == ExtValue::finite(Rational(2)));
  CHECK(evaluate_game(q, Assignment::total({0, 0, 1, 0})).is_infinite());
  CHECK_THROWS_AS(evaluate_game(q, Assignment::prefix(4, {1})), PreconditionError);

  const QipInstance empty({E, A}, {}, {}, {0, 0});
  CHECK(evaluate_game(empty, Assignment::total({1, 1})) == ExtValue::finite(Rational(0)));
}

TEST_CASE("monotone detection") {
  const auto s2 = detect_monotone(example2());
  CHECK(s2[0] == MonotoneStatus::NonNegative);
  CHECK(detect_monotone(example1())[2] == MonotoneStatus::Mixed);

  const QipInstance zero({E, A}, {{0, 1}}, {1}, {0, -1});
  const auto sz = detect_monotone(zero);
  CHECK(sz[0] == MonotoneStatus::Both);
  CHECK(sz[1] == MonotoneStatus::Mixed);

  const QipInstance neg({A}, {{-1}}, {0}, {-2});
  CHECK(detect_monotone(neg)[0] == MonotoneStatus::NonPositive);
}

TEST_CASE("monotone forced values") {
  CHECK(monotone_forced_value(MonotoneStatus::NonNegative, E) == 0);
  CHECK(monotone_forced_value(MonotoneStatus::NonPositive, E) == 1);
  CHECK(monotone_forced_value(MonotoneStatus::NonNegative, A) == 1);
  CHECK(monotone_forced_value(MonotoneStatus::NonPositive, A) == 0);
  CHECK(monotone_forced_value(MonotoneStatus::Both, E) == 0);
  CHECK(monotone_forced_value(MonotoneStatus::Both, A) == 0);
  CHECK_FALSE(monotone_forced_value(MonotoneStatus::Mixed, E));
}

TEST_CASE("integer form scaling") {
  const QipInstance q({E, E}, {{Rational(1, 2), Rational(1, 3)}}, {Rational(1)},
                      {Rational(3, 4), Rational(-1, 6)});
  with_integer_form(q, false, IntegerPath::Auto, [&](const auto& f) {
    CHECK(f.n == 2);
    CHECK(f.rhs[0] == 6);
    CHECK(f.obj_scale == 12);
    CHECK(f.obj[0] == 9);
    CHECK(f.obj[1] == -2);
  });
  with_integer_form(q, false, IntegerPath::ForceBig, [&](const auto& f) {
    CHECK(f.rhs[0] == 6);
    CHECK(f.obj[1] == -2);
  });
}

TEST_CASE("unreduced fractions are stored reduced") {
  const QipInstance q({Quantifier::Existential}, {{Rational(6, 3)}}, {Rational(4, 8)},
                      {Rational(-9, 3)});
  CHECK(q.coef(0, 0).get_den() == 1);
  CHECK(q.rhs(0).get_den() == 2);
  CHECK(q.obj(0) == -3);
  CHECK(q == QipInstance({Quantifier::Existential}, {{2}}, {Rational(1, 2)}, {-3}));
}

}  // TEST_SUITE
