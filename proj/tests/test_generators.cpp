#include "test_support.hpp"

#include "qip/errors.hpp"
#include "qip/generators.hpp"
#include "qip/io.hpp"
#include "qip/solver.hpp"

#include <doctest.h>

using namespace qip;

namespace {

std::size_t count_universal(const QipInstance& q) {
  std::size_t u = 0;
  for (std::size_t j = 0; j < q.num_vars(); ++j) u += q.is_universal(j);
  return u;
}

}  // namespace

TEST_SUITE("generators") {

TEST_CASE("runway sizes") {
  const QipInstance q = gen_runway(RunwayParams{});
  CHECK(q.num_vars() == 47);
  CHECK(q.num_rows() == 54);
  CHECK(count_universal(q) == 2);
  const BlockStructure b = block_structure(q);
  REQUIRE(b.beta() == 3);
  CHECK(b.blocks[0].size() == 20);
  CHECK(b.blocks[2].size() == 25);
  CHECK(q.name() == "runway_p5_s4_b2_w2_d2_seed1");
}

TEST_CASE("runway determinism") {
  RunwayParams p;
  p.seed = 7;
  CHECK(serialize_qip(gen_runway(p)) == serialize_qip(gen_runway(p)));
  RunwayParams other = p;
  other.seed = 8;
  CHECK(gen_runway(other).name() != gen_runway(p).name());
}

TEST_CASE("single plane") {
  RunwayParams p;
  p.planes = 1;
  p.slots = 1;
  p.capacity = 1;
  p.window = 1;
  p.disturbed = 0;
  const SolveResult r = solve(gen_runway(p));
  CHECK(r.status == SolveStatus::Feasible);
  CHECK(r.value == ExtValue::finite(Rational(0)));
}

TEST_CASE("undisturbed runway costs nothing") {
  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    RunwayParams p;
    p.planes = 4;
    p.slots = 3;
    p.capacity = 2;
    p.disturbed = 0;
    p.seed = seed;
    const QipInstance q = gen_runway(p);
    CHECK(count_universal(q) == 0);
    CHECK(solve(q).value == ExtValue::finite(Rational(0)));
  }
}

TEST_CASE("runway magnitude with ten planes and slots") {
  RunwayParams p;
  p.planes = 10;
  p.slots = 10;
  p.capacity = 2;
  p.window = 3;
  p.disturbed = 10;
  const QipInstance q = gen_runway(p);
  const std::size_t u = count_universal(q);
  CHECK(u >= 10);
  CHECK(u <= 30);
  CHECK(q.num_vars() - u >= 100);
  CHECK(q.num_vars() - u <= 300);
}

TEST_CASE("runway preconditions") {
  RunwayParams p;
  p.window = 0;
  CHECK_THROWS_AS(gen_runway(p), PreconditionError);
  p = RunwayParams{};
  p.disturbed = 6;
  CHECK_THROWS_AS(gen_runway(p), PreconditionError);
  p = RunwayParams{};
  p.capacity = 1;
  CHECK_THROWS_AS(gen_runway(p), PreconditionError);
}

TEST_CASE("random instances") {
  RandomParams p;
  const QipInstance a = gen_random(p);
  CHECK(serialize_qip(a) == serialize_qip(gen_random(p)));
  CHECK(a.num_vars() == 8);
  CHECK(a.num_rows() == 5);

  p.density = 1;
  const QipInstance dense = gen_random(p);
  for (const auto& row : dense.rows()) {
    for (const Rational& v : row) CHECK(v != 0);
  }

  p.universal_fraction = 0;
  CHECK(count_universal(gen_random(p)) == 0);

  p.n = 0;
  CHECK_THROWS_AS(gen_random(p), PreconditionError);
  p = RandomParams{};
  p.density = Rational(3, 2);
  CHECK_THROWS_AS(gen_random(p), PreconditionError);
}

TEST_CASE("uniform draws stay in range") {
  std::mt19937_64 rng(3);
  std::vector<int> hits(5, 0);
  for (int i = 0; i < 1000; ++i) {
    const auto v = draw_below(rng, 5);
    REQUIRE(v < 5);
    ++hits[v];
  }
  for (int h : hits) CHECK(h > 100);
}

}  // TEST_SUITE
