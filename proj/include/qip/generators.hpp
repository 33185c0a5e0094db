#pragma once

#include "qip/instance.hpp"

#include <cstdint>
#include <random>

namespace qip {

/// Runway scheduling under window disturbances.
///
/// Block 1 (exists): x[p][s], plane p lands in slot s in the initial plan.
/// Block 2 (forall): one bit per disturbed plane; when set, the plane's
///   admissible window moves by a seeded amount in [1, max_shift] slots
///   (towards later slots when there is room).
/// Block 3 (exists): per plane z[p] (plane reassigned) then y[p][0..S-1],
///   the recourse plan.
///
/// Rows: exactly-one for x and y (two <=-rows each), x inside its nominal
/// window, slot capacity for x and y, y inside the window chosen by the
/// disturbance bit, and y[p][s] - x[p][s] - z[p] <= 0 on the slots a plane
/// may use. Objective: reassign_cost * sum z.
struct RunwayParams {
  std::size_t planes = 5;
  std::size_t slots = 4;
  std::size_t capacity = 2;
  std::size_t window = 2;
  std::size_t disturbed = 2;
  std::size_t max_shift = 1;
  Rational reassign_cost = 1;
  std::uint64_t seed = 1;
};

/// Throws PreconditionError unless 1 <= window <= slots, disturbed <= planes,
/// capacity * slots >= planes, max_shift >= 1 and planes, slots >= 1.
QipInstance gen_runway(const RunwayParams& params);

struct RandomParams {
  std::size_t n = 8;
  std::size_t m = 5;
  Rational universal_fraction = Rational(1, 4);
  Rational density = Rational(1, 2);
  std::int64_t coeff_range = 3;
  std::uint64_t seed = 1;
};

/// Throws PreconditionError unless n >= 1, fractions in range and
/// coeff_range >= 1.
QipInstance gen_random(const RandomParams& params);

/// Portable uniform draw in [0, bound) from mt19937_64 (rejection sampling,
/// so results do not depend on the standard library's distributions).
std::uint64_t draw_below(std::mt19937_64& rng, std::uint64_t bound);

}  // namespace qip
