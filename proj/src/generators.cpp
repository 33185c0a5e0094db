#include "qip/generators.hpp"

#include "qip/errors.hpp"

#include <algorithm>
#include <limits>

namespace qip {

std::uint64_t draw_below(std::mt19937_64& rng, std::uint64_t bound) {
  if (bound == 0) throw PreconditionError("draw_below: empty range");
  const std::uint64_t max = std::numeric_limits<std::uint64_t>::max();
  const std::uint64_t limit = max - (max % bound + 1) % bound;
  std::uint64_t v;
  do {
    v = rng();
  } while (v > limit);
  return v % bound;
}

namespace {

std::int64_t draw_between(std::mt19937_64& rng, std::int64_t lo, std::int64_t hi) {
  return lo + static_cast<std::int64_t>(draw_below(rng, static_cast<std::uint64_t>(hi - lo) + 1));
}

// true with probability p (p a rational in [0,1]).
bool draw_bernoulli(std::mt19937_64& rng, const Rational& p) {
  const BigInt& den = p.get_den();
  const BigInt& num = p.get_num();
  if (!den.fits_ulong_p()) throw PreconditionError("probability denominator too large");
  return BigInt(static_cast<unsigned long>(draw_below(rng, den.get_ui()))) < num;
}

class RowBuilder {
 public:
  explicit RowBuilder(std::size_t n) : n_(n) {}

  std::vector<Rational> make() const { return std::vector<Rational>(n_); }
  void add(std::vector<Rational> row, long rhs) {
    rows.push_back(std::move(row));
    b.emplace_back(rhs);
  }

  std::vector<std::vector<Rational>> rows;
  std::vector<Rational> b;

 private:
  std::size_t n_;
};

}  // namespace

QipInstance gen_runway(const RunwayParams& p) {
  const std::size_t P = p.planes;
  const std::size_t S = p.slots;
  if (P == 0 || S == 0) throw PreconditionError("runway: planes and slots must be positive");
  if (p.window < 1 || p.window > S) throw PreconditionError("runway: need 1 <= window <= slots");
  if (p.disturbed > P) throw PreconditionError("runway: more disturbed planes than planes");
  if (p.capacity * S < P) throw PreconditionError("runway: capacity * slots < planes");
  if (p.max_shift < 1) throw PreconditionError("runway: max_shift must be >= 1");

  std::mt19937_64 rng(p.seed);
  std::vector<std::size_t> perm(P);
  for (std::size_t i = 0; i < P; ++i) perm[i] = i;
  for (std::size_t i = P; i > 1; --i) std::swap(perm[i - 1], perm[draw_below(rng, i)]);

  // Reference plan: perm[i] lands in slot i mod S; the nominal window
  // [start, start + w) contains the reference slot.
  const auto w = static_cast<std::int64_t>(p.window);
  const auto slots = static_cast<std::int64_t>(S);
  std::vector<std::int64_t> start(P);
  std::vector<std::int64_t> shift(P, 0);
  std::vector<bool> disturbed(P, false);
  for (std::size_t i = 0; i < P; ++i) {
    const std::size_t plane = perm[i];
    const auto ref = static_cast<std::int64_t>(i % S);
    start[plane] = draw_between(rng, std::max<std::int64_t>(0, ref - w + 1), std::min(ref, slots - w));
  }
  for (std::size_t i = 0; i < p.disturbed; ++i) disturbed[perm[i]] = true;
  for (std::size_t q = 0; q < P; ++q) {
    if (!disturbed[q] || w == slots) continue;
    const std::int64_t mag =
        p.max_shift > 1 ? draw_between(rng, 1, static_cast<std::int64_t>(p.max_shift)) : 1;
    const std::int64_t room_up = slots - w - start[q];
    if (room_up > 0) shift[q] = std::min(mag, room_up);
    else shift[q] = -std::min(mag, start[q]);
  }

  // Variable layout.
  std::vector<std::size_t> delta_of(P, 0);
  std::size_t n = P * S;
  for (std::size_t q = 0; q < P; ++q) {
    if (disturbed[q]) delta_of[q] = n++;
  }
  const std::size_t third = n;
  auto X = [&](std::size_t q, std::size_t s) { return q * S + s; };
  auto Z = [&](std::size_t q) { return third + q * (S + 1); };
  auto Y = [&](std::size_t q, std::size_t s) { return third + q * (S + 1) + 1 + s; };
  n = third + P * (S + 1);

  std::vector<Quantifier> quant(n, Quantifier::Existential);
  for (std::size_t q = 0; q < P; ++q) {
    if (disturbed[q]) quant[delta_of[q]] = Quantifier::Universal;
  }
  auto in_nominal = [&](std::size_t q, std::size_t s) {
    const auto v = static_cast<std::int64_t>(s);
    return v >= start[q] && v < start[q] + w;
  };
  auto in_shifted = [&](std::size_t q, std::size_t s) {
    const auto v = static_cast<std::int64_t>(s);
    return v >= start[q] + shift[q] && v < start[q] + shift[q] + w;
  };
  const long cap = static_cast<long>(p.capacity);

  RowBuilder rb(n);
  // Exactly one slot per plane in the initial plan.
  for (std::size_t q = 0; q < P; ++q) {
    auto up = rb.make();
    auto down = rb.make();
    for (std::size_t s = 0; s < S; ++s) {
      up[X(q, s)] = 1;
      down[X(q, s)] = -1;
    }
    rb.add(std::move(up), 1);
    rb.add(std::move(down), -1);
  }
  // Initial plan respects the nominal window.
  if (p.window < S) {
    for (std::size_t q = 0; q < P; ++q) {
      auto row = rb.make();
      for (std::size_t s = 0; s < S; ++s) {
        if (!in_nominal(q, s)) row[X(q, s)] = 1;
      }
      rb.add(std::move(row), 0);
    }
  }
  for (std::size_t s = 0; s < S; ++s) {
    auto row = rb.make();
    for (std::size_t q = 0; q < P; ++q) row[X(q, s)] = 1;
    rb.add(std::move(row), cap);
  }
  // Recourse plan.
  for (std::size_t q = 0; q < P; ++q) {
    auto up = rb.make();
    auto down = rb.make();
    for (std::size_t s = 0; s < S; ++s) {
      up[Y(q, s)] = 1;
      down[Y(q, s)] = -1;
    }
    rb.add(std::move(up), 1);
    rb.add(std::move(down), -1);
  }
  for (std::size_t s = 0; s < S; ++s) {
    auto row = rb.make();
    for (std::size_t q = 0; q < P; ++q) row[Y(q, s)] = 1;
    rb.add(std::move(row), cap);
  }
  for (std::size_t q = 0; q < P; ++q) {
    if (!disturbed[q]) {
      auto row = rb.make();
      bool any = false;
      for (std::size_t s = 0; s < S; ++s) {
        if (!in_nominal(q, s)) {
          row[Y(q, s)] = 1;
          any = true;
        }
      }
      if (any) rb.add(std::move(row), 0);
      continue;
    }
    const std::size_t dv = delta_of[q];
    for (std::size_t s = 0; s < S; ++s) {
      if (in_nominal(q, s) && !in_shifted(q, s)) {
        auto row = rb.make();
        row[Y(q, s)] = 1;
        row[dv] = 1;
        rb.add(std::move(row), 1);
      }
    }
    for (std::size_t s = 0; s < S; ++s) {
      if (in_shifted(q, s) && !in_nominal(q, s)) {
        auto row = rb.make();
        row[Y(q, s)] = 1;
        row[dv] = -1;
        rb.add(std::move(row), 0);
      }
    }
    auto row = rb.make();
    bool any = false;
    for (std::size_t s = 0; s < S; ++s) {
      if (!in_nominal(q, s) && !in_shifted(q, s)) {
        row[Y(q, s)] = 1;
        any = true;
      }
    }
    if (any) rb.add(std::move(row), 0);
  }
  // Reassignment indicators.
  for (std::size_t q = 0; q < P; ++q) {
    for (std::size_t s = 0; s < S; ++s) {
      if (!in_nominal(q, s) && !(disturbed[q] && in_shifted(q, s))) continue;
      auto row = rb.make();
      row[Y(q, s)] = 1;
      row[X(q, s)] = -1;
      row[Z(q)] = -1;
      rb.add(std::move(row), 0);
    }
  }

  std::vector<Rational> c(n);
  for (std::size_t q = 0; q < P; ++q) c[Z(q)] = p.reassign_cost;

  std::string name = "runway_p" + std::to_string(P) + "_s" + std::to_string(S) + "_b" +
                     std::to_string(p.capacity) + "_w" + std::to_string(p.window) + "_d" +
                     std::to_string(p.disturbed);
  if (p.max_shift > 1) name += "_h" + std::to_string(p.max_shift);
  name += "_seed" + std::to_string(p.seed);
  return QipInstance(std::move(quant), std::move(rb.rows), std::move(rb.b), std::move(c), name);
}

QipInstance gen_random(const RandomParams& p) {
  if (p.n == 0) throw PreconditionError("random: n must be positive");
  if (sgn(p.universal_fraction) < 0 || p.universal_fraction > 1) {
    throw PreconditionError("random: universal fraction outside [0,1]");
  }
  if (sgn(p.density) <= 0 || p.density > 1) throw PreconditionError("random: density outside (0,1]");
  if (p.coeff_range < 1) throw PreconditionError("random: coefficient range must be >= 1");

  std::mt19937_64 rng(p.seed);
  const std::int64_t R = p.coeff_range;
  std::vector<Quantifier> quant(p.n, Quantifier::Existential);
  for (std::size_t j = 1; j < p.n; ++j) {
    if (draw_bernoulli(rng, p.universal_fraction)) quant[j] = Quantifier::Universal;
  }
  std::vector<std::vector<Rational>> rows(p.m, std::vector<Rational>(p.n));
  std::vector<Rational> b(p.m);
  for (std::size_t i = 0; i < p.m; ++i) {
    std::int64_t pos = 0;
    std::int64_t neg = 0;
    for (std::size_t j = 0; j < p.n; ++j) {
      if (!draw_bernoulli(rng, p.density)) continue;
      const auto v = static_cast<std::int64_t>(draw_below(rng, static_cast<std::uint64_t>(2 * R)));
      const std::int64_t a = v < R ? -(v + 1) : v - R + 1;
      rows[i][j] = static_cast<long>(a);
      (a > 0 ? pos : neg) += a > 0 ? a : -a;
    }
    if (draw_below(rng, 2) == 0) {
      b[i] = static_cast<long>(draw_between(rng, 0, pos));
    } else {
      b[i] = neg > 0 ? static_cast<long>(draw_between(rng, -neg, -1)) : 0L;
    }
  }
  std::vector<Rational> c(p.n);
  for (std::size_t j = 0; j < p.n; ++j) c[j] = static_cast<long>(draw_between(rng, -R, R));
  const std::string name = "random_n" + std::to_string(p.n) + "_m" + std::to_string(p.m) +
                           "_seed" + std::to_string(p.seed);
  return QipInstance(std::move(quant), std::move(rows), std::move(b), std::move(c), name);
}

}  // namespace qip
