#include "qip/integer_form.hpp"

namespace qip::detail {

ScaledRows scale_instance(const QipInstance& instance, bool zero_objective) {
  ScaledRows out;
  const std::size_t n = instance.num_vars();
  out.rows.reserve(instance.num_rows());
  for (std::size_t i = 0; i < instance.num_rows(); ++i) {
    BigInt lcm = common_denominator(instance.row(i));
    mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), instance.rhs(i).get_den_mpz_t());
    std::vector<BigInt> row(n);
    for (std::size_t j = 0; j < n; ++j) {
      const Rational& a = instance.coef(i, j);
      row[j] = a.get_num() * (lcm / a.get_den());
    }
    out.rows.push_back(std::move(row));
    const Rational& b = instance.rhs(i);
    out.rhs.push_back(b.get_num() * (lcm / b.get_den()));
  }
  if (zero_objective) {
    out.obj.assign(n, BigInt(0));
    out.obj_scale = 1;
  } else {
    out.obj_scale = common_denominator(instance.objective());
    for (const Rational& c : instance.objective()) {
      out.obj.push_back(c.get_num() * (out.obj_scale / c.get_den()));
    }
  }
  return out;
}

bool fits_int64(const ScaledRows& scaled) {
  // Every partial sum the search forms is bounded by the absolute row (or
  // objective) sum; keep those below 2^61 so that adding one more bounded
  // term never overflows.
  const BigInt limit = BigInt(1) << 61;
  BigInt sum;
  for (std::size_t i = 0; i < scaled.rows.size(); ++i) {
    sum = abs(scaled.rhs[i]);
    for (const BigInt& a : scaled.rows[i]) sum += abs(a);
    if (sum >= limit) return false;
  }
  sum = 0;
  for (const BigInt& c : scaled.obj) sum += abs(c);
  return sum < limit;
}

}  // namespace qip::detail
