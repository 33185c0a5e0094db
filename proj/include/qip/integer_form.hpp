#pragma once

// Row-scaled integer view of a QipInstance.
//
// Every row (with its right-hand side) is multiplied by the positive lcm of
// its denominators, and the objective by the lcm of its own denominators.
// Positive scaling preserves every inequality exactly, so the search and the
// oracle can work on integers. When all magnitudes are small enough the view
// is built over int64_t, otherwise over GMP integers.

#include "qip/instance.hpp"
#include "qip/rational.hpp"

#include <cstdint>
#include <cstdlib>
#include <type_traits>
#include <utility>
#include <vector>

namespace qip {

template <class Int>
struct IntegerForm {
  std::size_t n = 0;
  std::size_t m = 0;
  std::vector<Quantifier> quant;
  /// Sparse rows: (variable, coefficient), ascending variable.
  std::vector<std::vector<std::pair<std::uint32_t, Int>>> row_entries;
  /// Per variable: rows with a nonzero entry and the matching coefficients.
  std::vector<std::vector<std::uint32_t>> column_rows;
  std::vector<std::vector<Int>> column_coefs;
  std::vector<Int> rhs;
  std::vector<Int> obj;
  /// Original objective = obj / obj_scale.
  BigInt obj_scale = 1;

  bool is_universal(std::size_t j) const { return quant[j] == Quantifier::Universal; }

  template <class F>
  void for_each_in_row(std::size_t i, F&& f) const {
    for (const auto& [j, a] : row_entries[i]) f(static_cast<std::size_t>(j), a);
  }
};

inline BigInt to_big(const BigInt& v) { return v; }
inline BigInt to_big(std::int64_t v) { return BigInt(static_cast<long>(v)); }

template <class Int>
Int from_big(const BigInt& v) {
  if constexpr (std::is_same_v<Int, BigInt>) {
    return v;
  } else {
    static_assert(sizeof(long) == 8, "int64 fast path assumes LP64");
    return static_cast<Int>(v.get_si());
  }
}

/// Objective value (scaled integer) back to the original rational.
template <class Int>
Rational unscale_objective(const IntegerForm<Int>& form, const Int& v) {
  Rational r(to_big(v), form.obj_scale);
  r.canonicalize();
  return r;
}

namespace detail {

struct ScaledRows {
  std::vector<std::vector<BigInt>> rows;
  std::vector<BigInt> rhs;
  std::vector<BigInt> obj;
  BigInt obj_scale;
};

ScaledRows scale_instance(const QipInstance& instance, bool zero_objective);
bool fits_int64(const ScaledRows& scaled);

template <class Int>
IntegerForm<Int> build_form(const QipInstance& instance, const ScaledRows& s) {
  IntegerForm<Int> f;
  f.n = instance.num_vars();
  f.m = instance.num_rows();
  f.quant = instance.quantifiers();
  f.row_entries.resize(f.m);
  f.column_rows.resize(f.n);
  f.column_coefs.resize(f.n);
  for (std::size_t i = 0; i < f.m; ++i) {
    for (std::size_t j = 0; j < f.n; ++j) {
      if (sgn(s.rows[i][j]) == 0) continue;
      Int a = from_big<Int>(s.rows[i][j]);
      f.row_entries[i].emplace_back(static_cast<std::uint32_t>(j), a);
      f.column_rows[j].push_back(static_cast<std::uint32_t>(i));
      f.column_coefs[j].push_back(a);
    }
    f.rhs.push_back(from_big<Int>(s.rhs[i]));
  }
  for (const BigInt& c : s.obj) f.obj.push_back(from_big<Int>(c));
  f.obj_scale = s.obj_scale;
  return f;
}

}  // namespace detail

enum class IntegerPath { Auto, ForceBig };

/// Calls fn(const IntegerForm<Int>&) with the cheapest exact integer type.
/// With zero_objective the objective is replaced by 0 (feasibility view).
template <class F>
decltype(auto) with_integer_form(const QipInstance& instance, bool zero_objective,
                                 IntegerPath path, F&& fn) {
  const detail::ScaledRows scaled = detail::scale_instance(instance, zero_objective);
  if (path == IntegerPath::Auto && detail::fits_int64(scaled)) {
    const auto form = detail::build_form<std::int64_t>(instance, scaled);
    return fn(form);
  }
  const auto form = detail::build_form<BigInt>(instance, scaled);
  return fn(form);
}

}  // namespace qip
