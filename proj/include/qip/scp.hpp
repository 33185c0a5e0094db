#pragma once

// Strategic copy-pruning: the two conditions under which the existential
// decisions of a solved leaf x~ can be copied into the unexplored sibling of
// a universal node, and the ancestor walk that applies them.
//
// Variable indices are 0-based throughout.

#include "qip/instance.hpp"
#include "qip/integer_form.hpp"

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace qip {

namespace scp_detail {

inline const Rational& obj_at(const QipInstance& q, std::size_t j) { return q.obj(j); }
inline const Rational& rhs_at(const QipInstance& q, std::size_t i) { return q.rhs(i); }
inline std::size_t vars_of(const QipInstance& q) { return q.num_vars(); }

template <class Int>
const Int& obj_at(const IntegerForm<Int>& f, std::size_t j) { return f.obj[j]; }
template <class Int>
const Int& rhs_at(const IntegerForm<Int>& f, std::size_t i) { return f.rhs[i]; }
template <class Int>
std::size_t vars_of(const IntegerForm<Int>& f) { return f.n; }

template <class Form>
using Num = std::decay_t<decltype(obj_at(std::declval<const Form&>(), 0))>;

/// c_k (x^_k - x~_k) + sum_{j>k universal, c_j>=0} c_j (1 - x~_j)
///                   - sum_{j>k universal, c_j<0} c_j x~_j
/// with x^_k = xhat. x holds the leaf values of x~.
template <class Form>
Num<Form> objective_lhs(const Form& f, std::span<const std::int8_t> x, std::size_t k, int xhat) {
  Num<Form> lhs(0);
  if (xhat != x[k]) {
    if (xhat) lhs += obj_at(f, k);
    else lhs -= obj_at(f, k);
  }
  const std::size_t n = vars_of(f);
  for (std::size_t j = k + 1; j < n; ++j) {
    if (!f.is_universal(j)) continue;
    const auto& c = obj_at(f, j);
    if (c >= 0) {
      if (!x[j]) lhs += c;
    } else if (x[j]) {
      lhs -= c;
    }
  }
  return lhs;
}

/// Left-hand side of row i when universal variables after k play their
/// worst case and every other variable keeps its x~ value (x_k = xhat).
template <class Form>
Num<Form> row_lhs(const Form& f, std::span<const std::int8_t> x, std::size_t k, int xhat,
                  std::size_t i) {
  Num<Form> lhs(0);
  f.for_each_in_row(i, [&](std::size_t j, const auto& a) {
    if (j == k) {
      if (xhat) lhs += a;
    } else if (j < k || !f.is_universal(j)) {
      if (x[j]) lhs += a;
    } else if (a > 0) {
      lhs += a;
    }
  });
  return lhs;
}

}  // namespace scp_detail

struct ObjectiveCheck {
  bool ok = false;
  Rational lhs;
};

/// Objective condition at universal variable k for flipping x~_k. Throws
/// PreconditionError when k is not universal or x~ is not total.
ObjectiveCheck scp_objective_ok(const QipInstance& instance, const Assignment& x_tilde,
                                std::size_t k);

/// z^ = z~ + objective lhs: the value bound on the copied strategy.
Rational scp_copied_value(const QipInstance& instance, const Assignment& x_tilde, std::size_t k);

struct ConstraintCheck {
  bool ok = false;
  std::optional<std::size_t> first_violated;
  /// Row left-hand sides, aligned with the rows that were checked.
  std::vector<Rational> lhs;
};

/// Row condition at universal variable k for the listed rows. Throws
/// PreconditionError when k is not universal or A x~ <= b fails.
ConstraintCheck scp_constraints_ok(const QipInstance& instance, const Assignment& x_tilde,
                                   std::size_t k, std::span<const std::size_t> rows);
ConstraintCheck scp_constraints_ok(const QipInstance& instance, const Assignment& x_tilde,
                                   std::size_t k);

enum class RecycleEffectKind { SubtreePruned, BoundUpdated, Stopped };

const char* to_string(RecycleEffectKind kind);

/// Node v is the node at depth k on the path of x~, i.e. where variable k
/// is decided.
struct RecycleEffect {
  RecycleEffectKind kind;
  std::size_t k = 0;
  /// z~ for SubtreePruned / BoundUpdated.
  Rational z_tilde;
  /// Bound on the sibling subtree (x_k flipped).
  Rational z_hat;
  std::string reason;  // Stopped only
};

struct RecycleContext {
  /// Empty when monotone reasoning is off.
  std::vector<MonotoneStatus> monotone;
  /// f at the existential node of depth k on the path of x~, if known.
  std::function<std::optional<ExtValue>(std::size_t k)> existential_value;
};

/// Walks from the deepest universal node of x~ to the root. Universal
/// nodes check the objective condition, then the row condition on the rows
/// containing the node's variable only.
std::vector<RecycleEffect> recycle_strategy(const QipInstance& instance,
                                            const RecycleContext& context,
                                            const Assignment& x_tilde, const ExtValue& z_tilde);

}  // namespace qip
