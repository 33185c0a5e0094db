#include "qip/scp.hpp"

#include "qip/errors.hpp"

namespace qip {

namespace {

void check_flip_point(const QipInstance& instance, const Assignment& x, std::size_t k) {
  if (x.size() != instance.num_vars() || !x.is_total()) {
    throw PreconditionError("x~ must be a total assignment of length n");
  }
  if (k >= instance.num_vars() || !instance.is_universal(k)) {
    throw PreconditionError("variable " + std::to_string(k + 1) + " is not universal");
  }
}

}  // namespace

ObjectiveCheck scp_objective_ok(const QipInstance& instance, const Assignment& x_tilde,
                                std::size_t k) {
  check_flip_point(instance, x_tilde, k);
  ObjectiveCheck out;
  out.lhs = scp_detail::objective_lhs(instance, x_tilde.raw(), k, 1 - x_tilde[k]);
  out.ok = out.lhs <= 0;
  return out;
}

Rational scp_copied_value(const QipInstance& instance, const Assignment& x_tilde,
                          std::size_t k) {
  check_flip_point(instance, x_tilde, k);
  Rational base = 0;
  for (std::size_t j = 0; j < instance.num_vars(); ++j) {
    if (x_tilde[j]) base += instance.obj(j);
  }
  return base + scp_detail::objective_lhs(instance, x_tilde.raw(), k, 1 - x_tilde[k]);
}

ConstraintCheck scp_constraints_ok(const QipInstance& instance, const Assignment& x_tilde,
                                   std::size_t k, std::span<const std::size_t> rows) {
  check_flip_point(instance, x_tilde, k);
  if (evaluate_game(instance, x_tilde).is_infinite()) {
    throw PreconditionError("x~ violates A x <= b");
  }
  ConstraintCheck out;
  out.ok = true;
  const int xhat = 1 - x_tilde[k];
  for (std::size_t i : rows) {
    if (i >= instance.num_rows()) throw PreconditionError("row index out of range");
    Rational lhs = scp_detail::row_lhs(instance, x_tilde.raw(), k, xhat, i);
    if (out.ok && lhs > instance.rhs(i)) {
      out.ok = false;
      out.first_violated = i;
    }
    out.lhs.push_back(std::move(lhs));
  }
  return out;
}

ConstraintCheck scp_constraints_ok(const QipInstance& instance, const Assignment& x_tilde,
                                   std::size_t k) {
  std::vector<std::size_t> all(instance.num_rows());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  return scp_constraints_ok(instance, x_tilde, k, all);
}

const char* to_string(RecycleEffectKind kind) {
  switch (kind) {
    case RecycleEffectKind::SubtreePruned: return "pruned";
    case RecycleEffectKind::BoundUpdated: return "bound";
    case RecycleEffectKind::Stopped: return "stopped";
  }
  return "?";
}

std::vector<RecycleEffect> recycle_strategy(const QipInstance& instance,
                                            const RecycleContext& context,
                                            const Assignment& x_tilde, const ExtValue& z_tilde) {
  std::vector<RecycleEffect> effects;
  if (z_tilde.is_infinite()) return effects;
  if (x_tilde.size() != instance.num_vars() || !x_tilde.is_total()) {
    throw PreconditionError("x~ must be a total assignment of length n");
  }
  const std::size_t n = instance.num_vars();
  std::size_t last = n;
  for (std::size_t j = n; j-- > 0;) {
    if (instance.is_universal(j)) {
      last = j;
      break;
    }
  }
  if (last == n) return effects;

  const Rational& z = z_tilde.value();
  bool pruning = true;
  const auto x = x_tilde.raw();
  for (std::size_t k = last + 1; k-- > 0;) {
    if (!context.monotone.empty()) {
      const auto forced = monotone_forced_value(context.monotone[k], instance.quantifier(k));
      if (forced && *forced == x[k]) continue;
    }
    if (!instance.is_universal(k)) {
      std::optional<ExtValue> f;
      if (context.existential_value) f = context.existential_value(k);
      if (!f || *f != z_tilde) pruning = false;
      continue;
    }
    const int xhat = 1 - x[k];
    const Rational lhs1 = scp_detail::objective_lhs(instance, x, k, xhat);
    if (lhs1 > 0) {
      effects.push_back({RecycleEffectKind::Stopped, k, z, z + lhs1, "objective condition"});
      return effects;
    }
    for (std::size_t i : instance.column_rows(k)) {
      if (scp_detail::row_lhs(instance, x, k, xhat, i) > instance.rhs(i)) {
        effects.push_back({RecycleEffectKind::Stopped, k, z, z + lhs1,
                           "constraint condition, row " + std::to_string(i + 1)});
        return effects;
      }
    }
    effects.push_back({pruning ? RecycleEffectKind::SubtreePruned : RecycleEffectKind::BoundUpdated,
                       k, z, z + lhs1, {}});
  }
  return effects;
}

}  // namespace qip
