#include "qip/oracle.hpp"

#include "qip/errors.hpp"
#include "qip/integer_form.hpp"

#include <functional>

namespace qip::oracle {

namespace {

// Plain recursive minimax over the scaled integer view. Row activities are
// maintained incrementally along the current path; a leaf is feasible iff
// every activity is within its right-hand side.
template <class Int>
class Enumerator {
 public:
  explicit Enumerator(const IntegerForm<Int>& form)
      : f_(form), activity_(form.m, Int(0)), x_(form.n, 0) {}

  void fix(std::size_t j, int v) {
    x_[j] = static_cast<std::int8_t>(v);
    if (v) {
      objective_ += f_.obj[j];
      for (std::size_t t = 0; t < f_.column_rows[j].size(); ++t) {
        activity_[f_.column_rows[j][t]] += f_.column_coefs[j][t];
      }
    }
  }

  void unfix(std::size_t j) {
    if (x_[j]) {
      objective_ -= f_.obj[j];
      for (std::size_t t = 0; t < f_.column_rows[j].size(); ++t) {
        activity_[f_.column_rows[j][t]] -= f_.column_coefs[j][t];
      }
    }
    x_[j] = 0;
  }

  // Returns {infinite, value}.
  std::pair<bool, Int> value(std::size_t depth) {
    if (depth == f_.n) {
      for (std::size_t i = 0; i < f_.m; ++i) {
        if (activity_[i] > f_.rhs[i]) return {true, Int(0)};
      }
      return {false, objective_};
    }
    fix(depth, 0);
    auto v0 = value(depth + 1);
    unfix(depth);
    fix(depth, 1);
    auto v1 = value(depth + 1);
    unfix(depth);
    const bool take_second = f_.is_universal(depth) ? greater(v1, v0) : greater(v0, v1);
    return take_second ? v1 : v0;
  }

  static bool greater(const std::pair<bool, Int>& a, const std::pair<bool, Int>& b) {
    if (a.first || b.first) return a.first && !b.first;
    return a.second > b.second;
  }

  ExtValue ext(const std::pair<bool, Int>& v) const {
    return v.first ? ExtValue::plus_infinity()
                   : ExtValue::finite(unscale_objective(f_, v.second));
  }

  // Builds the strategy below `depth`. Existential nodes evaluate both
  // children and keep the better one (0 on ties).
  std::pair<std::pair<bool, Int>, StrategyTree> build(std::size_t depth) {
    auto node = std::make_unique<StrategyNode>();
    if (depth == f_.n) {
      auto v = value(depth);
      node->kind = StrategyNode::Kind::Leaf;
      std::vector<int> vals(x_.begin(), x_.end());
      node->leaf = Assignment::total(vals);
      node->value = ext(v);
      return {v, std::move(node)};
    }
    node->var = depth;
    fix(depth, 0);
    auto c0 = build(depth + 1);
    unfix(depth);
    fix(depth, 1);
    auto c1 = build(depth + 1);
    unfix(depth);
    if (f_.is_universal(depth)) {
      node->kind = StrategyNode::Kind::UniversalSplit;
      const auto v = greater(c1.first, c0.first) ? c1.first : c0.first;
      node->value = ext(v);
      node->children.push_back(std::move(c0.second));
      node->children.push_back(std::move(c1.second));
      return {v, std::move(node)};
    }
    node->kind = StrategyNode::Kind::ExistentialChoice;
    const bool pick_one = greater(c0.first, c1.first);
    auto& chosen = pick_one ? c1 : c0;
    node->chosen = pick_one ? 1 : 0;
    node->value = ext(chosen.first);
    node->children.push_back(std::move(chosen.second));
    return {chosen.first, std::move(node)};
  }

 private:
  const IntegerForm<Int>& f_;
  std::vector<Int> activity_;
  std::vector<std::int8_t> x_;
  Int objective_ = Int(0);
};

void check_prefix(const QipInstance& instance, const Assignment& prefix) {
  if (prefix.size() != instance.num_vars()) {
    throw PreconditionError("prefix length differs from the number of variables");
  }
}

}  // namespace

ExtValue minimax(const QipInstance& instance, const Assignment& prefix) {
  check_prefix(instance, prefix);
  return with_integer_form(instance, false, IntegerPath::Auto, [&](const auto& form) {
    Enumerator en(form);
    for (std::size_t j = 0; j < prefix.prefix_length(); ++j) en.fix(j, prefix[j]);
    return en.ext(en.value(prefix.prefix_length()));
  });
}

std::optional<StrategyTree> optimal_strategy(const QipInstance& instance) {
  return with_integer_form(
      instance, false, IntegerPath::Auto, [&](const auto& form) -> std::optional<StrategyTree> {
        Enumerator en(form);
        auto [value, tree] = en.build(0);
        if (value.first) return std::nullopt;
        return std::move(tree);
      });
}

std::optional<Assignment> principal_variation(const QipInstance& instance) {
  auto tree = optimal_strategy(instance);
  if (!tree) return std::nullopt;
  const StrategyNode* node = tree->get();
  while (node->kind != StrategyNode::Kind::Leaf) {
    if (node->kind == StrategyNode::Kind::ExistentialChoice) {
      node = node->children.front().get();
    } else {
      const auto& c0 = node->children[0];
      const auto& c1 = node->children[1];
      node = c1->value > c0->value ? c1.get() : c0.get();
    }
  }
  return node->leaf;
}

std::size_t count_leaves(const StrategyNode& node) {
  if (node.kind == StrategyNode::Kind::Leaf) return 1;
  std::size_t total = 0;
  for (const auto& c : node.children) total += count_leaves(*c);
  return total;
}

void for_each_leaf(const StrategyNode& node,
                   const std::function<void(const StrategyNode&)>& fn) {
  if (node.kind == StrategyNode::Kind::Leaf) {
    fn(node);
    return;
  }
  for (const auto& c : node.children) for_each_leaf(*c, fn);
}

}  // namespace qip::oracle
