#pragma once

// Exhaustive reference semantics. No pruning of any kind: every leaf below
// the requested node is evaluated. Meant for n up to about 20.

#include "qip/instance.hpp"

#include <functional>
#include <memory>
#include <optional>
#include <vector>

namespace qip {

/// Existential strategy tree. Existential nodes keep one child, universal
/// nodes both (child 0 then child 1), leaves carry the total assignment.
struct StrategyNode {
  enum class Kind { ExistentialChoice, UniversalSplit, Leaf };

  Kind kind = Kind::Leaf;
  std::size_t var = 0;  // inner nodes only
  int chosen = 0;       // ExistentialChoice only
  std::vector<std::unique_ptr<StrategyNode>> children;
  Assignment leaf;      // Leaf only
  ExtValue value = ExtValue::plus_infinity();  // minimax value of the node
};

using StrategyTree = std::unique_ptr<StrategyNode>;

namespace oracle {

/// f(v) for the node reached by prefix.
ExtValue minimax(const QipInstance& instance, const Assignment& prefix);

/// Optimal winning strategy (ties at existential nodes prefer 0), or nullopt
/// when the root value is +infinity.
std::optional<StrategyTree> optimal_strategy(const QipInstance& instance);

/// Path of optimal play through optimal_strategy(); at universal nodes the
/// child of maximal value is followed, ties prefer 0.
std::optional<Assignment> principal_variation(const QipInstance& instance);

/// Number of leaves in a strategy tree, and a visitor over them.
std::size_t count_leaves(const StrategyNode& node);
void for_each_leaf(const StrategyNode& node, const std::function<void(const StrategyNode&)>& fn);

}  // namespace oracle
}  // namespace qip
