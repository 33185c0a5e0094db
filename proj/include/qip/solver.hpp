#pragma once

// Depth-first alpha-beta search over the quantifier prefix.
//
// Two phases: a null-window feasibility search on the zero objective, then
// the optimization search. Monotone variables are fixed to their dominant
// value; strategic copy-pruning reuses solved leaves in sibling subtrees of
// universal nodes.

#include "qip/instance.hpp"
#include "qip/integer_form.hpp"
#include "qip/scp.hpp"

#include <chrono>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace qip {

enum class ScpMode { Off, Feasibility, Optimization, Both };
enum class MoveOrdering { Default, Naive };
enum class SolveStatus { Feasible, Infeasible, LimitReached };

const char* to_string(ScpMode mode);  // off, feas, opt, both
std::optional<ScpMode> parse_scp_mode(std::string_view text);
const char* to_string(SolveStatus status);  // feasible, infeasible, limit

/// One application (or failed attempt) of copy-pruning at a universal node.
struct ScpEvent {
  RecycleEffectKind kind = RecycleEffectKind::Stopped;
  int phase = 0;          // 1 feasibility, 2 optimization
  std::size_t k = 0;      // universal variable of the node
  Assignment node;        // the node: first k variables fixed
  Assignment x_tilde;     // leaf whose existential decisions are copied
  Rational z_tilde;       // objective of x_tilde (0 in phase 1)
  Rational z_hat;         // bound on the sibling subtree
  bool sibling_skipped = false;
  std::string reason;     // Stopped only
};

struct SearchOptions {
  bool mono = true;
  ScpMode scp = ScpMode::Optimization;
  MoveOrdering ordering = MoveOrdering::Default;
  std::optional<std::uint64_t> node_limit;
  std::optional<std::chrono::milliseconds> time_limit;
  /// Null-window test before re-searching later existential children.
  bool scout = false;
  IntegerPath integer_path = IntegerPath::Auto;
  std::function<void(const ScpEvent&)> on_scp_event;
  /// Called on every node entry with the node's prefix.
  std::function<void(int phase, const Assignment&)> on_node;
};

struct SearchStats {
  std::uint64_t nodes_visited = 0;
  std::uint64_t scp_prunes = 0;
  std::uint64_t scp_bound_updates = 0;
  std::uint64_t mono_prunes = 0;
  std::uint64_t leaves_evaluated = 0;
  std::chrono::nanoseconds elapsed{0};
};

struct SolveResult {
  SolveStatus status = SolveStatus::LimitReached;
  ExtValue value = ExtValue::plus_infinity();
  std::optional<Assignment> pv;  // Feasible only
  std::vector<int> first_stage;  // values of the first block, Feasible only
  SearchStats stats;
  /// Bounds on the root value when the search stopped early.
  /// nullopt lower bound means minus infinity.
  std::optional<Rational> lower_bound;
  ExtValue upper_bound = ExtValue::plus_infinity();
};

struct FeasibilityResult {
  SolveStatus status = SolveStatus::LimitReached;
  SearchStats stats;
};

SolveResult solve(const QipInstance& instance, const SearchOptions& options = {});

/// Phase 1 only.
FeasibilityResult check_feasibility(const QipInstance& instance,
                                    const SearchOptions& options = {});

/// Forced value of variable k under monotone pruning, or nullopt.
std::optional<int> prune_monotone(const QipInstance& instance,
                                  std::span<const MonotoneStatus> status, std::size_t k);

/// Values to try at variable k, in order. With monotone statuses given
/// (non-empty span) a forced variable yields only its forced value.
std::vector<int> order_moves(const QipInstance& instance, std::size_t k, MoveOrdering ordering,
                             std::span<const MonotoneStatus> status = {});

/// Throws PreconditionError on non-positive limits.
void validate(const SearchOptions& options);

}  // namespace qip
