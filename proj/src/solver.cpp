#include "qip/solver.hpp"

#include "qip/errors.hpp"

#include <array>
#include <memory>
#include <stdexcept>

namespace qip {

const char* to_string(ScpMode mode) {
  switch (mode) {
    case ScpMode::Off: return "off";
    case ScpMode::Feasibility: return "feas";
    case ScpMode::Optimization: return "opt";
    case ScpMode::Both: return "both";
  }
  return "?";
}

std::optional<ScpMode> parse_scp_mode(std::string_view text) {
  if (text == "off") return ScpMode::Off;
  if (text == "feas" || text == "feasibility") return ScpMode::Feasibility;
  if (text == "opt" || text == "optimization") return ScpMode::Optimization;
  if (text == "both") return ScpMode::Both;
  return std::nullopt;
}

const char* to_string(SolveStatus status) {
  switch (status) {
    case SolveStatus::Feasible: return "feasible";
    case SolveStatus::Infeasible: return "infeasible";
    case SolveStatus::LimitReached: return "limit";
  }
  return "?";
}

void validate(const SearchOptions& options) {
  if (options.node_limit && *options.node_limit == 0) {
    throw PreconditionError("node limit must be positive");
  }
  if (options.time_limit && options.time_limit->count() <= 0) {
    throw PreconditionError("time limit must be positive");
  }
}

namespace {

MonotoneStatus status_from_signs(int c_sign, bool has_pos, bool has_neg) {
  const bool pos = has_pos || c_sign > 0;
  const bool neg = has_neg || c_sign < 0;
  if (pos && neg) return MonotoneStatus::Mixed;
  if (pos) return MonotoneStatus::NonNegative;
  if (neg) return MonotoneStatus::NonPositive;
  return MonotoneStatus::Both;
}

// Lexicographic key of setting x_k = 1 relative to x_k = 0: objective gain,
// then positive slack consumption, then (negated) slack gain. Only its sign
// matters. The maximizer tries the larger key first, the minimizer the
// smaller; ties go to 0.
std::array<int, 2> default_order(int c_sign, bool has_pos, bool has_neg, bool universal) {
  const int key = c_sign != 0 ? c_sign : (has_pos ? 1 : (has_neg ? -1 : 0));
  const bool one_first = universal ? key > 0 : key < 0;
  return one_first ? std::array<int, 2>{1, 0} : std::array<int, 2>{0, 1};
}

struct ColumnSigns {
  int c_sign = 0;
  bool has_pos = false;
  bool has_neg = false;
};

ColumnSigns column_signs(const QipInstance& instance, std::size_t k) {
  ColumnSigns s;
  s.c_sign = sgn(instance.obj(k));
  for (std::size_t i : instance.column_rows(k)) {
    const int v = sgn(instance.coef(i, k));
    s.has_pos |= v > 0;
    s.has_neg |= v < 0;
  }
  return s;
}

template <class Int>
int sign_of(const Int& v) {
  return v > 0 ? 1 : (v < 0 ? -1 : 0);
}

struct LimitHit {};

using Clock = std::chrono::steady_clock;
using Leaf = std::shared_ptr<const std::vector<std::int8_t>>;

// Extended integer: -inf, finite, +inf.
template <class Int>
struct XV {
  std::int8_t kind = 0;
  Int v = Int(0);

  static XV fin(Int x) { return XV{0, std::move(x)}; }
  static XV neg_inf() { return XV{-1, Int(0)}; }
  static XV pos_inf() { return XV{1, Int(0)}; }
  bool finite() const { return kind == 0; }
};

template <class Int>
int cmp(const XV<Int>& a, const XV<Int>& b) {
  if (a.kind != b.kind) return a.kind < b.kind ? -1 : 1;
  if (a.kind != 0) return 0;
  return a.v < b.v ? -1 : (b.v < a.v ? 1 : 0);
}
template <class Int> bool operator==(const XV<Int>& a, const XV<Int>& b) { return cmp(a, b) == 0; }
template <class Int> bool operator<(const XV<Int>& a, const XV<Int>& b) { return cmp(a, b) < 0; }
template <class Int> bool operator<=(const XV<Int>& a, const XV<Int>& b) { return cmp(a, b) <= 0; }
template <class Int> bool operator>=(const XV<Int>& a, const XV<Int>& b) { return cmp(a, b) >= 0; }
template <class Int> const XV<Int>& lesser(const XV<Int>& a, const XV<Int>& b) { return b < a ? b : a; }
template <class Int> const XV<Int>& greater(const XV<Int>& a, const XV<Int>& b) { return a < b ? b : a; }

// A solved leaf travelling up the tree. Below every universal ancestor
// passed so far the copied strategy is winning with value at most z; in
// pruning mode the current node's value is exactly z.
template <class Int>
struct Walk {
  Leaf leaf;
  Int z;
  bool pruning = true;
};

// lo <= f(node) <= hi, and either lo == hi, hi <= alpha or lo >= beta.
template <class Int>
struct Res {
  XV<Int> lo;
  XV<Int> hi;
  Leaf leaf;  // a leaf realizing the value when exact and finite
  std::optional<Walk<Int>> walk;

  bool exact() const { return lo == hi; }
};

template <class Int>
class Engine {
 public:
  using X = XV<Int>;
  using R = Res<Int>;

  Engine(const IntegerForm<Int>& form, const SearchOptions& options, int phase, bool scp,
         SearchStats& stats, std::optional<Clock::time_point> deadline)
      : f_(form), opts_(options), phase_(phase), scp_(scp), stats_(stats),
        deadline_(deadline), x_(form.n, 0), potential_(form.m, Int(0)),
        contrib_(form.n), suffix_lb_(form.n + 1, Int(0)), forced_(form.n, -1),
        order_(form.n) {
    const std::size_t n = f_.n;
    for (std::size_t j = 0; j < n; ++j) {
      ColumnSigns s;
      s.c_sign = sign_of(f_.obj[j]);
      for (std::size_t t = 0; t < f_.column_rows[j].size(); ++t) {
        const Int& a = f_.column_coefs[j][t];
        s.has_pos |= a > 0;
        s.has_neg |= a < 0;
        Int w = f_.is_universal(j) ? (a > 0 ? a : Int(0)) : (a < 0 ? a : Int(0));
        potential_[f_.column_rows[j][t]] += w;
        contrib_[j].push_back(std::move(w));
      }
      if (opts_.mono) {
        const auto forced = monotone_forced_value(
            status_from_signs(s.c_sign, s.has_pos, s.has_neg), f_.quant[j]);
        if (forced) forced_[j] = static_cast<std::int8_t>(*forced);
      }
      order_[j] = opts_.ordering == MoveOrdering::Naive
                      ? std::array<int, 2>{0, 1}
                      : default_order(s.c_sign, s.has_pos, s.has_neg, f_.is_universal(j));
    }
    for (std::size_t j = n; j-- > 0;) {
      const Int& c = f_.obj[j];
      const bool take = f_.is_universal(j) ? c > 0 : c < 0;
      suffix_lb_[j] = suffix_lb_[j + 1];
      if (take) suffix_lb_[j] += c;
    }
    first_block_end_ = 0;
    while (first_block_end_ < n && !f_.is_universal(first_block_end_)) ++first_block_end_;
  }

  R run(const X& alpha, const X& beta) { return search(0, alpha, beta); }

  const std::optional<Int>& incumbent() const { return incumbent_; }

 private:
  void tick() {
    ++stats_.nodes_visited;
    if (opts_.node_limit && stats_.nodes_visited > *opts_.node_limit) throw LimitHit{};
    if (deadline_ && (stats_.nodes_visited & 255u) == 0 && Clock::now() > *deadline_) {
      throw LimitHit{};
    }
  }

  void fix(std::size_t j, int v) {
    x_[j] = static_cast<std::int8_t>(v);
    const auto& rows = f_.column_rows[j];
    for (std::size_t t = 0; t < rows.size(); ++t) {
      Int& p = potential_[rows[t]];
      p -= contrib_[j][t];
      if (v) p += f_.column_coefs[j][t];
    }
    if (v) obj_act_ += f_.obj[j];
  }

  void unfix(std::size_t j) {
    const int v = x_[j];
    const auto& rows = f_.column_rows[j];
    for (std::size_t t = 0; t < rows.size(); ++t) {
      Int& p = potential_[rows[t]];
      p += contrib_[j][t];
      if (v) p -= f_.column_coefs[j][t];
    }
    if (v) obj_act_ -= f_.obj[j];
    x_[j] = 0;
  }

  // A row the universal player can violate on his own whatever the
  // existential player does.
  bool rows_ok(std::size_t j) const {
    for (std::uint32_t i : f_.column_rows[j]) {
      if (potential_[i] > f_.rhs[i]) return false;
    }
    return true;
  }

  bool all_rows_ok() const {
    for (std::size_t i = 0; i < f_.m; ++i) {
      if (potential_[i] > f_.rhs[i]) return false;
    }
    return true;
  }

  Assignment prefix(std::size_t d) const {
    Assignment a(f_.n);
    for (std::size_t j = 0; j < d; ++j) a.push(x_[j]);
    return a;
  }

  Int child_lb(std::size_t d, int v) const {
    Int lb = obj_act_ + suffix_lb_[d + 1];
    if (v) lb += f_.obj[d];
    return lb;
  }

  R search(std::size_t d, const X& alpha, const X& beta) {
    tick();
    if (opts_.on_node) opts_.on_node(phase_, prefix(d));
    if (d == 0 ? !all_rows_ok() : !rows_ok(d - 1)) return R{X::pos_inf(), X::pos_inf(), {}, {}};
    if (d == f_.n) {
      ++stats_.leaves_evaluated;
      auto leaf = std::make_shared<const std::vector<std::int8_t>>(x_);
      const X v = X::fin(obj_act_);
      return R{v, v, leaf, Walk<Int>{leaf, obj_act_, true}};
    }
    const X lb = X::fin(obj_act_ + suffix_lb_[d]);
    if (lb >= beta) return R{lb, X::pos_inf(), {}, {}};

    R r;
    if (forced_[d] >= 0) {
      ++stats_.mono_prunes;
      fix(d, forced_[d]);
      r = search(d + 1, alpha, beta);
      unfix(d);
    } else if (f_.is_universal(d)) {
      r = universal_node(d, alpha, beta);
    } else {
      r = existential_node(d, alpha, beta);
    }
    if (phase_ == 2 && d <= first_block_end_ && r.exact() && r.lo.finite() &&
        (!incumbent_ || r.lo.v < *incumbent_)) {
      incumbent_ = r.lo.v;
    }
    return r;
  }

  R existential_node(std::size_t d, const X& alpha, const X& beta) {
    const auto& ord = order_[d];
    X cur_beta = beta;
    X lo = X::pos_inf();
    X hi = X::pos_inf();
    Leaf leaf;
    std::optional<Walk<Int>> walk;
    bool explored = false;
    for (int idx = 0; idx < 2; ++idx) {
      const int v = ord[idx];
      const X clb = X::fin(child_lb(d, v));
      if (clb >= cur_beta) {
        lo = lesser(lo, clb);
        continue;
      }
      fix(d, v);
      R r;
      if (opts_.scout && explored && cur_beta.finite() && alpha < X::fin(cur_beta.v - 1)) {
        r = search(d + 1, X::fin(cur_beta.v - 1), cur_beta);
        if (!(r.lo >= cur_beta)) r = search(d + 1, alpha, cur_beta);
      } else {
        r = search(d + 1, alpha, cur_beta);
      }
      unfix(d);
      explored = true;
      if (r.hi < hi) {
        hi = r.hi;
        leaf = r.exact() ? r.leaf : nullptr;
      }
      lo = lesser(lo, r.lo);
      if (r.walk && (!walk || r.walk->z < walk->z ||
                     (r.walk->z == walk->z && r.walk->pruning && !walk->pruning))) {
        walk = r.walk;
      }
      if (r.hi <= alpha) {
        for (int rest = idx + 1; rest < 2; ++rest) lo = lesser(lo, X::fin(child_lb(d, ord[rest])));
        break;
      }
      if (r.lo >= cur_beta) continue;
      cur_beta = r.lo;
    }
    const bool exact = lo == hi;
    if (walk) walk->pruning = walk->pruning && exact && lo.finite() && lo.v == walk->z;
    return R{lo, hi, exact ? leaf : nullptr, walk};
  }

  enum class Check { Ok, Objective, Row };

  Check check(std::size_t d, const Walk<Int>& w, int xhat, Int& zhat, std::size_t& bad_row) const {
    const std::span<const std::int8_t> x(*w.leaf);
    const Int lhs1 = scp_detail::objective_lhs(f_, x, d, xhat);
    zhat = w.z + lhs1;
    if (lhs1 > 0) return Check::Objective;
    for (std::uint32_t i : f_.column_rows[d]) {
      if (scp_detail::row_lhs(f_, x, d, xhat, i) > f_.rhs[i]) {
        bad_row = i;
        return Check::Row;
      }
    }
    return Check::Ok;
  }

  void emit(RecycleEffectKind kind, std::size_t d, const Walk<Int>& w, const Int& zhat,
            bool skipped, std::string reason) const {
    if (!opts_.on_scp_event) return;
    ScpEvent e;
    e.kind = kind;
    e.phase = phase_;
    e.k = d;
    e.node = prefix(d);
    e.x_tilde = Assignment::total(std::vector<int>(w.leaf->begin(), w.leaf->end()));
    e.z_tilde = unscale_objective(f_, w.z);
    e.z_hat = unscale_objective(f_, zhat);
    e.sibling_skipped = skipped;
    e.reason = std::move(reason);
    opts_.on_scp_event(e);
  }

  static std::string reason_text(Check c, std::size_t row) {
    return c == Check::Objective ? std::string("objective condition")
                                 : "constraint condition, row " + std::to_string(row + 1);
  }

  R universal_node(std::size_t d, const X& alpha, const X& beta) {
    const int a = order_[d][0];
    const int b = order_[d][1];
    fix(d, a);
    R ra = search(d + 1, alpha, beta);
    unfix(d);
    if (ra.lo >= beta) return R{ra.lo, X::pos_inf(), {}, {}};

    const X cur_alpha = ra.hi <= alpha ? alpha : ra.lo;
    X lo = ra.lo;
    X hi = ra.hi;
    std::optional<Walk<Int>> passed;
    bool skip = false;
    X beta_b = beta;
    Int zhat(0);
    std::size_t bad_row = 0;
    if (scp_ && ra.walk) {
      const Check c = check(d, *ra.walk, b, zhat, bad_row);
      if (c == Check::Ok) {
        passed = ra.walk;
        const X zh = X::fin(zhat);
        if (ra.walk->pruning || zh <= greater(alpha, ra.lo)) {
          skip = true;
        } else {
          beta_b = lesser(beta, X::fin(zhat + 1));
        }
        if (skip) {
          ++stats_.scp_prunes;
          hi = greater(hi, zh);
        }
        if (!ra.walk->pruning) ++stats_.scp_bound_updates;
        emit(ra.walk->pruning ? RecycleEffectKind::SubtreePruned : RecycleEffectKind::BoundUpdated,
             d, *ra.walk, zhat, skip, {});
      } else {
        emit(RecycleEffectKind::Stopped, d, *ra.walk, zhat, false, reason_text(c, bad_row));
      }
    }

    Leaf leaf;
    std::optional<R> rb;
    if (!skip) {
      fix(d, b);
      rb = search(d + 1, cur_alpha, beta_b);
      unfix(d);
      lo = greater(lo, rb->lo);
      hi = greater(hi, rb->hi);
      if (!passed && scp_ && rb->walk) {
        const Check c = check(d, *rb->walk, a, zhat, bad_row);
        if (c == Check::Ok) {
          passed = rb->walk;
          if (!rb->walk->pruning) ++stats_.scp_bound_updates;
          emit(rb->walk->pruning ? RecycleEffectKind::SubtreePruned
                                 : RecycleEffectKind::BoundUpdated,
               d, *rb->walk, zhat, false, {});
        } else {
          emit(RecycleEffectKind::Stopped, d, *rb->walk, zhat, false, reason_text(c, bad_row));
        }
      }
    }
    if (passed) hi = lesser(hi, X::fin(passed->z));
    if (lo == hi && lo.finite()) {
      if (ra.exact() && ra.lo == lo) {
        leaf = ra.leaf;
      } else if (rb && rb->exact() && rb->lo == lo) {
        leaf = rb->leaf;
      }
    }
    return R{lo, hi, leaf, passed};
  }

  const IntegerForm<Int>& f_;
  const SearchOptions& opts_;
  int phase_;
  bool scp_;
  SearchStats& stats_;
  std::optional<Clock::time_point> deadline_;

  std::vector<std::int8_t> x_;
  // Row activity of the fixed prefix plus the universal player's worst
  // case over the unfixed variables.
  std::vector<Int> potential_;
  std::vector<std::vector<Int>> contrib_;
  std::vector<Int> suffix_lb_;
  std::vector<std::int8_t> forced_;
  std::vector<std::array<int, 2>> order_;
  std::size_t first_block_end_ = 0;
  Int obj_act_ = Int(0);
  std::optional<Int> incumbent_;
};

struct PhaseOutcome {
  bool limit = false;
  bool infinite = false;
  std::optional<Rational> value;
  std::optional<Assignment> pv;
  std::optional<Rational> incumbent;
};

PhaseOutcome run_phase(const QipInstance& instance, const SearchOptions& options, int phase,
                       bool scp, SearchStats& stats, std::optional<Clock::time_point> deadline) {
  return with_integer_form(
      instance, phase == 1, options.integer_path, [&](const auto& form) -> PhaseOutcome {
        using Int = typename std::decay_t<decltype(form.rhs)>::value_type;
        using X = XV<Int>;
        Engine<Int> engine(form, options, phase, scp, stats, deadline);
        PhaseOutcome out;
        try {
          const X alpha = phase == 1 ? X::fin(Int(0)) : X::neg_inf();
          const X beta = phase == 1 ? X::fin(Int(1)) : X::pos_inf();
          const Res<Int> r = engine.run(alpha, beta);
          if (phase == 1) {
            out.infinite = r.lo >= beta;
          } else if (!r.lo.finite()) {
            out.infinite = true;
          } else {
            if (!r.exact() || !r.leaf) throw std::logic_error("optimization search not exact");
            out.value = unscale_objective(form, r.lo.v);
            out.pv = Assignment::total(std::vector<int>(r.leaf->begin(), r.leaf->end()));
          }
        } catch (const LimitHit&) {
          out.limit = true;
        }
        if (engine.incumbent()) out.incumbent = unscale_objective(form, *engine.incumbent());
        return out;
      });
}

bool scp_in_phase(ScpMode mode, int phase) {
  if (mode == ScpMode::Both) return true;
  return phase == 1 ? mode == ScpMode::Feasibility : mode == ScpMode::Optimization;
}

Rational static_lower_bound(const QipInstance& instance) {
  Rational lb = 0;
  for (std::size_t j = 0; j < instance.num_vars(); ++j) {
    const Rational& c = instance.obj(j);
    if (instance.is_universal(j) ? sgn(c) > 0 : sgn(c) < 0) lb += c;
  }
  return lb;
}

std::optional<Clock::time_point> deadline_of(const SearchOptions& options,
                                             Clock::time_point start) {
  if (!options.time_limit) return std::nullopt;
  return start + *options.time_limit;
}

}  // namespace

SolveResult solve(const QipInstance& instance, const SearchOptions& options) {
  validate(options);
  const auto start = Clock::now();
  const auto deadline = deadline_of(options, start);
  SolveResult out;
  auto finish = [&]() -> SolveResult {
    out.stats.elapsed = std::chrono::duration_cast<std::chrono::nanoseconds>(Clock::now() - start);
    return out;
  };
  auto limit_reached = [&](std::optional<Rational> incumbent) {
    out.status = SolveStatus::LimitReached;
    out.value = ExtValue::plus_infinity();
    out.lower_bound = static_lower_bound(instance);
    if (incumbent) out.upper_bound = ExtValue::finite(*incumbent);
    return finish();
  };

  const PhaseOutcome p1 =
      run_phase(instance, options, 1, scp_in_phase(options.scp, 1), out.stats, deadline);
  if (p1.limit) return limit_reached(std::nullopt);
  if (p1.infinite) {
    out.status = SolveStatus::Infeasible;
    out.value = ExtValue::plus_infinity();
    return finish();
  }

  const PhaseOutcome p2 =
      run_phase(instance, options, 2, scp_in_phase(options.scp, 2), out.stats, deadline);
  if (p2.limit) return limit_reached(p2.incumbent);
  if (p2.infinite) throw std::logic_error("phases disagree on feasibility");
  out.status = SolveStatus::Feasible;
  out.value = ExtValue::finite(*p2.value);
  out.pv = p2.pv;
  const auto blocks = block_structure(instance);
  for (std::size_t j = blocks.blocks.front().begin; j < blocks.blocks.front().end; ++j) {
    out.first_stage.push_back((*out.pv)[j]);
  }
  out.lower_bound = *p2.value;
  out.upper_bound = out.value;
  return finish();
}

FeasibilityResult check_feasibility(const QipInstance& instance, const SearchOptions& options) {
  validate(options);
  const auto start = Clock::now();
  FeasibilityResult out;
  const PhaseOutcome p1 = run_phase(instance, options, 1, scp_in_phase(options.scp, 1),
                                    out.stats, deadline_of(options, start));
  out.status = p1.limit ? SolveStatus::LimitReached
                        : (p1.infinite ? SolveStatus::Infeasible : SolveStatus::Feasible);
  out.stats.elapsed = std::chrono::duration_cast<std::chrono::nanoseconds>(Clock::now() - start);
  return out;
}

std::optional<int> prune_monotone(const QipInstance& instance,
                                  std::span<const MonotoneStatus> status, std::size_t k) {
  if (k >= instance.num_vars() || status.size() != instance.num_vars()) {
    throw PreconditionError("prune_monotone: index or status vector out of range");
  }
  return monotone_forced_value(status[k], instance.quantifier(k));
}

std::vector<int> order_moves(const QipInstance& instance, std::size_t k, MoveOrdering ordering,
                             std::span<const MonotoneStatus> status) {
  if (k >= instance.num_vars()) throw PreconditionError("order_moves: index out of range");
  if (!status.empty()) {
    if (const auto forced = prune_monotone(instance, status, k)) return {*forced};
  }
  if (ordering == MoveOrdering::Naive) return {0, 1};
  const ColumnSigns s = column_signs(instance, k);
  const auto ord = default_order(s.c_sign, s.has_pos, s.has_neg, instance.is_universal(k));
  return {ord[0], ord[1]};
}

}  // namespace qip
