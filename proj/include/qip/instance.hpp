#pragma once

#include "qip/rational.hpp"

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace qip {

enum class Quantifier : std::uint8_t { Existential, Universal };

char to_char(Quantifier q);

/// Binary quantified integer program
///
///   min_{B1} ( c1 x1 + max_{B2} ( c2 x2 + ... ) )  s.t.  Q o x in {0,1}^n : A x <= b
///
/// Immutable once constructed. Variables are indexed 0..n-1 in quantifier
/// order; rows 0..m-1. Besides the dense rows the instance keeps, per
/// column, the list of rows with a nonzero entry in that column.
class QipInstance {
 public:
  /// Raw parts, used to build instances that bypass index construction
  /// (e.g. to exercise validate()).
  struct Parts {
    std::vector<Quantifier> quantifiers;
    std::vector<std::vector<Rational>> rows;
    std::vector<Rational> rhs;
    std::vector<Rational> objective;
    std::string name;
    std::vector<std::vector<std::size_t>> column_index;
  };

  /// Builds the column index and validates; throws ValidationError.
  QipInstance(std::vector<Quantifier> quantifiers,
              std::vector<std::vector<Rational>> rows, std::vector<Rational> rhs,
              std::vector<Rational> objective, std::string name = {});

  /// No index construction and no validation.
  static QipInstance from_parts_unchecked(Parts parts);

  std::size_t num_vars() const noexcept { return parts_.quantifiers.size(); }
  std::size_t num_rows() const noexcept { return parts_.rows.size(); }
  const std::string& name() const noexcept { return parts_.name; }

  const std::vector<Quantifier>& quantifiers() const noexcept { return parts_.quantifiers; }
  Quantifier quantifier(std::size_t j) const { return parts_.quantifiers[j]; }
  bool is_universal(std::size_t j) const {
    return parts_.quantifiers[j] == Quantifier::Universal;
  }

  const std::vector<std::vector<Rational>>& rows() const noexcept { return parts_.rows; }
  const std::vector<Rational>& row(std::size_t i) const { return parts_.rows[i]; }
  const Rational& coef(std::size_t i, std::size_t j) const { return parts_.rows[i][j]; }
  const std::vector<Rational>& rhs() const noexcept { return parts_.rhs; }
  const Rational& rhs(std::size_t i) const { return parts_.rhs[i]; }
  const std::vector<Rational>& objective() const noexcept { return parts_.objective; }
  const Rational& obj(std::size_t j) const { return parts_.objective[j]; }

  /// Rows i with coef(i, j) != 0, ascending.
  std::span<const std::size_t> column_rows(std::size_t j) const {
    return parts_.column_index[j];
  }
  const std::vector<std::vector<std::size_t>>& column_index() const noexcept {
    return parts_.column_index;
  }

  template <class F>
  void for_each_in_row(std::size_t i, F&& f) const {
    const auto& r = parts_.rows[i];
    for (std::size_t j = 0; j < r.size(); ++j) {
      if (sgn(r[j]) != 0) f(j, r[j]);
    }
  }

  /// Same problem with a different objective vector.
  QipInstance with_objective(std::vector<Rational> objective) const;
  QipInstance with_name(std::string name) const;

  /// Structural equality (quantifiers, A, b, c, name).
  friend bool operator==(const QipInstance& a, const QipInstance& b);

 private:
  explicit QipInstance(Parts parts) : parts_(std::move(parts)) {}

  Parts parts_;
};

/// Throws ValidationError naming the first violated invariant.
void validate(const QipInstance& instance);

struct Block {
  Quantifier quantifier;
  std::size_t begin;  // first variable index
  std::size_t end;    // one past the last

  std::size_t size() const { return end - begin; }
  friend bool operator==(const Block&, const Block&) = default;
};

struct BlockStructure {
  std::vector<Block> blocks;

  std::size_t beta() const { return blocks.size(); }
  /// Index of the block containing variable j.
  std::size_t block_of(std::size_t j) const;
};

BlockStructure block_structure(const QipInstance& instance);

/// Objective value extended by +infinity (the "existential player loses"
/// marker). Only comparisons are defined on it.
class ExtValue {
 public:
  static ExtValue finite(Rational v) { return ExtValue(std::move(v), false); }
  static ExtValue plus_infinity() { return ExtValue(Rational(0), true); }

  bool is_finite() const noexcept { return !infinite_; }
  bool is_infinite() const noexcept { return infinite_; }
  /// Requires is_finite().
  const Rational& value() const;

  std::string to_string() const;

  friend bool operator==(const ExtValue& a, const ExtValue& b) {
    if (a.infinite_ || b.infinite_) return a.infinite_ == b.infinite_;
    return a.value_ == b.value_;
  }
  friend std::strong_ordering operator<=>(const ExtValue& a, const ExtValue& b) {
    if (a.infinite_ || b.infinite_) return a.infinite_ <=> b.infinite_;
    const int c = cmp(a.value_, b.value_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

 private:
  ExtValue(Rational v, bool inf) : value_(std::move(v)), infinite_(inf) {}

  Rational value_;
  bool infinite_;
};

/// Partial or total 0/1 vector. Positions [0, prefix_length()) are fixed.
class Assignment {
 public:
  static constexpr std::int8_t kUnset = -1;

  Assignment() = default;
  explicit Assignment(std::size_t n) : values_(n, kUnset) {}

  /// Total assignment; throws PreconditionError on non-0/1 entries.
  static Assignment total(const std::vector<int>& values);
  /// Assignment of length n fixing the leading entries.
  static Assignment prefix(std::size_t n, const std::vector<int>& head);

  std::size_t size() const noexcept { return values_.size(); }
  std::size_t prefix_length() const noexcept { return prefix_len_; }
  bool is_total() const noexcept { return prefix_len_ == values_.size(); }

  int operator[](std::size_t j) const { return values_[j]; }
  std::span<const std::int8_t> raw() const noexcept { return values_; }

  /// Fixes the next variable.
  void push(int value);
  void pop();

  std::vector<int> to_vector() const;
  std::string to_string() const;  // e.g. "1 0 - -"

  friend bool operator==(const Assignment&, const Assignment&) = default;

 private:
  std::vector<std::int8_t> values_;
  std::size_t prefix_len_ = 0;
};

/// Throws PreconditionError unless x is total and sized n.
ExtValue evaluate_game(const QipInstance& instance, const Assignment& x);

enum class MonotoneStatus : std::uint8_t { NonNegative, NonPositive, Both, Mixed };

const char* to_string(MonotoneStatus status);

std::vector<MonotoneStatus> detect_monotone(const QipInstance& instance);

/// Value a monotone variable can be fixed to without changing f: the
/// minimizer takes the smaller side, the maximizer the larger. Both counts
/// as NonNegative. nullopt for Mixed.
std::optional<int> monotone_forced_value(MonotoneStatus status, Quantifier q);

}  // namespace qip
