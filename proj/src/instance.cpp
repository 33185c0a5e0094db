#include "qip/instance.hpp"

#include "qip/errors.hpp"

#include <algorithm>

namespace qip {

char to_char(Quantifier q) { return q == Quantifier::Existential ? 'E' : 'A'; }

namespace {

std::vector<std::vector<std::size_t>> build_column_index(
    std::size_t n, const std::vector<std::vector<Rational>>& rows) {
  std::vector<std::vector<std::size_t>> index(n);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < rows[i].size() && j < n; ++j) {
      if (sgn(rows[i][j]) != 0) index[j].push_back(i);
    }
  }
  return index;
}

}  // namespace

QipInstance::QipInstance(std::vector<Quantifier> quantifiers,
                         std::vector<std::vector<Rational>> rows,
                         std::vector<Rational> rhs, std::vector<Rational> objective,
                         std::string name) {
  parts_.quantifiers = std::move(quantifiers);
  parts_.rows = std::move(rows);
  parts_.rhs = std::move(rhs);
  parts_.objective = std::move(objective);
  parts_.name = std::move(name);
  // Callers may hand in unreduced fractions such as mpq_class(6, 3).
  for (auto& row : parts_.rows) {
    for (Rational& v : row) v.canonicalize();
  }
  for (Rational& v : parts_.rhs) v.canonicalize();
  for (Rational& v : parts_.objective) v.canonicalize();
  parts_.column_index = build_column_index(parts_.quantifiers.size(), parts_.rows);
  validate(*this);
}

QipInstance QipInstance::from_parts_unchecked(Parts parts) {
  return QipInstance(std::move(parts));
}

QipInstance QipInstance::with_objective(std::vector<Rational> objective) const {
  Parts parts = parts_;
  parts.objective = std::move(objective);
  for (Rational& v : parts.objective) v.canonicalize();
  QipInstance out(std::move(parts));
  validate(out);
  return out;
}

QipInstance QipInstance::with_name(std::string name) const {
  Parts parts = parts_;
  parts.name = std::move(name);
  QipInstance out(std::move(parts));
  validate(out);
  return out;
}

bool operator==(const QipInstance& a, const QipInstance& b) {
  return a.parts_.quantifiers == b.parts_.quantifiers && a.parts_.rows == b.parts_.rows &&
         a.parts_.rhs == b.parts_.rhs && a.parts_.objective == b.parts_.objective &&
         a.parts_.name == b.parts_.name;
}

void validate(const QipInstance& instance) {
  using K = ValidationErrorKind;
  const std::size_t n = instance.num_vars();
  const std::size_t m = instance.num_rows();
  if (n == 0) throw ValidationError(K::EmptyVariableSet, "instance has no variables");
  if (instance.rhs().size() != m) {
    throw ValidationError(K::DimensionMismatch,
                          "rhs has " + std::to_string(instance.rhs().size()) +
                              " entries, expected " + std::to_string(m));
  }
  if (instance.objective().size() != n) {
    throw ValidationError(K::DimensionMismatch,
                          "objective has " + std::to_string(instance.objective().size()) +
                              " entries, expected " + std::to_string(n));
  }
  for (std::size_t i = 0; i < m; ++i) {
    if (instance.row(i).size() != n) {
      throw ValidationError(K::DimensionMismatch,
                            "row " + std::to_string(i + 1) + " has " +
                                std::to_string(instance.row(i).size()) +
                                " entries, expected " + std::to_string(n));
    }
  }
  const auto& index = instance.column_index();
  if (index.size() != n) {
    throw ValidationError(K::MalformedColumnIndex, "column index has wrong length");
  }
  for (std::size_t j = 0; j < n; ++j) {
    std::size_t expected = 0;
    for (std::size_t i = 0; i < m; ++i) {
      if (sgn(instance.coef(i, j)) == 0) continue;
      if (expected >= index[j].size() || index[j][expected] != i) {
        throw ValidationError(K::MalformedColumnIndex,
                              "column index of variable " + std::to_string(j + 1) +
                                  " misses row " + std::to_string(i + 1));
      }
      ++expected;
    }
    if (expected != index[j].size()) {
      throw ValidationError(K::MalformedColumnIndex,
                            "column index of variable " + std::to_string(j + 1) +
                                " lists a zero entry");
    }
  }
  if (instance.name().find_first_of("#\r\n") != std::string::npos ||
      (!instance.name().empty() &&
       (instance.name().front() == ' ' || instance.name().back() == ' '))) {
    throw ValidationError(K::InvalidName,
                          "name must be a single trimmed line without '#'");
  }
}

std::size_t BlockStructure::block_of(std::size_t j) const {
  const auto it = std::upper_bound(blocks.begin(), blocks.end(), j,
                                   [](std::size_t v, const Block& b) { return v < b.end; });
  return static_cast<std::size_t>(it - blocks.begin());
}

BlockStructure block_structure(const QipInstance& instance) {
  BlockStructure out;
  const auto& q = instance.quantifiers();
  for (std::size_t j = 0; j < q.size(); ++j) {
    if (out.blocks.empty() || out.blocks.back().quantifier != q[j]) {
      out.blocks.push_back(Block{q[j], j, j + 1});
    } else {
      out.blocks.back().end = j + 1;
    }
  }
  return out;
}

const Rational& ExtValue::value() const {
  if (infinite_) throw PreconditionError("value() called on +infinity");
  return value_;
}

std::string ExtValue::to_string() const {
  return infinite_ ? std::string("+inf") : qip::to_string(value_);
}

Assignment Assignment::total(const std::vector<int>& values) {
  Assignment a(values.size());
  for (int v : values) a.push(v);
  return a;
}

Assignment Assignment::prefix(std::size_t n, const std::vector<int>& head) {
  if (head.size() > n) throw PreconditionError("prefix longer than assignment");
  Assignment a(n);
  for (int v : head) a.push(v);
  return a;
}

void Assignment::push(int value) {
  if (value != 0 && value != 1) throw PreconditionError("assignment entries must be 0 or 1");
  if (prefix_len_ >= values_.size()) throw PreconditionError("assignment already total");
  values_[prefix_len_++] = static_cast<std::int8_t>(value);
}

void Assignment::pop() {
  if (prefix_len_ == 0) throw PreconditionError("assignment is empty");
  values_[--prefix_len_] = kUnset;
}

std::vector<int> Assignment::to_vector() const {
  return std::vector<int>(values_.begin(), values_.end());
}

std::string Assignment::to_string() const {
  std::string out;
  for (std::size_t j = 0; j < values_.size(); ++j) {
    if (j) out += ' ';
    out += values_[j] == kUnset ? '-' : static_cast<char>('0' + values_[j]);
  }
  return out;
}

ExtValue evaluate_game(const QipInstance& instance, const Assignment& x) {
  if (x.size() != instance.num_vars() || !x.is_total()) {
    throw PreconditionError("evaluate_game needs a total assignment of length n");
  }
  Rational lhs;
  for (std::size_t i = 0; i < instance.num_rows(); ++i) {
    lhs = 0;
    instance.for_each_in_row(i, [&](std::size_t j, const Rational& a) {
      if (x[j]) lhs += a;
    });
    if (lhs > instance.rhs(i)) return ExtValue::plus_infinity();
  }
  Rational value = 0;
  for (std::size_t j = 0; j < instance.num_vars(); ++j) {
    if (x[j]) value += instance.obj(j);
  }
  return ExtValue::finite(std::move(value));
}

const char* to_string(MonotoneStatus status) {
  switch (status) {
    case MonotoneStatus::NonNegative: return "nonnegative";
    case MonotoneStatus::NonPositive: return "nonpositive";
    case MonotoneStatus::Both: return "both";
    case MonotoneStatus::Mixed: return "mixed";
  }
  return "?";
}

std::vector<MonotoneStatus> detect_monotone(const QipInstance& instance) {
  std::vector<MonotoneStatus> out(instance.num_vars());
  for (std::size_t j = 0; j < instance.num_vars(); ++j) {
    bool has_pos = sgn(instance.obj(j)) > 0;
    bool has_neg = sgn(instance.obj(j)) < 0;
    for (std::size_t i : instance.column_rows(j)) {
      const int s = sgn(instance.coef(i, j));
      has_pos |= s > 0;
      has_neg |= s < 0;
    }
    if (has_pos && has_neg) {
      out[j] = MonotoneStatus::Mixed;
    } else if (has_pos) {
      out[j] = MonotoneStatus::NonNegative;
    } else if (has_neg) {
      out[j] = MonotoneStatus::NonPositive;
    } else {
      out[j] = MonotoneStatus::Both;
    }
  }
  return out;
}

std::optional<int> monotone_forced_value(MonotoneStatus status, Quantifier q) {
  const bool universal = q == Quantifier::Universal;
  switch (status) {
    case MonotoneStatus::NonNegative: return universal ? 1 : 0;
    case MonotoneStatus::NonPositive: return universal ? 0 : 1;
    case MonotoneStatus::Both: return 0;
    case MonotoneStatus::Mixed: return std::nullopt;
  }
  return std::nullopt;
}

}  // namespace qip
