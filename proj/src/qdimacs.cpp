#include "qip/errors.hpp"
#include "qip/io.hpp"

#include <charconv>
#include <optional>
#include <set>
#include <vector>

namespace qip {

namespace {

struct Tok {
  std::string_view text;
  std::size_t column;
};

std::vector<Tok> split(std::string_view line) {
  std::vector<Tok> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    const std::size_t s = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t') ++i;
    if (i > s) out.push_back({line.substr(s, i - s), s + 1});
  }
  return out;
}

std::optional<long long> to_int(std::string_view s) {
  long long v = 0;
  const char* b = s.data();
  const char* e = s.data() + s.size();
  if (b != e && *b == '+') ++b;
  const auto [p, ec] = std::from_chars(b, e, v);
  if (ec != std::errc() || p != e || b == e) return std::nullopt;
  return v;
}

[[noreturn]] void fail(std::size_t line, std::size_t col, const std::string& msg) {
  throw ParseError(ParseErrorKind::Syntax, line, col, msg);
}

}  // namespace

QipInstance import_qdimacs(std::string_view text) {
  std::optional<std::size_t> nv;
  std::vector<Quantifier> quant_of;  // by QDIMACS variable (1-based)
  std::vector<bool> bound;
  std::vector<std::size_t> prefix_order;
  std::vector<std::vector<long long>> clauses;
  std::vector<long long> pending;
  std::size_t pending_line = 0;

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    const std::size_t nl = text.find('\n', pos);
    std::string_view line =
        text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() : nl + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    const auto toks = split(line);
    if (toks.empty() || toks[0].text == "c") continue;

    if (toks[0].text == "p") {
      if (nv) fail(line_no, toks[0].column, "duplicate header");
      if (toks.size() != 4 || toks[1].text != "cnf") fail(line_no, 0, "malformed header");
      const auto v = to_int(toks[2].text);
      const auto c = to_int(toks[3].text);
      if (!v || !c || *v < 0 || *c < 0) fail(line_no, 0, "malformed header");
      nv = static_cast<std::size_t>(*v);
      quant_of.assign(*nv + 1, Quantifier::Existential);
      bound.assign(*nv + 1, false);
      continue;
    }
    if (!nv) fail(line_no, 1, "missing 'p cnf' header");

    if (toks[0].text == "e" || toks[0].text == "a") {
      if (!clauses.empty() || !pending.empty()) {
        fail(line_no, 1, "quantifier line after clauses");
      }
      const Quantifier q = toks[0].text == "e" ? Quantifier::Existential : Quantifier::Universal;
      if (toks.size() < 2 || toks.back().text != "0") {
        fail(line_no, 0, "missing terminating 0");
      }
      for (std::size_t t = 1; t + 1 < toks.size(); ++t) {
        const auto v = to_int(toks[t].text);
        if (!v) fail(line_no, toks[t].column, "invalid variable");
        if (*v <= 0 || static_cast<std::size_t>(*v) > *nv) {
          fail(line_no, toks[t].column, "variable out of range");
        }
        const auto j = static_cast<std::size_t>(*v);
        if (bound[j]) fail(line_no, toks[t].column, "duplicate variable " + std::to_string(j));
        bound[j] = true;
        quant_of[j] = q;
        prefix_order.push_back(j);
      }
      continue;
    }

    for (const Tok& t : toks) {
      const auto v = to_int(t.text);
      if (!v) fail(line_no, t.column, "invalid literal");
      if (*v == 0) {
        clauses.push_back(std::move(pending));
        pending.clear();
        continue;
      }
      const long long mag = *v < 0 ? -*v : *v;
      if (static_cast<std::size_t>(mag) > *nv) fail(line_no, t.column, "literal out of range");
      if (pending.empty()) pending_line = line_no;
      pending.push_back(*v);
    }
  }
  if (!nv) fail(0, 0, "missing 'p cnf' header");
  if (!pending.empty()) fail(pending_line, 0, "missing terminating 0");

  // Free variables first, then the prefix order.
  std::vector<std::size_t> index_of(*nv + 1);
  std::vector<Quantifier> quant;
  for (std::size_t j = 1; j <= *nv; ++j) {
    if (!bound[j]) {
      index_of[j] = quant.size();
      quant.push_back(Quantifier::Existential);
    }
  }
  for (std::size_t j : prefix_order) {
    index_of[j] = quant.size();
    quant.push_back(quant_of[j]);
  }
  const std::size_t n = quant.size();

  std::vector<std::vector<Rational>> rows;
  std::vector<Rational> rhs;
  for (const auto& clause : clauses) {
    std::set<long long> pos_lits;
    std::set<long long> neg_lits;
    for (long long lit : clause) (lit > 0 ? pos_lits : neg_lits).insert(lit > 0 ? lit : -lit);
    std::vector<Rational> row(n);
    for (long long v : neg_lits) row[index_of[static_cast<std::size_t>(v)]] += 1;
    for (long long v : pos_lits) row[index_of[static_cast<std::size_t>(v)]] -= 1;
    rows.push_back(std::move(row));
    rhs.emplace_back(static_cast<long>(neg_lits.size()) - 1);
  }
  try {
    return QipInstance(std::move(quant), std::move(rows), std::move(rhs), std::vector<Rational>(n));
  } catch (const ValidationError& e) {
    throw ParseError(ParseErrorKind::Semantic, 0, 0, e.what());
  }
}

}  // namespace qip
