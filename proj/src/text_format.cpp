#include "qip/errors.hpp"
#include "qip/io.hpp"

#include <fstream>
#include <optional>
#include <sstream>
#include <vector>

namespace qip {

namespace {

struct Token {
  std::string_view text;
  std::size_t column;  // 1-based
};

std::vector<Token> tokenize(std::string_view line) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    const std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t') ++i;
    if (i > start) out.push_back({line.substr(start, i - start), start + 1});
  }
  return out;
}

[[noreturn]] void syntax(std::size_t line, std::size_t col, const std::string& msg) {
  throw ParseError(ParseErrorKind::Syntax, line, col, msg);
}

[[noreturn]] void semantic(std::size_t line, std::size_t col, const std::string& msg) {
  throw ParseError(ParseErrorKind::Semantic, line, col, msg);
}

Rational rational_token(const Token& t, std::size_t line) {
  auto r = parse_rational(t.text);
  if (!r) syntax(line, t.column, "invalid rational '" + std::string(t.text) + "'");
  return *r;
}

struct RowDecl {
  std::vector<Rational> coefs;
  Rational rhs;
  std::size_t line;
};

}  // namespace

QipInstance parse_qip(std::string_view text) {
  std::optional<std::string> name;
  std::optional<std::size_t> nvars;
  std::size_t nvars_line = 0;
  std::optional<std::vector<Quantifier>> quant;
  std::size_t quant_line = 0;
  std::optional<std::vector<Rational>> obj;
  std::size_t obj_line = 0;
  std::vector<RowDecl> rows;
  bool any = false;

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t nl = text.find('\n', pos);
    std::string_view line =
        text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    const auto tokens = tokenize(line);
    if (tokens.empty()) continue;
    any = true;
    const Token& kw = tokens.front();
    const auto args = std::vector<Token>(tokens.begin() + 1, tokens.end());

    if (kw.text == "NAME") {
      if (name) semantic(line_no, kw.column, "duplicate NAME");
      if (args.empty()) syntax(line_no, 0, "NAME needs a value");
      const std::size_t b = args.front().column - 1;
      const std::size_t e = args.back().column - 1 + args.back().text.size();
      name = std::string(line.substr(b, e - b));
    } else if (kw.text == "NVARS") {
      if (nvars) semantic(line_no, kw.column, "duplicate NVARS");
      if (args.size() != 1) syntax(line_no, 0, "NVARS takes exactly one integer");
      const auto v = parse_rational(args[0].text);
      if (!v || v->get_den() != 1 || sgn(*v) < 0 || args[0].text.find('/') != std::string_view::npos ||
          !v->get_num().fits_ulong_p()) {
        syntax(line_no, args[0].column, "NVARS must be a non-negative integer");
      }
      nvars = v->get_num().get_ui();
      nvars_line = line_no;
    } else if (kw.text == "QUANT") {
      if (quant) semantic(line_no, kw.column, "duplicate QUANT");
      std::vector<Quantifier> q;
      for (const Token& t : args) {
        if (t.text == "E") q.push_back(Quantifier::Existential);
        else if (t.text == "A") q.push_back(Quantifier::Universal);
        else syntax(line_no, t.column, "quantifier must be E or A");
      }
      quant = std::move(q);
      quant_line = line_no;
    } else if (kw.text == "OBJ") {
      if (obj) semantic(line_no, kw.column, "duplicate OBJ");
      std::vector<Rational> c;
      for (const Token& t : args) c.push_back(rational_token(t, line_no));
      obj = std::move(c);
      obj_line = line_no;
    } else if (kw.text == "ROW") {
      std::size_t le = args.size();
      for (std::size_t t = 0; t < args.size(); ++t) {
        if (args[t].text == "<=") {
          le = t;
          break;
        }
      }
      if (le == args.size()) syntax(line_no, 0, "ROW needs '<='");
      if (le + 2 != args.size()) {
        syntax(line_no, le + 1 < args.size() ? args[le].column : 0,
               "'<=' must be followed by exactly one rational");
      }
      RowDecl r;
      for (std::size_t t = 0; t < le; ++t) r.coefs.push_back(rational_token(args[t], line_no));
      r.rhs = rational_token(args[le + 1], line_no);
      r.line = line_no;
      rows.push_back(std::move(r));
    } else if (kw.text == "DOMAIN" || kw.text == "BOUNDS" || kw.text == "INT" ||
               kw.text == "GENERAL" || kw.text == "INTEGER") {
      semantic(line_no, kw.column, "non-binary domains not supported");
    } else {
      syntax(line_no, kw.column, "unknown keyword '" + std::string(kw.text) + "'");
    }
  }

  if (!any) syntax(0, 0, "empty input");
  if (!nvars) semantic(0, 0, "missing NVARS");
  if (!quant) semantic(0, 0, "missing QUANT");
  if (!obj) semantic(0, 0, "missing OBJ");
  const std::size_t n = *nvars;
  if (n == 0) semantic(nvars_line, 0, "instance has no variables");
  if (quant->size() != n) {
    semantic(quant_line, 0,
             "QUANT has " + std::to_string(quant->size()) + " entries, expected " +
                 std::to_string(n));
  }
  if (obj->size() != n) {
    semantic(obj_line, 0,
             "OBJ has " + std::to_string(obj->size()) + " entries, expected " + std::to_string(n));
  }
  std::vector<std::vector<Rational>> a;
  std::vector<Rational> b;
  for (auto& r : rows) {
    if (r.coefs.size() != n) {
      semantic(r.line, 0,
               "ROW has " + std::to_string(r.coefs.size()) + " coefficients, expected " +
                   std::to_string(n));
    }
    a.push_back(std::move(r.coefs));
    b.push_back(std::move(r.rhs));
  }
  try {
    return QipInstance(std::move(*quant), std::move(a), std::move(b), std::move(*obj),
                       name.value_or(std::string()));
  } catch (const ValidationError& e) {
    semantic(0, 0, e.what());
  }
}

std::string serialize_qip(const QipInstance& instance) {
  std::string out;
  if (!instance.name().empty()) out += "NAME " + instance.name() + "\n";
  out += "NVARS " + std::to_string(instance.num_vars()) + "\n";
  out += "QUANT";
  for (Quantifier q : instance.quantifiers()) {
    out += ' ';
    out += to_char(q);
  }
  out += "\nOBJ";
  for (const Rational& c : instance.objective()) out += " " + to_string(c);
  out += '\n';
  for (std::size_t i = 0; i < instance.num_rows(); ++i) {
    out += "ROW";
    for (const Rational& a : instance.row(i)) out += " " + to_string(a);
    out += " <= " + to_string(instance.rhs(i)) + "\n";
  }
  return out;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw Error("cannot read '" + path + "'");
  return ss.str();
}

void write_text_file(const std::string& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write '" + path + "'");
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw Error("cannot write '" + path + "'");
}

}  // namespace qip
