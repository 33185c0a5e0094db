#include "test_support.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <set>
#include <sstream>
#include <stdexcept>

namespace qip::testing {

QipInstance example1() {
  const auto E = Quantifier::Existential;
  const auto A = Quantifier::Universal;
  return QipInstance({E, A, E, A},
                     {{1, 1, 1, 0}, {-1, 0, 1, -1}, {0, -1, 1, -1}, {-1, 1, -1, 1}},
                     {2, 0, 0, 1}, {2, -2, -3, -2}, "example1");
}

QipInstance example2() {
  const auto E = Quantifier::Existential;
  const auto A = Quantifier::Universal;
  return QipInstance({E, A, E, A, E}, {{1, -1, 1, 3, -1}, {3, 2, 3, 1, -2}}, {2, 1},
                     {2, 3, -2, -2, 1});
}

const char* const kExample2Text =
    "NVARS 5\n"
    "QUANT E A E A E\n"
    "OBJ 2 3 -2 -2 1\n"
    "ROW 1 -1 1 3 -1 <= 2\n"
    "ROW 3 2 3 1 -2 <= 1\n";

// ---- QBF ------------------------------------------------------------------

std::string Qbf::to_qdimacs() const {
  std::ostringstream out;
  out << "c random qbf\np cnf " << num_vars << " " << clauses.size() << "\n";
  for (const auto& [q, vars] : prefix) {
    out << q;
    for (int v : vars) out << " " << v;
    out << " 0\n";
  }
  for (const auto& c : clauses) {
    for (int lit : c) out << lit << " ";
    out << "0\n";
  }
  return out.str();
}

bool qbf_truth(const Qbf& qbf) {
  std::vector<std::pair<char, int>> order;
  std::set<int> bound;
  for (const auto& [q, vars] : qbf.prefix) bound.insert(vars.begin(), vars.end());
  for (int v = 1; v <= qbf.num_vars; ++v) {
    if (!bound.count(v)) order.push_back({'e', v});
  }
  for (const auto& [q, vars] : qbf.prefix) {
    for (int v : vars) order.push_back({q, v});
  }
  std::vector<int> value(static_cast<std::size_t>(qbf.num_vars) + 1, 0);
  std::function<bool(std::size_t)> rec = [&](std::size_t d) -> bool {
    if (d == order.size()) {
      for (const auto& c : qbf.clauses) {
        bool sat = false;
        for (int lit : c) {
          const int v = lit > 0 ? lit : -lit;
          if ((lit > 0) == (value[static_cast<std::size_t>(v)] == 1)) sat = true;
        }
        if (!sat) return false;
      }
      return true;
    }
    const auto [q, v] = order[d];
    value[static_cast<std::size_t>(v)] = 0;
    const bool r0 = rec(d + 1);
    if (q == 'e' && r0) return true;
    if (q == 'a' && !r0) return false;
    value[static_cast<std::size_t>(v)] = 1;
    return rec(d + 1);
  };
  return rec(0);
}

Qbf random_qbf(std::mt19937_64& rng, int max_vars, int max_clauses) {
  auto below = [&](int k) { return static_cast<int>(rng() % static_cast<std::uint64_t>(k)); };
  Qbf q;
  q.num_vars = 1 + below(max_vars);
  std::vector<int> vars(static_cast<std::size_t>(q.num_vars));
  for (int i = 0; i < q.num_vars; ++i) vars[static_cast<std::size_t>(i)] = i + 1;
  std::shuffle(vars.begin(), vars.end(), rng);
  char cur = below(2) ? 'e' : 'a';
  for (int v : vars) {
    if (below(6) == 0) continue;  // stays free
    if (below(3) == 0) cur = cur == 'e' ? 'a' : 'e';
    if (q.prefix.empty() || q.prefix.back().first != cur) q.prefix.push_back({cur, {}});
    q.prefix.back().second.push_back(v);
  }
  const int nc = below(max_clauses + 1);
  for (int c = 0; c < nc; ++c) {
    std::vector<int> clause;
    const int width = 1 + below(3);
    for (int w = 0; w < width; ++w) {
      const int v = 1 + below(q.num_vars);
      clause.push_back(below(2) ? v : -v);
    }
    q.clauses.push_back(clause);
  }
  return q;
}

// ---- LP -------------------------------------------------------------------

namespace {

std::vector<std::string> words(std::string_view line) {
  std::vector<std::string> out;
  std::istringstream in{std::string(line)};
  std::string w;
  while (in >> w) out.push_back(w);
  return out;
}

bool is_number(const std::string& s) {
  return !s.empty() && (std::isdigit(static_cast<unsigned char>(s[0])) ||
                        ((s[0] == '-' || s[0] == '+') && s.size() > 1 &&
                         std::isdigit(static_cast<unsigned char>(s[1]))));
}

Rational number(const std::string& s) {
  const auto r = parse_rational(s);
  if (!r) throw std::runtime_error("bad number " + s);
  return *r;
}

}  // namespace

LpModel read_lp(std::string_view text) {
  LpModel model;
  enum class Sec { None, Min, Rows, Bounds, Binary, End } sec = Sec::None;
  std::istringstream in{std::string(text)};
  std::string line;
  auto var_id = [&](const std::string& name) {
    auto it = model.index.find(name);
    if (it != model.index.end()) return it->second;
    const std::size_t id = model.vars.size();
    model.vars.push_back(name);
    model.index[name] = id;
    return id;
  };
  while (std::getline(in, line)) {
    if (!line.empty() && line[0] == '\\') continue;
    auto w = words(line);
    if (w.empty()) continue;
    if (w[0] == "Minimize") { sec = Sec::Min; continue; }
    if (w[0] == "Subject" && w.size() == 2 && w[1] == "To") { sec = Sec::Rows; continue; }
    if (w[0] == "Bounds") { sec = Sec::Bounds; continue; }
    if (w[0] == "Binary") { sec = Sec::Binary; continue; }
    if (w[0] == "End") { sec = Sec::End; continue; }
    switch (sec) {
      case Sec::Min:
        if (w.size() == 2 && w[0] == "obj:" && w[1] == "t") model.minimize_t = true;
        else throw std::runtime_error("unexpected objective: " + line);
        break;
      case Sec::Rows: {
        LpRow row;
        if (w.empty() || w[0].back() != ':') throw std::runtime_error("row without name");
        row.name = w[0].substr(0, w[0].size() - 1);
        std::size_t i = 1;
        Rational sign = 1;
        std::optional<Rational> coef;
        for (; i < w.size() && w[i] != "<="; ++i) {
          std::string tok = w[i];
          if (tok == "+") { sign = 1; continue; }
          if (tok == "-") { sign = -1; continue; }
          if (is_number(tok)) { coef = number(tok); continue; }
          if (tok[0] == '-') { sign = -sign; tok = tok.substr(1); }
          Rational a = sign * coef.value_or(Rational(1));
          if (tok == "t") row.t_coef += a;
          else row.terms.push_back({var_id(tok), a});
          sign = 1;
          coef.reset();
        }
        if (i + 2 != w.size()) throw std::runtime_error("malformed row: " + line);
        row.rhs = number(w[i + 1]);
        model.rows.push_back(std::move(row));
        break;
      }
      case Sec::Bounds:
        if (w.size() == 2 && w[0] == "t" && w[1] == "free") model.t_free = true;
        else throw std::runtime_error("unexpected bound: " + line);
        break;
      case Sec::Binary:
        var_id(w[0]);
        ++model.binary_count;
        break;
      default:
        throw std::runtime_error("text outside sections: " + line);
    }
  }
  if (sec != Sec::End) throw std::runtime_error("missing End");
  return model;
}

std::optional<Rational> lp_min_t(const LpModel& model) {
  const std::size_t nv = model.vars.size();
  const std::size_t nr = model.rows.size();
  std::vector<std::vector<std::pair<std::size_t, Rational>>> var_rows(nv);
  std::vector<Rational> fixed(nr, 0), open_neg(nr, 0);
  std::vector<std::size_t> t_rows;
  for (std::size_t r = 0; r < nr; ++r) {
    const LpRow& row = model.rows[r];
    if (sgn(row.t_coef) > 0) throw std::runtime_error("unexpected t sign");
    if (sgn(row.t_coef) < 0) t_rows.push_back(r);
    for (const auto& [v, a] : row.terms) {
      var_rows[v].push_back({r, a});
      if (sgn(a) < 0) open_neg[r] += a;
    }
  }
  if (t_rows.empty()) throw std::runtime_error("model has no t rows");

  // Smallest activity a row can still reach decides both infeasibility and
  // the bound t >= (activity - rhs) / -t_coef.
  auto t_bound = [&] {
    std::optional<Rational> lb;
    for (std::size_t r : t_rows) {
      const LpRow& row = model.rows[r];
      Rational need = (fixed[r] + open_neg[r] - row.rhs) / (-row.t_coef);
      if (!lb || need > *lb) lb = need;
    }
    return *lb;
  };

  std::optional<Rational> best;
  std::function<void(std::size_t)> rec = [&](std::size_t d) {
    const Rational lb = t_bound();
    if (best && lb >= *best) return;
    if (d == nv) {
      best = lb;
      return;
    }
    for (int val : {0, 1}) {
      bool ok = true;
      for (const auto& [r, a] : var_rows[d]) {
        if (sgn(a) < 0) open_neg[r] -= a;
        if (val) fixed[r] += a;
        const LpRow& row = model.rows[r];
        if (sgn(row.t_coef) == 0 && fixed[r] + open_neg[r] > row.rhs) ok = false;
      }
      if (ok) rec(d + 1);
      for (const auto& [r, a] : var_rows[d]) {
        if (sgn(a) < 0) open_neg[r] += a;
        if (val) fixed[r] -= a;
      }
    }
  };
  for (std::size_t r = 0; r < nr; ++r) {
    if (sgn(model.rows[r].t_coef) == 0 && open_neg[r] > model.rows[r].rhs) return std::nullopt;
  }
  rec(0);
  return best;
}

// ---- QIP brute force -------------------------------------------------------

ExtValue scenario_value(const QipInstance& instance) {
  const std::size_t n = instance.num_vars();
  std::size_t u = 0;
  while (u < n && instance.is_universal(u)) ++u;
  for (std::size_t j = u; j < n; ++j) {
    if (instance.is_universal(j)) throw std::runtime_error("universal after existential");
  }
  ExtValue worst = ExtValue::finite(Rational(-1000000000));
  bool any = false;
  for (std::uint64_t s = 0; s < (std::uint64_t{1} << u); ++s) {
    std::optional<ExtValue> best_resp;
    for (std::uint64_t e = 0; e < (std::uint64_t{1} << (n - u)); ++e) {
      std::vector<int> x(n);
      for (std::size_t j = 0; j < u; ++j) x[j] = static_cast<int>((s >> j) & 1u);
      for (std::size_t j = u; j < n; ++j) x[j] = static_cast<int>((e >> (j - u)) & 1u);
      const ExtValue v = evaluate_game(instance, Assignment::total(x));
      if (!best_resp || v < *best_resp) best_resp = v;
    }
    if (!any || *best_resp > worst) worst = *best_resp;
    any = true;
  }
  return worst;
}

bool copied_strategy_feasible(const QipInstance& instance, const Assignment& x_tilde,
                              std::size_t k) {
  const std::size_t n = instance.num_vars();
  std::vector<std::size_t> free_universals;
  for (std::size_t j = k + 1; j < n; ++j) {
    if (instance.is_universal(j)) free_universals.push_back(j);
  }
  std::vector<int> x = x_tilde.to_vector();
  x[k] = 1 - x[k];
  for (std::uint64_t s = 0; s < (std::uint64_t{1} << free_universals.size()); ++s) {
    for (std::size_t t = 0; t < free_universals.size(); ++t) {
      x[free_universals[t]] = static_cast<int>((s >> t) & 1u);
    }
    if (evaluate_game(instance, Assignment::total(x)).is_infinite()) return false;
  }
  return true;
}

QipInstance random_instance(std::mt19937_64& rng, std::size_t n, std::size_t m,
                            int universal_percent) {
  auto below = [&](int k) { return static_cast<int>(rng() % static_cast<std::uint64_t>(k)); };
  std::vector<Quantifier> q(n, Quantifier::Existential);
  for (std::size_t j = 1; j < n; ++j) {
    if (below(100) < universal_percent) q[j] = Quantifier::Universal;
  }
  std::vector<std::vector<Rational>> a(m, std::vector<Rational>(n));
  std::vector<Rational> b(m);
  std::vector<Rational> c(n);
  for (auto& row : a) {
    for (auto& v : row) {
      if (below(2)) v = below(9) - 4;
    }
  }
  for (auto& v : b) v = below(10) - 2;
  for (auto& v : c) v = below(11) - 5;
  return QipInstance(std::move(q), std::move(a), std::move(b), std::move(c));
}

}  // namespace qip::testing
