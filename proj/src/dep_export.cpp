#include "qip/errors.hpp"
#include "qip/integer_form.hpp"
#include "qip/io.hpp"

namespace qip {

namespace {

// Appends " + 3 name" / " - name"; the first term carries no separator.
void term(std::string& out, const BigInt& coef, const std::string& name, bool& first) {
  if (sgn(coef) == 0) return;
  const BigInt mag = abs(coef);
  if (first) {
    out += sgn(coef) < 0 ? "-" : "";
  } else {
    out += sgn(coef) < 0 ? " - " : " + ";
  }
  if (mag != 1) out += mag.get_str() + " ";
  out += name;
  first = false;
}

std::string bits_of(std::uint64_t scenario, std::size_t count, std::size_t universals) {
  // The first universal is the most significant of the `universals` bits.
  std::string s;
  for (std::size_t u = 0; u < count; ++u) {
    s += ((scenario >> (universals - 1 - u)) & 1u) ? '1' : '0';
  }
  return s;
}

}  // namespace

std::string export_dep(const QipInstance& instance, const DepOptions& options) {
  const std::size_t n = instance.num_vars();
  std::vector<std::size_t> universals_before(n + 1, 0);
  for (std::size_t j = 0; j < n; ++j) {
    universals_before[j + 1] = universals_before[j] + (instance.is_universal(j) ? 1 : 0);
  }
  const std::size_t u = universals_before[n];
  if (u >= 63 || (std::uint64_t{1} << u) > options.max_scenarios) {
    throw SizeLimitError("deterministic equivalent needs 2^" + std::to_string(u) +
                         " scenarios, above the cap of " + std::to_string(options.max_scenarios));
  }
  const std::uint64_t scenarios = std::uint64_t{1} << u;
  const auto scaled = detail::scale_instance(instance, false);

  auto var_name = [&](std::size_t j, std::uint64_t s) {
    return "x" + std::to_string(j + 1) + "_s" + bits_of(s, universals_before[j], u);
  };
  auto universal_value = [&](std::size_t j, std::uint64_t s) {
    return static_cast<int>((s >> (u - 1 - universals_before[j])) & 1u);
  };

  std::string out;
  out += "\\ deterministic equivalent";
  if (!instance.name().empty()) out += " of " + instance.name();
  out += "\nMinimize\n obj: t\nSubject To\n";
  for (std::uint64_t s = 0; s < scenarios; ++s) {
    const std::string sname = bits_of(s, u, u);
    for (std::size_t i = 0; i < instance.num_rows(); ++i) {
      std::string line = " c" + std::to_string(i + 1) + "_s" + sname + ": ";
      BigInt rhs = scaled.rhs[i];
      bool first = true;
      for (std::size_t j = 0; j < n; ++j) {
        const BigInt& a = scaled.rows[i][j];
        if (sgn(a) == 0) continue;
        if (instance.is_universal(j)) {
          if (universal_value(j, s)) rhs -= a;
        } else {
          term(line, a, var_name(j, s), first);
        }
      }
      if (first) line += "0 t";
      out += line + " <= " + rhs.get_str() + "\n";
    }
  }
  for (std::uint64_t s = 0; s < scenarios; ++s) {
    std::string line = " t_s" + bits_of(s, u, u) + ": ";
    BigInt constant = 0;
    bool first = true;
    for (std::size_t j = 0; j < n; ++j) {
      const BigInt& c = scaled.obj[j];
      if (sgn(c) == 0) continue;
      if (instance.is_universal(j)) {
        if (universal_value(j, s)) constant += c;
      } else {
        term(line, c, var_name(j, s), first);
      }
    }
    term(line, BigInt(-scaled.obj_scale), "t", first);
    out += line + " <= " + BigInt(-constant).get_str() + "\n";
  }
  out += "Bounds\n t free\nBinary\n";
  for (std::size_t j = 0; j < n; ++j) {
    if (instance.is_universal(j)) continue;
    const std::size_t copies = std::size_t{1} << universals_before[j];
    for (std::size_t h = 0; h < copies; ++h) {
      out += " x" + std::to_string(j + 1) + "_s" + bits_of(h, universals_before[j], universals_before[j]) + "\n";
    }
  }
  out += "End\n";
  return out;
}

}  // namespace qip
