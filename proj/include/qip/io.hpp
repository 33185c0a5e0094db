#pragma once

#include "qip/instance.hpp"

#include <cstdint>
#include <string>
#include <string_view>

namespace qip {

/// Instance text format, one declaration per line, '#' starts a comment:
///
///   NAME <string>                      optional
///   NVARS <n>
///   QUANT <n tokens from {E,A}>
///   OBJ <n rationals>
///   ROW <n rationals> <= <rational>    repeated m times
///
/// Throws ParseError (syntax or semantic, with line and column).
QipInstance parse_qip(std::string_view text);

/// Canonical text: NAME (if set), NVARS, QUANT, OBJ, ROW lines; reduced
/// rationals, LF line endings.
std::string serialize_qip(const QipInstance& instance);

/// QDIMACS to QIP with c = 0. Free variables come first (existential, in
/// ascending order), then the prefix order. A clause with positive literals
/// P and negative literals N becomes sum_N x - sum_P x <= |N| - 1.
/// Throws ParseError.
QipInstance import_qdimacs(std::string_view text);

struct DepOptions {
  std::uint64_t max_scenarios = std::uint64_t{1} << 20;
};

/// Deterministic equivalent in LP text format: one copy of each existential
/// variable per history of preceding universal values, every row copied per
/// scenario, objective "minimize t" with c x^s - t <= 0 per scenario.
/// Variables are named x<j>_s<bits> (j 1-based, bits = universal values
/// preceding j). Throws SizeLimitError above max_scenarios.
std::string export_dep(const QipInstance& instance, const DepOptions& options = {});

/// Whole-file helpers; throw Error on I/O failure.
std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, std::string_view content);

}  // namespace qip
