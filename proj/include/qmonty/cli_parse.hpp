#pragma once

// Parsing of command-line values: angles, grids, strategies, strategy
// matrix files and flat key=value config files.

#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qmonty/algebra.hpp"
#include "qmonty/strategies.hpp"

namespace qmonty::cli {

inline std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

inline std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    out.push_back(trim(s.substr(start, pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

/// Locale-independent strict double parse; `field` names the value in errors.
inline double parse_double(std::string_view text, std::string_view field) {
  text = trim(text);
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size() || !std::isfinite(value)) {
    throw ValidationError(std::string(field) + ": cannot parse '" + std::string(text) + "' as a number");
  }
  return value;
}

/// Accepts radians or the forms "pi", "pi/N" and "K*pi/N".
inline double parse_angle(std::string_view text, std::string_view field = "gamma") {
  text = trim(text);
  const auto pi_pos = text.find("pi");
  if (pi_pos == std::string_view::npos) return parse_double(text, field);
  double factor = 1.0;
  if (pi_pos > 0) {
    std::string_view coeff = text.substr(0, pi_pos);
    if (coeff.back() != '*') throw ValidationError(std::string(field) + ": malformed angle '" + std::string(text) + "'");
    coeff.remove_suffix(1);
    factor = parse_double(coeff, field);
  }
  double value = factor * std::numbers::pi;
  std::string_view rest = text.substr(pi_pos + 2);
  if (!rest.empty()) {
    if (rest.front() != '/') throw ValidationError(std::string(field) + ": malformed angle '" + std::string(text) + "'");
    const double denom = parse_double(rest.substr(1), field);
    if (denom == 0.0) throw ValidationError(std::string(field) + ": division by zero in '" + std::string(text) + "'");
    value /= denom;
  }
  return value;
}

/// Switch angle restricted to [0, pi/2].
inline double parse_gamma(std::string_view text) {
  const double g = parse_angle(text, "gamma");
  if (!(g >= 0.0 && g <= std::numbers::pi / 2)) {
    throw ValidationError("gamma: " + std::string(trim(text)) + " outside [0, pi/2]");
  }
  return g;
}

/// Comma-separated list of switch angles, kept in the listed order.
inline std::vector<double> parse_gamma_list(std::string_view text) {
  std::vector<double> out;
  for (auto part : split(text, ',')) out.push_back(parse_gamma(part));
  return out;
}

inline double parse_probability(std::string_view text) {
  const double p = parse_double(text, "p");
  if (!(p >= 0.0 && p <= 1.0)) throw ValidationError("p: " + std::string(trim(text)) + " outside [0, 1]");
  return p;
}

/// Evenly spaced points start, start+step, ... up to stop inclusive.
/// The point count is rounded so that e.g. 0:1:0.1 yields 11 points, and each
/// point is computed as start + i*step rather than by accumulation.
inline std::vector<double> make_grid(double start, double stop, double step) {
  if (!(step > 0.0)) throw ValidationError("p-grid: step must be positive");
  if (!(start >= 0.0 && stop <= 1.0 && start <= stop)) {
    throw ValidationError("p-grid: require 0 <= start <= stop <= 1");
  }
  const double span = (stop - start) / step;
  const auto intervals = static_cast<std::size_t>(std::floor(span + 1e-9));
  std::vector<double> grid;
  grid.reserve(intervals + 1);
  for (std::size_t i = 0; i <= intervals; ++i) grid.push_back(start + static_cast<double>(i) * step);
  if (std::abs(span - static_cast<double>(intervals)) < 1e-9) grid.back() = stop;
  for (double& p : grid) p = std::min(p, 1.0);
  return grid;
}

/// "start:stop:step".
inline std::vector<double> parse_p_grid(std::string_view text) {
  const auto parts = split(text, ':');
  if (parts.size() != 3) throw ValidationError("p-grid: expected start:stop:step, got '" + std::string(text) + "'");
  return make_grid(parse_double(parts[0], "p-grid start"), parse_double(parts[1], "p-grid stop"),
                   parse_double(parts[2], "p-grid step"));
}

/// Nine whitespace-separated "re,im" tokens in row-major order.
inline ComplexMatrix parse_matrix_text(std::string_view text, std::string_view field) {
  std::vector<Complex> entries;
  std::istringstream in{std::string(text)};
  std::string token;
  while (in >> token) {
    const auto parts = split(token, ',');
    if (parts.size() != 2) {
      throw ValidationError(std::string(field) + ": matrix entry '" + token + "' is not of the form re,im");
    }
    entries.emplace_back(parse_double(parts[0], field), parse_double(parts[1], field));
  }
  if (entries.size() != 9) {
    throw ValidationError(std::string(field) + ": expected 9 matrix entries, got " + std::to_string(entries.size()));
  }
  return ComplexMatrix(3, 3, std::move(entries));
}

inline std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

/// A strategy argument: a tag (I, H, M1, M2), "@path" to a matrix file, or
/// "angles:v1,...,v8".
inline StrategySpec parse_strategy(std::string_view text, std::string_view field) {
  text = trim(text);
  if (auto named = parse_named_strategy(text)) return *named;
  if (!text.empty() && text.front() == '@') {
    return parse_matrix_text(read_text_file(std::string(text.substr(1))), field);
  }
  constexpr std::string_view kAngles = "angles:";
  if (text.starts_with(kAngles)) {
    const auto parts = split(text.substr(kAngles.size()), ',');
    if (parts.size() != 8) {
      throw ValidationError(std::string(field) + ": expected 8 angles, got " + std::to_string(parts.size()));
    }
    SU3Angles a;
    for (std::size_t k = 0; k < 8; ++k) a.values[k] = parse_angle(parts[k], field);
    return a;
  }
  throw ValidationError(std::string(field) + ": unknown strategy '" + std::string(text) +
                        "' (expected I, H, M1, M2, @file or angles:...)");
}

/// Flat "key = value" lines; '#' starts a comment. Keys are flag names
/// without the leading dashes.
inline std::vector<std::pair<std::string, std::string>> parse_config_text(std::string_view text) {
  std::vector<std::pair<std::string, std::string>> out;
  std::size_t line_no = 0;
  for (auto line : split(text, '\n')) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ValidationError("config line " + std::to_string(line_no) + ": expected key=value");
    }
    out.emplace_back(std::string(trim(line.substr(0, eq))), std::string(trim(line.substr(eq + 1))));
  }
  return out;
}

}  // namespace qmonty::cli
