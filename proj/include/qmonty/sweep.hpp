#pragma once

// Parameter sweeps over the decoherence parameter, figure presets and the
// CSV output format.

#include <filesystem>
#include <fstream>
#include <functional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include <fmt/format.h>

#include "qmonty/cli_parse.hpp"
#include "qmonty/game.hpp"
#include "qmonty/strategies.hpp"

namespace qmonty {

/// 15 significant digits, '.' separator, independent of the C++ locale.
inline std::string format_number(double x) {
  if (x == 0.0) x = 0.0;  // no "-0"
  return fmt::format("{:.15g}", x);
}

inline constexpr std::string_view kCsvHeader =
    "channel,p,gamma,alice,bob,payoff_bob_not_switch,payoff_bob_switch,payoff_bob,payoff_alice";

struct SweepRow {
  double p = 0.0;
  double gamma = 0.0;
  PayoffResult payoff;
};

struct SweepSpec {
  ChannelKind channel = ChannelKind::Noiseless;
  std::vector<double> p_grid;
  std::vector<double> gamma_values;
  StrategySpec alice = NamedStrategy::I;
  StrategySpec bob = NamedStrategy::I;
  std::string output_path;
  double tolerance = kTolerance;

  void validate() const {
    if (p_grid.empty()) throw ValidationError("p-grid: empty");
    if (gamma_values.empty()) throw ValidationError("gamma: no values");
    for (std::size_t i = 0; i < p_grid.size(); ++i) {
      if (!(p_grid[i] >= 0.0 && p_grid[i] <= 1.0)) throw ValidationError("p-grid: value outside [0, 1]");
      if (i > 0 && !(p_grid[i] > p_grid[i - 1])) throw ValidationError("p-grid: values must be strictly ascending");
    }
    for (double g : gamma_values) {
      if (!(g >= 0.0 && g <= std::numbers::pi / 2)) throw ValidationError("gamma: value outside [0, pi/2]");
    }
  }
};

/// Rows ordered p ascending (outer), gamma as listed (inner).
inline std::vector<SweepRow> evaluate_sweep(const SweepSpec& spec) {
  spec.validate();
  const UnitaryOperator alice = resolve(spec.alice, spec.tolerance);
  const UnitaryOperator bob = resolve(spec.bob, spec.tolerance);
  std::vector<SweepRow> rows;
  rows.reserve(spec.p_grid.size() * spec.gamma_values.size());
  for (double p : spec.p_grid) {
    const GameEngine engine(spec.channel, p);
    for (double g : spec.gamma_values) rows.push_back({p, g, engine.play(g, alice, bob)});
  }
  return rows;
}

inline std::string format_csv_row(ChannelKind channel, std::string_view alice, std::string_view bob, double p,
                                  double gamma, const PayoffResult& r) {
  return fmt::format("{},{},{},{},{},{},{},{},{}", to_string(channel), format_number(p), format_number(gamma), alice,
                     bob, format_number(r.bob_not_switch), format_number(r.bob_switch), format_number(r.bob_total),
                     format_number(r.alice));
}

inline void write_sweep_csv(std::ostream& out, const SweepSpec& spec, const std::vector<SweepRow>& rows) {
  const std::string alice = strategy_label(spec.alice);
  const std::string bob = strategy_label(spec.bob);
  out << kCsvHeader << '\n';
  for (const auto& row : rows) out << format_csv_row(spec.channel, alice, bob, row.p, row.gamma, row.payoff) << '\n';
}

/// Writes through a sibling ".partial" file that is renamed into place on
/// success and removed on any failure.
inline void write_file_atomically(const std::string& path, const std::function<void(std::ostream&)>& body) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  const fs::path partial = fs::path(path + ".partial");
  try {
    {
      std::ofstream out(partial, std::ios::binary | std::ios::trunc);
      if (!out) throw IoError("cannot open '" + partial.string() + "' for writing");
      body(out);
      out.flush();
      if (!out) throw IoError("write to '" + partial.string() + "' failed");
    }
    std::error_code ec;
    fs::rename(partial, target, ec);
    if (ec) throw IoError("cannot move output into '" + path + "': " + ec.message());
  } catch (...) {
    std::error_code ignored;
    fs::remove(partial, ignored);
    throw;
  }
}

/// Evaluates the sweep and writes it to spec.output_path.
inline std::vector<SweepRow> run_sweep(const SweepSpec& spec) {
  auto rows = evaluate_sweep(spec);
  write_file_atomically(spec.output_path, [&](std::ostream& out) { write_sweep_csv(out, spec, rows); });
  return rows;
}

// ---------------------------------------------------------------------------
// Figure presets

struct FigurePreset {
  int id = 1;
  ChannelKind channel = ChannelKind::AmplitudeDamping;
  NamedStrategy alice = NamedStrategy::H;
  NamedStrategy bob = NamedStrategy::I;
};

/// Figures 1-3 use amplitude damping, 4-6 depolarizing; within each triple
/// the strategies are (H, I), (I, I) and (H, M1).
inline FigurePreset figure_preset(int id) {
  using enum NamedStrategy;
  switch (id) {
    case 1:
      return {1, ChannelKind::AmplitudeDamping, H, I};
    case 2:
      return {2, ChannelKind::AmplitudeDamping, I, I};
    case 3:
      return {3, ChannelKind::AmplitudeDamping, H, M1};
    case 4:
      return {4, ChannelKind::Depolarizing, H, I};
    case 5:
      return {5, ChannelKind::Depolarizing, I, I};
    case 6:
      return {6, ChannelKind::Depolarizing, H, M1};
    default:
      throw ValidationError("figure: id " + std::to_string(id) + " outside 1..6");
  }
}

inline constexpr std::string_view kFigureHeader = "p,gamma0,gamma_pi_2";

struct FigureRow {
  double p = 0.0;
  PayoffResult switched;  // gamma = 0
  PayoffResult stuck;     // gamma = pi/2
};

inline std::vector<double> figure_p_grid() { return cli::make_grid(0.0, 1.0, 0.01); }

inline std::vector<FigureRow> evaluate_figure(const FigurePreset& preset) {
  const UnitaryOperator alice(named_strategy_matrix(preset.alice));
  const UnitaryOperator bob(named_strategy_matrix(preset.bob));
  std::vector<FigureRow> rows;
  for (double p : figure_p_grid()) {
    const GameEngine engine(preset.channel, p);
    rows.push_back({p, engine.play(0.0, alice, bob), engine.play(std::numbers::pi / 2, alice, bob)});
  }
  return rows;
}

/// One row per p with Bob's payoff when switching (gamma = 0) and sticking
/// (gamma = pi/2).
inline void write_figure_csv(std::ostream& out, const std::vector<FigureRow>& rows) {
  out << kFigureHeader << '\n';
  for (const auto& row : rows) {
    out << format_number(row.p) << ',' << format_number(row.switched.bob_total) << ','
        << format_number(row.stuck.bob_total) << '\n';
  }
}

/// Same data in the flat sweep schema, two rows per p.
inline void write_figure_csv_long(std::ostream& out, const FigurePreset& preset, const std::vector<FigureRow>& rows) {
  const auto alice = to_string(preset.alice);
  const auto bob = to_string(preset.bob);
  out << kCsvHeader << '\n';
  for (const auto& row : rows) {
    out << format_csv_row(preset.channel, alice, bob, row.p, 0.0, row.switched) << '\n';
    out << format_csv_row(preset.channel, alice, bob, row.p, std::numbers::pi / 2, row.stuck) << '\n';
  }
}

}  // namespace qmonty
