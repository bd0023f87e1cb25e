// qmonty: command-line front end for the noisy quantum Monty Hall game.
//
//   qmonty play     --channel amp-damp --p 0.5 --gamma 0 --alice H --bob I
//   qmonty sweep    --channel depolarizing --p-grid 0:1:0.1 --gamma 0,pi/2 --out sweep.csv
//   qmonty figure 3 --out fig3.csv
//   qmonty scan     --channel depolarizing --p 0.9 --fixed bob --bob I --grid 5 --refine 3
//   qmonty selftest
//
// Every subcommand accepts --config FILE with flat key=value lines mirroring
// the flags; explicit flags win. Exit codes: 0 ok, 1 validation, 2 I/O.

#include <algorithm>
#include <cmath>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "qmonty/qmonty.hpp"

namespace {

using namespace qmonty;

struct Options {
  std::string config;
  std::string channel = "none";
  std::string p = "0";
  std::string p_grid = "0:1:0.1";
  std::string gamma = "0";
  std::string alice = "I";
  std::string bob = "I";
  std::string out;
  double tol = kTolerance;
  int figure = 0;
  std::string layout = "wide";
  std::string fixed = "bob";
  int grid = 3;
  int refine = 0;
};

void add_common(CLI::App* sub, Options& o) {
  sub->add_option("--config", o.config, "flat key=value file mirroring the flags");
  sub->add_option("--tol", o.tol, "unitarity tolerance for explicit strategy matrices")->capture_default_str();
}

void add_game_flags(CLI::App* sub, Options& o) {
  sub->add_option("--channel", o.channel, "none | amp-damp | dephasing | depolarizing")->capture_default_str();
  sub->add_option("--alice", o.alice, "I, H, M1, M2, @matrix-file or angles:v1,...,v8")->capture_default_str();
  sub->add_option("--bob", o.bob, "I, H, M1, M2, @matrix-file or angles:v1,...,v8")->capture_default_str();
}

// Expands --config FILE into flags placed right after the subcommand name, so
// that later explicit flags take precedence.
std::vector<std::string> expand_config(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  std::string path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) path = args[i + 1];
    if (args[i].starts_with("--config=")) path = args[i].substr(9);
  }
  if (!path.empty() && !args.empty()) {
    std::vector<std::string> injected;
    for (const auto& [key, value] : cli::parse_config_text(cli::read_text_file(path))) {
      if (key == "config") throw ValidationError("config: nested config files are not supported");
      injected.push_back("--" + key);
      injected.push_back(value);
    }
    args.insert(args.begin() + 1, injected.begin(), injected.end());
  }
  std::reverse(args.begin(), args.end());  // CLI11 parses a reversed vector
  return args;
}

void print_record(std::ostream& out, ChannelKind channel, const std::string& alice, const std::string& bob, double p,
                  double gamma, const PayoffResult& r) {
  out << kCsvHeader << '\n' << format_csv_row(channel, alice, bob, p, gamma, r) << '\n';
}

int run_play(const Options& o) {
  GameConfig cfg;
  cfg.channel = parse_channel(o.channel);
  cfg.p = cli::parse_probability(o.p);
  cfg.gamma = cli::parse_gamma(o.gamma);
  const auto alice = cli::parse_strategy(o.alice, "alice");
  const auto bob = cli::parse_strategy(o.bob, "bob");
  cfg.alice = resolve(alice, o.tol);
  cfg.bob = resolve(bob, o.tol);
  print_record(std::cout, cfg.channel, strategy_label(alice), strategy_label(bob), cfg.p, cfg.gamma, play(cfg));
  return 0;
}

int run_sweep_cmd(const Options& o) {
  SweepSpec spec;
  spec.channel = parse_channel(o.channel);
  spec.p_grid = cli::parse_p_grid(o.p_grid);
  spec.gamma_values = cli::parse_gamma_list(o.gamma);
  spec.alice = cli::parse_strategy(o.alice, "alice");
  spec.bob = cli::parse_strategy(o.bob, "bob");
  spec.output_path = o.out;
  spec.tolerance = o.tol;
  if (o.out.empty()) {
    write_sweep_csv(std::cout, spec, evaluate_sweep(spec));
  } else {
    run_sweep(spec);
  }
  return 0;
}

int run_figure(const Options& o) {
  const FigurePreset preset = figure_preset(o.figure);
  if (o.layout != "wide" && o.layout != "long") throw ValidationError("layout: expected wide or long");
  const auto rows = evaluate_figure(preset);
  auto body = [&](std::ostream& out) {
    if (o.layout == "wide") {
      write_figure_csv(out, rows);
    } else {
      write_figure_csv_long(out, preset, rows);
    }
  };
  if (o.out.empty()) {
    body(std::cout);
  } else {
    write_file_atomically(o.out, body);
  }
  return 0;
}

int run_scan(const Options& o) {
  ScanSpec spec;
  spec.channel = parse_channel(o.channel);
  spec.p = cli::parse_probability(o.p);
  spec.gamma = cli::parse_gamma(o.gamma);
  spec.fixed_player = parse_player(o.fixed);
  spec.fixed_strategy = cli::parse_strategy(spec.fixed_player == Player::Alice ? o.alice : o.bob,
                                            spec.fixed_player == Player::Alice ? "alice" : "bob");
  spec.grid_points_per_angle = o.grid;
  spec.refine_iterations = o.refine;
  spec.tolerance = o.tol;
  write_scan_report(std::cout, spec, best_response_scan(spec));
  return 0;
}

// Engine against the closed forms on a 101 x 5 (p, gamma) grid.
int run_selftest() {
  const UnitaryOperator id(ComplexMatrix::identity(3));
  const UnitaryOperator h(fair_strategy_matrix());
  const UnitaryOperator m1(shift_m1_matrix());
  const std::vector<double> gammas{0.0, std::numbers::pi / 8, std::numbers::pi / 4, 3 * std::numbers::pi / 8,
                                   std::numbers::pi / 2};
  double worst = 0.0;
  struct Check {
    const char* name;
    ChannelKind channel;
    ClosedFormId form;
    const UnitaryOperator* alice;
  };
  const std::vector<Check> checks{
      {"amp_damp_fair", ChannelKind::AmplitudeDamping, ClosedFormId::AmpDampFair, &h},
      {"depol_fair", ChannelKind::Depolarizing, ClosedFormId::DepolFair, &h},
      {"amp_damp_classical_bob[A=I]", ChannelKind::AmplitudeDamping, ClosedFormId::AmpDampClassicalBob, &id},
      {"amp_damp_classical_bob[A=M1]", ChannelKind::AmplitudeDamping, ClosedFormId::AmpDampClassicalBob, &m1},
      {"depol_classical_bob[A=I]", ChannelKind::Depolarizing, ClosedFormId::DepolClassicalBob, &id},
      {"depol_classical_bob[A=M1]", ChannelKind::Depolarizing, ClosedFormId::DepolClassicalBob, &m1},
  };
  for (const auto& c : checks) {
    double residual = 0.0;
    for (double p : cli::make_grid(0.0, 1.0, 0.01)) {
      const GameEngine engine(c.channel, p);
      for (double g : gammas) {
        residual = std::max(residual, std::abs(engine.play(g, *c.alice, id).bob_total -
                                               closed_form(c.form, *c.alice, p, g)));
      }
    }
    worst = std::max(worst, residual);
    std::cout << "max_residual " << c.name << " = " << fmt::format("{:.3e}", residual) << '\n';
  }
  // Preset 3 has A=H; the 5/6 shift value needs A=I.
  const GameEngine half(ChannelKind::AmplitudeDamping, 0.5);
  std::cout << "figure3[A=H,B=M1,p=0.5,gamma=0] = " << format_number(half.play(0.0, h, m1).bob_total) << '\n';
  std::cout << "shift[A=I,B=M1,p=0.5,gamma=0] = " << format_number(half.play(0.0, id, m1).bob_total)
            << " (expected 5/6)\n";
  const Complex det = determinant(h.matrix());
  std::cout << "det(H) = " << format_number(det.real()) << ',' << format_number(det.imag())
            << " unitarity_residual(H) = " << fmt::format("{:.3e}", unitarity_residual(h.matrix())) << '\n';
  const bool ok = worst <= 1e-10;
  std::cout << "selftest " << (ok ? "PASS" : "FAIL") << " worst=" << fmt::format("{:.3e}", worst) << '\n';
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Noisy quantum Monty Hall game: payoffs, sweeps, figures and best-response scans"};
  app.require_subcommand(1);
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  Options o;

  auto* play_cmd = app.add_subcommand("play", "evaluate one game");
  add_game_flags(play_cmd, o);
  play_cmd->add_option("--p", o.p, "decoherence parameter in [0,1]")->capture_default_str();
  play_cmd->add_option("--gamma", o.gamma, "switch angle: radians, pi/2, pi/4, ...")->capture_default_str();
  add_common(play_cmd, o);

  auto* sweep_cmd = app.add_subcommand("sweep", "sweep p and emit CSV");
  add_game_flags(sweep_cmd, o);
  sweep_cmd->add_option("--p-grid", o.p_grid, "start:stop:step")->capture_default_str();
  sweep_cmd->add_option("--gamma", o.gamma, "comma-separated switch angles")->capture_default_str();
  sweep_cmd->add_option("--out", o.out, "output CSV path (default: stdout)");
  add_common(sweep_cmd, o);

  auto* figure_cmd = app.add_subcommand("figure", "emit the data of a figure preset (1-6)");
  figure_cmd->add_option("id", o.figure, "figure number")->required();
  figure_cmd->add_option("--out", o.out, "output CSV path (default: stdout)");
  figure_cmd->add_option("--layout", o.layout, "wide (p,gamma0,gamma_pi_2) or long (sweep schema)")
      ->capture_default_str();
  add_common(figure_cmd, o);

  auto* scan_cmd = app.add_subcommand("scan", "best-response scan over SU(3)");
  add_game_flags(scan_cmd, o);
  scan_cmd->add_option("--p", o.p, "decoherence parameter in [0,1]")->capture_default_str();
  scan_cmd->add_option("--gamma", o.gamma, "switch angle")->capture_default_str();
  scan_cmd->add_option("--fixed", o.fixed, "player whose strategy is held fixed: alice | bob")->capture_default_str();
  scan_cmd->add_option("--grid", o.grid, "grid points per angle")->capture_default_str();
  scan_cmd->add_option("--refine", o.refine, "coordinate-descent rounds")->capture_default_str();
  add_common(scan_cmd, o);

  auto* selftest_cmd = app.add_subcommand("selftest", "compare the engine with the closed forms");

  try {
    app.parse(expand_config(argc, argv));
    if (*play_cmd) return run_play(o);
    if (*sweep_cmd) return run_sweep_cmd(o);
    if (*figure_cmd) return run_figure(o);
    if (*scan_cmd) return run_scan(o);
    if (*selftest_cmd) return run_selftest();
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 3;
  }
  return 0;
}
