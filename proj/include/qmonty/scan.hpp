#pragma once

// Best-response search: one player's strategy is fixed, the other player's
// SU(3) angles are grid-scanned and then refined by coordinate descent.

#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include <fmt/format.h>

#include "qmonty/game.hpp"
#include "qmonty/strategies.hpp"
#include "qmonty/sweep.hpp"

namespace qmonty {

enum class Player { Alice, Bob };

inline std::string_view to_string(Player p) { return p == Player::Alice ? "alice" : "bob"; }

inline Player parse_player(std::string_view s) {
  if (s == "alice") return Player::Alice;
  if (s == "bob") return Player::Bob;
  throw ValidationError("fixed: expected alice or bob, got '" + std::string(s) + "'");
}

/// Upper bound on grid_points_per_angle^8.
inline constexpr std::uint64_t kMaxScanCells = 10'000'000;

struct ScanSpec {
  ChannelKind channel = ChannelKind::Noiseless;
  double p = 0.0;
  double gamma = 0.0;
  Player fixed_player = Player::Bob;
  StrategySpec fixed_strategy = NamedStrategy::I;
  int grid_points_per_angle = 3;
  int refine_iterations = 0;
  double tolerance = kTolerance;

  std::uint64_t cell_count() const {
    std::uint64_t n = 1;
    for (int k = 0; k < 8; ++k) {
      n *= static_cast<std::uint64_t>(grid_points_per_angle);
      if (n > kMaxScanCells) return kMaxScanCells + 1;
    }
    return n;
  }

  void validate() const {
    if (grid_points_per_angle < 2) throw ValidationError("grid: need at least 2 points per angle");
    if (refine_iterations < 0) throw ValidationError("refine: must be nonnegative");
    if (cell_count() > kMaxScanCells) {
      throw ValidationError("grid: " + std::to_string(grid_points_per_angle) + "^8 cells exceeds the cap of " +
                            std::to_string(kMaxScanCells));
    }
  }
};

struct NamedComparison {
  NamedStrategy strategy;
  double payoff;  // the free player's payoff
};

struct ScanReport {
  Player free_player = Player::Alice;
  SU3Angles best_angles;
  ComplexMatrix best_matrix = ComplexMatrix::identity(3);
  /// Free player's payoff at the best strategy found.
  double best_payoff = 0.0;
  /// Free player's payoff at the best coarse grid cell.
  double coarse_payoff = 0.0;
  PayoffResult best_result;
  std::vector<NamedComparison> named;
  std::uint64_t evaluations = 0;
};

/// Grid coordinates 2 pi j / n for j = 0..n-1, wrapped into [-pi, pi); the
/// origin is always a grid point.
inline std::vector<double> scan_axis(int points) {
  std::vector<double> axis;
  for (int j = 0; j < points; ++j) {
    double t = 2.0 * std::numbers::pi * j / points;
    if (t >= std::numbers::pi) t -= 2.0 * std::numbers::pi;
    axis.push_back(t);
  }
  return axis;
}

namespace detail {

class ScanObjective {
 public:
  explicit ScanObjective(const ScanSpec& spec)
      : engine_(spec.channel, spec.p),
        gamma_(spec.gamma),
        free_(spec.fixed_player == Player::Alice ? Player::Bob : Player::Alice),
        fixed_(resolve(spec.fixed_strategy, spec.tolerance)) {}

  Player free_player() const { return free_; }

  PayoffResult evaluate(const UnitaryOperator& candidate) {
    ++evaluations_;
    return free_ == Player::Alice ? engine_.play(gamma_, candidate, fixed_) : engine_.play(gamma_, fixed_, candidate);
  }

  double payoff_of(const PayoffResult& r) const { return free_ == Player::Alice ? r.alice : r.bob_total; }

  double operator()(const SU3Angles& angles) { return payoff_of(evaluate(su3_from_angles(angles))); }

  std::uint64_t evaluations() const { return evaluations_; }

 private:
  GameEngine engine_;
  double gamma_;
  Player free_;
  UnitaryOperator fixed_;
  std::uint64_t evaluations_ = 0;
};

}  // namespace detail

/// Deterministic: the first strictly better cell in lexicographic order wins,
/// and refinement only accepts strict improvements, so the refined payoff is
/// never below the coarse one.
inline ScanReport best_response_scan(const ScanSpec& spec) {
  spec.validate();
  detail::ScanObjective objective(spec);
  const auto axis = scan_axis(spec.grid_points_per_angle);
  const auto n = axis.size();

  SU3Angles best;
  double best_value = objective(best);
  std::array<std::size_t, 8> idx{};
  while (true) {
    std::size_t k = 0;
    while (k < 8 && ++idx[k] == n) idx[k++] = 0;
    if (k == 8) break;
    SU3Angles cand;
    for (std::size_t a = 0; a < 8; ++a) cand.values[a] = axis[idx[a]];
    const double v = objective(cand);
    if (v > best_value) {
      best_value = v;
      best = cand;
    }
  }
  const double coarse = best_value;

  double step = 2.0 * std::numbers::pi / spec.grid_points_per_angle;
  for (int iter = 0; iter < spec.refine_iterations; ++iter) {
    step /= 2.0;
    for (std::size_t a = 0; a < 8; ++a) {
      for (double dir : {1.0, -1.0}) {
        SU3Angles cand = best;
        cand.values[a] += dir * step;
        const double v = objective(cand);
        if (v > best_value) {
          best_value = v;
          best = cand;
        }
      }
    }
  }

  ScanReport report;
  report.free_player = objective.free_player();
  report.best_angles = best;
  const UnitaryOperator best_u = su3_from_angles(best);
  report.best_matrix = best_u.matrix();
  report.best_result = objective.evaluate(best_u);
  report.best_payoff = objective.payoff_of(report.best_result);
  report.coarse_payoff = coarse;
  for (auto s : {NamedStrategy::I, NamedStrategy::H, NamedStrategy::M1, NamedStrategy::M2}) {
    report.named.push_back({s, objective.payoff_of(objective.evaluate(UnitaryOperator(named_strategy_matrix(s))))});
  }
  report.evaluations = objective.evaluations();
  return report;
}

inline void write_scan_report(std::ostream& out, const ScanSpec& spec, const ScanReport& r) {
  out << "channel=" << to_string(spec.channel) << '\n';
  out << "p=" << format_number(spec.p) << '\n';
  out << "gamma=" << format_number(spec.gamma) << '\n';
  out << "fixed=" << to_string(spec.fixed_player) << ':' << strategy_label(spec.fixed_strategy) << '\n';
  out << "free=" << to_string(r.free_player) << '\n';
  out << "grid_points_per_angle=" << spec.grid_points_per_angle << '\n';
  out << "refine_iterations=" << spec.refine_iterations << '\n';
  out << "evaluations=" << r.evaluations << '\n';
  out << "coarse_payoff=" << format_number(r.coarse_payoff) << '\n';
  out << "best_payoff=" << format_number(r.best_payoff) << '\n';
  out << "best_payoff_bob=" << format_number(r.best_result.bob_total) << '\n';
  out << "best_angles=";
  for (std::size_t k = 0; k < 8; ++k) out << (k ? "," : "") << format_number(r.best_angles.values[k]);
  out << '\n';
  for (std::size_t row = 0; row < 3; ++row) {
    out << "best_matrix_row" << row << '=';
    for (std::size_t c = 0; c < 3; ++c) {
      const Complex z = r.best_matrix(row, c);
      out << (c ? " " : "") << format_number(z.real()) << ',' << format_number(z.imag());
    }
    out << '\n';
  }
  for (const auto& n : r.named) out << "named_" << to_string(n.strategy) << '=' << format_number(n.payoff) << '\n';
}

}  // namespace qmonty
