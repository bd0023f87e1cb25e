// Plays an explicit SU(3) strategy for Alice against each named strategy of
// Bob, and runs a small best-response scan for Bob.

#include <iostream>
#include <numbers>

#include "qmonty/qmonty.hpp"

int main() {
  using namespace qmonty;
  SU3Angles angles;
  angles.values = {0.4, 0.0, 0.2, 0.0, 0.0, 0.7, 0.0, 0.1};
  const UnitaryOperator alice = su3_from_angles(angles);

  const GameEngine engine(ChannelKind::AmplitudeDamping, 0.3);
  for (auto b : {NamedStrategy::I, NamedStrategy::H, NamedStrategy::M1, NamedStrategy::M2}) {
    const auto r = engine.play(0.0, alice, UnitaryOperator(named_strategy_matrix(b)));
    std::cout << "B=" << to_string(b) << "  bob=" << format_number(r.bob_total) << '\n';
  }

  ScanSpec spec;
  spec.channel = ChannelKind::AmplitudeDamping;
  spec.p = 0.3;
  spec.fixed_player = Player::Alice;
  spec.fixed_strategy = angles;
  spec.grid_points_per_angle = 3;
  spec.refine_iterations = 2;
  write_scan_report(std::cout, spec, best_response_scan(spec));
}
