// Bob's payoff in the fair game (Alice plays H, Bob plays I) under each noise
// model, switching versus sticking.

#include <cstdio>
#include <numbers>

#include "qmonty/qmonty.hpp"

int main() {
  using namespace qmonty;
  const UnitaryOperator alice(fair_strategy_matrix());
  const UnitaryOperator bob(ComplexMatrix::identity(3));

  std::printf("%-13s %5s %10s %10s\n", "channel", "p", "switch", "stick");
  for (auto ch : {ChannelKind::AmplitudeDamping, ChannelKind::Dephasing, ChannelKind::Depolarizing}) {
    for (double p : {0.0, 0.5, 1.0}) {
      const GameEngine engine(ch, p);
      const double sw = engine.play(0.0, alice, bob).bob_total;
      const double st = engine.play(std::numbers::pi / 2, alice, bob).bob_total;
      std::printf("%-13s %5.2f %10.6f %10.6f\n", std::string(to_string(ch)).c_str(), p, sw, st);
    }
  }
}
