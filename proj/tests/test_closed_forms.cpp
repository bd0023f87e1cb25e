#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <random>

#include "qmonty/closed_forms.hpp"
#include "qmonty/game.hpp"
#include "qmonty/strategies.hpp"
#include "test_helpers.hpp"

using namespace qmonty;
using Catch::Matchers::WithinAbs;

namespace {

constexpr double kHalfPi = std::numbers::pi / 2;

const UnitaryOperator& fair() {
  static const UnitaryOperator h(fair_strategy_matrix());
  return h;
}

}  // namespace

TEST_CASE("amplitude damping fair form: examples", "[closed_forms]") {
  CHECK_THAT(amp_damp_fair(0.0, 0.0), WithinAbs(0.5, 1e-15));
  CHECK_THAT(amp_damp_fair(0.5, 0.0), WithinAbs(7.0 / 12.0, 1e-15));
  CHECK_THAT(amp_damp_fair(0.5, kHalfPi), WithinAbs(5.0 / 12.0, 1e-15));
  CHECK_THAT(amp_damp_fair(1.0, 0.0), WithinAbs(0.5, 1e-15));
}

TEST_CASE("depolarizing fair form: examples", "[closed_forms]") {
  CHECK_THAT(depol_fair(0.0, 0.0), WithinAbs(0.5, 1e-15));
  CHECK_THAT(depol_fair(0.5, 0.0), WithinAbs(81.25 / 128.0, 1e-15));
  CHECK_THAT(depol_fair(0.9, 0.0), WithinAbs((64.0 + 3.0 * (16.0 - 8.1) * 0.9) / 128.0, 1e-15));
  CHECK(std::abs(depol_fair(0.9, 0.0) - 2.0 / 3.0) < 5e-4);
}

TEST_CASE("fair forms are 1/2 at gamma = pi/4", "[closed_forms]") {
  for (int i = 0; i <= 20; ++i) {
    const double p = i / 20.0;
    CHECK_THAT(amp_damp_fair(p, std::numbers::pi / 4), WithinAbs(0.5, 1e-15));
    CHECK_THAT(depol_fair(p, std::numbers::pi / 4), WithinAbs(0.5, 1e-15));
  }
}

TEST_CASE("switch and stick curves sum to one", "[closed_forms][property]") {
  for (int i = 0; i <= 100; ++i) {
    const double p = i / 100.0;
    CHECK_THAT(amp_damp_fair(p, 0.0) + amp_damp_fair(p, kHalfPi), WithinAbs(1.0, 1e-15));
    CHECK_THAT(depol_fair(p, 0.0) + depol_fair(p, kHalfPi), WithinAbs(1.0, 1e-15));
  }
}

TEST_CASE("amplitude damping fair form is symmetric about p = 0.5", "[closed_forms][property]") {
  double best = -1.0;
  int best_i = -1;
  for (int i = 0; i <= 100; ++i) {
    const double p = i / 100.0;
    CHECK_THAT(amp_damp_fair(p, 0.0), WithinAbs(amp_damp_fair(1.0 - p, 0.0), 1e-15));
    if (amp_damp_fair(p, 0.0) > best + 1e-15) {
      best = amp_damp_fair(p, 0.0);
      best_i = i;
    }
  }
  CHECK(best_i == 50);
}

TEST_CASE("classical-Bob forms reproduce the fair forms for A = H", "[closed_forms]") {
  for (int i = 0; i <= 10; ++i) {
    const double p = i / 10.0;
    for (double g : {0.0, 0.5, kHalfPi}) {
      CHECK_THAT(amp_damp_classical_bob(fair(), p, g), WithinAbs(amp_damp_fair(p, g), 1e-14));
      CHECK_THAT(depol_classical_bob(fair(), p, g), WithinAbs(depol_fair(p, g), 1e-14));
    }
  }
}

TEST_CASE("closed forms agree with the reference model", "[closed_forms][oracle]") {
  std::mt19937_64 rng(8);
  const auto bob = testing_support::to_reference(ComplexMatrix::identity(3));
  for (int trial = 0; trial < 6; ++trial) {
    const UnitaryOperator alice(testing_support::random_unitary(rng));
    const auto a = testing_support::to_reference(alice.matrix());
    for (double p : {0.0, 0.25, 0.8}) {
      for (double g : {0.0, 1.0, kHalfPi}) {
        CHECK(std::abs(amp_damp_classical_bob(alice, p, g) -
                       reference::play(reference::Channel::AmpDamp, p, g, a, bob).total()) <= 1e-12);
        CHECK(std::abs(depol_classical_bob(alice, p, g) -
                       reference::play(reference::Channel::Depol, p, g, a, bob).total()) <= 1e-12);
      }
    }
  }
}

TEST_CASE("closed_form dispatch", "[closed_forms]") {
  const UnitaryOperator id(ComplexMatrix::identity(3));
  CHECK(closed_form(ClosedFormId::AmpDampFair, id, 0.3, 0.2) == amp_damp_fair(0.3, 0.2));
  CHECK(closed_form(ClosedFormId::DepolFair, id, 0.3, 0.2) == depol_fair(0.3, 0.2));
  CHECK(closed_form(ClosedFormId::AmpDampClassicalBob, id, 0.3, 0.2) == amp_damp_classical_bob(id, 0.3, 0.2));
  CHECK(closed_form(ClosedFormId::DepolClassicalBob, id, 0.3, 0.2) == depol_classical_bob(id, 0.3, 0.2));
}

TEST_CASE("closed forms reject p outside [0,1]", "[closed_forms]") {
  CHECK_THROWS_AS(amp_damp_fair(-0.01, 0.0), ValidationError);
  CHECK_THROWS_AS(depol_fair(1.01, 0.0), ValidationError);
  CHECK_THROWS_AS(amp_damp_classical_bob(fair(), 2.0, 0.0), ValidationError);
  CHECK_THROWS_AS(depol_classical_bob(fair(), NAN, 0.0), ValidationError);
}
