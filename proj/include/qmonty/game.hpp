#pragma once

// The quantum Monty Hall game on three qutrits. Register 0 marks the opened
// box, register 1 is Bob's choice and register 2 the prize location chosen by
// Alice; |x y z> has index 9x + 3y + z.

#include <array>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "qmonty/algebra.hpp"
#include "qmonty/noise.hpp"

namespace qmonty {

inline constexpr std::size_t kQutritDim = 3;
inline constexpr std::size_t kGameDim = 27;
/// Largest imaginary part tolerated on a payoff diagonal entry.
inline constexpr double kImaginaryResidue = 1e-12;

constexpr std::size_t basis_index(std::size_t x, std::size_t y, std::size_t z) { return 9 * x + 3 * y + z; }

namespace detail {

// Index of the box that differs from both a and b (a != b).
constexpr std::size_t third_box(std::size_t a, std::size_t b) { return 3 - a - b; }

inline ComplexMatrix permutation_matrix(const std::array<std::size_t, kGameDim>& row_of_column) {
  ComplexMatrix m(kGameDim, kGameDim);
  for (std::size_t col = 0; col < kGameDim; ++col) m(row_of_column[col], col) = 1.0;
  return m;
}

inline std::array<std::size_t, kGameDim> open_permutation() {
  std::array<std::size_t, kGameDim> target{};
  for (std::size_t l = 0; l < 3; ++l)
    for (std::size_t j = 0; j < 3; ++j)
      for (std::size_t k = 0; k < 3; ++k) {
        if (j != k) {
          const std::size_t n = (third_box(j, k) + l) % 3;
          target[basis_index(l, j, k)] = basis_index(n, j, k);
        } else {
          const std::size_t m = (j + l + 1) % 3;
          target[basis_index(l, j, j)] = basis_index(m, j, j);
        }
      }
  return target;
}

inline std::array<std::size_t, kGameDim> switch_permutation() {
  std::array<std::size_t, kGameDim> target{};
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      for (std::size_t k = 0; k < 3; ++k) {
        target[basis_index(i, j, k)] = j != i ? basis_index(i, third_box(i, j), k) : basis_index(i, j, k);
      }
  return target;
}

// Diagonal indices |i j j> at which Bob's choice matches the prize.
inline std::array<std::size_t, 9> winning_indices() {
  std::array<std::size_t, 9> out{};
  std::size_t n = 0;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) out[n++] = basis_index(i, j, j);
  return out;
}

}  // namespace detail

/// Open-box marking operator: a basis permutation. For |l j k> with j != k the
/// host opens the third box i and the marker becomes (i + l) mod 3; for
/// |l j j> the marker becomes (j + l + 1) mod 3.
inline UnitaryOperator build_open_operator() {
  return UnitaryOperator(detail::permutation_matrix(detail::open_permutation()));
}

/// Switching operator: |i j k> -> |i l k> with l the box other than i and j;
/// |i i k> is left alone.
inline UnitaryOperator build_switch_operator() {
  return UnitaryOperator(detail::permutation_matrix(detail::switch_permutation()));
}

/// |0> (x) (|00> + |11> + |22>)/sqrt(3), as a projector.
inline DensityMatrix initial_state() {
  ComplexMatrix rho(kGameDim, kGameDim);
  for (std::size_t a = 0; a < 3; ++a)
    for (std::size_t b = 0; b < 3; ++b) rho(basis_index(0, a, a), basis_index(0, b, b)) = 1.0 / 3.0;
  return DensityMatrix(std::move(rho));
}

struct GameConfig {
  ChannelKind channel = ChannelKind::Noiseless;
  double p = 0.0;
  /// Switch angle in radians: 0 is pure switching, pi/2 pure sticking.
  double gamma = 0.0;
  UnitaryOperator alice = UnitaryOperator(ComplexMatrix::identity(3));
  UnitaryOperator bob = UnitaryOperator(ComplexMatrix::identity(3));

  void validate() const {
    if (!(p >= 0.0 && p <= 1.0)) throw ValidationError("p: " + std::to_string(p) + " outside [0, 1]");
    if (!(gamma >= 0.0 && gamma <= std::numbers::pi / 2)) {
      throw ValidationError("gamma: " + std::to_string(gamma) + " outside [0, pi/2]");
    }
    if (alice.dim() != kQutritDim) throw ValidationError("alice: strategy must be 3x3");
    if (bob.dim() != kQutritDim) throw ValidationError("bob: strategy must be 3x3");
  }
};

struct PayoffResult {
  double bob_not_switch = 0.0;
  double bob_switch = 0.0;
  double bob_total = 0.0;
  double alice = 0.0;

  friend bool operator==(const PayoffResult&, const PayoffResult&) = default;
};

namespace detail {

inline ComplexMatrix local_strategy_matrix(const UnitaryOperator& alice, const UnitaryOperator& bob) {
  return tensor(ComplexMatrix::identity(3), bob.matrix(), alice.matrix());
}

}  // namespace detail

/// I (x) B (x) A: the players' moves, applied before the open-box operator.
inline UnitaryOperator strategy_operator(const GameConfig& cfg) {
  cfg.validate();
  return UnitaryOperator(detail::local_strategy_matrix(cfg.alice, cfg.bob));
}

struct FinalStates {
  DensityMatrix not_switch;
  DensityMatrix switched;
};

/// Applies the lifted channel to the initial state, then the not-switch
/// branch U_N = sin(gamma) O (I(x)B(x)A) and switch branch
/// U_S = cos(gamma) S O (I(x)B(x)A).
inline FinalStates evolve(const GameConfig& cfg) {
  cfg.validate();
  const DensityMatrix noisy = apply_channel(initial_state(), lift_to_game_space(kraus_for(cfg.channel, cfg.p)));
  const ComplexMatrix strategy = build_open_operator().matrix() * strategy_operator(cfg).matrix();
  const double s = std::sin(cfg.gamma);
  const double c = std::cos(cfg.gamma);
  const ComplexMatrix u_n = Complex(s) * strategy;
  const ComplexMatrix u_s = Complex(c) * (build_switch_operator().matrix() * strategy);
  return FinalStates{DensityMatrix(u_n * noisy.matrix() * dagger(u_n), s * s),
                     DensityMatrix(u_s * noisy.matrix() * dagger(u_s), c * c)};
}

namespace detail {

inline double winning_mass(const ComplexMatrix& rho, const char* branch) {
  double total = 0.0;
  for (std::size_t idx : winning_indices()) {
    const Complex z = rho(idx, idx);
    if (std::abs(z.imag()) >= kImaginaryResidue) {
      throw NumericalError(std::string("bob_payoff: ") + branch + " diagonal entry " + std::to_string(idx) +
                           " has imaginary part " + std::to_string(z.imag()));
    }
    total += z.real();
  }
  return total;
}

}  // namespace detail

/// Sums the |i j j> populations of each branch.
inline PayoffResult bob_payoff(const DensityMatrix& not_switch, const DensityMatrix& switched) {
  if (not_switch.dim() != kGameDim || switched.dim() != kGameDim) {
    throw DimensionError("bob_payoff: both final states must be 27-dimensional");
  }
  PayoffResult r;
  r.bob_not_switch = detail::winning_mass(not_switch.matrix(), "not-switch");
  r.bob_switch = detail::winning_mass(switched.matrix(), "switch");
  r.bob_total = r.bob_not_switch + r.bob_switch;
  r.alice = 1.0 - r.bob_total;
  return r;
}

inline PayoffResult play(const GameConfig& cfg) {
  const FinalStates states = evolve(cfg);
  return bob_payoff(states.not_switch, states.switched);
}

/// Payoff evaluator for a fixed channel and noise level, for sweeps and scans.
///
/// The noisy state does not depend on the strategies, so it is computed once.
/// Because O and S are permutations, each winning diagonal entry of a final
/// state is v rho v^dagger for one row v of I(x)B(x)A; only rows and columns
/// of rho inside its support contribute.
class GameEngine {
 public:
  GameEngine(ChannelKind channel, double p)
      : channel_(channel),
        p_(p),
        noisy_(apply_channel(initial_state(), lift_to_game_space(kraus_for(channel, p)))) {
    const ComplexMatrix& rho = noisy_.matrix();
    for (std::size_t a = 0; a < kGameDim; ++a) {
      bool nonzero = false;
      for (std::size_t b = 0; b < kGameDim && !nonzero; ++b) nonzero = rho(a, b) != Complex{} || rho(b, a) != Complex{};
      if (nonzero) support_.push_back(a);
    }
    for (std::size_t a : support_)
      for (std::size_t b : support_) block_.push_back(rho(a, b));

    // Row k of P V is row source(k) of V, where P maps column source(k) to row k.
    const auto open = detail::open_permutation();
    const auto sw = detail::switch_permutation();
    std::array<std::size_t, kGameDim> open_source{};
    std::array<std::size_t, kGameDim> switch_source{};
    for (std::size_t col = 0; col < kGameDim; ++col) {
      open_source[open[col]] = col;
      switch_source[sw[col]] = col;
    }
    const auto wins = detail::winning_indices();
    for (std::size_t n = 0; n < wins.size(); ++n) {
      not_switch_rows_[n] = open_source[wins[n]];
      switch_rows_[n] = open_source[switch_source[wins[n]]];
    }
  }

  ChannelKind channel() const noexcept { return channel_; }
  double p() const noexcept { return p_; }
  const DensityMatrix& noisy_state() const noexcept { return noisy_; }

  PayoffResult play(double gamma, const UnitaryOperator& alice, const UnitaryOperator& bob) const {
    GameConfig{channel_, p_, gamma, alice, bob}.validate();
    const ComplexMatrix v = detail::local_strategy_matrix(alice, bob);
    const double s = std::sin(gamma);
    const double c = std::cos(gamma);
    PayoffResult r;
    r.bob_not_switch = s * s * branch_mass(v, not_switch_rows_);
    r.bob_switch = c * c * branch_mass(v, switch_rows_);
    r.bob_total = r.bob_not_switch + r.bob_switch;
    r.alice = 1.0 - r.bob_total;
    return r;
  }

 private:
  double branch_mass(const ComplexMatrix& v, const std::array<std::size_t, 9>& rows) const {
    const std::size_t n = support_.size();
    std::vector<Complex> row(n);
    double total = 0.0;
    for (std::size_t r : rows) {
      for (std::size_t a = 0; a < n; ++a) row[a] = v(r, support_[a]);
      Complex q{};
      for (std::size_t a = 0; a < n; ++a) {
        if (row[a] == Complex{}) continue;
        Complex acc{};
        for (std::size_t b = 0; b < n; ++b) acc += block_[a * n + b] * std::conj(row[b]);
        q += row[a] * acc;
      }
      if (std::abs(q.imag()) >= kImaginaryResidue) {
        throw NumericalError("GameEngine: payoff entry has imaginary part " + std::to_string(q.imag()));
      }
      total += q.real();
    }
    return total;
  }

  ChannelKind channel_;
  double p_;
  DensityMatrix noisy_;
  std::vector<std::size_t> support_;
  std::vector<Complex> block_;
  std::array<std::size_t, 9> not_switch_rows_{};
  std::array<std::size_t, 9> switch_rows_{};
};

}  // namespace qmonty
