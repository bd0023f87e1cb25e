#pragma once

// Single-qutrit Kraus sets for the amplitude-damping, dephasing and
// depolarizing channels, their lift to the three-qutrit game space, and the
// Kraus map rho -> sum_k E_k rho E_k^dagger.

#include <array>
#include <cmath>
#include <numbers>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qmonty/algebra.hpp"

namespace qmonty {

enum class ChannelKind { Noiseless, AmplitudeDamping, Dephasing, Depolarizing };

/// CLI / CSV spelling of a channel.
inline std::string_view to_string(ChannelKind kind) {
  switch (kind) {
    case ChannelKind::Noiseless:
      return "none";
    case ChannelKind::AmplitudeDamping:
      return "amp-damp";
    case ChannelKind::Dephasing:
      return "dephasing";
    case ChannelKind::Depolarizing:
      return "depolarizing";
  }
  return "unknown";
}

inline ChannelKind parse_channel(std::string_view name) {
  for (auto kind : {ChannelKind::Noiseless, ChannelKind::AmplitudeDamping, ChannelKind::Dephasing,
                    ChannelKind::Depolarizing}) {
    if (name == to_string(kind)) return kind;
  }
  throw ValidationError("unknown channel '" + std::string(name) +
                        "' (expected none, amp-damp, dephasing or depolarizing)");
}

/// ||sum_k E_k^dagger E_k - I||_max.
inline double completeness_residual(std::span<const ComplexMatrix> ops) {
  if (ops.empty()) throw ValidationError("completeness_residual: empty operator list");
  ComplexMatrix sum(ops.front().cols(), ops.front().cols());
  for (const auto& e : ops) sum = sum + dagger(e) * e;
  return max_abs_diff(sum, ComplexMatrix::identity(sum.rows()));
}

/// A complete family of Kraus operators for one channel at one noise level.
class KrausSet {
 public:
  KrausSet(ChannelKind kind, double p, std::vector<ComplexMatrix> ops) : kind_(kind), p_(p), ops_(std::move(ops)) {
    if (ops_.empty()) throw ValidationError("KrausSet: no operators");
    const std::size_t dim = ops_.front().rows();
    for (const auto& e : ops_) {
      if (e.rows() != dim || e.cols() != dim) throw DimensionError("KrausSet: operators differ in shape");
    }
    const double residual = completeness_residual(ops_);
    if (residual > kTolerance) {
      throw ValidationError("KrausSet: completeness violated (residual " + std::to_string(residual) + ")");
    }
  }

  std::size_t dim() const noexcept { return ops_.front().rows(); }
  ChannelKind kind() const noexcept { return kind_; }
  double p() const noexcept { return p_; }
  const std::vector<ComplexMatrix>& ops() const noexcept { return ops_; }
  std::size_t size() const noexcept { return ops_.size(); }

 private:
  ChannelKind kind_;
  double p_;
  std::vector<ComplexMatrix> ops_;
};

namespace detail {

inline void require_probability(double p, const char* what) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw ValidationError(std::string(what) + ": decoherence parameter p=" + std::to_string(p) +
                          " outside [0, 1]");
  }
}

}  // namespace detail

/// omega = exp(2 pi i / 3).
inline Complex omega() { return std::polar(1.0, 2.0 * std::numbers::pi / 3.0); }

/// Cyclic shift |k> -> |k-1 mod 3>, rows (0 1 0), (0 0 1), (1 0 0).
inline ComplexMatrix shift_y() { return ComplexMatrix::from_rows({{0, 1, 0}, {0, 0, 1}, {1, 0, 0}}); }

/// Clock matrix diag(1, omega, omega^2).
inline ComplexMatrix clock_z() {
  const Complex w = omega();
  const std::array<Complex, 3> d{1.0, w, w * w};
  return ComplexMatrix::diagonal(d);
}

inline KrausSet kraus_noiseless() { return KrausSet(ChannelKind::Noiseless, 0.0, {ComplexMatrix::identity(3)}); }

inline KrausSet kraus_amplitude_damping(double p) {
  detail::require_probability(p, "kraus_amplitude_damping");
  const double keep = std::sqrt(1.0 - p);
  const double decay = std::sqrt(p);
  auto e0 = ComplexMatrix::from_rows({{1, 0, 0}, {0, keep, 0}, {0, 0, keep}});
  auto e1 = ComplexMatrix::from_rows({{0, decay, 0}, {0, 0, 0}, {0, 0, 0}});
  auto e2 = ComplexMatrix::from_rows({{0, 0, decay}, {0, 0, 0}, {0, 0, 0}});
  return KrausSet(ChannelKind::AmplitudeDamping, p, {std::move(e0), std::move(e1), std::move(e2)});
}

inline KrausSet kraus_dephasing(double p) {
  detail::require_probability(p, "kraus_dephasing");
  return KrausSet(ChannelKind::Dephasing, p,
                  {Complex(std::sqrt(1.0 - p)) * ComplexMatrix::identity(3), Complex(std::sqrt(p)) * clock_z()});
}

/// sqrt(1-p) I followed by sqrt(p/8) times Y, Z, Y^2, YZ, Y^2 Z, YZ^2, Y^2 Z^2, Z^2.
inline KrausSet kraus_depolarizing(double p) {
  detail::require_probability(p, "kraus_depolarizing");
  const ComplexMatrix y = shift_y();
  const ComplexMatrix z = clock_z();
  const ComplexMatrix y2 = y * y;
  const ComplexMatrix z2 = z * z;
  const Complex w(std::sqrt(p / 8.0));
  std::vector<ComplexMatrix> ops;
  ops.reserve(9);
  ops.push_back(Complex(std::sqrt(1.0 - p)) * ComplexMatrix::identity(3));
  for (const ComplexMatrix* word : {&y, &z, &y2}) ops.push_back(w * *word);
  ops.push_back(w * (y * z));
  ops.push_back(w * (y2 * z));
  ops.push_back(w * (y * z2));
  ops.push_back(w * (y2 * z2));
  ops.push_back(w * z2);
  return KrausSet(ChannelKind::Depolarizing, p, std::move(ops));
}

inline KrausSet kraus_for(ChannelKind kind, double p) {
  switch (kind) {
    case ChannelKind::Noiseless:
      detail::require_probability(p, "kraus_noiseless");
      return kraus_noiseless();
    case ChannelKind::AmplitudeDamping:
      return kraus_amplitude_damping(p);
    case ChannelKind::Dephasing:
      return kraus_dephasing(p);
    case ChannelKind::Depolarizing:
      return kraus_depolarizing(p);
  }
  throw ValidationError("kraus_for: unknown channel");
}

/// Zero-based registers of the game space that the lifted channel acts on:
/// Bob's and Alice's qutrits. The opened-box register (0) stays noiseless.
inline constexpr std::array<std::size_t, 2> kNoisyRegisters{1, 2};

/// All n^2 products e_i (x) e_j placed on kNoisyRegisters, identity elsewhere.
/// Order: i outer, j inner.
inline KrausSet lift_to_game_space(const KrausSet& single) {
  if (single.dim() != 3) {
    throw DimensionError("lift_to_game_space: expected single-qutrit operators, got dim " +
                         std::to_string(single.dim()));
  }
  const ComplexMatrix id = ComplexMatrix::identity(3);
  std::vector<ComplexMatrix> ops;
  ops.reserve(single.size() * single.size());
  for (const auto& first : single.ops()) {
    for (const auto& second : single.ops()) {
      std::array<const ComplexMatrix*, 3> factors{&id, &id, &id};
      factors[kNoisyRegisters[0]] = &first;
      factors[kNoisyRegisters[1]] = &second;
      ops.push_back(tensor(*factors[0], *factors[1], *factors[2]));
    }
  }
  return KrausSet(single.kind(), single.p(), std::move(ops));
}

inline DensityMatrix apply_channel(const DensityMatrix& rho, const KrausSet& channel) {
  if (rho.dim() != channel.dim()) {
    throw DimensionError("apply_channel: state dim " + std::to_string(rho.dim()) + " vs channel dim " +
                         std::to_string(channel.dim()));
  }
  ComplexMatrix out(rho.dim(), rho.dim());
  for (const auto& e : channel.ops()) out = out + e * rho.matrix() * dagger(e);
  // Exact Hermitian symmetrization; the sum is Hermitian up to rounding.
  ComplexMatrix sym(out.rows(), out.cols());
  for (std::size_t r = 0; r < out.rows(); ++r)
    for (std::size_t c = 0; c < out.cols(); ++c) sym(r, c) = 0.5 * (out(r, c) + std::conj(out(c, r)));
  return DensityMatrix(std::move(sym), rho.declared_trace());
}

}  // namespace qmonty
