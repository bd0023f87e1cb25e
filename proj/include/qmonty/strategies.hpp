#pragma once

// Named player strategies, validated ingestion of explicit unitaries and an
// exponential chart of SU(3) over the Gell-Mann generators.

#include <array>
#include <cmath>
#include <complex>
#include <optional>
#include <string>
#include <string_view>
#include <variant>

#include <Eigen/Dense>

#include "qmonty/algebra.hpp"

namespace qmonty {

enum class NamedStrategy { I, H, M1, M2 };

/// Coordinates of exp(i sum_k angles[k] lambda_k), radians.
struct SU3Angles {
  std::array<double, 8> values{};

  friend bool operator==(const SU3Angles&, const SU3Angles&) = default;
};

using StrategySpec = std::variant<NamedStrategy, ComplexMatrix, SU3Angles>;

inline std::string_view to_string(NamedStrategy s) {
  switch (s) {
    case NamedStrategy::I:
      return "I";
    case NamedStrategy::H:
      return "H";
    case NamedStrategy::M1:
      return "M1";
    case NamedStrategy::M2:
      return "M2";
  }
  return "?";
}

inline std::optional<NamedStrategy> parse_named_strategy(std::string_view tag) {
  for (auto s : {NamedStrategy::I, NamedStrategy::H, NamedStrategy::M1, NamedStrategy::M2}) {
    if (tag == to_string(s)) return s;
  }
  return std::nullopt;
}

/// Column label used in CSV output: the tag, "custom" or "angles".
inline std::string strategy_label(const StrategySpec& spec) {
  if (const auto* named = std::get_if<NamedStrategy>(&spec)) return std::string(to_string(*named));
  if (std::holds_alternative<ComplexMatrix>(spec)) return "custom";
  return "angles";
}

/// The fair strategy: every diagonal entry has modulus 1/sqrt(2) and every
/// off-diagonal entry modulus 1/2.
inline const ComplexMatrix& fair_strategy_matrix() {
  static const ComplexMatrix h = [] {
    const double r2 = std::sqrt(2.0);
    const double r7 = std::sqrt(7.0);
    const Complex i7(0.0, r7);
    return ComplexMatrix::from_rows({
        {1.0 / r2, 0.5, 0.5},
        {-0.5, (3.0 - i7) / (4.0 * r2), (1.0 + i7) / (4.0 * r2)},
        {(-1.0 - i7) / (4.0 * r2), (-3.0 + i7) / 8.0, (5.0 + i7) / 8.0},
    });
  }();
  return h;
}

inline const ComplexMatrix& shift_m1_matrix() {
  static const ComplexMatrix m = ComplexMatrix::from_rows({{0, 1, 0}, {0, 0, 1}, {1, 0, 0}});
  return m;
}

inline const ComplexMatrix& shift_m2_matrix() {
  static const ComplexMatrix m = ComplexMatrix::from_rows({{0, 0, 1}, {1, 0, 0}, {0, 1, 0}});
  return m;
}

inline const ComplexMatrix& named_strategy_matrix(NamedStrategy s) {
  static const ComplexMatrix id = ComplexMatrix::identity(3);
  switch (s) {
    case NamedStrategy::I:
      return id;
    case NamedStrategy::H:
      return fair_strategy_matrix();
    case NamedStrategy::M1:
      return shift_m1_matrix();
    case NamedStrategy::M2:
      return shift_m2_matrix();
  }
  return id;
}

/// lambda_1 .. lambda_8 in the usual Gell-Mann order.
inline const std::array<ComplexMatrix, 8>& gell_mann_generators() {
  static const std::array<ComplexMatrix, 8> g = [] {
    const Complex i(0.0, 1.0);
    const double d8 = 1.0 / std::sqrt(3.0);
    return std::array<ComplexMatrix, 8>{
        ComplexMatrix::from_rows({{0, 1, 0}, {1, 0, 0}, {0, 0, 0}}),
        ComplexMatrix::from_rows({{0, -i, 0}, {i, 0, 0}, {0, 0, 0}}),
        ComplexMatrix::from_rows({{1, 0, 0}, {0, -1, 0}, {0, 0, 0}}),
        ComplexMatrix::from_rows({{0, 0, 1}, {0, 0, 0}, {1, 0, 0}}),
        ComplexMatrix::from_rows({{0, 0, -i}, {0, 0, 0}, {i, 0, 0}}),
        ComplexMatrix::from_rows({{0, 0, 0}, {0, 0, 1}, {0, 1, 0}}),
        ComplexMatrix::from_rows({{0, 0, 0}, {0, 0, -i}, {0, i, 0}}),
        ComplexMatrix::from_rows({{d8, 0, 0}, {0, d8, 0}, {0, 0, -2.0 * d8}}),
    };
  }();
  return g;
}

/// exp(i sum_k angles_k lambda_k), via the eigendecomposition of the
/// Hermitian exponent.
inline UnitaryOperator su3_from_angles(const SU3Angles& angles) {
  const auto& gens = gell_mann_generators();
  Eigen::Matrix3cd h = Eigen::Matrix3cd::Zero();
  for (std::size_t k = 0; k < 8; ++k)
    for (int r = 0; r < 3; ++r)
      for (int c = 0; c < 3; ++c) h(r, c) += angles.values[k] * gens[k](r, c);
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3cd> solver(h);
  const Eigen::Matrix3cd& vecs = solver.eigenvectors();
  Eigen::Vector3cd phases;
  for (int k = 0; k < 3; ++k) phases(k) = std::polar(1.0, solver.eigenvalues()(k));
  const Eigen::Matrix3cd u = vecs * phases.asDiagonal() * vecs.adjoint();
  ComplexMatrix out(3, 3);
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) out(r, c) = u(r, c);
  return UnitaryOperator(std::move(out));
}

/// Turns a strategy spec into a validated 3x3 unitary. Explicit matrices are
/// checked against `tol`.
inline UnitaryOperator resolve(const StrategySpec& spec, double tol = kTolerance) {
  if (const auto* named = std::get_if<NamedStrategy>(&spec)) return UnitaryOperator(named_strategy_matrix(*named));
  if (const auto* angles = std::get_if<SU3Angles>(&spec)) return su3_from_angles(*angles);
  const auto& m = std::get<ComplexMatrix>(spec);
  if (m.rows() != 3 || m.cols() != 3) {
    throw DimensionError("strategy matrix must be 3x3, got " + std::to_string(m.rows()) + "x" +
                         std::to_string(m.cols()));
  }
  return UnitaryOperator(m, tol);
}

}  // namespace qmonty
