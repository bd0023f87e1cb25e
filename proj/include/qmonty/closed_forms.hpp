#pragma once

// Closed-form payoffs of Bob for specialized strategy choices. They are
// independent of the density-matrix engine and serve as its oracle.

#include <cmath>
#include <string>

#include "qmonty/algebra.hpp"
#include "qmonty/error.hpp"

namespace qmonty {

enum class ClosedFormId { AmpDampClassicalBob, AmpDampFair, DepolClassicalBob, DepolFair };

namespace detail {

inline void require_unit_interval(double p, const char* what) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw ValidationError(std::string(what) + ": p=" + std::to_string(p) + " outside [0, 1]");
  }
}

struct SquaredModuli {
  double m[3][3];
};

inline SquaredModuli squared_moduli(const UnitaryOperator& alice) {
  if (alice.dim() != 3) throw DimensionError("closed form: Alice's strategy must be 3x3");
  SquaredModuli a{};
  for (std::size_t r = 0; r < 3; ++r)
    for (std::size_t c = 0; c < 3; ++c) a.m[r][c] = std::norm(alice.matrix()(r, c));
  return a;
}

}  // namespace detail

/// Amplitude damping, Alice plays the fair operator H, Bob plays I.
inline double amp_damp_fair(double p, double gamma) {
  detail::require_unit_interval(p, "amp_damp_fair");
  const double c2 = std::cos(gamma) * std::cos(gamma);
  const double s2 = std::sin(gamma) * std::sin(gamma);
  return ((3.0 - 2.0 * (-1.0 + p) * p) * c2 + (3.0 + 2.0 * (-1.0 + p) * p) * s2) / 6.0;
}

/// Depolarizing, Alice plays H, Bob plays I.
inline double depol_fair(double p, double gamma) {
  detail::require_unit_interval(p, "depol_fair");
  const double c2 = std::cos(gamma) * std::cos(gamma);
  const double s2 = std::sin(gamma) * std::sin(gamma);
  return ((64.0 + 3.0 * (16.0 - 9.0 * p) * p) * c2 + (64.0 + 3.0 * p * (-16.0 + 9.0 * p)) * s2) / 128.0;
}

/// Amplitude damping, Bob plays I, Alice arbitrary; depends only on |a_ij|^2.
inline double amp_damp_classical_bob(const UnitaryOperator& alice, double p, double gamma) {
  detail::require_unit_interval(p, "amp_damp_classical_bob");
  const auto [a] = detail::squared_moduli(alice);
  const double c2 = std::cos(gamma) * std::cos(gamma);
  const double s2 = std::sin(gamma) * std::sin(gamma);
  const double q = -1.0 + p;
  const double sw = -(1.0 / 3.0) *
                    (-(a[0][1] + a[0][2] + a[1][2] + a[2][1]) * q * q +
                     (2.0 * a[0][0] + a[1][0] + a[1][1] + a[1][2] + a[2][0] + a[2][1] + a[2][2]) * q * p +
                     (a[1][0] + a[2][0]) * (-1.0 - 2.0 * p * p));
  const double stick = -(1.0 / 3.0) * (a[0][0] * (-1.0 - 2.0 * p * p) + (a[1][1] + a[2][2]) * (-1.0 + 2.0 * p - p * p) +
                                       (a[0][1] + a[0][2] + a[1][0] + a[2][0]) * (-p + p * p));
  return sw * c2 + stick * s2;
}

/// Depolarizing, Bob plays I, Alice arbitrary.
inline double depol_classical_bob(const UnitaryOperator& alice, double p, double gamma) {
  detail::require_unit_interval(p, "depol_classical_bob");
  const auto [a] = detail::squared_moduli(alice);
  const double c2 = std::cos(gamma) * std::cos(gamma);
  const double s2 = std::sin(gamma) * std::sin(gamma);
  const double off = a[0][1] + a[0][2] + a[1][0] + a[1][2] + a[2][0] + a[2][1];
  const double diag = a[0][0] + a[1][1] + a[2][2];
  const double wide = 64.0 - 96.0 * p + 54.0 * p * p;
  const double narrow = 48.0 * p - 27.0 * p * p;
  const double sw = wide * off + narrow * (2.0 * a[0][0] + a[0][1] + a[0][2] + a[1][0] + 2.0 * a[1][1] + a[1][2] +
                                           a[2][0] + a[2][1] + 2.0 * a[2][2]);
  const double stick = -((-narrow) * off + (-wide) * diag);
  return (sw * c2 + stick * s2) / 192.0;
}

/// Dispatch by id; `alice` is ignored by the two fair forms.
inline double closed_form(ClosedFormId id, const UnitaryOperator& alice, double p, double gamma) {
  switch (id) {
    case ClosedFormId::AmpDampClassicalBob:
      return amp_damp_classical_bob(alice, p, gamma);
    case ClosedFormId::AmpDampFair:
      return amp_damp_fair(p, gamma);
    case ClosedFormId::DepolClassicalBob:
      return depol_classical_bob(alice, p, gamma);
    case ClosedFormId::DepolFair:
      return depol_fair(p, gamma);
  }
  throw ValidationError("closed_form: unknown id");
}

}  // namespace qmonty
