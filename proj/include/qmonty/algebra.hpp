#pragma once

// Dense complex linear algebra over the small (3^n, n <= 4) spaces used by
// the game: Kronecker products, adjoints, traces and structural checks.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "qmonty/error.hpp"

namespace qmonty {

using Complex = std::complex<double>;

/// Structural tolerance for unitarity, Hermiticity, trace and completeness.
inline constexpr double kTolerance = 1e-10;
/// Allowed negativity of the smallest eigenvalue of a density matrix.
inline constexpr double kEigenSlack = 1e-9;

inline bool is_finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

/// Row-major dense complex matrix with value semantics.
class ComplexMatrix {
 public:
  /// Zero matrix.
  ComplexMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {
    if (rows == 0 || cols == 0) throw DimensionError("ComplexMatrix: dimensions must be positive");
  }

  ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries)
      : rows_(rows), cols_(cols), data_(std::move(entries)) {
    if (rows == 0 || cols == 0) throw DimensionError("ComplexMatrix: dimensions must be positive");
    if (data_.size() != rows * cols) {
      throw DimensionError("ComplexMatrix: expected " + std::to_string(rows * cols) + " entries, got " +
                           std::to_string(data_.size()));
    }
    for (const auto& z : data_) {
      if (!is_finite(z)) throw ValidationError("ComplexMatrix: non-finite entry");
    }
  }

  /// Builds from nested rows; all rows must have equal length.
  static ComplexMatrix from_rows(std::initializer_list<std::initializer_list<Complex>> rows) {
    const std::size_t r = rows.size();
    const std::size_t c = r == 0 ? 0 : rows.begin()->size();
    std::vector<Complex> entries;
    entries.reserve(r * c);
    for (const auto& row : rows) {
      if (row.size() != c) throw DimensionError("ComplexMatrix::from_rows: ragged rows");
      entries.insert(entries.end(), row.begin(), row.end());
    }
    return ComplexMatrix(r, c, std::move(entries));
  }

  static ComplexMatrix identity(std::size_t n) {
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  static ComplexMatrix diagonal(std::span<const Complex> diag) {
    ComplexMatrix m(diag.size(), diag.size());
    for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }

  Complex& operator()(std::size_t r, std::size_t c) noexcept { return data_[r * cols_ + c]; }
  const Complex& operator()(std::size_t r, std::size_t c) const noexcept { return data_[r * cols_ + c]; }

  std::span<const Complex> entries() const noexcept { return data_; }

  friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Complex> data_;
};

namespace detail {

inline void require_square(const ComplexMatrix& a, const char* what) {
  if (!a.is_square()) {
    throw DimensionError(std::string(what) + ": matrix must be square, got " + std::to_string(a.rows()) + "x" +
                         std::to_string(a.cols()));
  }
}

inline Eigen::MatrixXcd to_eigen(const ComplexMatrix& a) {
  Eigen::MatrixXcd m(a.rows(), a.cols());
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c) m(r, c) = a(r, c);
  return m;
}

}  // namespace detail

/// Kronecker product; entry (i1*rows_b + i2, j1*cols_b + j2) = a(i1,j1) b(i2,j2).
inline ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i1 = 0; i1 < a.rows(); ++i1)
    for (std::size_t j1 = 0; j1 < a.cols(); ++j1) {
      const Complex s = a(i1, j1);
      if (s == Complex{}) continue;
      for (std::size_t i2 = 0; i2 < b.rows(); ++i2)
        for (std::size_t j2 = 0; j2 < b.cols(); ++j2) out(i1 * b.rows() + i2, j1 * b.cols() + j2) = s * b(i2, j2);
    }
  return out;
}

template <typename... Rest>
ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b, const Rest&... rest) {
  return tensor(tensor(a, b), rest...);
}

/// Conjugate transpose.
inline ComplexMatrix dagger(const ComplexMatrix& a) {
  ComplexMatrix out(a.cols(), a.rows());
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c) out(c, r) = std::conj(a(r, c));
  return out;
}

inline ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows()) {
    throw DimensionError("matmul: inner dimensions differ (" + std::to_string(a.cols()) + " vs " +
                         std::to_string(b.rows()) + ")");
  }
  ComplexMatrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Complex s = a(i, k);
      if (s == Complex{}) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += s * b(k, j);
    }
  return out;
}

inline ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) { return matmul(a, b); }

inline ComplexMatrix operator*(Complex s, const ComplexMatrix& a) {
  std::vector<Complex> entries(a.entries().begin(), a.entries().end());
  for (auto& z : entries) z *= s;
  return ComplexMatrix(a.rows(), a.cols(), std::move(entries));
}

inline ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw DimensionError("operator+: shape mismatch");
  std::vector<Complex> entries(a.entries().begin(), a.entries().end());
  for (std::size_t i = 0; i < entries.size(); ++i) entries[i] += b.entries()[i];
  return ComplexMatrix(a.rows(), a.cols(), std::move(entries));
}

inline Complex trace(const ComplexMatrix& a) {
  detail::require_square(a, "trace");
  Complex t{};
  for (std::size_t i = 0; i < a.rows(); ++i) t += a(i, i);
  return t;
}

/// max_{ij} |a_ij - b_ij|.
inline double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw DimensionError("max_abs_diff: shape mismatch");
  double m = 0.0;
  for (std::size_t i = 0; i < a.entries().size(); ++i) m = std::max(m, std::abs(a.entries()[i] - b.entries()[i]));
  return m;
}

/// ||a^dagger a - I||_max.
inline double unitarity_residual(const ComplexMatrix& a) {
  detail::require_square(a, "unitarity_residual");
  return max_abs_diff(dagger(a) * a, ComplexMatrix::identity(a.rows()));
}

inline bool check_unitary(const ComplexMatrix& a, double tol) { return unitarity_residual(a) <= tol; }

/// ||a - a^dagger||_max.
inline double hermiticity_residual(const ComplexMatrix& a) {
  detail::require_square(a, "hermiticity_residual");
  return max_abs_diff(a, dagger(a));
}

/// Smallest eigenvalue of the Hermitian part (a + a^dagger)/2.
inline double min_eigenvalue_hermitian(const ComplexMatrix& a, double tol = kTolerance) {
  const double residual = hermiticity_residual(a);
  if (residual > tol) {
    throw ValidationError("min_eigenvalue_hermitian: matrix is not Hermitian (residual " + std::to_string(residual) +
                          ")");
  }
  const Eigen::MatrixXcd m = detail::to_eigen(a);
  const Eigen::MatrixXcd h = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

inline Complex determinant(const ComplexMatrix& a) {
  detail::require_square(a, "determinant");
  return detail::to_eigen(a).partialPivLu().determinant();
}

/// Square matrix with ||U^dagger U - I||_max <= tol, checked on construction.
class UnitaryOperator {
 public:
  explicit UnitaryOperator(ComplexMatrix m, double tol = kTolerance) : mat_(std::move(m)) {
    detail::require_square(mat_, "UnitaryOperator");
    const double residual = unitarity_residual(mat_);
    if (!(residual <= tol)) {
      throw ValidationError("matrix is not unitary: max |U^dagger U - I| entry = " + std::to_string(residual) +
                            " exceeds tolerance " + std::to_string(tol));
    }
  }

  std::size_t dim() const noexcept { return mat_.rows(); }
  const ComplexMatrix& matrix() const noexcept { return mat_; }

  friend bool operator==(const UnitaryOperator&, const UnitaryOperator&) = default;

 private:
  ComplexMatrix mat_;
};

inline bool is_power_of_three(std::size_t n) {
  if (n == 0) return false;
  while (n % 3 == 0) n /= 3;
  return n == 1;
}

/// Hermitian, positive semidefinite state on a 3^n space. The trace is checked
/// against a declared value, so unnormalized branch states (trace sin^2 gamma,
/// cos^2 gamma) are representable.
class DensityMatrix {
 public:
  explicit DensityMatrix(ComplexMatrix m, double declared_trace = 1.0) : mat_(std::move(m)), trace_(declared_trace) {
    detail::require_square(mat_, "DensityMatrix");
    if (!is_power_of_three(mat_.rows())) {
      throw DimensionError("DensityMatrix: dimension " + std::to_string(mat_.rows()) + " is not a power of 3");
    }
    const double herm = hermiticity_residual(mat_);
    if (herm > kTolerance) throw ValidationError("DensityMatrix: not Hermitian (residual " + std::to_string(herm) + ")");
    const Complex t = trace(mat_);
    if (std::abs(t.imag()) > kTolerance || std::abs(t.real() - declared_trace) > kTolerance) {
      throw ValidationError("DensityMatrix: trace " + std::to_string(t.real()) + " differs from declared " +
                            std::to_string(declared_trace));
    }
    const double lo = min_eigenvalue_hermitian(mat_);
    if (lo < -kEigenSlack) {
      throw ValidationError("DensityMatrix: negative eigenvalue " + std::to_string(lo));
    }
  }

  std::size_t dim() const noexcept { return mat_.rows(); }
  const ComplexMatrix& matrix() const noexcept { return mat_; }
  double declared_trace() const noexcept { return trace_; }

 private:
  ComplexMatrix mat_;
  double trace_;
};

}  // namespace qmonty
