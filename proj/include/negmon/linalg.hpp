#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <vector>

#include "negmon/errors.hpp"

namespace negmon {

using Complex = std::complex<double>;

/// Relative eigendecomposition tolerance; effective tolerances are scaled by
/// max(1, max-norm of the input).
inline constexpr double kEigenTol = 1e-12;

/// Ordered subsystem dimensions of a composite space. Subsystem 0 is the most
/// significant index block: a composite index i decomposes as
/// i = i_0 * (d_1 * ... * d_{k-1}) + ... + i_{k-1}.
class DimSpec {
 public:
  DimSpec() = default;
  DimSpec(std::initializer_list<std::size_t> dims);
  explicit DimSpec(std::vector<std::size_t> dims);

  std::size_t size() const { return dims_.size(); }
  std::size_t operator[](std::size_t k) const { return dims_[k]; }
  std::size_t product() const;
  const std::vector<std::size_t>& dims() const { return dims_; }

  /// Stride of subsystem k (product of the dimensions to its right).
  std::size_t stride(std::size_t k) const;

  /// New spec with subsystem k removed.
  DimSpec without(std::size_t k) const;
  /// New spec with an extra subsystem of dimension d appended (least significant).
  DimSpec append(std::size_t d) const;

  bool operator==(const DimSpec& other) const = default;

 private:
  std::vector<std::size_t> dims_;
};

/// Dense row-major complex matrix, the universal numeric carrier.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  ComplexMatrix(std::size_t rows, std::size_t cols);
  ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries);

  static ComplexMatrix identity(std::size_t n);
  static ComplexMatrix diagonal(const std::vector<double>& d);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }
  std::size_t size() const { return entries_.size(); }

  Complex& operator()(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
  const Complex& operator()(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }

  const std::vector<Complex>& entries() const { return entries_; }
  std::vector<Complex>& entries() { return entries_; }

  ComplexMatrix& operator+=(const ComplexMatrix& other);
  ComplexMatrix& operator-=(const ComplexMatrix& other);
  ComplexMatrix& operator*=(Complex scalar);

  Complex trace() const;
  /// Largest entry magnitude.
  double max_norm() const;
  /// ‖m − m†‖_max ≤ tol * max(1, ‖m‖_max)?
  bool is_hermitian(double tol = kEigenTol) const;
  /// All entries finite?
  bool is_finite() const;

  bool operator==(const ComplexMatrix& other) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Complex> entries_;
};

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix operator*(Complex scalar, ComplexMatrix m);
ComplexMatrix operator*(ComplexMatrix m, Complex scalar);

/// Conjugate transpose.
ComplexMatrix dagger(const ComplexMatrix& m);
ComplexMatrix transpose(const ComplexMatrix& m);
ComplexMatrix conjugate(const ComplexMatrix& m);

/// Kronecker product; the left factor is the most significant index block.
ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b);

/// Transposes the indices of subsystem `which`, leaving the rest untouched.
/// A pure entry permutation: applying it twice returns the input bitwise.
ComplexMatrix partial_transpose(const ComplexMatrix& m, const DimSpec& dims, std::size_t which);

/// Reduced matrix on the remaining subsystems; preserves the trace.
ComplexMatrix partial_trace(const ComplexMatrix& m, const DimSpec& dims, std::size_t which);

/// Hermitian eigendecomposition. Eigenvalues ascending, eigenvector columns
/// orthonormal, satisfying ‖M − V diag(λ) V†‖_max ≤ tol * max(1, ‖M‖_max).
struct HermitianEigen {
  std::vector<double> eigenvalues;
  ComplexMatrix eigenvectors;
};

/// Cyclic Jacobi diagonalization (100-sweep budget). Throws NotHermitianError
/// if ‖m − m†‖_max exceeds tol * max(1, ‖m‖_max), NoConvergenceError if the
/// sweep budget is exhausted.
HermitianEigen hermitian_eigen(const ComplexMatrix& m, double tol = kEigenTol);

/// Σ_k |λ_k| over the Hermitian eigenvalues; equals tr√(m†m) for Hermitian m.
double trace_norm_hermitian(const ComplexMatrix& m, double tol = kEigenTol);

/// Smallest eigenvalue of a Hermitian matrix.
double min_eigenvalue_hermitian(const ComplexMatrix& m, double tol = kEigenTol);

}  // namespace negmon
