// Copyright 2026 The corrq Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef CORRQ_LINALG_HPP_
#define CORRQ_LINALG_HPP_

#include <complex>
#include <initializer_list>
#include <vector>

#include "corrq/error.hpp"

namespace corrq::linalg {

using Complex = std::complex<double>;

// Largest state the simulator will allocate: 2^14 amplitudes.
inline constexpr int kDefaultMaxQubits = 14;

// Dense complex matrix, row-major. All entries are expected to stay finite;
// validate() enforces it at module boundaries.
class ComplexMatrix {
 public:
  ComplexMatrix() : rows_(0), cols_(0) {}
  ComplexMatrix(int rows, int cols);
  ComplexMatrix(int rows, int cols, std::vector<Complex> entries);

  static ComplexMatrix identity(int n);
  static ComplexMatrix zero(int rows, int cols) { return ComplexMatrix(rows, cols); }
  // Row-wise construction, convenient for literals in tests and gate tables.
  static ComplexMatrix from_rows(
      std::initializer_list<std::initializer_list<Complex>> rows);
  static ComplexMatrix column_vector(const std::vector<Complex>& entries);
  // v * v^dagger
  static ComplexMatrix outer(const std::vector<Complex>& v);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  Complex& operator()(int r, int c) { return entries_[static_cast<size_t>(r) * cols_ + c]; }
  const Complex& operator()(int r, int c) const {
    return entries_[static_cast<size_t>(r) * cols_ + c];
  }

  const std::vector<Complex>& entries() const { return entries_; }
  std::vector<Complex>& entries() { return entries_; }

  ComplexMatrix adjoint() const;
  ComplexMatrix transpose() const;
  ComplexMatrix conjugate() const;

  Complex trace() const;
  double max_abs() const;
  double frobenius_norm() const;
  bool all_finite() const;
  // max |(*this - m^dagger)| over entries; 0 for exactly Hermitian input.
  double hermiticity_defect() const;
  bool is_hermitian(double tol = 1e-9) const;

  ComplexMatrix& operator+=(const ComplexMatrix& other);
  ComplexMatrix& operator-=(const ComplexMatrix& other);
  ComplexMatrix& operator*=(Complex scalar);

  friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
  friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
  friend ComplexMatrix operator*(ComplexMatrix a, Complex s) { return a *= s; }
  friend ComplexMatrix operator*(Complex s, ComplexMatrix a) { return a *= s; }
  friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);

 private:
  int rows_;
  int cols_;
  std::vector<Complex> entries_;
};

// max |a - b| over entries; matrices must have equal shape.
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);

struct HermitianEigensystem {
  // Sorted descending.
  std::vector<double> eigenvalues;
  // Column k is the unit eigenvector for eigenvalues[k]; columns orthonormal.
  ComplexMatrix eigenvectors;

  ComplexMatrix reconstruct() const;
};

// Kronecker product; block (i, j) of the result is a(i, j) * b.
// Throws InputError when a dimension of the result would exceed
// 2^kDefaultMaxQubits (the state is too large to simulate).
ComplexMatrix tensor_product(const ComplexMatrix& a, const ComplexMatrix& b);

// Eigendecomposition of a Hermitian matrix by cyclic Jacobi rotations.
// Requires hermiticity within 1e-9 (InputError otherwise). Fails with
// NumericError, reporting the residual, if the reconstruction
// ||m - V diag(w) V^dagger||_max exceeds 1e-10 after the sweep budget.
HermitianEigensystem hermitian_eig(const ComplexMatrix& m);

// Sum of singular values. Hermitian inputs take the eigenvalue path
// (sum of |lambda_i|); general square inputs go through sqrt(m^dagger m).
double trace_norm(const ComplexMatrix& m);

// Positive part of a Hermitian matrix: sum over lambda_i > 0 of
// lambda_i v_i v_i^dagger. Eigenvalues within [-1e-12, 1e-12] are treated
// as zero so behavior at spectral boundaries is deterministic.
ComplexMatrix positive_part(const ComplexMatrix& m);

// Partial trace of a 2^n x 2^n operator onto the qubits in `keep`
// (ascending order of the kept indices defines the output ordering).
// Qubit 0 is the leftmost ket symbol, i.e. the most significant bit of a
// basis index.
ComplexMatrix partial_trace(const ComplexMatrix& rho, int qubit_count,
                            const std::vector<int>& keep);

}  // namespace corrq::linalg

#endif  // CORRQ_LINALG_HPP_
