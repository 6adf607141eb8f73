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

#include "corrq/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace corrq::linalg {

namespace {

// Eigenvalues in [-kSpectralZero, kSpectralZero] count as zero when splitting
// a matrix into positive and negative parts.
constexpr double kSpectralZero = 1e-12;
constexpr double kHermitianTol = 1e-9;
constexpr double kReconstructionTol = 1e-10;
constexpr int kMaxJacobiSweeps = 60;

std::string shape_string(const ComplexMatrix& m) {
  std::ostringstream os;
  os << m.rows() << "x" << m.cols();
  return os.str();
}

}  // namespace

ComplexMatrix::ComplexMatrix(int rows, int cols)
    : rows_(rows), cols_(cols), entries_(static_cast<size_t>(rows) * cols, Complex(0.0, 0.0)) {
  if (rows < 0 || cols < 0) throw InputError("matrix dimensions must be nonnegative");
}

ComplexMatrix::ComplexMatrix(int rows, int cols, std::vector<Complex> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
  if (rows < 0 || cols < 0) throw InputError("matrix dimensions must be nonnegative");
  if (entries_.size() != static_cast<size_t>(rows) * cols) {
    throw InputError("matrix entry count does not match rows*cols");
  }
}

ComplexMatrix ComplexMatrix::identity(int n) {
  ComplexMatrix m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::from_rows(
    std::initializer_list<std::initializer_list<Complex>> rows) {
  int r = static_cast<int>(rows.size());
  int c = r == 0 ? 0 : static_cast<int>(rows.begin()->size());
  ComplexMatrix m(r, c);
  int i = 0;
  for (const auto& row : rows) {
    if (static_cast<int>(row.size()) != c) throw InputError("ragged matrix literal");
    int j = 0;
    for (const auto& v : row) m(i, j++) = v;
    ++i;
  }
  return m;
}

ComplexMatrix ComplexMatrix::column_vector(const std::vector<Complex>& entries) {
  ComplexMatrix m(static_cast<int>(entries.size()), 1);
  for (size_t i = 0; i < entries.size(); ++i) m(static_cast<int>(i), 0) = entries[i];
  return m;
}

ComplexMatrix ComplexMatrix::outer(const std::vector<Complex>& v) {
  int n = static_cast<int>(v.size());
  ComplexMatrix m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = v[i] * std::conj(v[j]);
  return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix m(cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) m(j, i) = std::conj((*this)(i, j));
  return m;
}

ComplexMatrix ComplexMatrix::transpose() const {
  ComplexMatrix m(cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) m(j, i) = (*this)(i, j);
  return m;
}

ComplexMatrix ComplexMatrix::conjugate() const {
  ComplexMatrix m = *this;
  for (auto& v : m.entries_) v = std::conj(v);
  return m;
}

Complex ComplexMatrix::trace() const {
  if (!is_square()) throw InputError("trace of a non-square matrix");
  Complex t = 0.0;
  for (int i = 0; i < rows_; ++i) t += (*this)(i, i);
  return t;
}

double ComplexMatrix::max_abs() const {
  double m = 0.0;
  for (const auto& v : entries_) m = std::max(m, std::abs(v));
  return m;
}

double ComplexMatrix::frobenius_norm() const {
  double s = 0.0;
  for (const auto& v : entries_) s += std::norm(v);
  return std::sqrt(s);
}

bool ComplexMatrix::all_finite() const {
  for (const auto& v : entries_) {
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
  }
  return true;
}

double ComplexMatrix::hermiticity_defect() const {
  if (!is_square()) throw InputError("hermiticity defect of a non-square matrix");
  double d = 0.0;
  for (int i = 0; i < rows_; ++i)
    for (int j = i; j < cols_; ++j)
      d = std::max(d, std::abs((*this)(i, j) - std::conj((*this)(j, i))));
  return d;
}

bool ComplexMatrix::is_hermitian(double tol) const {
  return is_square() && hermiticity_defect() <= tol;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& other) {
  if (rows_ != other.rows_ || cols_ != other.cols_) throw InputError("matrix shape mismatch in +");
  for (size_t i = 0; i < entries_.size(); ++i) entries_[i] += other.entries_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& other) {
  if (rows_ != other.rows_ || cols_ != other.cols_) throw InputError("matrix shape mismatch in -");
  for (size_t i = 0; i < entries_.size(); ++i) entries_[i] -= other.entries_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(Complex scalar) {
  for (auto& v : entries_) v *= scalar;
  return *this;
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows()) {
    throw InputError("matrix shape mismatch in *: " + shape_string(a) + " by " + shape_string(b));
  }
  ComplexMatrix out(a.rows(), b.cols());
  for (int i = 0; i < a.rows(); ++i) {
    for (int k = 0; k < a.cols(); ++k) {
      Complex aik = a(i, k);
      if (aik == Complex(0.0, 0.0)) continue;
      for (int j = 0; j < b.cols(); ++j) out(i, j) += aik * b(k, j);
    }
  }
  return out;
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw InputError("matrix shape mismatch in max_abs_diff");
  }
  double d = 0.0;
  for (size_t i = 0; i < a.entries().size(); ++i) {
    d = std::max(d, std::abs(a.entries()[i] - b.entries()[i]));
  }
  return d;
}

ComplexMatrix HermitianEigensystem::reconstruct() const {
  const int n = eigenvectors.rows();
  ComplexMatrix out(n, n);
  for (int k = 0; k < static_cast<int>(eigenvalues.size()); ++k) {
    for (int i = 0; i < n; ++i) {
      Complex vik = eigenvectors(i, k) * eigenvalues[k];
      for (int j = 0; j < n; ++j) out(i, j) += vik * std::conj(eigenvectors(j, k));
    }
  }
  return out;
}

ComplexMatrix tensor_product(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (!a.all_finite() || !b.all_finite()) throw InputError("tensor_product: non-finite entries");
  const long long max_dim = 1LL << kDefaultMaxQubits;
  const long long rows = static_cast<long long>(a.rows()) * b.rows();
  const long long cols = static_cast<long long>(a.cols()) * b.cols();
  if (rows > max_dim || cols > max_dim) {
    throw InputError("tensor_product: result dimension exceeds the simulable state size");
  }
  ComplexMatrix out(static_cast<int>(rows), static_cast<int>(cols));
  for (int i = 0; i < a.rows(); ++i) {
    for (int j = 0; j < a.cols(); ++j) {
      Complex aij = a(i, j);
      if (aij == Complex(0.0, 0.0)) continue;
      for (int k = 0; k < b.rows(); ++k) {
        for (int l = 0; l < b.cols(); ++l) {
          out(i * b.rows() + k, j * b.cols() + l) = aij * b(k, l);
        }
      }
    }
  }
  return out;
}

namespace {

// One cyclic Jacobi sweep over the strict upper triangle. Each rotation
// zeroes A(p, q) by a complex Givens rotation; V accumulates the transform.
double jacobi_sweep(ComplexMatrix& a, ComplexMatrix& v) {
  const int n = a.rows();
  double off = 0.0;
  for (int p = 0; p < n - 1; ++p) {
    for (int q = p + 1; q < n; ++q) {
      Complex apq = a(p, q);
      double g = std::abs(apq);
      if (g == 0.0) continue;
      off = std::max(off, g);
      double app = a(p, p).real();
      double aqq = a(q, q).real();
      Complex phase = apq / g;  // a(p,q) = g * phase
      double tau = (aqq - app) / (2.0 * g);
      double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
      double c = 1.0 / std::sqrt(1.0 + t * t);
      double s = t * c;
      // Column rotation J: col_p' = c*col_p - s*conj(phase)... derived from
      // diagonalizing the phase first, then the real 2x2 rotation.
      Complex jpq = s;                // J(p,q)
      Complex jqq = c * std::conj(phase);
      Complex jqp = -s * std::conj(phase);
      // A <- J^dagger A J. Update columns then rows.
      for (int k = 0; k < n; ++k) {
        Complex akp = a(k, p), akq = a(k, q);
        a(k, p) = akp * c + akq * jqp;
        a(k, q) = akp * jpq + akq * jqq;
      }
      for (int k = 0; k < n; ++k) {
        Complex apk = a(p, k), aqk = a(q, k);
        a(p, k) = std::conj(c) * apk + std::conj(jqp) * aqk;
        a(q, k) = std::conj(jpq) * apk + std::conj(jqq) * aqk;
      }
      a(p, q) = Complex(0.0, 0.0);
      a(q, p) = Complex(0.0, 0.0);
      a(p, p) = Complex(a(p, p).real(), 0.0);
      a(q, q) = Complex(a(q, q).real(), 0.0);
      for (int k = 0; k < n; ++k) {
        Complex vkp = v(k, p), vkq = v(k, q);
        v(k, p) = vkp * c + vkq * jqp;
        v(k, q) = vkp * jpq + vkq * jqq;
      }
    }
  }
  return off;
}

}  // namespace

HermitianEigensystem hermitian_eig(const ComplexMatrix& m) {
  if (!m.is_square()) throw InputError("hermitian_eig: matrix is not square");
  if (!m.all_finite()) throw InputError("hermitian_eig: non-finite entries");
  double defect = m.hermiticity_defect();
  if (defect > kHermitianTol) {
    std::ostringstream os;
    os << "hermitian_eig: input is not Hermitian (defect " << defect << ")";
    throw InputError(os.str());
  }

  const int n = m.rows();
  // Work on the exactly Hermitian average so rounding in the caller's input
  // cannot bias the rotations.
  ComplexMatrix a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = 0.5 * (m(i, j) + std::conj(m(j, i)));
  ComplexMatrix v = ComplexMatrix::identity(n);

  double scale = std::max(a.max_abs(), 1e-300);
  for (int sweep = 0; sweep < kMaxJacobiSweeps; ++sweep) {
    double off = jacobi_sweep(a, v);
    if (off <= 1e-15 * scale) break;
  }

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::vector<double> diag(n);
  for (int i = 0; i < n; ++i) diag[i] = a(i, i).real();
  std::stable_sort(order.begin(), order.end(),
                   [&](int x, int y) { return diag[x] > diag[y]; });

  HermitianEigensystem sys;
  sys.eigenvalues.resize(n);
  sys.eigenvectors = ComplexMatrix(n, n);
  for (int k = 0; k < n; ++k) {
    sys.eigenvalues[k] = diag[order[k]];
    for (int i = 0; i < n; ++i) sys.eigenvectors(i, k) = v(i, order[k]);
  }

  double residual = max_abs_diff(sys.reconstruct(), m);
  if (residual > kReconstructionTol) {
    std::ostringstream os;
    os << "hermitian_eig: failed to converge, reconstruction residual " << residual;
    throw NumericError(os.str());
  }
  return sys;
}

double trace_norm(const ComplexMatrix& m) {
  if (!m.is_square()) throw InputError("trace_norm: matrix is not square");
  if (m.is_hermitian(kHermitianTol)) {
    HermitianEigensystem sys = hermitian_eig(m);
    double s = 0.0;
    for (double w : sys.eigenvalues) s += std::abs(w);
    return s;
  }
  // |m| = sqrt(m^dagger m); singular values are the square roots of the
  // (nonnegative) eigenvalues of m^dagger m.
  ComplexMatrix gram = m.adjoint() * m;
  HermitianEigensystem sys = hermitian_eig(gram);
  double s = 0.0;
  for (double w : sys.eigenvalues) s += std::sqrt(std::max(w, 0.0));
  return s;
}

ComplexMatrix positive_part(const ComplexMatrix& m) {
  if (!m.is_square()) throw InputError("positive_part: matrix is not square");
  if (!m.is_hermitian(kHermitianTol)) throw InputError("positive_part: input is not Hermitian");
  HermitianEigensystem sys = hermitian_eig(m);
  const int n = m.rows();
  ComplexMatrix out(n, n);
  for (int k = 0; k < n; ++k) {
    double w = sys.eigenvalues[k];
    if (w <= kSpectralZero) continue;
    for (int i = 0; i < n; ++i) {
      Complex vik = sys.eigenvectors(i, k) * w;
      for (int j = 0; j < n; ++j) out(i, j) += vik * std::conj(sys.eigenvectors(j, k));
    }
  }
  return out;
}

ComplexMatrix partial_trace(const ComplexMatrix& rho, int qubit_count,
                            const std::vector<int>& keep) {
  const long long dim = 1LL << qubit_count;
  if (rho.rows() != dim || rho.cols() != dim) {
    throw InputError("partial_trace: operator dimension does not match qubit count");
  }
  std::vector<int> kept = keep;
  std::sort(kept.begin(), kept.end());
  for (size_t i = 0; i < kept.size(); ++i) {
    if (kept[i] < 0 || kept[i] >= qubit_count) throw InputError("partial_trace: keep index out of range");
    if (i > 0 && kept[i] == kept[i - 1]) throw InputError("partial_trace: duplicate keep index");
  }
  std::vector<int> traced;
  for (int q = 0; q < qubit_count; ++q) {
    if (!std::binary_search(kept.begin(), kept.end(), q)) traced.push_back(q);
  }

  // Qubit q occupies bit (qubit_count - 1 - q) of a basis index.
  auto place = [&](const std::vector<int>& qubits, long long bits) {
    long long ix = 0;
    for (size_t i = 0; i < qubits.size(); ++i) {
      if ((bits >> (qubits.size() - 1 - i)) & 1) ix |= 1LL << (qubit_count - 1 - qubits[i]);
    }
    return ix;
  };

  const long long kd = 1LL << kept.size();
  const long long td = 1LL << traced.size();
  ComplexMatrix out(static_cast<int>(kd), static_cast<int>(kd));
  for (long long r = 0; r < kd; ++r) {
    long long rbase = place(kept, r);
    for (long long c = 0; c < kd; ++c) {
      long long cbase = place(kept, c);
      Complex sum = 0.0;
      for (long long t = 0; t < td; ++t) {
        long long off = place(traced, t);
        sum += rho(static_cast<int>(rbase | off), static_cast<int>(cbase | off));
      }
      out(static_cast<int>(r), static_cast<int>(c)) = sum;
    }
  }
  return out;
}

}  // namespace corrq::linalg
