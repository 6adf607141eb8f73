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

#include <algorithm>
#include <cmath>
#include <random>

#include "corrq/quantum.hpp"
#include "sim.hpp"

namespace corrq::quantum {

using linalg::Complex;
using linalg::ComplexMatrix;

AdviceBlocks advice_blocks(const QuantumState& state) {
  state.validate(2);
  const int n = state.qubit_count;
  std::vector<int> row = state.register_of(0);
  std::vector<int> col = state.register_of(1);
  if (row.empty() || col.empty()) {
    throw InputError("advice_blocks: both players must hold at least one qubit");
  }

  const int row_advice = row.front();
  const int col_advice = col.front();
  std::vector<int> x_qubits(row.begin() + 1, row.end());
  std::vector<int> y_qubits(col.begin() + 1, col.end());
  const long long xd = 1LL << x_qubits.size();
  const long long yd = 1LL << y_qubits.size();

  AdviceBlocks blocks;
  blocks.a = ComplexMatrix(static_cast<int>(xd), static_cast<int>(yd));
  blocks.b = ComplexMatrix(static_cast<int>(xd), static_cast<int>(yd));
  blocks.c = ComplexMatrix(static_cast<int>(xd), static_cast<int>(yd));
  blocks.d = ComplexMatrix(static_cast<int>(xd), static_cast<int>(yd));

  for (long long x = 0; x < xd; ++x) {
    long long xbase = detail::place_bits(x_qubits, x, n);
    for (long long y = 0; y < yd; ++y) {
      long long base = xbase | detail::place_bits(y_qubits, y, n);
      long long rbit = 1LL << (n - 1 - row_advice);
      long long cbit = 1LL << (n - 1 - col_advice);
      int xi = static_cast<int>(x);
      int yi = static_cast<int>(y);
      blocks.d(xi, yi) = state.amplitudes[base];                 // |0x>|0y>
      blocks.a(xi, yi) = state.amplitudes[base | cbit];          // |0x>|1y>
      blocks.b(xi, yi) = state.amplitudes[base | rbit];          // |1x>|0y>
      blocks.c(xi, yi) = state.amplitudes[base | rbit | cbit];   // |1x>|1y>
    }
  }
  return blocks;
}

bool ConstraintReport::passes(double eps) const {
  return distribution_residual <= eps && sigma2_norm <= eps && sigma3_residual <= eps &&
         col_sigma2_norm <= eps && col_sigma3_residual <= eps && trace_a_residual <= eps &&
         trace_b_residual <= eps && trace_c_residual <= eps && ac_residual <= eps &&
         btc_residual <= eps && bbcc_residual <= eps && aacc_residual <= eps;
}

double ConstraintReport::sum_squares() const {
  double s = 0.0;
  for (double r : {distribution_residual, trace_a_residual, trace_b_residual, trace_c_residual,
                   ac_residual, btc_residual, bbcc_residual, aacc_residual}) {
    s += r * r;
  }
  return s;
}

ConstraintReport appendix_d_report(const QuantumState& state) {
  AdviceBlocks blocks = advice_blocks(state);
  const ComplexMatrix& a = blocks.a;
  const ComplexMatrix& b = blocks.b;
  const ComplexMatrix& c = blocks.c;

  auto mass = [](const ComplexMatrix& m) {
    double s = 0.0;
    for (const auto& v : m.entries()) s += std::norm(v);
    return s;
  };

  ConstraintReport report;
  const double third = 1.0 / 3.0;
  double pa = mass(a), pb = mass(b), pc = mass(c), pd = mass(blocks.d);
  report.distribution_residual =
      std::max({pd, std::abs(pa - third), std::abs(pb - third), std::abs(pc - third)});
  report.trace_a_residual = std::abs(pa - third);
  report.trace_b_residual = std::abs(pb - third);
  report.trace_c_residual = std::abs(pc - third);

  ComplexMatrix ac = a * c.adjoint();
  ComplexMatrix btc = b.adjoint() * c;
  ComplexMatrix bbcc = b * b.adjoint() - c * c.adjoint();
  ComplexMatrix aacc = a.adjoint() * a - c.adjoint() * c;
  report.ac_residual = ac.max_abs();
  report.btc_residual = btc.max_abs();
  report.bbcc_residual = bbcc.max_abs();
  report.aacc_residual = aacc.max_abs();

  // The conditional blocks carry the 3/2 normalization of sigma; rho-tilde
  // carries 3, so sigma_3 - rho-tilde/2 = (3/2)(CC-dagger - BB-dagger).
  report.sigma2_norm = 1.5 * report.ac_residual;
  report.sigma3_residual = 1.5 * report.bbcc_residual;
  report.col_sigma2_norm = 1.5 * report.btc_residual;
  report.col_sigma3_residual = 1.5 * report.aacc_residual;
  return report;
}

double gram_chain_value(const ComplexMatrix& a, const ComplexMatrix& c) {
  ComplexMatrix ac = a * c.adjoint();
  double f = ac.frobenius_norm();
  return f * f;
}

double trace_bound_from_residuals(double ac_frobenius, double gram_frobenius, int dim) {
  if (dim <= 0) throw InputError("trace_bound_from_residuals: dimension must be positive");
  double d = static_cast<double>(dim);
  double disc = d * d * gram_frobenius * gram_frobenius + 4.0 * d * ac_frobenius * ac_frobenius;
  return 0.5 * (d * gram_frobenius + std::sqrt(disc));
}

namespace {

QuantumState state_from_reals(int row_qubits, int col_qubits, const std::vector<double>& x) {
  QuantumState s;
  s.qubit_count = row_qubits + col_qubits;
  size_t dim = 1ULL << s.qubit_count;
  s.amplitudes.resize(dim);
  double norm = 0.0;
  for (size_t i = 0; i < dim; ++i) norm += x[2 * i] * x[2 * i] + x[2 * i + 1] * x[2 * i + 1];
  norm = std::sqrt(norm);
  if (norm < 1e-12) norm = 1.0;
  for (size_t i = 0; i < dim; ++i) {
    s.amplitudes[i] = Complex(x[2 * i] / norm, x[2 * i + 1] / norm);
  }
  for (int q = 0; q < row_qubits; ++q) s.partition.push_back(0);
  for (int q = 0; q < col_qubits; ++q) s.partition.push_back(1);
  return s;
}

// Deterministic start: equal weight 1/3 on each advice block, spread
// uniformly inside the block. For one qubit per player this is the
// |01>+|10>+|11> state.
std::vector<double> uniform_block_start(int row_qubits, int col_qubits) {
  int n = row_qubits + col_qubits;
  size_t dim = 1ULL << n;
  std::vector<double> x(2 * dim, 0.0);
  long long rbit = 1LL << (n - 1);                    // row advice qubit 0
  long long cbit = 1LL << (n - 1 - row_qubits);       // column advice qubit
  for (size_t i = 0; i < dim; ++i) {
    bool row_one = (i & rbit) != 0;
    bool col_one = (i & cbit) != 0;
    if (row_one || col_one) x[2 * i] = 1.0;  // everything but the |0x>|0y> block
  }
  return x;
}

}  // namespace

SearchResult infeasibility_search(int row_qubits, int col_qubits, int restarts,
                                  std::uint64_t seed) {
  if (row_qubits < 1 || col_qubits < 1) {
    throw InputError("infeasibility_search: both players need at least one qubit");
  }
  if (row_qubits + col_qubits > linalg::kDefaultMaxQubits) {
    throw InputError("infeasibility_search: state too large");
  }

  const size_t dim = 1ULL << (row_qubits + col_qubits);
  auto objective = [&](const std::vector<double>& x) {
    return appendix_d_report(state_from_reals(row_qubits, col_qubits, x)).sum_squares();
  };

  auto descend = [&](std::vector<double> x) {
    double fx = objective(x);
    double step = 0.3;
    while (step > 1e-7) {
      bool improved = false;
      for (size_t k = 0; k < x.size(); ++k) {
        for (double dir : {1.0, -1.0}) {
          double saved = x[k];
          x[k] = saved + dir * step;
          double fy = objective(x);
          if (fy < fx - 1e-15) {
            fx = fy;
            improved = true;
          } else {
            x[k] = saved;
          }
        }
      }
      if (!improved) step *= 0.5;
    }
    return std::make_pair(fx, x);
  };

  std::vector<double> best_x = uniform_block_start(row_qubits, col_qubits);
  double best_f = objective(best_x);

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (int r = 0; r < restarts; ++r) {
    std::vector<double> x(2 * dim);
    for (auto& v : x) v = gauss(rng);
    auto [f, argmin] = descend(std::move(x));
    if (f < best_f) {
      best_f = f;
      best_x = std::move(argmin);
    }
  }

  SearchResult result;
  result.min_residual = best_f;
  result.best_state = state_from_reals(row_qubits, col_qubits, best_x);
  result.best_report = appendix_d_report(result.best_state);

  // The Gram-chain bound must hold for any state; record it for the best one.
  AdviceBlocks blocks = advice_blocks(result.best_state);
  ComplexMatrix cc = blocks.c * blocks.c.adjoint();
  ComplexMatrix gram_gap = blocks.a.adjoint() * blocks.a - blocks.c.adjoint() * blocks.c;
  result.trace_value = cc.trace().real();
  result.trace_bound = trace_bound_from_residuals((blocks.a * blocks.c.adjoint()).frobenius_norm(),
                                                  gram_gap.frobenius_norm(), cc.rows());
  result.bound_holds = result.trace_value <= result.trace_bound + 1e-9;
  return result;
}

}  // namespace corrq::quantum
