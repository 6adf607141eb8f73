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

#include <benchmark/benchmark.h>

#include <random>

#include "corrq/classical.hpp"
#include "corrq/linalg.hpp"
#include "corrq/quantum.hpp"
#include "corrq/scenarios.hpp"

namespace {

using namespace corrq;

linalg::ComplexMatrix random_hermitian(std::mt19937_64& rng, int dim) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  linalg::ComplexMatrix m(dim, dim);
  for (int i = 0; i < dim; ++i) {
    m(i, i) = u(rng);
    for (int j = i + 1; j < dim; ++j) {
      linalg::Complex v(u(rng), u(rng));
      m(i, j) = v;
      m(j, i) = std::conj(v);
    }
  }
  return m;
}

void BM_HermitianEig(benchmark::State& state) {
  std::mt19937_64 rng(1);
  linalg::ComplexMatrix m = random_hermitian(rng, static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(linalg::hermitian_eig(m));
  }
}
BENCHMARK(BM_HermitianEig)->Arg(8)->Arg(16)->Arg(32)->Arg(64);

void BM_SimulateNormal(benchmark::State& state) {
  // Grow the shared state with ancilla-free junk qubits on the row side.
  int extra = static_cast<int>(state.range(0));
  games::NormalFormGame g = scenarios::fig2_game();
  quantum::QuantumState s;
  s.qubit_count = 2 + extra;
  s.partition = {0, 1};
  for (int q = 0; q < extra; ++q) s.partition.push_back(0);
  std::mt19937_64 rng(2);
  std::normal_distribution<double> gauss(0.0, 1.0);
  s.amplitudes.resize(1ULL << s.qubit_count);
  double norm = 0.0;
  for (auto& a : s.amplitudes) {
    a = linalg::Complex(gauss(rng), gauss(rng));
    norm += std::norm(a);
  }
  norm = std::sqrt(norm);
  for (auto& a : s.amplitudes) a /= norm;
  quantum::QceInstance inst = quantum::QceInstance::canonical(g, s);
  inst.circuits[0].gates.push_back({"H", {0}, {}});
  for (auto _ : state) {
    benchmark::DoNotOptimize(quantum::simulate_normal_qce(inst));
  }
}
BENCHMARK(BM_SimulateNormal)->Arg(2)->Arg(6)->Arg(10)->Arg(12);

void BM_VerifyCanonical(benchmark::State& state) {
  quantum::QceInstance inst = scenarios::appd1_instance();
  for (auto _ : state) {
    benchmark::DoNotOptimize(quantum::verify_canonical_qce(inst));
  }
}
BENCHMARK(BM_VerifyCanonical);

void BM_VerifyEfce(benchmark::State& state) {
  games::ExtensiveFormGame g = scenarios::appf_game();
  classical::ExtensiveDevice d = scenarios::appf_device();
  for (auto _ : state) {
    benchmark::DoNotOptimize(classical::verify_efce(g, d));
  }
}
BENCHMARK(BM_VerifyEfce);

void BM_LookaheadComposite(benchmark::State& state) {
  quantum::ExtensiveQceInstance inst = scenarios::appf_quantum_protocol();
  for (auto _ : state) {
    benchmark::DoNotOptimize(quantum::lookahead_deviation_value(inst, 0));
  }
}
BENCHMARK(BM_LookaheadComposite);

void BM_SearchRestart(benchmark::State& state) {
  int restarts = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(quantum::infeasibility_search(2, 2, restarts, 7));
  }
}
BENCHMARK(BM_SearchRestart)->Arg(1)->Arg(4);

void BM_FindCe(benchmark::State& state) {
  games::NormalFormGame g = scenarios::fig2_game();
  auto obj = classical::social_welfare_objective(g);
  for (auto _ : state) {
    benchmark::DoNotOptimize(classical::find_ce(g, obj));
  }
}
BENCHMARK(BM_FindCe);

}  // namespace

BENCHMARK_MAIN();
