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

#ifndef CORRQ_QUANTUM_HPP_
#define CORRQ_QUANTUM_HPP_

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "corrq/classical.hpp"
#include "corrq/games.hpp"
#include "corrq/linalg.hpp"

namespace corrq::quantum {

// ---------------------------------------------------------------------------
// Shared advice state and player circuits
// ---------------------------------------------------------------------------

// Pure n-qubit state with a per-qubit owner. Qubit 0 is the leftmost ket
// symbol; a basis index reads the qubit string big-endian.
struct QuantumState {
  int qubit_count = 0;
  std::vector<linalg::Complex> amplitudes;  // size 2^qubit_count
  std::vector<int> partition;               // qubit index -> owning player

  double norm() const;
  void validate(int player_count, double tol = 1e-9) const;
  // The player's register: his qubit indices in ascending order.
  std::vector<int> register_of(int player) const;
};

// A single gate: one of the named gates or an explicit unitary on the listed
// targets (targets ordered most-significant first).
struct Gate {
  std::string name;          // "H","X","Y","Z","S","T","CNOT" or "unitary"
  std::vector<int> targets;
  linalg::ComplexMatrix matrix;  // used only when name == "unitary"
};

// Returns the 2^k x 2^k matrix of a gate; validates unitarity of explicit
// matrices within 1e-9.
linalg::ComplexMatrix gate_matrix(const Gate& gate);

// Unitary gate list plus a standard-basis measurement of `output_qubits`,
// mapped to the owner's action labels. Target indices below the shared
// state's qubit count are global qubit indices and must lie in the owner's
// register; an index n0 + k (n0 = the state's qubit count) is the owner's
// k-th ancilla for this circuit, initialized |0>.
struct PlayerCircuit {
  int owner = -1;
  int ancilla_count = 0;
  std::vector<Gate> gates;
  std::vector<int> output_qubits;
  std::map<std::string, std::string> action_map;  // bitstring -> action label
};

struct QceInstance {
  games::NormalFormGame game;
  QuantumState state;
  std::vector<PlayerCircuit> circuits;  // one per player

  void validate(int max_qubits = linalg::kDefaultMaxQubits) const;
  // Canonical: every circuit is a bare measurement of log2|A_i| qubits.
  bool is_canonical() const;

  // Builds the canonical instance for a state: player i measures the first
  // log2|A_i| qubits of his register; bitstrings map to actions in binary
  // order. Requires every |A_i| to be a power of two.
  static QceInstance canonical(games::NormalFormGame game, QuantumState state);
};

// ---------------------------------------------------------------------------
// Normal-form protocol simulation and canonicalization
// ---------------------------------------------------------------------------

// Applies every player's unitaries (ancillas appended per circuit), then
// measures all output qubits jointly and maps bits to action profiles.
// Exact probabilities, no sampling. NumericError on norm drift > 1e-7.
games::OutcomeDistribution simulate_normal_qce(const QceInstance& inst,
                                               int max_qubits = linalg::kDefaultMaxQubits);

// Same, applying the per-player unitary blocks in the given player order.
// Local circuits act on disjoint qubits, so the result is order-independent;
// exposed for the order-permutation checks.
games::OutcomeDistribution simulate_normal_qce_ordered(const QceInstance& inst,
                                                       const std::vector<int>& player_order,
                                                       int max_qubits = linalg::kDefaultMaxQubits);

// Deferred-measurement rewrite: returns an instance whose state has all
// unitaries (and ancillas) absorbed and whose circuits are bare measurements
// of the same output qubits. Outcome distributions agree per outcome.
QceInstance canonicalize(const QceInstance& inst, int max_qubits = linalg::kDefaultMaxQubits);

// Measurement distribution of a canonical instance pushed through the action
// maps: the classical correlating device that mirrors the protocol.
classical::CorrelatingDevice qce_to_ce(const QceInstance& inst);

// ---------------------------------------------------------------------------
// Conditional states and optimal deviations
// ---------------------------------------------------------------------------

struct ConditionalEntry {
  std::vector<int> advice_actions;  // opponents' action indices, in player order
  std::string advice_bits;          // opponents' measured output bits
  double probability = 0.0;
  linalg::ComplexMatrix state;      // density matrix on the target register
};

struct ConditionalStateFamily {
  int player = -1;
  std::vector<int> register_qubits;
  std::vector<ConditionalEntry> entries;
};

// Reduced states of `player`'s register conditional on the joint advice the
// opponents measure. Zero-probability advice outcomes are omitted.
ConditionalStateFamily conditional_states(const QceInstance& inst, int player);

struct BinaryDeviationResult {
  double value = 0.0;                // best expected utility over all POVMs
  linalg::ComplexMatrix measurement; // projector onto where action 0 is played
  linalg::ComplexMatrix m0, m1;      // weighted payoff operators
};

// Exact optimum over all two-outcome measurements of the register:
// M_x = sum_a p(a) u(x, a) rho_a, value = Tr M_1 + Tr (M_0 - M_1)_+,
// attained by the projector onto the positive eigenspace of M_0 - M_1.
// `payoffs[e]` holds the utility of action 0 and action 1 under entry e.
BinaryDeviationResult optimal_deviation_binary(const ConditionalStateFamily& family,
                                               const std::vector<std::array<double, 2>>& payoffs);

// Certificate check for players with more than two actions: true iff
// Y - M_x is PSD within eps for every x and Tr Y <= on_path + eps, which
// upper-bounds every measurement strategy's utility by on_path + 2 eps.
bool dual_certificate_check(const std::vector<linalg::ComplexMatrix>& m_list,
                            const linalg::ComplexMatrix& y, double on_path, double eps);

struct PlayerAnalysis {
  enum class Method {
    exact_binary,     // Helstrom optimum over all measurements
    exact_classical,  // empty register: best constant response
    certified,        // dual certificate bound
    sampled           // lower bound from sampled measurements only
  };
  int player = -1;
  Method method = Method::exact_binary;
  double on_path = 0.0;
  double deviation_value = 0.0;  // optimum, certified bound, or sampled bound
  double gain = 0.0;             // deviation_value - on_path
  linalg::ComplexMatrix measurement;  // Helstrom projector when exact_binary
};

struct QceReport {
  enum class Verdict { equilibrium, not_equilibrium, undetermined };
  Verdict verdict = Verdict::undetermined;
  double eps = 1e-9;
  games::OutcomeDistribution outcome;   // action-profile distribution
  std::vector<PlayerAnalysis> players;

  double max_gain() const;
};

// Equilibrium check for a canonical instance. Any deviating circuit acts as
// a measurement on the deviator's register, so two-action players are
// settled exactly by optimal_deviation_binary; players holding no qubits by
// the best constant response. Players with more actions need an entry in
// `certificates` (checked by dual_certificate_check) or are reported with a
// sampled lower bound and, failing that, verdict `undetermined`.
QceReport verify_canonical_qce(const QceInstance& inst, double eps = 1e-9,
                               const std::map<int, linalg::ComplexMatrix>* certificates = nullptr,
                               std::uint64_t seed = 0);

struct DeviationCriterion {
  double trace_value = 0.0;  // Tr | rho/3 - 2 sigma/3 |
  bool has_incentive = false;
};

// Helstrom-style incentive test for a family with exactly the two-state
// structure: one conditional state with probability 1/3 (rho) and one with
// probability 2/3 (sigma), payoffs 0/6 on the off-advice cells. Incentive to
// deviate iff the trace value exceeds 1/3.
DeviationCriterion deviation_criterion(const ConditionalStateFamily& family, double eps = 1e-9);

// ---------------------------------------------------------------------------
// Density-matrix constraint system for the 1/3 (TR + BL + BR) target
// ---------------------------------------------------------------------------

// Amplitude blocks of a two-player state split by the two advice qubits:
// a(x, y) multiplies |0x>|1y>, b(x, y) |1x>|0y>, c(x, y) |1x>|1y>, and
// d(x, y) |0x>|0y>.
struct AdviceBlocks {
  linalg::ComplexMatrix a, b, c, d;
};
AdviceBlocks advice_blocks(const QuantumState& state);

struct ConstraintReport {
  // max |measured - target| over the four advice cells (target 0, 1/3, 1/3,
  // 1/3 for TL, TR, BL, BR).
  double distribution_residual = 0.0;
  // Row player's conditional sigma: off-diagonal block and lower-block match.
  double sigma2_norm = 0.0;       // max-abs of sigma_2 = (3/2) A C-dagger
  double sigma3_residual = 0.0;   // max-abs of sigma_3 - rho-tilde / 2
  // Column player's analogues.
  double col_sigma2_norm = 0.0;
  double col_sigma3_residual = 0.0;
  // The block constraint system.
  double trace_a_residual = 0.0;  // |Tr(A A-dagger) - 1/3|
  double trace_b_residual = 0.0;
  double trace_c_residual = 0.0;
  double ac_residual = 0.0;       // max-abs of A C-dagger
  double btc_residual = 0.0;      // max-abs of B-dagger C
  double bbcc_residual = 0.0;     // max-abs of B B-dagger - C C-dagger
  double aacc_residual = 0.0;     // max-abs of A-dagger A - C-dagger C

  // A state is a canonical implementation of the target iff everything here
  // is within eps.
  bool passes(double eps = 1e-9) const;
  double sum_squares() const;
};

// Extracts the blocks of a two-player state and reports every constraint
// residual for the 1/3 (TR + BL + BR) target. A wrong support shows up as
// distribution_residual (and failing trace residuals), not as an error.
ConstraintReport appendix_d_report(const QuantumState& state);

// ||A C-dagger||_F^2, which is what Tr((C C-dagger)^2) collapses to once
// A-dagger A = C-dagger C is substituted into the Gram chain.
double gram_chain_value(const linalg::ComplexMatrix& a, const linalg::ComplexMatrix& c);

// Upper bound on Tr(C C-dagger) implied by near-satisfaction of the two
// constraints: with ||A C-dagger||_F <= ac and ||A-dagger A - C-dagger C||_F
// <= gram, Tr(C C-dagger) <= (d*gram + sqrt(d^2 gram^2 + 4 d ac^2)) / 2.
double trace_bound_from_residuals(double ac_frobenius, double gram_frobenius, int dim);

struct SearchResult {
  double min_residual = 0.0;  // smallest sum of squared residuals found
  QuantumState best_state;
  ConstraintReport best_report;
  // Gram-chain bound evaluated on the best state; holds for every state.
  double trace_value = 0.0;
  double trace_bound = 0.0;
  bool bound_holds = false;
};

// Random-restart coordinate descent over normalized amplitude vectors of a
// (row_qubits + col_qubits)-qubit state, minimizing the summed squared
// constraint residuals. Deterministic for a fixed seed. With restarts = 0
// only the deterministic uniform-block start is evaluated.
SearchResult infeasibility_search(int row_qubits, int col_qubits, int restarts,
                                  std::uint64_t seed);

// ---------------------------------------------------------------------------
// Extensive-form protocols
// ---------------------------------------------------------------------------

// Behavior at one information set: either the owner runs a circuit on his
// register, or (for players holding no qubits there) a classical mixture
// over the actions.
struct InfosetProgram {
  std::string infoset;
  std::optional<PlayerCircuit> circuit;
  std::optional<std::vector<std::pair<std::string, double>>> mix;
};

struct ExtensiveQceInstance {
  games::ExtensiveFormGame game;
  QuantumState state;
  std::vector<InfosetProgram> programs;

  void validate(int max_qubits = linalg::kDefaultMaxQubits) const;
  const InfosetProgram* find_program(const std::string& infoset) const;
};

struct ExtensiveSimResult {
  games::OutcomeDistribution distribution;  // leaf distribution
  std::vector<double> utilities;            // per player
  std::vector<std::string> warnings;        // e.g. re-use of measured qubits
};

// Walks the tree keeping the joint state; at each reached information set
// runs the owner's program, branching exactly over measurement outcomes.
ExtensiveSimResult simulate_extensive_qce(const ExtensiveQceInstance& inst,
                                          int max_qubits = linalg::kDefaultMaxQubits);

struct LookaheadResult {
  double value = 0.0;    // best expected utility over the deviation family
  double on_path = 0.0;
  double gain = 0.0;
  std::vector<std::string> evaluated_early;  // information sets pre-measured
  std::vector<std::string> plan;
};

// Best deviation over the early-evaluation family: the player picks a subset
// of his own information sets, runs their circuits at the start of play
// (legal: they act on his qubits only), and afterwards chooses every action
// as an arbitrary function of all bits he has observed. Response maps are
// optimized exactly per subset; ties break toward the smaller subset and the
// lexicographically first plan.
LookaheadResult lookahead_deviation_value(const ExtensiveQceInstance& inst, int player,
                                          double eps = 1e-9,
                                          long long plan_state_cap = classical::kDefaultPlanStateCap);

}  // namespace corrq::quantum

#endif  // CORRQ_QUANTUM_HPP_
