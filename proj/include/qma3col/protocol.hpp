#pragma once

// The three-test verifier for 3-colorability with two unentangled proof
// registers, each living in C^n (x) C^3 (node index, color).
//
//   Test 1  swap test between the two registers.
//   Test 2  measure both registers in the computational basis; same node
//           must carry the same color, adjacent nodes different colors.
//   Test 3  measure node and color parts of each register in the Fourier
//           basis; reject if the color outcome is F_3|0> while the node
//           outcome is not F_n|0>.
//
// The verifier runs one test chosen uniformly at random.

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "qma3col/graphs.hpp"
#include "qma3col/qstate.hpp"

namespace qma3col {

inline constexpr std::size_t kNumColors = 3;
inline constexpr std::size_t kOperatorNodeCap = 12;

RegisterShape proof_register_shape(std::size_t n);

// Unentangled witness |w1> (x) |w2>; each factor has shape [n, 3].
class ProofPair {
 public:
  ProofPair(StateVector w1, StateVector w2);

  const StateVector& w1() const { return w1_; }
  const StateVector& w2() const { return w2_; }
  std::size_t num_nodes() const { return w1_.shape().dims()[0]; }
  ProofPair swapped() const { return ProofPair(w2_, w1_); }
  StateVector joint() const { return tensor(w1_, w2_); }

 private:
  StateVector w1_;
  StateVector w2_;
};

// w1 = w2 = n^{-1/2} sum_i |i>|C(i)>. Throws InputError for an invalid coloring.
ProofPair honest_proof(const Graph& g, const Coloring& c);

struct VerifierOperators {
  RegisterShape register_shape;
  std::optional<Operator> test1;
  std::optional<Operator> test2;
  std::optional<Operator> test3;
  Operator total;
  // Factored forms kept alongside the dense operators: accept weight of the
  // basis pair (a, b) for Test 2, and the single-register Test 3 element.
  std::optional<Eigen::MatrixXd> test2_weights;
  std::optional<Operator> test3_register;

  bool structured() const { return test2_weights.has_value() && test3_register.has_value(); }

  // Wraps an arbitrary POVM element on register (x) register, without
  // per-test structure.
  static VerifierOperators from_total(const RegisterShape& reg, Operator total);
};

// (I + S) / 2 on C^{3n} (x) C^{3n}.
Operator build_test1(std::size_t n);
// Diagonal projector onto the Test 2 accepting basis pairs.
Operator build_test2(const Graph& g);
Eigen::MatrixXd test2_accept_weights(const Graph& g);
// Per-register A = I - (I - P_idx0) (x) P_col0.
Operator test3_register_operator(std::size_t n);
// A (x) A: both registers must pass.
Operator build_test3(std::size_t n);

// Throws CapError above kOperatorNodeCap nodes.
VerifierOperators acceptance_operator(const Graph& g);

// <w1 w2| total |w1 w2> by dense evaluation.
double accept_probability(const VerifierOperators& ops, const ProofPair& p);

struct TestValues {
  double test1;
  double test2;
  double test3;
  double total;
};

// Closed-form per-test acceptance of a product pair using the factored
// operators; O((3n)^2).
TestValues test_values(const VerifierOperators& ops, const StateVector& w1, const StateVector& w2);
inline TestValues test_values(const VerifierOperators& ops, const ProofPair& p) {
  return test_values(ops, p.w1(), p.w2());
}

struct ProtocolTranscript {
  int test = 0;
  // Test 1: {ancilla bit}. Test 2: {basis index reg1, basis index reg2}.
  // Test 3: {node outcome 1, color outcome 1, node outcome 2, color outcome 2}.
  std::array<std::uint32_t, 4> outcomes{};
  int num_outcomes = 0;
  bool accept = false;
};

struct ProtocolRun {
  std::uint64_t trials = 0;
  std::uint64_t accept_count = 0;
  std::array<std::uint64_t, 3> test_counts{};
  std::vector<ProtocolTranscript> transcripts;
};

// Samples the protocol `trials` times. Test 1 accepts with the swap-test
// probability; Tests 2 and 3 sample measurement outcomes and apply the
// decision rules. Deterministic per seed.
ProtocolRun run_protocol(const VerifierOperators& ops, const ProofPair& p, std::uint64_t trials, std::uint64_t seed,
                         bool keep_transcripts = true);

struct RegisterStatistics {
  std::vector<double> node_mass;            // |alpha_i|^2
  std::vector<double> color_concentration;  // max_j |beta_ij|^2; 0 for a massless node
  double fourier_color0_mass = 0.0;         // Pr[color part -> F_3|0>]
  std::vector<double> postselected_index;   // |gamma_i|^2 after color outcome F_3|0>; empty if impossible
  double index_distance_from_uniform = 0.0;
  double index_fourier_failure = 0.0;  // Pr[node part != F_n|0> | color F_3|0>]
  double test3_reject = 0.0;           // fourier_color0_mass * index_fourier_failure
};

struct LemmaStatistics {
  std::size_t n = 0;
  OutcomeDistribution p{{1.0}};  // computational distribution of w1
  OutcomeDistribution q{{1.0}};  // computational distribution of w2
  RegisterStatistics first;
  RegisterStatistics second;
  double fidelity = 0.0;         // |<w1|w2>|^2
  double test1_failure = 0.0;    // (1 - fidelity) / 2
  double test2a_failure = 0.0;   // Pr[same node, different colors]
  double max_amplitude_gap = 0.0;  // max_{k,l} | |w1(k,l)| - |w2(k,l)| |
};

LemmaStatistics lemma_statistics(const ProofPair& p);

// Test 2(b) failure for a given graph: Pr[adjacent nodes, same color].
double test2b_failure(const Graph& g, const ProofPair& p);

void to_json(nlohmann::json& j, const ProofPair& p);
ProofPair proof_pair_from_json(const nlohmann::json& j);

}  // namespace qma3col
