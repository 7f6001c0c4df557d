#pragma once

// Qubit circuits for the verifier: IR, text format, simulation, and the
// compiler from a graph to a single deferred-measurement circuit.

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "qma3col/gates.hpp"
#include "qma3col/graphs.hpp"
#include "qma3col/protocol.hpp"

namespace qma3col {

class Circuit {
 public:
  Circuit(std::size_t num_qubits, std::size_t accept_wire);

  std::size_t num_qubits() const { return num_qubits_; }
  std::size_t accept_wire() const { return accept_wire_; }
  const std::vector<Gate>& gates() const { return gates_; }
  std::size_t size() const { return gates_.size(); }

  // Validates against the circuit's width.
  void append(Gate g);

  bool operator==(const Circuit&) const = default;

 private:
  std::size_t num_qubits_;
  std::size_t accept_wire_;
  std::vector<Gate> gates_;
};

// Header "qubits <Q> accept <w>", then one line per gate:
//   GATE <schema> <num_controls>:<pattern>[:<param>...] <wires...>
std::string serialize_circuit(const Circuit& c);
Circuit parse_circuit(std::string_view text);

// Register of n nodes and 3 colors on k = ceil(log2(3n)) qubits; basis
// state (i, c) is the k-bit value 3i + c and values >= 3n are padding.
struct Embedding {
  std::size_t n = 0;
  std::size_t k = 0;
  std::size_t used = 0;  // 3n
  std::uint64_t index(std::size_t node, std::size_t color) const { return 3 * node + color; }
};

Embedding embed_dims(std::size_t n);

inline constexpr std::size_t kCircuitNodeCap = 12;
inline constexpr std::size_t kVerifierAncillas = 5;
inline constexpr unsigned kDefaultSimulationBits = 64;

// Soundness gap and size polynomial of the compiled verifier.
struct VerifierParams {
  std::size_t n = 0;
  double gap = 0.0;  // g = 1/p(n)
  // q(n) = size_a n^2 + size_b bounds the gate count.
  std::uint64_t size_a = 4;
  std::uint64_t size_b = 32;
  // Each proof register uses at most c log2(n) + 3 qubits.
  double c = 1.0;

  // g = 1/(24 n^6).
  static VerifierParams for_nodes(std::size_t n);
  std::uint64_t size_bound() const { return size_a * n * n + size_b; }
};

// Wires: register 1 on [0, k), register 2 on [k, 2k), then the two
// branch-selector qubits, two scratch flags and the accept qubit.
struct VerifierLayout {
  Embedding embedding;
  std::size_t sel0, sel1, flag0, flag1, accept;
  std::size_t num_qubits() const { return accept + 1; }
};

VerifierLayout verifier_layout(std::size_t n);

// One circuit whose accept qubit reads 1 with the protocol's acceptance
// probability on |w1>|w2>|00000>. Throws CapError above kCircuitNodeCap and
// NumericalError if the gate count exceeds params.size_bound().
Circuit compile_verifier(const Graph& g, const VerifierParams& params);

// Shape [2, 2, ..., 2] with qubit 0 most significant.
RegisterShape qubit_shape(std::size_t num_qubits);

// Applies the gates in order, materializing entries at `bits`.
StateVector simulate_circuit(const Circuit& c, const StateVector& input, unsigned bits = kDefaultSimulationBits);
// Same, on an unnormalized amplitude vector.
Vec simulate_amplitudes(const Circuit& c, Vec amps, unsigned bits = kDefaultSimulationBits);

// Probability that the accept wire reads 1.
double accept_wire_probability(const Circuit& c, const Vec& amps);

// |w1>|w2>|0...0> on the verifier's qubits.
StateVector embed_pair(const VerifierLayout& layout, const StateVector& w1, const StateVector& w2);

// Acceptance of a product pair through the compiled circuit.
double circuit_accept_probability(const Circuit& c, const VerifierLayout& layout, const ProofPair& p,
                                  unsigned bits = kDefaultSimulationBits);

}  // namespace qma3col
