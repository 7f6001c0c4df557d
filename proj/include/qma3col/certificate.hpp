#pragma once

// Classical certificates for the verifier: fixed-precision density matrices
// for the two proof registers, and the classical procedure that decides
// acceptance by simulating the compiled circuit on them.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "qma3col/circuit.hpp"
#include "qma3col/gates.hpp"

namespace qma3col {

// Number of decimal digits D with 10^D >= 2^bits.
unsigned decimal_digits(unsigned bits);

// Bits needed for the verifier's numerical error to stay below g/3:
// ceil(log2(3 * num_gates * dim^2 / g)) + 8 with dim = 2^num_qubits.
unsigned precision_budget(std::size_t num_gates, std::size_t num_qubits, double gap);

// Density matrix whose entries are exact decimals value / 10^scale.
class DecimalMatrix {
 public:
  DecimalMatrix(std::size_t dim, unsigned scale);

  std::size_t dim() const { return dim_; }
  unsigned scale() const { return scale_; }
  const BigInt& re(std::size_t r, std::size_t c) const { return re_[r * dim_ + c]; }
  const BigInt& im(std::size_t r, std::size_t c) const { return im_[r * dim_ + c]; }
  void set(std::size_t r, std::size_t c, BigInt re, BigInt im);
  // Raises the scale to `scale` digits (exact).
  void rescale(unsigned scale);

  Mat to_matrix() const;

 private:
  std::size_t dim_;
  unsigned scale_;
  std::vector<BigInt> re_;
  std::vector<BigInt> im_;
};

struct WeightedState {
  double weight;
  Vec amps;
};

class Certificate {
 public:
  Certificate(unsigned bits, DecimalMatrix rho1, DecimalMatrix rho2);

  // rho = sum_t w_t |v_t><v_t| / sum_t w_t <v_t|v_t>, computed exactly from
  // the double inputs and rounded to decimal_digits(bits). Vectors have
  // length 3n and are placed in a register of dimension `dim` >= 3n.
  static Certificate from_ensembles(const std::vector<WeightedState>& first, const std::vector<WeightedState>& second,
                                    std::size_t dim, unsigned bits);
  static Certificate from_pair(const ProofPair& p, std::size_t dim, unsigned bits);

  unsigned bits() const { return bits_; }
  std::size_t dim() const { return rho1_.dim(); }
  const DecimalMatrix& rho1() const { return rho1_; }
  const DecimalMatrix& rho2() const { return rho2_; }

  // Hermitian within 2^-bits, trace 1 and positive semidefinite within
  // 2^-bits * dim, and no weight on register values >= used. Throws
  // InputError naming the first violation.
  void validate(std::size_t used) const;

 private:
  unsigned bits_;
  DecimalMatrix rho1_;
  DecimalMatrix rho2_;
};

// {"bits": b, "dim": d, "rho1": [[["re", "im"], ...], ...], "rho2": ...}
// with decimal strings carrying decimal_digits(b) fractional digits.
nlohmann::json certificate_to_json(const Certificate& c);
// Throws PrecisionError for entries with fewer digits than declared and
// InputError for other format problems.
Certificate certificate_from_json(const nlohmann::json& j);

struct VerifyResult {
  bool accept = false;
  double probability = 0.0;
  double threshold = 0.0;    // accept iff probability > threshold = 1 - g/2
  double error_bound = 0.0;  // bound on |probability - exact|, <= g/3
  unsigned required_bits = 0;
  unsigned certificate_bits = 0;
  std::size_t simulations = 0;
};

// Tr(Pi_accept U (rho1 (x) rho2 (x) |0><0|) U^dagger) by simulating the
// circuit on the eigenvectors of rho1 and rho2. Throws PrecisionError when
// the certificate carries fewer bits than the budget, InputError for a
// malformed certificate.
VerifyResult classical_verify(const Circuit& circ, const Certificate& cert, const VerifierParams& params);

struct RoundtripOptions {
  int restarts = 200;
  std::uint64_t seed = 1;
};

struct RoundtripResult {
  bool colorable = false;
  // Honest certificate for colorable graphs. For uncolorable graphs this
  // stays empty unless the best adversarial certificate was accepted.
  std::optional<Certificate> certificate;
  // Best adversarial certificate tried on an uncolorable graph.
  std::optional<Certificate> adversary_certificate;
  VerifyResult verdict;
  double adversary_value = 0.0;
  std::string adversary_source;
};

// Colorable: honest certificate at the precision budget, which must be
// accepted (NumericalError otherwise). Uncolorable: the best pair found by
// the seesaw, basis and coloring-family attacks is turned into a
// certificate and verified.
RoundtripResult np_certificate_roundtrip(const Graph& g, const RoundtripOptions& options = {});

void to_json(nlohmann::json& j, const VerifyResult& r);

}  // namespace qma3col
