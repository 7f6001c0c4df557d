#include <algorithm>
#include <cmath>

#include "qma3col/adversary.hpp"
#include "qma3col/certificate.hpp"
#include "qma3col/errors.hpp"

namespace qma3col {

namespace {

// Eigenvalues below this magnitude are dropped; their weight is charged to
// the error bound through the reconstruction residual.
constexpr double kEigenCutoff = 1e-15;

struct Spectrum {
  std::vector<double> values;
  std::vector<Vec> vectors;
  double trace_norm = 0.0;
  double residual = 0.0;  // trace-norm bound on rho - sum_kept lambda v v^dagger
};

Spectrum decompose(const Mat& rho) {
  const Mat h = 0.5 * (rho + rho.adjoint());
  Eigen::SelfAdjointEigenSolver<Mat> solver(h);
  if (solver.info() != Eigen::Success) throw NumericalError("certificate eigendecomposition failed");
  Spectrum s;
  Mat rebuilt = Mat::Zero(h.rows(), h.cols());
  for (Eigen::Index k = h.rows() - 1; k >= 0; --k) {
    const double lambda = solver.eigenvalues()[k];
    if (std::abs(lambda) <= kEigenCutoff) continue;
    const Vec v = solver.eigenvectors().col(k);
    s.values.push_back(lambda);
    s.vectors.push_back(v);
    s.trace_norm += std::abs(lambda);
    rebuilt += lambda * v * v.adjoint();
  }
  // ||X||_1 <= sqrt(rank) ||X||_F
  s.residual = std::sqrt(static_cast<double>(h.rows())) * (rho - rebuilt).norm();
  return s;
}

std::size_t max_dense_dim(const Circuit& c) {
  std::size_t d = 1;
  for (const Gate& g : c.gates())
    if (g.schema != Schema::CMP) d = std::max(d, std::size_t{1} << g.num_targets());
  return d;
}

}  // namespace

VerifyResult classical_verify(const Circuit& circ, const Certificate& cert, const VerifierParams& params) {
  if (!(params.gap > 0.0 && params.gap <= 1.0)) throw InputError("gap must lie in (0, 1]");
  const VerifierLayout layout = verifier_layout(params.n);
  const Embedding& e = layout.embedding;
  if (circ.num_qubits() != layout.num_qubits() || circ.accept_wire() != layout.accept) {
    throw InputError("circuit does not have the verifier layout for n = " + std::to_string(params.n));
  }
  if (cert.dim() != (std::size_t{1} << e.k)) {
    throw InputError("certificate dimension " + std::to_string(cert.dim()) + " does not match 2^" + std::to_string(e.k));
  }
  VerifyResult r;
  r.required_bits = precision_budget(circ.size(), circ.num_qubits(), params.gap);
  r.certificate_bits = cert.bits();
  r.threshold = 1.0 - params.gap / 2.0;
  if (cert.bits() < r.required_bits) {
    throw PrecisionError("certificate declares " + std::to_string(cert.bits()) + " bits; the budget needs " +
                         std::to_string(r.required_bits));
  }
  cert.validate(e.used);

  const auto used = static_cast<Eigen::Index>(e.used);
  const Spectrum s1 = decompose(cert.rho1().to_matrix().topLeftCorner(used, used));
  const Spectrum s2 = decompose(cert.rho2().to_matrix().topLeftCorner(used, used));

  const std::size_t nq = circ.num_qubits();
  const std::size_t shift1 = nq - e.k, shift2 = nq - 2 * e.k;
  double p = 0.0;
  for (std::size_t a = 0; a < s1.values.size(); ++a) {
    for (std::size_t b = 0; b < s2.values.size(); ++b) {
      Vec amps = Vec::Zero(static_cast<Eigen::Index>(std::uint64_t{1} << nq));
      for (Eigen::Index x = 0; x < used; ++x)
        for (Eigen::Index y = 0; y < used; ++y)
          amps[static_cast<Eigen::Index>((std::uint64_t(x) << shift1) | (std::uint64_t(y) << shift2))] =
              s1.vectors[a][x] * s2.vectors[b][y];
      const Vec out = simulate_amplitudes(circ, std::move(amps), r.required_bits);
      p += s1.values[a] * s2.values[b] * accept_wire_probability(circ, out);
      ++r.simulations;
    }
  }
  r.probability = p;

  // Gate entries: each materialized gate is within dense_dim * 2^-bits of
  // exact in operator norm, and each contributes at most twice that to the
  // probability of a unit-trace-norm input. Double arithmetic adds a
  // relative 2^-50 per gate application.
  const double tn = s1.trace_norm * s2.trace_norm;
  const double per_gate = static_cast<double>(max_dense_dim(circ));
  const double gates = static_cast<double>(circ.size());
  const double gate_term = tn * 2.0 * gates * per_gate * std::ldexp(1.0, -static_cast<int>(r.required_bits));
  const double float_term = tn * 2.0 * gates * per_gate * 0x1p-50;
  const double decomposition_term = s1.residual * s2.trace_norm + s2.residual * s1.trace_norm + s1.residual * s2.residual;
  r.error_bound = gate_term + float_term + decomposition_term;
  if (r.error_bound > params.gap / 3.0) {
    throw NumericalError("numerical error bound exceeds g/3; the certificate cannot be decided reliably");
  }
  r.accept = p > r.threshold;
  return r;
}

RoundtripResult np_certificate_roundtrip(const Graph& g, const RoundtripOptions& options) {
  const std::size_t n = g.num_nodes();
  const VerifierParams params = VerifierParams::for_nodes(n);
  const Circuit circ = compile_verifier(g, params);
  const VerifierLayout layout = verifier_layout(n);
  const std::size_t dim = std::size_t{1} << layout.embedding.k;
  const unsigned bits = precision_budget(circ.size(), circ.num_qubits(), params.gap);

  RoundtripResult out;
  if (auto coloring = find_3coloring(g)) {
    out.colorable = true;
    Certificate cert = Certificate::from_pair(honest_proof(g, *coloring), dim, bits);
    out.verdict = classical_verify(circ, cert, params);
    if (!out.verdict.accept) throw NumericalError("honest certificate was rejected");
    out.certificate = std::move(cert);
    return out;
  }

  const VerifierOperators ops = acceptance_operator(g);
  const AttackResult seesaw_best =
      seesaw(ops, {.restarts = options.restarts, .seed = options.seed, .compute_spectral_bound = false});
  out.adversary_value = seesaw_best.best_value;
  out.adversary_source = "seesaw";
  ProofPair best = seesaw_best.best_pair;
  const BasisAttackResult basis = basis_attack(ops);
  if (basis.value > out.adversary_value) {
    out.adversary_value = basis.value;
    out.adversary_source = "basis";
    best = basis.pair;
  }
  if (n <= kColoringFamilyCap) {
    const ColoringAttackResult family = coloring_family_attack(g);
    if (family.value > out.adversary_value) {
      out.adversary_value = family.value;
      out.adversary_source = "coloring_family";
      best = family.pair;
    }
  }
  Certificate cert = Certificate::from_pair(best, dim, bits);
  out.verdict = classical_verify(circ, cert, params);
  if (out.verdict.accept) out.certificate = cert;
  out.adversary_certificate = std::move(cert);
  return out;
}

void to_json(nlohmann::json& j, const VerifyResult& r) {
  j = nlohmann::json{{"accept", r.accept},
                     {"probability", r.probability},
                     {"threshold", r.threshold},
                     {"error_bound", r.error_bound},
                     {"required_bits", r.required_bits},
                     {"certificate_bits", r.certificate_bits},
                     {"simulations", r.simulations}};
}

}  // namespace qma3col
