#include <cmath>
#include <string>

#include "qma3col/errors.hpp"
#include "qma3col/qstate.hpp"

namespace qma3col {

OutcomeDistribution::OutcomeDistribution(std::vector<double> probs) : probs_(std::move(probs)) {
  double total = 0.0;
  for (double& p : probs_) {
    if (!std::isfinite(p) || p < -1e-12) throw NumericalError("probabilities must be finite and nonnegative");
    if (p < 0.0) p = 0.0;
    total += p;
  }
  if (std::abs(total - 1.0) > kStateTol) {
    throw NumericalError("probabilities sum to " + std::to_string(total) + ", not 1");
  }
}

OutcomeDistribution measure_distribution(const StateVector& psi, const Operator* basis_change) {
  Vec amps;
  if (basis_change != nullptr) {
    if (basis_change->shape() != psi.shape()) throw InputError("basis change shape does not match state");
    amps = basis_change->entries().adjoint() * psi.amps();
  } else {
    amps = psi.amps();
  }
  std::vector<double> probs(static_cast<std::size_t>(amps.size()));
  for (Eigen::Index k = 0; k < amps.size(); ++k) probs[static_cast<std::size_t>(k)] = std::norm(amps[k]);
  return OutcomeDistribution(std::move(probs));
}

std::size_t sample(const OutcomeDistribution& dist, SeedStream& rng) {
  const double u = rng.uniform();
  double cumulative = 0.0;
  std::size_t last_nonzero = 0;
  for (std::size_t k = 0; k < dist.size(); ++k) {
    if (dist[k] <= 0.0) continue;
    cumulative += dist[k];
    last_nonzero = k;
    if (u < cumulative) return k;
  }
  // Rounding left the cumulative sum just below u.
  return last_nonzero;
}

double l1_distance(const OutcomeDistribution& p, const OutcomeDistribution& q) {
  if (p.size() != q.size()) throw InputError("distributions are over different outcome sets");
  double sum = 0.0;
  for (std::size_t k = 0; k < p.size(); ++k) sum += std::abs(p[k] - q[k]);
  return 0.5 * sum;
}

}  // namespace qma3col
