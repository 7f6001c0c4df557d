#include <cmath>
#include <string>

#include "qma3col/errors.hpp"
#include "qma3col/qstate.hpp"

namespace qma3col {

StateVector::StateVector(RegisterShape shape, Vec amps) : shape_(std::move(shape)), amps_(std::move(amps)) {
  if (static_cast<std::size_t>(amps_.size()) != shape_.total()) {
    throw InputError("amplitude count " + std::to_string(amps_.size()) + " does not match register dimension " +
                     std::to_string(shape_.total()));
  }
  const double norm2 = amps_.squaredNorm();
  if (std::abs(norm2 - 1.0) > kStateTol) {
    throw NumericalError("state is not normalized (norm^2 = " + std::to_string(norm2) + ")");
  }
}

StateVector StateVector::basis(RegisterShape shape, std::size_t index) {
  if (index >= shape.total()) throw InputError("basis index out of range");
  Vec amps = Vec::Zero(static_cast<Eigen::Index>(shape.total()));
  amps[static_cast<Eigen::Index>(index)] = 1.0;
  return StateVector(std::move(shape), std::move(amps));
}

StateVector StateVector::normalized(RegisterShape shape, Vec amps) {
  const double norm = amps.norm();
  if (!(norm > 0.0) || !std::isfinite(norm)) throw NumericalError("cannot normalize a zero or non-finite vector");
  amps /= norm;
  return StateVector(std::move(shape), std::move(amps));
}

StateVector StateVector::random(RegisterShape shape, SeedStream& rng) {
  Vec amps(static_cast<Eigen::Index>(shape.total()));
  for (Eigen::Index i = 0; i < amps.size(); ++i) amps[i] = rng.complex_normal();
  return normalized(std::move(shape), std::move(amps));
}

StateVector tensor(const StateVector& a, const StateVector& b) {
  RegisterShape shape = a.shape().concat(b.shape());
  Vec amps(static_cast<Eigen::Index>(shape.total()));
  const Eigen::Index nb = b.amps().size();
  for (Eigen::Index i = 0; i < a.amps().size(); ++i) {
    amps.segment(i * nb, nb) = a.amps()[i] * b.amps();
  }
  return StateVector(std::move(shape), std::move(amps));
}

cplx inner(const StateVector& a, const StateVector& b) {
  if (a.shape() != b.shape()) throw InputError("inner product of states with different shapes");
  return a.amps().dot(b.amps());
}

double fidelity(const StateVector& a, const StateVector& b) { return std::norm(inner(a, b)); }

}  // namespace qma3col
