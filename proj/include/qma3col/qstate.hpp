#pragma once

// Dense complex linear algebra over registers whose tensor factors have
// arbitrary finite dimensions. Indexing is row-major over the factor list,
// so for dims [n, 3] the basis state |i, c> sits at index 3 * i + c.

#include <complex>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "qma3col/rng.hpp"

namespace qma3col {

using cplx = std::complex<double>;
using Vec = Eigen::VectorXcd;
using Mat = Eigen::MatrixXcd;

inline constexpr std::size_t kDefaultDimCap = std::size_t{1} << 20;
inline constexpr double kStateTol = 1e-9;
inline constexpr double kHermitianTol = 1e-12;
inline constexpr double kPovmTol = 1e-9;

class RegisterShape {
 public:
  RegisterShape() = default;
  explicit RegisterShape(std::vector<std::size_t> dims, std::size_t cap = kDefaultDimCap);

  const std::vector<std::size_t>& dims() const { return dims_; }
  std::size_t rank() const { return dims_.size(); }
  std::size_t total() const { return total_; }

  // Shape of a tensor product; throws CapError when the product exceeds cap.
  RegisterShape concat(const RegisterShape& other, std::size_t cap = kDefaultDimCap) const;

  std::size_t index(std::span<const std::size_t> digits) const;
  std::vector<std::size_t> digits(std::size_t index) const;

  bool operator==(const RegisterShape&) const = default;

 private:
  std::vector<std::size_t> dims_;
  std::size_t total_ = 1;
};

class StateVector {
 public:
  // Requires the amplitudes to be normalized within kStateTol.
  StateVector(RegisterShape shape, Vec amps);

  static StateVector basis(RegisterShape shape, std::size_t index);
  // Normalizes; throws NumericalError on a zero vector.
  static StateVector normalized(RegisterShape shape, Vec amps);
  // Haar-random pure state.
  static StateVector random(RegisterShape shape, SeedStream& rng);

  const RegisterShape& shape() const { return shape_; }
  const Vec& amps() const { return amps_; }
  std::size_t size() const { return static_cast<std::size_t>(amps_.size()); }
  cplx operator[](std::size_t i) const { return amps_[static_cast<Eigen::Index>(i)]; }

 private:
  RegisterShape shape_;
  Vec amps_;
};

enum class OperatorKind { General, Hermitian, Povm, Unitary };

class Operator {
 public:
  // How much of the POVM contract to check at construction. Spectrum runs
  // a dense eigensolver; HermitianOnly is for callers whose construction
  // already implies 0 <= M <= I.
  enum class Verify { Spectrum, HermitianOnly };

  static Operator general(RegisterShape shape, Mat entries);
  static Operator hermitian(RegisterShape shape, Mat entries);
  static Operator povm_element(RegisterShape shape, Mat entries, Verify verify = Verify::Spectrum);
  static Operator unitary(RegisterShape shape, Mat entries);
  static Operator identity(RegisterShape shape);
  // |v><v| for a normalized v.
  static Operator projector(const StateVector& v);

  const RegisterShape& shape() const { return shape_; }
  const Mat& entries() const { return entries_; }
  OperatorKind kind() const { return kind_; }
  bool is_hermitian() const;
  std::size_t dim() const { return shape_.total(); }

  Vec apply(const Vec& v) const;
  StateVector apply(const StateVector& psi) const;  // requires Unitary
  Operator adjoint() const;

  // I - M for a POVM element.
  Operator complement() const;
  // sum_k w_k M_k; keeps the POVM tag when every M_k is a POVM element,
  // w_k >= 0 and sum_k w_k <= 1.
  static Operator combination(std::span<const double> weights, std::span<const Operator* const> ops);

 private:
  Operator(RegisterShape shape, Mat entries, OperatorKind kind);

  RegisterShape shape_;
  Mat entries_;
  OperatorKind kind_;
};

class OutcomeDistribution {
 public:
  // Entries may be negative by at most 1e-12 (clamped to 0); the sum must
  // be 1 within kStateTol.
  explicit OutcomeDistribution(std::vector<double> probs);

  const std::vector<double>& probs() const { return probs_; }
  std::size_t size() const { return probs_.size(); }
  double operator[](std::size_t k) const { return probs_[k]; }

 private:
  std::vector<double> probs_;
};

StateVector tensor(const StateVector& a, const StateVector& b);
Operator tensor(const Operator& a, const Operator& b);

// F_d[j, k] = exp(2 pi i j k / d) / sqrt(d).
Operator dft_matrix(std::size_t d);
// Exchange operator on C^d (x) C^d.
Operator swap_operator(std::size_t d);

cplx inner(const StateVector& a, const StateVector& b);
// |<a|b>|^2
double fidelity(const StateVector& a, const StateVector& b);

// <psi|op|psi>; op must carry a Hermitian tag.
double expectation(const Operator& op, const StateVector& psi);

// For op on A (x) B and phi in B, the operator on A with entries
// <a, phi| op |a', phi>. contract_first is the mirror image.
Operator contract_second(const Operator& op, const RegisterShape& first, const StateVector& phi);
Operator contract_first(const Operator& op, const StateVector& psi, const RegisterShape& second);

struct EigenPair {
  double value;
  StateVector vector;
  int iterations = 0;
  int restarts = 0;
  bool dense_fallback = false;
};

struct EigenOptions {
  std::uint64_t seed = 0x5eed;
  // Fresh random starts after the first attempt fails to converge.
  int restarts = 5;
  bool dense_fallback = true;
  // Start from this vector (plus a small seeded perturbation) instead of a
  // random vector on the first attempt.
  std::optional<Vec> warm_start;
};

// Largest eigenvalue of a Hermitian operator by shifted power iteration.
// Converged when the residual ||Av - lambda v|| <= tol. Throws
// ConvergenceError when all attempts fail and dense_fallback is off.
EigenPair top_eigenpair(const Operator& op, double tol, int max_iter, const EigenOptions& options = {});

// Reference path: full dense Hermitian eigendecomposition.
EigenPair dense_top_eigenpair(const Operator& op);

// probs[k] = |<k| B^dagger |psi>|^2, i.e. the distribution of measuring in
// the basis formed by the columns of B.
OutcomeDistribution measure_distribution(const StateVector& psi, const Operator* basis_change = nullptr);

std::size_t sample(const OutcomeDistribution& dist, SeedStream& rng);

// Statistical distance 1/2 sum_k |p_k - q_k|.
double l1_distance(const OutcomeDistribution& p, const OutcomeDistribution& q);

}  // namespace qma3col
