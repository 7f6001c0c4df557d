#include <algorithm>
#include <cmath>

#include "qma3col/adversary.hpp"
#include "qma3col/errors.hpp"

namespace qma3col {

namespace {

constexpr std::uint64_t kSeesawStream = 0x736565736177;

Mat structured_effective(const VerifierOperators& ops, const StateVector& fixed, Side optimize) {
  const Vec& phi = fixed.amps();
  const Eigen::Index d = phi.size();
  const Eigen::VectorXd mass = phi.cwiseAbs2();
  const Eigen::MatrixXd& w = *ops.test2_weights;
  const Eigen::VectorXd diag2 = optimize == Side::First ? Eigen::VectorXd(w * mass) : Eigen::VectorXd(w.transpose() * mass);
  const Mat& a = ops.test3_register->entries();
  const double a_phi = expectation(*ops.test3_register, fixed);

  // Test 1 contracts to (I + |phi><phi|) / 2, Test 2 to diag(W q), Test 3
  // to <phi|A|phi> A.
  Mat e = 0.5 * (Mat::Identity(d, d) + phi * phi.adjoint());
  e.diagonal() += diag2.cast<cplx>();
  e += a_phi * a;
  return e / 3.0;
}

double pair_value(const VerifierOperators& ops, const StateVector& w1, const StateVector& w2) {
  if (ops.structured()) return test_values(ops, w1, w2).total;
  return expectation(ops.total, tensor(w1, w2));
}

}  // namespace

Operator effective_operator(const VerifierOperators& ops, const StateVector& fixed, Side optimize) {
  if (fixed.shape() != ops.register_shape) throw InputError("fixed register does not match the verifier");
  if (ops.structured()) {
    Mat e = structured_effective(ops, fixed, optimize);
    // Exact Hermitian by construction up to rounding; symmetrize before tagging.
    Mat h = 0.5 * (e + e.adjoint());
    return Operator::hermitian(ops.register_shape, std::move(h));
  }
  Operator e = optimize == Side::First ? contract_second(ops.total, ops.register_shape, fixed)
                                       : contract_first(ops.total, fixed, ops.register_shape);
  Mat h = 0.5 * (e.entries() + e.entries().adjoint());
  return Operator::hermitian(ops.register_shape, std::move(h));
}

AttackResult seesaw(const VerifierOperators& ops, const SeesawOptions& options) {
  if (options.restarts < 1) throw InputError("seesaw needs at least one restart");
  if (options.max_sweeps < 1) throw InputError("seesaw needs at least one sweep");
  const SeedStream root(options.seed, kSeesawStream);

  const StateVector zero = StateVector::basis(ops.register_shape, 0);
  AttackResult result{-1.0, ProofPair(zero, zero), 0, 0, {}, 0.0, 1.0, options.seed};
  result.sweeps.reserve(static_cast<std::size_t>(options.restarts));

  for (int r = 0; r < options.restarts; ++r) {
    SeedStream rng = root.substream(static_cast<std::uint64_t>(r));
    StateVector w1 = StateVector::random(ops.register_shape, rng);
    StateVector w2 = StateVector::random(ops.register_shape, rng);
    double value = pair_value(ops, w1, w2);
    int sweep = 0;
    while (sweep < options.max_sweeps) {
      ++sweep;
      const double before = value;
      w1 = dense_top_eigenpair(effective_operator(ops, w2, Side::First)).vector;
      const double mid = pair_value(ops, w1, w2);
      w2 = dense_top_eigenpair(effective_operator(ops, w1, Side::Second)).vector;
      value = pair_value(ops, w1, w2);
      result.max_decrease = std::max({result.max_decrease, before - mid, mid - value});
      if (value - before < options.tol) break;
    }
    result.sweeps.push_back(sweep);
    if (value > result.best_value) {
      result.best_value = value;
      result.best_pair = ProofPair(w1, w2);
      result.best_restart = r;
    }
  }
  result.restarts_used = options.restarts;
  result.spectral_upper_bound = options.compute_spectral_bound ? spectral_bound(ops) : 1.0;
  return result;
}

double spectral_bound(const VerifierOperators& ops) {
  return top_eigenpair(ops.total, 1e-9, 5000).value;
}

void to_json(nlohmann::json& j, const AttackResult& r) {
  j = nlohmann::json{{"best_value", r.best_value},
                     {"spectral_upper_bound", r.spectral_upper_bound},
                     {"restarts", r.restarts_used},
                     {"best_restart", r.best_restart},
                     {"sweeps", r.sweeps},
                     {"seed", r.seed},
                     {"best_pair", r.best_pair}};
}

}  // namespace qma3col
