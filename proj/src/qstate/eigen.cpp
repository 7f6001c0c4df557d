#include <algorithm>
#include <cmath>

#include "qma3col/errors.hpp"
#include "qma3col/qstate.hpp"

namespace qma3col {

namespace {

// Gershgorin lower bound on the spectrum of a Hermitian matrix.
double spectrum_lower_bound(const Mat& m) {
  double lower = 0.0;
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    const double off = m.row(i).cwiseAbs().sum() - std::abs(m(i, i));
    lower = std::min(lower, m(i, i).real() - off);
  }
  return lower;
}

Vec random_unit(Eigen::Index d, SeedStream& rng) {
  Vec v(d);
  for (Eigen::Index i = 0; i < d; ++i) v[i] = rng.complex_normal();
  return v / v.norm();
}

struct Attempt {
  bool converged = false;
  double value = 0.0;
  Vec vector;
  int iterations = 0;
};

Attempt power_iterate(const Mat& a, double shift, Vec v, double tol, int max_iter) {
  Attempt out;
  for (int it = 1; it <= max_iter; ++it) {
    Vec av = a * v;
    const double lambda = v.dot(av).real();
    const double residual = (av - lambda * v).norm();
    out.iterations = it;
    out.value = lambda;
    out.vector = v;
    if (residual <= tol) {
      out.converged = true;
      return out;
    }
    Vec w = av + shift * v;
    const double norm = w.norm();
    if (!(norm > 0.0)) return out;
    v = w / norm;
  }
  return out;
}

}  // namespace

EigenPair dense_top_eigenpair(const Operator& op) {
  if (!op.is_hermitian()) throw InputError("dense_top_eigenpair requires a Hermitian-tagged operator");
  Eigen::SelfAdjointEigenSolver<Mat> solver(op.entries());
  if (solver.info() != Eigen::Success) throw ConvergenceError("dense Hermitian eigensolver failed");
  const Eigen::Index top = solver.eigenvalues().size() - 1;
  Vec v = solver.eigenvectors().col(top);
  return EigenPair{solver.eigenvalues()[top], StateVector::normalized(op.shape(), std::move(v)), 0, 0, true};
}

EigenPair top_eigenpair(const Operator& op, double tol, int max_iter, const EigenOptions& options) {
  if (!op.is_hermitian()) throw InputError("top_eigenpair requires a Hermitian-tagged operator");
  if (max_iter < 1) throw InputError("max_iter must be positive");
  const Mat& a = op.entries();
  const Eigen::Index d = a.rows();
  // The shift makes A + shift*I positive semidefinite, so the iteration
  // targets the algebraically largest eigenvalue.
  const double shift = -spectrum_lower_bound(a);
  SeedStream rng(options.seed, 0xe16e);

  int total_iterations = 0;
  for (int attempt = 0; attempt <= options.restarts; ++attempt) {
    Vec start;
    if (attempt == 0 && options.warm_start && options.warm_start->size() == d && options.warm_start->norm() > 0.0) {
      // A small random component keeps the start off invariant subspaces
      // that exclude the top eigenvector.
      start = *options.warm_start / options.warm_start->norm() + 1e-3 * random_unit(d, rng);
      start /= start.norm();
    } else {
      start = random_unit(d, rng);
    }
    Attempt result = power_iterate(a, shift, std::move(start), tol, max_iter);
    total_iterations += result.iterations;
    if (result.converged) {
      return EigenPair{result.value, StateVector::normalized(op.shape(), std::move(result.vector)), total_iterations,
                       attempt, false};
    }
  }
  if (!options.dense_fallback) {
    throw ConvergenceError("power iteration did not converge after " + std::to_string(options.restarts + 1) +
                           " attempts of " + std::to_string(max_iter) + " iterations");
  }
  EigenPair pair = dense_top_eigenpair(op);
  pair.iterations = total_iterations;
  pair.restarts = options.restarts;
  return pair;
}

}  // namespace qma3col
