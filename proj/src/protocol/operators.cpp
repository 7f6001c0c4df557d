#include <array>
#include <string>

#include "qma3col/errors.hpp"
#include "qma3col/protocol.hpp"

namespace qma3col {

namespace {

RegisterShape pair_shape(std::size_t n) {
  RegisterShape reg = proof_register_shape(n);
  return reg.concat(reg);
}

}  // namespace

VerifierOperators VerifierOperators::from_total(const RegisterShape& reg, Operator total) {
  if (total.shape().total() != reg.total() * reg.total()) {
    throw InputError("total operator does not act on register (x) register");
  }
  if (total.kind() != OperatorKind::Povm) throw InputError("total operator must be a POVM element");
  return VerifierOperators{reg, std::nullopt, std::nullopt, std::nullopt, std::move(total), std::nullopt, std::nullopt};
}

Operator build_test1(std::size_t n) {
  RegisterShape shape = pair_shape(n);
  const auto d = static_cast<Eigen::Index>(kNumColors * n);
  Mat m = Mat::Zero(d * d, d * d);
  for (Eigen::Index x = 0; x < d; ++x) {
    for (Eigen::Index y = 0; y < d; ++y) {
      m(x * d + y, x * d + y) += 0.5;
      m(y * d + x, x * d + y) += 0.5;
    }
  }
  // (I + S) / 2 is the projector onto the symmetric subspace.
  return Operator::povm_element(std::move(shape), std::move(m), Operator::Verify::HermitianOnly);
}

Eigen::MatrixXd test2_accept_weights(const Graph& g) {
  const std::size_t n = g.num_nodes();
  const auto d = static_cast<Eigen::Index>(kNumColors * n);
  Eigen::MatrixXd w(d, d);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t c = 0; c < kNumColors; ++c) {
      for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t c2 = 0; c2 < kNumColors; ++c2) {
          bool accept = true;
          if (i == j) {
            accept = (c == c2);
          } else if (g.adjacent(i, j)) {
            accept = (c != c2);
          }
          w(static_cast<Eigen::Index>(kNumColors * i + c), static_cast<Eigen::Index>(kNumColors * j + c2)) =
              accept ? 1.0 : 0.0;
        }
      }
    }
  }
  return w;
}

Operator build_test2(const Graph& g) {
  const Eigen::MatrixXd w = test2_accept_weights(g);
  const auto d = w.rows();
  Mat m = Mat::Zero(d * d, d * d);
  for (Eigen::Index a = 0; a < d; ++a)
    for (Eigen::Index b = 0; b < d; ++b) m(a * d + b, a * d + b) = w(a, b);
  return Operator::povm_element(pair_shape(g.num_nodes()), std::move(m), Operator::Verify::HermitianOnly);
}

Operator test3_register_operator(std::size_t n) {
  const RegisterShape node({n});
  const RegisterShape color({kNumColors});
  Operator p_idx0 = Operator::projector(dft_matrix(n).apply(StateVector::basis(node, 0)));
  Operator p_col0 = Operator::projector(dft_matrix(kNumColors).apply(StateVector::basis(color, 0)));
  Operator reject = tensor(p_idx0.complement(), p_col0);
  Operator accept = reject.complement();
  // Small enough to verify the spectrum directly.
  return Operator::povm_element(proof_register_shape(n), accept.entries(), Operator::Verify::Spectrum);
}

Operator build_test3(std::size_t n) {
  Operator a = test3_register_operator(n);
  return tensor(a, a);
}

VerifierOperators acceptance_operator(const Graph& g) {
  const std::size_t n = g.num_nodes();
  if (n == 0) throw InputError("graph has no nodes");
  if (n > kOperatorNodeCap) {
    throw CapError("acceptance operators are capped at " + std::to_string(kOperatorNodeCap) + " nodes");
  }
  Operator t1 = build_test1(n);
  Operator t2 = build_test2(g);
  Operator t3 = build_test3(n);
  const std::array<double, 3> weights{1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0};
  const std::array<const Operator*, 3> ops{&t1, &t2, &t3};
  Operator total = Operator::combination(weights, ops);
  return VerifierOperators{proof_register_shape(n), std::move(t1), std::move(t2), std::move(t3), std::move(total),
                           test2_accept_weights(g), test3_register_operator(n)};
}

double accept_probability(const VerifierOperators& ops, const ProofPair& p) {
  if (p.w1().shape() != ops.register_shape) throw InputError("proof shape does not match the verifier");
  return expectation(ops.total, p.joint());
}

TestValues test_values(const VerifierOperators& ops, const StateVector& w1, const StateVector& w2) {
  if (!ops.structured()) throw InputError("per-test values need the factored verifier operators");
  if (w1.shape() != ops.register_shape || w2.shape() != ops.register_shape) {
    throw InputError("proof shape does not match the verifier");
  }
  TestValues v{};
  v.test1 = 0.5 + 0.5 * fidelity(w1, w2);
  const Eigen::VectorXd p = w1.amps().cwiseAbs2();
  const Eigen::VectorXd q = w2.amps().cwiseAbs2();
  v.test2 = p.dot(*ops.test2_weights * q);
  v.test3 = expectation(*ops.test3_register, w1) * expectation(*ops.test3_register, w2);
  v.total = (v.test1 + v.test2 + v.test3) / 3.0;
  return v;
}

}  // namespace qma3col
