#include <cmath>
#include <string>

#include "qma3col/adversary.hpp"
#include "qma3col/errors.hpp"

namespace qma3col {

BasisAttackResult basis_attack(const VerifierOperators& ops) {
  const std::size_t d = ops.register_shape.total();
  if (d > kNumColors * kBasisAttackCap) throw CapError("basis attack is capped at 30 nodes");
  const Mat& total = ops.total.entries();
  BasisAttackResult best{-1.0, 0, 0, ProofPair(StateVector::basis(ops.register_shape, 0), StateVector::basis(ops.register_shape, 0))};
  for (std::size_t a = 0; a < d; ++a) {
    for (std::size_t b = 0; b < d; ++b) {
      const auto k = static_cast<Eigen::Index>(a * d + b);
      const double v = total(k, k).real();
      if (v > best.value) {
        best.value = v;
        best.first = a;
        best.second = b;
      }
    }
  }
  best.pair = ProofPair(StateVector::basis(ops.register_shape, best.first), StateVector::basis(ops.register_shape, best.second));
  return best;
}

StateVector coloring_state(const Coloring& c) {
  const std::size_t n = c.size();
  Vec amps = Vec::Zero(static_cast<Eigen::Index>(kNumColors * n));
  const double a = 1.0 / std::sqrt(static_cast<double>(n));
  for (std::size_t i = 0; i < n; ++i) {
    if (c[i] >= kNumColors) throw InputError("color out of range");
    amps[static_cast<Eigen::Index>(kNumColors * i + c[i])] = a;
  }
  return StateVector(proof_register_shape(n), std::move(amps));
}

ColoringAttackResult coloring_family_attack(const Graph& g) {
  const std::size_t n = g.num_nodes();
  if (n > kColoringFamilyCap) {
    throw CapError("coloring-family attack is capped at " + std::to_string(kColoringFamilyCap) + " nodes");
  }
  const VerifierOperators ops = acceptance_operator(g);
  Coloring c(n, 0);
  ColoringAttackResult best{-1.0, c, ProofPair(coloring_state(c), coloring_state(c))};
  while (true) {
    const StateVector s = coloring_state(c);
    const double v = test_values(ops, s, s).total;
    if (v > best.value) {
      best.value = v;
      best.coloring = c;
    }
    // Advance in lexicographic order, last node fastest.
    std::size_t k = n;
    while (k > 0 && c[k - 1] == kNumColors - 1) c[--k] = 0;
    if (k == 0) break;
    ++c[k - 1];
  }
  const StateVector s = coloring_state(best.coloring);
  best.pair = ProofPair(s, s);
  return best;
}

Coloring extract_coloring(const ProofPair& p) {
  const std::size_t n = p.num_nodes();
  Coloring c(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    double best = std::abs(p.w1()[kNumColors * i]);
    for (std::size_t j = 1; j < kNumColors; ++j) {
      const double a = std::abs(p.w1()[kNumColors * i + j]);
      if (a > best + 1e-12) {
        best = a;
        c[i] = static_cast<std::uint8_t>(j);
      }
    }
  }
  return c;
}

}  // namespace qma3col
