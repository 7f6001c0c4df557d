#pragma once

// Attacks on the verifier: numerical maximization of the acceptance
// probability over unentangled proofs, plus exact enumerations over small
// families that serve as oracles.

#include <cstdint>
#include <vector>

#include "json.hpp"

#include "qma3col/graphs.hpp"
#include "qma3col/protocol.hpp"
#include "qma3col/qstate.hpp"

namespace qma3col {

inline constexpr std::size_t kColoringFamilyCap = 8;
inline constexpr std::size_t kBasisAttackCap = 30;

struct SeesawOptions {
  int restarts = 200;
  double tol = 1e-10;  // stop a restart once a sweep gains less than this
  int max_sweeps = 500;
  std::uint64_t seed = 1;
  bool compute_spectral_bound = true;
};

struct AttackResult {
  double best_value = 0.0;
  ProofPair best_pair;
  int best_restart = 0;
  int restarts_used = 0;
  std::vector<int> sweeps;  // per restart
  // Largest decrease seen between consecutive half-steps of any restart.
  double max_decrease = 0.0;
  double spectral_upper_bound = 1.0;
  std::uint64_t seed = 0;
};

enum class Side { First, Second };

// The operator E on one register such that <x|E|x> is the acceptance
// probability of the pair with the other register fixed to `fixed`. Uses the
// factored per-test forms when available, the dense contraction otherwise.
Operator effective_operator(const VerifierOperators& ops, const StateVector& fixed, Side optimize);

// Alternating maximization: with w2 fixed, w1 becomes the top eigenvector of
// the effective operator, then the roles swap. Each restart starts from a
// Haar-random pair. The best restart wins; ties go to the lower index.
AttackResult seesaw(const VerifierOperators& ops, const SeesawOptions& options = {});

// Largest eigenvalue of the total operator: an upper bound over all states,
// entangled ones included.
double spectral_bound(const VerifierOperators& ops);

struct BasisAttackResult {
  double value = 0.0;
  std::size_t first = 0;   // basis index of w1
  std::size_t second = 0;  // basis index of w2
  ProofPair pair;
};

// Exact maximum over computational-basis product pairs. The first maximum in
// (first, second) order wins.
BasisAttackResult basis_attack(const VerifierOperators& ops);

struct ColoringAttackResult {
  double value = 0.0;
  Coloring coloring;
  ProofPair pair;
};

// Exact maximum over w1 = w2 = n^{-1/2} sum_i |i>|C(i)> across all 3^n
// colorings; ties go to the lexicographically smallest coloring. Throws
// CapError above kColoringFamilyCap nodes.
ColoringAttackResult coloring_family_attack(const Graph& g);

// Honest-form state for an arbitrary (possibly improper) coloring.
StateVector coloring_state(const Coloring& c);

// C(i) = argmax_j |beta_ij| read from w1. Ties (within 1e-12) and massless
// nodes go to the smallest color.
Coloring extract_coloring(const ProofPair& p);

void to_json(nlohmann::json& j, const AttackResult& r);

}  // namespace qma3col
