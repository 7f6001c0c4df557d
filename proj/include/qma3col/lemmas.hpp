#pragma once

// Numerical instantiations of the soundness lemmas. Each check evaluates a
// bound on constructed near-boundary instances and on seeded random
// instances, and reports the smallest measured value among the instances the
// lemma applies to.
//
//   test1_distance      some | |w1(k,l)| - |w2(k,l)| | >= 1/n^3
//                       => Test 1 failure >= 1/(8n^6)
//   well_defined_color  a node of mass >= 1/n^2 with no color of weight
//                       >= 99/100 => Test 1 or Test 2(a) failure > 1/(8n^6)
//   fourier_color_mass  Test 1 and Test 2(a) failures <= 1/(8n^6)
//                       => Pr[color part -> F_3|0>] >= (1 - (n-1)/n^2)/4
//   fourier_index       some |gamma_l|^2 < 1/(2n)
//                       => Pr[not F_n|0>] >= 1/(16n^2)
//   node_mass           some |alpha_i|^2 < 1/(10n)
//                       => Test 1, Test 3 or Test 2(a) failure > 1/(8n^6)

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

namespace qma3col {

enum class LemmaStatus { Pass, Fail, Skip };

std::string to_string(LemmaStatus s);

struct LemmaCheck {
  std::string name;
  double bound = 0.0;
  std::size_t n_min = 1;  // smallest n at which the check is run
  LemmaStatus status = LemmaStatus::Skip;
  std::string note;
  int constructed = 0;             // constructed instances evaluated
  int random = 0;                  // random instances evaluated
  int constructed_applicable = 0;  // of which the lemma's hypothesis held
  int random_applicable = 0;
  int violations = 0;
  double min_measured = 0.0;  // over applicable instances
};

struct LemmaSuiteReport {
  std::size_t n = 0;
  int trials = 0;
  std::uint64_t seed = 0;
  std::vector<LemmaCheck> checks;

  bool passed() const;  // no check failed
};

inline constexpr std::size_t kLemmaNodeCap = 12;

// Runs the five checks with `trials` random instances each. Throws
// CapError above kLemmaNodeCap.
LemmaSuiteReport run_lemma_suite(std::size_t n, int trials, std::uint64_t seed);

void to_json(nlohmann::json& j, const LemmaCheck& c);
void to_json(nlohmann::json& j, const LemmaSuiteReport& r);

}  // namespace qma3col
