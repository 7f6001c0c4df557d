#include <cmath>
#include <string>

#include "qma3col/errors.hpp"
#include "qma3col/protocol.hpp"

namespace qma3col {

RegisterShape proof_register_shape(std::size_t n) {
  if (n == 0) throw InputError("proof register needs at least one node");
  return RegisterShape({n, kNumColors});
}

ProofPair::ProofPair(StateVector w1, StateVector w2) : w1_(std::move(w1)), w2_(std::move(w2)) {
  const auto& dims = w1_.shape().dims();
  if (dims.size() != 2 || dims[1] != kNumColors) throw InputError("proof registers must have shape [n, 3]");
  if (w1_.shape() != w2_.shape()) throw InputError("proof registers must have identical shapes");
}

ProofPair honest_proof(const Graph& g, const Coloring& c) {
  if (!is_valid_coloring(g, c)) throw InputError("honest proof requires a valid 3-coloring");
  const std::size_t n = g.num_nodes();
  RegisterShape shape = proof_register_shape(n);
  Vec amps = Vec::Zero(static_cast<Eigen::Index>(shape.total()));
  const double a = 1.0 / std::sqrt(static_cast<double>(n));
  for (std::size_t i = 0; i < n; ++i) amps[static_cast<Eigen::Index>(kNumColors * i + c[i])] = a;
  StateVector w(shape, amps);
  return ProofPair(w, w);
}

namespace {

nlohmann::json amps_to_json(const StateVector& s) {
  nlohmann::json out = nlohmann::json::array();
  for (Eigen::Index k = 0; k < s.amps().size(); ++k) out.push_back({s.amps()[k].real(), s.amps()[k].imag()});
  return out;
}

StateVector amps_from_json(const RegisterShape& shape, const nlohmann::json& j, const char* name) {
  if (!j.is_array() || j.size() != shape.total()) {
    throw InputError(std::string("'") + name + "' must be an array of " + std::to_string(shape.total()) +
                     " [re, im] pairs");
  }
  Vec amps(static_cast<Eigen::Index>(shape.total()));
  for (std::size_t k = 0; k < j.size(); ++k) {
    const auto& pair = j[k];
    if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number() || !pair[1].is_number()) {
      throw InputError(std::string("'") + name + "' entry " + std::to_string(k) + " is not a [re, im] pair");
    }
    amps[static_cast<Eigen::Index>(k)] = cplx(pair[0].get<double>(), pair[1].get<double>());
  }
  return StateVector(shape, std::move(amps));
}

}  // namespace

void to_json(nlohmann::json& j, const ProofPair& p) {
  j = nlohmann::json{{"shape", p.w1().shape().dims()}, {"w1", amps_to_json(p.w1())}, {"w2", amps_to_json(p.w2())}};
}

ProofPair proof_pair_from_json(const nlohmann::json& j) {
  try {
    const auto dims = j.at("shape").get<std::vector<std::size_t>>();
    if (dims.size() != 2 || dims[1] != kNumColors) throw InputError("proof shape must be [n, 3]");
    RegisterShape shape = proof_register_shape(dims[0]);
    return ProofPair(amps_from_json(shape, j.at("w1"), "w1"), amps_from_json(shape, j.at("w2"), "w2"));
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("malformed proof JSON: ") + e.what());
  }
}

}  // namespace qma3col
