#include <cmath>
#include <string>

#include "qma3col/circuit.hpp"
#include "qma3col/errors.hpp"

namespace qma3col {

namespace {

// Selector values for the three branches.
constexpr std::uint64_t kBranch1 = 0, kBranch2 = 1, kBranch3 = 2;

class Builder {
 public:
  explicit Builder(const VerifierLayout& layout) : l_(layout), c_(layout.num_qubits(), layout.accept) {}

  std::vector<std::size_t> reg(int which) const {
    std::vector<std::size_t> w;
    const std::size_t start = which == 1 ? 0 : l_.embedding.k;
    for (std::size_t j = 0; j < l_.embedding.k; ++j) w.push_back(start + j);
    return w;
  }

  // Gate controlled on the selector reading `branch`.
  void add(Schema s, std::uint64_t branch, std::vector<std::uint64_t> params, const std::vector<std::size_t>& targets) {
    Gate g;
    g.schema = s;
    g.num_controls = 2;
    g.control_pattern = branch;
    g.params = std::move(params);
    g.wires = {l_.sel0, l_.sel1};
    g.wires.insert(g.wires.end(), targets.begin(), targets.end());
    c_.append(std::move(g));
  }

  void add_uncontrolled(Schema s, const std::vector<std::size_t>& targets) {
    Gate g;
    g.schema = s;
    g.wires = targets;
    c_.append(std::move(g));
  }

  // flag ^= (branch selected and wires == value)
  void compare(std::uint64_t branch, std::vector<std::size_t> wires, std::uint64_t value, std::size_t flag) {
    wires.push_back(flag);
    add(Schema::CMP, branch, {value}, wires);
  }

  Circuit take() { return std::move(c_); }

 private:
  const VerifierLayout& l_;
  Circuit c_;
};

}  // namespace

VerifierParams VerifierParams::for_nodes(std::size_t n) {
  if (n == 0) throw InputError("verifier needs n >= 1");
  VerifierParams p;
  p.n = n;
  p.gap = 1.0 / (24.0 * std::pow(static_cast<double>(n), 6));
  return p;
}

VerifierLayout verifier_layout(std::size_t n) {
  const Embedding e = embed_dims(n);
  const std::size_t base = 2 * e.k;
  return VerifierLayout{e, base, base + 1, base + 2, base + 3, base + 4};
}

Circuit compile_verifier(const Graph& g, const VerifierParams& params) {
  const std::size_t n = g.num_nodes();
  if (n == 0) throw InputError("graph has no nodes");
  if (n > kCircuitNodeCap) throw CapError("circuit compilation is capped at " + std::to_string(kCircuitNodeCap) + " nodes");
  if (params.n != n) throw InputError("verifier parameters are for a different node count");
  const VerifierLayout l = verifier_layout(n);
  const std::size_t k = l.embedding.k;
  Builder b(l);
  const auto r1 = b.reg(1), r2 = b.reg(2);

  b.add_uncontrolled(Schema::PREP3, {l.sel0, l.sel1});

  // Test 1: swap test with flag0 as the ancilla; accept on outcome 0.
  b.add(Schema::H, kBranch1, {}, {l.flag0});
  for (std::size_t j = 0; j < k; ++j) b.add(Schema::CSWAP, kBranch1, {}, {l.flag0, r1[j], r2[j]});
  b.add(Schema::H, kBranch1, {}, {l.flag0});
  b.compare(kBranch1, {l.flag0}, 0, l.accept);

  // Test 2: flag0 marks rejecting basis pairs.
  std::vector<std::size_t> both = r1;
  both.insert(both.end(), r2.begin(), r2.end());
  auto pair_value = [&](std::size_t i, std::size_t c, std::size_t j, std::size_t c2) {
    return (l.embedding.index(i, c) << k) | l.embedding.index(j, c2);
  };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t c = 0; c < kNumColors; ++c)
      for (std::size_t c2 = 0; c2 < kNumColors; ++c2)
        if (c != c2) b.compare(kBranch2, both, pair_value(i, c, i, c2), l.flag0);
  for (const auto& [u, v] : g.edges()) {
    for (std::size_t c = 0; c < kNumColors; ++c) {
      b.compare(kBranch2, both, pair_value(u, c, v, c), l.flag0);
      b.compare(kBranch2, both, pair_value(v, c, u, c), l.flag0);
    }
  }
  b.compare(kBranch2, {l.flag0}, 0, l.accept);

  // Test 3: inverse Fourier transforms on the node and color digits of each
  // register, so outcome 0 of a digit is F|0>. A register rejects when its
  // color digit is 0 and its node digit is not.
  for (const auto* r : {&r1, &r2}) {
    b.add(Schema::DFT, kBranch3, {n, kNumColors, 1, 1}, *r);
    b.add(Schema::DFT, kBranch3, {kNumColors, 1, n, 1}, *r);
  }
  for (std::size_t i = 1; i < n; ++i) {
    b.compare(kBranch3, r1, l.embedding.index(i, 0), l.flag0);
    b.compare(kBranch3, r2, l.embedding.index(i, 0), l.flag1);
  }
  b.compare(kBranch3, {l.flag0, l.flag1}, 0, l.accept);

  Circuit circuit = b.take();
  if (circuit.size() > params.size_bound()) {
    throw NumericalError("compiled gate count " + std::to_string(circuit.size()) + " exceeds q(n) = " +
                         std::to_string(params.size_bound()));
  }
  return circuit;
}

}  // namespace qma3col
