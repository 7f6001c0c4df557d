#include "qma3col/circuit.hpp"

#include <charconv>
#include <map>
#include <sstream>

#include "qma3col/errors.hpp"

namespace qma3col {

namespace {

std::uint64_t wire_bit(std::size_t num_qubits, std::size_t wire) {
  return std::uint64_t{1} << (num_qubits - 1 - wire);
}

// Mask and value over `wires` spelling `value` (first wire most significant).
std::pair<std::uint64_t, std::uint64_t> pattern_bits(std::size_t num_qubits, const std::size_t* wires, std::size_t count,
                                                     std::uint64_t value) {
  std::uint64_t mask = 0, bits = 0;
  for (std::size_t j = 0; j < count; ++j) {
    const std::uint64_t b = wire_bit(num_qubits, wires[j]);
    mask |= b;
    if ((value >> (count - 1 - j)) & 1) bits |= b;
  }
  return {mask, bits};
}

// Calls f(x) for every submask x of `free`, in increasing order.
template <typename F>
void for_each_submask(std::uint64_t free, F&& f) {
  std::uint64_t x = 0;
  while (true) {
    f(x);
    if (x == free) break;
    x = (x - free) & free;
  }
}

std::uint64_t parse_uint(std::string_view token, const char* what) {
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
  if (ec != std::errc() || ptr != token.data() + token.size() || token.empty()) {
    throw InputError(std::string("bad ") + what + ": '" + std::string(token) + "'");
  }
  return v;
}

class GateCache {
 public:
  explicit GateCache(unsigned bits) : bits_(bits) {}

  const Mat& matrix(const Gate& g) {
    std::ostringstream key;
    key << static_cast<int>(g.schema) << '/' << g.num_targets();
    for (auto p : g.params) key << '/' << p;
    auto it = cache_.find(key.str());
    if (it == cache_.end()) it = cache_.emplace(key.str(), gate_matrix(g, bits_)).first;
    return it->second;
  }

 private:
  unsigned bits_;
  std::map<std::string, Mat> cache_;
};

void apply_gate(const Gate& g, std::size_t nq, Vec& amps, GateCache& cache) {
  const std::size_t c = g.num_controls;
  const std::size_t m = g.num_targets();
  const std::uint64_t all = (nq == 64) ? ~std::uint64_t{0} : (std::uint64_t{1} << nq) - 1;
  auto [ctrl_mask, ctrl_bits] = pattern_bits(nq, g.wires.data(), c, g.control_pattern);

  if (g.schema == Schema::CMP) {
    auto [cmp_mask, cmp_bits] = pattern_bits(nq, g.wires.data() + c, m - 1, g.params[0]);
    const std::uint64_t flag = wire_bit(nq, g.wires.back());
    const std::uint64_t fixed_mask = ctrl_mask | cmp_mask;
    const std::uint64_t fixed_bits = ctrl_bits | cmp_bits;
    for_each_submask(all & ~fixed_mask & ~flag, [&](std::uint64_t x) {
      const auto i0 = static_cast<Eigen::Index>(x | fixed_bits);
      const auto i1 = static_cast<Eigen::Index>(x | fixed_bits | flag);
      std::swap(amps[i0], amps[i1]);
    });
    return;
  }

  const Mat& u = cache.matrix(g);
  const std::size_t dim = std::size_t{1} << m;
  std::vector<std::uint64_t> offset(dim, 0);
  std::uint64_t target_mask = 0;
  for (std::size_t j = 0; j < m; ++j) target_mask |= wire_bit(nq, g.wires[c + j]);
  for (std::size_t v = 0; v < dim; ++v) offset[v] = pattern_bits(nq, g.wires.data() + c, m, v).second;
  Vec in(static_cast<Eigen::Index>(dim));
  for_each_submask(all & ~ctrl_mask & ~target_mask, [&](std::uint64_t x) {
    const std::uint64_t base = x | ctrl_bits;
    for (std::size_t v = 0; v < dim; ++v) in[static_cast<Eigen::Index>(v)] = amps[static_cast<Eigen::Index>(base | offset[v])];
    const Vec out = u * in;
    for (std::size_t v = 0; v < dim; ++v) amps[static_cast<Eigen::Index>(base | offset[v])] = out[static_cast<Eigen::Index>(v)];
  });
}

}  // namespace

Circuit::Circuit(std::size_t num_qubits, std::size_t accept_wire) : num_qubits_(num_qubits), accept_wire_(accept_wire) {
  if (num_qubits == 0 || num_qubits > 30) throw InputError("circuits have 1 to 30 qubits");
  if (accept_wire >= num_qubits) throw InputError("accept wire out of range");
}

void Circuit::append(Gate g) {
  validate_gate(g, num_qubits_);
  gates_.push_back(std::move(g));
}

std::string serialize_circuit(const Circuit& c) {
  std::ostringstream out;
  out << "qubits " << c.num_qubits() << " accept " << c.accept_wire() << '\n';
  for (const Gate& g : c.gates()) {
    out << "GATE " << schema_name(g.schema) << ' ' << g.num_controls << ':' << g.control_pattern;
    for (auto p : g.params) out << ':' << p;
    for (auto w : g.wires) out << ' ' << w;
    out << '\n';
  }
  return out.str();
}

Circuit parse_circuit(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::optional<Circuit> circuit;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream tokens(line);
    std::string head;
    if (!(tokens >> head)) continue;
    const std::string where = " (line " + std::to_string(line_no) + ")";
    if (!circuit) {
      std::string q, accept_kw, accept;
      if (head != "qubits" || !(tokens >> q >> accept_kw >> accept) || accept_kw != "accept") {
        throw InputError("expected 'qubits <Q> accept <w>' header" + where);
      }
      circuit.emplace(parse_uint(q, "qubit count"), parse_uint(accept, "accept wire"));
      continue;
    }
    if (head != "GATE") throw InputError("expected GATE" + where);
    std::string name, params;
    if (!(tokens >> name >> params)) throw InputError("truncated gate" + where);
    const auto schema = parse_schema(name);
    if (!schema) throw InputError("unknown gate schema '" + name + "'" + where);
    std::vector<std::uint64_t> fields;
    std::string_view rest(params);
    while (true) {
      const auto colon = rest.find(':');
      fields.push_back(parse_uint(rest.substr(0, colon), "gate parameter"));
      if (colon == std::string_view::npos) break;
      rest.remove_prefix(colon + 1);
    }
    if (fields.size() < 2) throw InputError("gate parameters need <controls>:<pattern>" + where);
    Gate g;
    g.schema = *schema;
    g.num_controls = fields[0];
    g.control_pattern = fields[1];
    g.params.assign(fields.begin() + 2, fields.end());
    std::string w;
    while (tokens >> w) g.wires.push_back(parse_uint(w, "wire"));
    try {
      circuit->append(std::move(g));
    } catch (const InputError& e) {
      throw InputError(e.what() + where);
    }
  }
  if (!circuit) throw InputError("empty circuit text");
  return *circuit;
}

Embedding embed_dims(std::size_t n) {
  if (n == 0) throw InputError("embedding needs n >= 1");
  std::size_t k = 0;
  while ((std::size_t{1} << k) < 3 * n) ++k;
  return Embedding{n, k, 3 * n};
}

RegisterShape qubit_shape(std::size_t num_qubits) { return RegisterShape(std::vector<std::size_t>(num_qubits, 2)); }

Vec simulate_amplitudes(const Circuit& c, Vec amps, unsigned bits) {
  if (amps.size() != static_cast<Eigen::Index>(std::uint64_t{1} << c.num_qubits())) {
    throw InputError("input dimension does not match the circuit");
  }
  GateCache cache(bits);
  for (const Gate& g : c.gates()) apply_gate(g, c.num_qubits(), amps, cache);
  return amps;
}

StateVector simulate_circuit(const Circuit& c, const StateVector& input, unsigned bits) {
  if (input.shape().total() != (std::size_t{1} << c.num_qubits())) {
    throw InputError("input dimension does not match the circuit");
  }
  return StateVector::normalized(input.shape(), simulate_amplitudes(c, input.amps(), bits));
}

double accept_wire_probability(const Circuit& c, const Vec& amps) {
  const std::uint64_t bit = wire_bit(c.num_qubits(), c.accept_wire());
  double p = 0.0;
  for (Eigen::Index i = 0; i < amps.size(); ++i)
    if (static_cast<std::uint64_t>(i) & bit) p += std::norm(amps[i]);
  return p;
}

StateVector embed_pair(const VerifierLayout& layout, const StateVector& w1, const StateVector& w2) {
  const Embedding& e = layout.embedding;
  if (w1.size() != e.used || w2.size() != e.used) throw InputError("proof registers do not match the embedding");
  const std::size_t nq = layout.num_qubits();
  Vec amps = Vec::Zero(static_cast<Eigen::Index>(std::uint64_t{1} << nq));
  const std::size_t shift1 = nq - e.k, shift2 = nq - 2 * e.k;
  for (std::size_t a = 0; a < e.used; ++a) {
    if (w1[a] == 0.0) continue;
    for (std::size_t b = 0; b < e.used; ++b) {
      amps[static_cast<Eigen::Index>((std::uint64_t{a} << shift1) | (std::uint64_t{b} << shift2))] = w1[a] * w2[b];
    }
  }
  return StateVector::normalized(qubit_shape(nq), std::move(amps));
}

double circuit_accept_probability(const Circuit& c, const VerifierLayout& layout, const ProofPair& p, unsigned bits) {
  if (c.num_qubits() != layout.num_qubits()) throw InputError("circuit does not match the verifier layout");
  return accept_wire_probability(c, simulate_amplitudes(c, embed_pair(layout, p.w1(), p.w2()).amps(), bits));
}

}  // namespace qma3col
