#include "qma3col/gates.hpp"

#include <array>
#include <map>

#include "qma3col/errors.hpp"

namespace qma3col {

namespace {

constexpr unsigned kGuardBits = 24;

// Drops `shift` bits with round-half-away-from-zero.
BigInt round_shift(const BigInt& x, unsigned shift) {
  if (shift == 0) return x;
  const BigInt half = BigInt(1) << (shift - 1);
  if (x >= 0) return (x + half) >> shift;
  return -((-x + half) >> shift);
}

// atan(1/x) scaled by 2^w, truncated per term.
BigInt atan_inv(std::uint64_t x, unsigned w) {
  const BigInt one = BigInt(1) << w;
  const BigInt x2 = BigInt(x) * x;
  BigInt power = one / x;  // 1 / x^(2k+1)
  BigInt sum = 0;
  for (std::uint64_t k = 0; power != 0; ++k) {
    const BigInt term = power / (2 * k + 1);
    sum += (k % 2 == 0) ? term : BigInt(-term);
    power /= x2;
  }
  return sum;
}

// pi scaled by 2^w, accurate to a few units in the last place.
BigInt pi_scaled(unsigned w) { return 16 * atan_inv(5, w) - 4 * atan_inv(239, w); }

// cos and sin of theta / 2^w for 0 <= theta / 2^w <= pi/2, scaled by 2^w.
std::pair<BigInt, BigInt> cos_sin_scaled(const BigInt& theta, unsigned w) {
  const BigInt one = BigInt(1) << w;
  BigInt c = 0, s = 0;
  BigInt term = one;  // theta^k / k!
  for (std::uint64_t k = 0; term != 0; ++k) {
    switch (k % 4) {
      case 0:
        c += term;
        break;
      case 1:
        s += term;
        break;
      case 2:
        c -= term;
        break;
      default:
        s -= term;
        break;
    }
    term = (term * theta >> w) / (k + 1);
  }
  return {c, s};
}

void require_targets(const Gate& g, std::size_t expected) {
  if (g.num_targets() != expected) {
    throw InputError(schema_name(g.schema) + " expects " + std::to_string(expected) + " target wires");
  }
}

std::uint64_t bit_of(std::uint64_t x, std::size_t pos, std::size_t width) { return (x >> (width - 1 - pos)) & 1; }

// Action of a permutation schema on a target basis value.
std::uint64_t permute(const Gate& g, std::uint64_t x) {
  switch (g.schema) {
    case Schema::CNOT:
      return bit_of(x, 0, 2) ? x ^ 1 : x;
    case Schema::SWAP:
      return (bit_of(x, 0, 2) << 0) | (bit_of(x, 1, 2) << 1);
    case Schema::CSWAP:
      if (!bit_of(x, 0, 3)) return x;
      return 4 | (bit_of(x, 1, 3) << 0) | (bit_of(x, 2, 3) << 1);
    case Schema::CMP:
      return (x >> 1) == g.params[0] ? x ^ 1 : x;
    default:
      break;
  }
  throw InputError("not a permutation schema");
}

FixedComplex exact(std::int64_t re, unsigned bits) { return FixedComplex{BigInt(re) << bits, 0, bits}; }

}  // namespace

std::string schema_name(Schema s) {
  switch (s) {
    case Schema::H:
      return "H";
    case Schema::T:
      return "T";
    case Schema::CNOT:
      return "CNOT";
    case Schema::SWAP:
      return "SWAP";
    case Schema::CSWAP:
      return "CSWAP";
    case Schema::DFT:
      return "DFT";
    case Schema::CMP:
      return "CMP";
    case Schema::PREP3:
      return "PREP3";
  }
  return "?";
}

std::optional<Schema> parse_schema(std::string_view name) {
  static const std::map<std::string_view, Schema> table{{"H", Schema::H},         {"T", Schema::T},
                                                        {"CNOT", Schema::CNOT},   {"SWAP", Schema::SWAP},
                                                        {"CSWAP", Schema::CSWAP}, {"DFT", Schema::DFT},
                                                        {"CMP", Schema::CMP},     {"PREP3", Schema::PREP3}};
  auto it = table.find(name);
  if (it == table.end()) return std::nullopt;
  return it->second;
}

bool is_permutation(Schema s) {
  return s == Schema::CNOT || s == Schema::SWAP || s == Schema::CSWAP || s == Schema::CMP;
}

void validate_gate(const Gate& g, std::size_t num_qubits) {
  if (g.num_controls > g.wires.size()) throw InputError("more controls than wires");
  if (g.num_controls < 64 && g.control_pattern >> g.num_controls) throw InputError("control pattern too wide");
  for (std::size_t a = 0; a < g.wires.size(); ++a) {
    if (g.wires[a] >= num_qubits) throw InputError("wire index out of range");
    for (std::size_t b = 0; b < a; ++b)
      if (g.wires[a] == g.wires[b]) throw InputError("repeated wire in gate");
  }
  const std::size_t m = g.num_targets();
  switch (g.schema) {
    case Schema::H:
    case Schema::T:
      require_targets(g, 1);
      break;
    case Schema::CNOT:
    case Schema::SWAP:
    case Schema::PREP3:
      require_targets(g, 2);
      break;
    case Schema::CSWAP:
      require_targets(g, 3);
      break;
    case Schema::DFT: {
      if (g.params.size() != 4) throw InputError("DFT takes d, inner, outer, inverse");
      if (m == 0 || m > 20) throw InputError("DFT acts on 1 to 20 wires");
      const auto [d, inner, outer, inv] = std::array{g.params[0], g.params[1], g.params[2], g.params[3]};
      if (d == 0 || inner == 0 || outer == 0 || inv > 1) throw InputError("bad DFT parameters");
      if (d * inner * outer > (std::uint64_t{1} << m)) throw InputError("DFT digit layout exceeds its wires");
      break;
    }
    case Schema::CMP:
      if (g.params.size() != 1) throw InputError("CMP takes one value");
      if (m < 2 || m > 63) throw InputError("CMP needs compared wires and a flag");
      if (g.params[0] >> (m - 1)) throw InputError("CMP value too wide");
      break;
  }
  if (g.schema != Schema::DFT && g.schema != Schema::CMP && !g.params.empty()) {
    throw InputError(schema_name(g.schema) + " takes no parameters");
  }
}

cplx FixedComplex::to_complex() const {
  // Exact conversion of the dyadic rationals, then a single rounding.
  using boost::multiprecision::cpp_rational;
  const BigInt scale = BigInt(1) << bits;
  return {cpp_rational(re, scale).convert_to<double>(), cpp_rational(im, scale).convert_to<double>()};
}

namespace fixed {

BigInt sqrt_ratio(std::uint64_t a, std::uint64_t b, unsigned bits) {
  if (b == 0) throw InputError("sqrt_ratio: zero denominator");
  const unsigned w = bits + kGuardBits;
  // floor(sqrt(a * 4^w / b)) is within one unit at scale 2^w.
  const BigInt root = boost::multiprecision::sqrt((BigInt(a) << (2 * w)) / b);
  return round_shift(root, kGuardBits);
}

BigInt pi(unsigned bits) { return round_shift(pi_scaled(bits + kGuardBits), kGuardBits); }

std::pair<BigInt, BigInt> cos_sin_turn(std::uint64_t p, std::uint64_t q, unsigned bits) {
  if (q == 0) throw InputError("cos_sin_turn: zero denominator");
  p %= q;
  // Split the turn p/q into a quarter-turn count and a remainder in
  // [0, 1/4) turn, exactly in integers.
  const std::uint64_t quarter = (4 * p) / q;
  const std::uint64_t rem_num = 4 * p - quarter * q;  // remainder = rem_num / (4q) turn
  const unsigned w = bits + kGuardBits;
  // theta = 2 pi * rem_num / (4q) = pi * rem_num / (2q)
  const BigInt theta = pi_scaled(w) * rem_num / (2 * BigInt(q));
  auto [c, s] = cos_sin_scaled(theta, w);
  BigInt cr, sr;
  switch (quarter) {
    case 0:
      cr = c, sr = s;
      break;
    case 1:
      cr = -s, sr = c;
      break;
    case 2:
      cr = -c, sr = -s;
      break;
    default:
      cr = s, sr = -c;
      break;
  }
  return {round_shift(cr, kGuardBits), round_shift(sr, kGuardBits)};
}

}  // namespace fixed

FixedComplex gate_entry(const Gate& g, std::uint64_t row, std::uint64_t col, unsigned bits) {
  const std::size_t m = g.num_targets();
  if (m < 64 && (row >> m || col >> m)) throw InputError("gate entry index out of range");
  if (is_permutation(g.schema)) return exact(permute(g, col) == row ? 1 : 0, bits);
  switch (g.schema) {
    case Schema::H: {
      const BigInt h = fixed::sqrt_ratio(1, 2, bits);
      return FixedComplex{row == 1 && col == 1 ? BigInt(-h) : h, 0, bits};
    }
    case Schema::T: {
      if (row != col) return exact(0, bits);
      if (row == 0) return exact(1, bits);
      const BigInt h = fixed::sqrt_ratio(1, 2, bits);
      return FixedComplex{h, h, bits};
    }
    case Schema::PREP3: {
      // Columns: (1,1,1,0)/sqrt3, (1,-1,0,0)/sqrt2, (1,1,-2,0)/sqrt6, e_3.
      static constexpr int kNum[4][4] = {{1, 1, 1, 0}, {1, -1, 1, 0}, {1, 0, -2, 0}, {0, 0, 0, 1}};
      static constexpr std::uint64_t kDen[4] = {3, 2, 6, 1};
      const int num = kNum[row][col];
      if (num == 0) return exact(0, bits);
      // |num| / sqrt(den) = sqrt(num^2 / den)
      const BigInt mag = fixed::sqrt_ratio(static_cast<std::uint64_t>(num * num), kDen[col], bits);
      return FixedComplex{num < 0 ? BigInt(-mag) : mag, 0, bits};
    }
    case Schema::DFT: {
      const std::uint64_t d = g.params[0], inner = g.params[1], outer = g.params[2];
      const bool inverse = g.params[3] == 1;
      const std::uint64_t valid = d * inner * outer;
      if (row >= valid || col >= valid) return exact(row == col ? 1 : 0, bits);
      const std::uint64_t qr = (row / inner) % d, qc = (col / inner) % d;
      if (row / (inner * d) != col / (inner * d) || row % inner != col % inner) return exact(0, bits);
      // exp(+-2 pi i qr qc / d) / sqrt(d) = sqrt(1/d) * (cos + i sin)
      const unsigned w = bits + kGuardBits;
      const BigInt scale = fixed::sqrt_ratio(1, d, w);
      auto [c, s] = fixed::cos_sin_turn((qr * qc) % d, d, w);
      if (inverse) s = -s;
      return FixedComplex{round_shift(scale * c >> w, kGuardBits), round_shift(scale * s >> w, kGuardBits), bits};
    }
    default:
      break;
  }
  throw InputError("unhandled gate schema");
}

Mat gate_matrix(const Gate& g, unsigned bits) {
  if (g.schema == Schema::CMP) throw InputError("CMP has no dense form");
  const std::size_t m = g.num_targets();
  const auto dim = static_cast<Eigen::Index>(std::uint64_t{1} << m);
  Mat u(dim, dim);
  if (g.schema == Schema::DFT) {
    // Valid entries depend only on q_row * q_col mod d; F[t][1] covers each
    // residue t once.
    const std::uint64_t d = g.params[0], inner = g.params[1], outer = g.params[2];
    std::vector<cplx> table(d);
    for (std::uint64_t t = 0; t < d; ++t) table[t] = gate_entry(g, t * inner, (d > 1 ? 1 : 0) * inner, bits).to_complex();
    const std::uint64_t valid = d * inner * outer;
    u.setZero();
    for (Eigen::Index r = 0; r < dim; ++r) {
      for (Eigen::Index c = 0; c < dim; ++c) {
        const auto row = static_cast<std::uint64_t>(r), col = static_cast<std::uint64_t>(c);
        if (row >= valid || col >= valid) {
          if (row == col) u(r, c) = 1.0;
        } else if (row / (inner * d) == col / (inner * d) && row % inner == col % inner) {
          u(r, c) = table[((row / inner) % d) * ((col / inner) % d) % d];
        }
      }
    }
    return u;
  }
  for (Eigen::Index r = 0; r < dim; ++r)
    for (Eigen::Index c = 0; c < dim; ++c)
      u(r, c) = gate_entry(g, static_cast<std::uint64_t>(r), static_cast<std::uint64_t>(c), bits).to_complex();
  return u;
}

}  // namespace qma3col
