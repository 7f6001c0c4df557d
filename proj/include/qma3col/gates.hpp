#pragma once

// Gate schemas with entries computable to any requested number of bits.
//
// Every gate carries a control prefix: num_controls wires that must match
// control_pattern (first control wire is the most significant bit) for the
// schema's action to apply. The remaining wires are the schema's targets.
//
//   H, T        one target
//   CNOT        (control, target)
//   SWAP        (a, b)
//   CSWAP       (control, a, b)
//   DFT         m targets read as an m-bit value x (first wire most
//               significant); params d, inner, outer, inverse. Writing
//               x = (a d + q) inner + r with x < d * inner * outer, F_d (or
//               its inverse) acts on the digit q; larger x are left alone.
//   CMP         m compared wires then one flag wire; params value. Flips the
//               flag when the compared wires read `value`.
//   PREP3       two targets; real orthogonal, first column
//               (|00> + |01> + |10>) / sqrt(3).

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "qma3col/qstate.hpp"

namespace qma3col {

using BigInt = boost::multiprecision::cpp_int;

enum class Schema { H, T, CNOT, SWAP, CSWAP, DFT, CMP, PREP3 };

std::string schema_name(Schema s);
std::optional<Schema> parse_schema(std::string_view name);

struct Gate {
  Schema schema = Schema::H;
  std::size_t num_controls = 0;
  std::uint64_t control_pattern = 0;
  // DFT: {d, inner, outer, inverse}. CMP: {value}. Others: empty.
  std::vector<std::uint64_t> params;
  std::vector<std::size_t> wires;  // controls first, then targets

  std::size_t num_targets() const { return wires.size() - num_controls; }
  bool operator==(const Gate&) const = default;
};

// Throws InputError when the gate's wires or params do not fit its schema.
void validate_gate(const Gate& g, std::size_t num_qubits);

// Fixed-point complex number (re + i im) / 2^bits.
struct FixedComplex {
  BigInt re;
  BigInt im;
  unsigned bits = 0;

  cplx to_complex() const;
};

namespace fixed {
// round(sqrt(a / b) * 2^bits)
BigInt sqrt_ratio(std::uint64_t a, std::uint64_t b, unsigned bits);
// round(cos(2 pi p / q) * 2^bits), round(sin(2 pi p / q) * 2^bits)
std::pair<BigInt, BigInt> cos_sin_turn(std::uint64_t p, std::uint64_t q, unsigned bits);
// round(pi * 2^bits)
BigInt pi(unsigned bits);
}  // namespace fixed

// Entry <row| U |col> of the gate's action on its target wires, within
// 2^-bits of the exact value. Runs in time polynomial in bits.
FixedComplex gate_entry(const Gate& g, std::uint64_t row, std::uint64_t col, unsigned bits);

// True for schemas whose entries are exactly 0 or 1.
bool is_permutation(Schema s);

// Dense matrix of the gate's action on its targets, entries materialized at
// `bits`. Not available for CMP, which the simulator applies as a
// permutation.
Mat gate_matrix(const Gate& g, unsigned bits);

}  // namespace qma3col
