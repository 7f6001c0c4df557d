#include "qma3col/certificate.hpp"

#include <algorithm>
#include <cmath>

#include <boost/multiprecision/cpp_int.hpp>

#include "qma3col/errors.hpp"

namespace qma3col {

namespace {

using boost::multiprecision::cpp_rational;

// Doubles are exact multiples of 2^-1074; this scale makes them integers.
constexpr int kDyadicScale = 1200;

BigInt dyadic(double x) {
  if (x == 0.0) return 0;
  int e = 0;
  const double m = std::frexp(x, &e);
  const auto mant = static_cast<std::int64_t>(std::ldexp(m, 53));
  return BigInt(mant) << (e - 53 + kDyadicScale);
}

BigInt pow10(unsigned k) { return boost::multiprecision::pow(BigInt(10), k); }

// round(num / den) with ties away from zero; den > 0.
BigInt round_div(const BigInt& num, const BigInt& den) {
  const BigInt twice = 2 * num;
  if (num >= 0) return (twice + den) / (2 * den);
  return -((-twice + den) / (2 * den));
}

std::string format_decimal(const BigInt& v, unsigned scale) {
  const BigInt mag = v < 0 ? BigInt(-v) : v;
  const BigInt unit = pow10(scale);
  std::string frac = BigInt(mag % unit).str();
  frac.insert(0, scale - frac.size(), '0');
  return (v < 0 ? "-" : "") + BigInt(mag / unit).str() + "." + frac;
}

struct ParsedDecimal {
  BigInt value;
  unsigned digits;
};

ParsedDecimal parse_decimal(const std::string& s) {
  std::size_t pos = 0;
  const bool negative = !s.empty() && s[0] == '-';
  if (negative) ++pos;
  const std::size_t int_start = pos;
  while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
  const std::size_t int_len = pos - int_start;
  if (int_len == 0 || pos >= s.size() || s[pos] != '.') throw InputError("malformed decimal entry '" + s + "'");
  const std::size_t frac_start = ++pos;
  while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
  if (pos != s.size() || pos == frac_start) throw InputError("malformed decimal entry '" + s + "'");
  // cpp_int reads a leading 0 as an octal prefix.
  std::string digits = s.substr(int_start, int_len) + s.substr(frac_start);
  digits.erase(0, std::min(digits.find_first_not_of('0'), digits.size() - 1));
  const BigInt v(digits);
  return ParsedDecimal{negative ? BigInt(-v) : v, static_cast<unsigned>(pos - frac_start)};
}

DecimalMatrix density_from_ensemble(const std::vector<WeightedState>& ensemble, std::size_t dim, unsigned scale) {
  if (ensemble.empty()) throw InputError("empty ensemble");
  const auto used = static_cast<std::size_t>(ensemble.front().amps.size());
  if (used > dim) throw InputError("state longer than the register");
  std::vector<std::vector<BigInt>> re, im;
  std::vector<BigInt> weights;
  BigInt den = 0;
  for (const auto& s : ensemble) {
    if (static_cast<std::size_t>(s.amps.size()) != used) throw InputError("ensemble states differ in length");
    if (!(s.weight >= 0.0)) throw InputError("ensemble weights must be non-negative");
    std::vector<BigInt> r(used), i(used);
    for (std::size_t a = 0; a < used; ++a) {
      r[a] = dyadic(s.amps[static_cast<Eigen::Index>(a)].real());
      i[a] = dyadic(s.amps[static_cast<Eigen::Index>(a)].imag());
    }
    const BigInt w = dyadic(s.weight);
    for (std::size_t a = 0; a < used; ++a) den += w * (r[a] * r[a] + i[a] * i[a]);
    re.push_back(std::move(r));
    im.push_back(std::move(i));
    weights.push_back(w);
  }
  if (den == 0) throw InputError("ensemble has zero weight");
  const BigInt unit = pow10(scale);
  DecimalMatrix m(dim, scale);
  for (std::size_t a = 0; a < used; ++a) {
    for (std::size_t b = 0; b < used; ++b) {
      // v_a conj(v_b) = (ra rb + ia ib) + i (ia rb - ra ib)
      BigInt nre = 0, nim = 0;
      for (std::size_t t = 0; t < ensemble.size(); ++t) {
        const auto &r = re[t], &i = im[t];
        if ((r[a] == 0 && i[a] == 0) || (r[b] == 0 && i[b] == 0)) continue;
        nre += weights[t] * (r[a] * r[b] + i[a] * i[b]);
        nim += weights[t] * (i[a] * r[b] - r[a] * i[b]);
      }
      m.set(a, b, round_div(nre * unit, den), round_div(nim * unit, den));
    }
  }
  return m;
}

nlohmann::json matrix_json(const DecimalMatrix& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t r = 0; r < m.dim(); ++r) {
    nlohmann::json row = nlohmann::json::array();
    for (std::size_t c = 0; c < m.dim(); ++c)
      row.push_back(nlohmann::json::array({format_decimal(m.re(r, c), m.scale()), format_decimal(m.im(r, c), m.scale())}));
    rows.push_back(std::move(row));
  }
  return rows;
}

DecimalMatrix matrix_from_json(const nlohmann::json& j, std::size_t dim, unsigned min_digits, const char* name) {
  if (!j.is_array() || j.size() != dim) throw InputError(std::string(name) + " must have " + std::to_string(dim) + " rows");
  std::vector<ParsedDecimal> re, im;
  unsigned scale = min_digits;
  for (const auto& row : j) {
    if (!row.is_array() || row.size() != dim) throw InputError(std::string(name) + " rows must have " + std::to_string(dim) + " entries");
    for (const auto& e : row) {
      if (!e.is_array() || e.size() != 2 || !e[0].is_string() || !e[1].is_string()) {
        throw InputError(std::string(name) + " entries must be [\"re\", \"im\"] decimal strings");
      }
      for (auto* out : {&re, &im}) {
        ParsedDecimal d = parse_decimal(e[out == &re ? 0 : 1].get<std::string>());
        if (d.digits < min_digits) {
          throw PrecisionError(std::string(name) + " entry has " + std::to_string(d.digits) + " fractional digits; " +
                               std::to_string(min_digits) + " required");
        }
        scale = std::max(scale, d.digits);
        out->push_back(std::move(d));
      }
    }
  }
  DecimalMatrix m(dim, scale);
  for (std::size_t k = 0; k < re.size(); ++k) {
    m.set(k / dim, k % dim, re[k].value * pow10(scale - re[k].digits), im[k].value * pow10(scale - im[k].digits));
  }
  return m;
}

// |x| * 2^bits <= limit
bool within(const BigInt& x, unsigned bits, const BigInt& limit) { return (x < 0 ? BigInt(-x) : x) << bits <= limit; }

void validate_matrix(const DecimalMatrix& m, unsigned bits, std::size_t used, const char* name) {
  const std::size_t d = m.dim();
  const BigInt unit = pow10(m.scale());
  for (std::size_t r = 0; r < d; ++r) {
    for (std::size_t c = 0; c < d; ++c) {
      if ((r >= used || c >= used) && (m.re(r, c) != 0 || m.im(r, c) != 0)) {
        throw InputError(std::string(name) + " has weight on padding value " + std::to_string(std::max(r, c)));
      }
      if (!within(m.re(r, c) - m.re(c, r), bits, unit) || !within(m.im(r, c) + m.im(c, r), bits, unit)) {
        throw InputError(std::string(name) + " is not Hermitian at the declared precision");
      }
    }
  }
  BigInt trace = 0;
  for (std::size_t a = 0; a < d; ++a) trace += m.re(a, a);
  if (!within(trace - unit, bits, unit * d)) throw InputError(std::string(name) + " does not have trace 1");
  // Eigenvalues are computed in double precision, so the floating-point
  // accuracy of the solver is added to the slack.
  const Mat block = m.to_matrix().topLeftCorner(static_cast<Eigen::Index>(used), static_cast<Eigen::Index>(used));
  Eigen::SelfAdjointEigenSolver<Mat> solver(0.5 * (block + block.adjoint()), Eigen::EigenvaluesOnly);
  const double slack = std::ldexp(static_cast<double>(d), -static_cast<int>(bits)) + static_cast<double>(d) * 0x1p-48;
  if (solver.eigenvalues().minCoeff() < -slack) throw InputError(std::string(name) + " is not positive semidefinite");
}

}  // namespace

unsigned decimal_digits(unsigned bits) {
  const BigInt target = BigInt(1) << bits;
  unsigned d = 0;
  BigInt p = 1;
  while (p < target) {
    p *= 10;
    ++d;
  }
  return d;
}

unsigned precision_budget(std::size_t num_gates, std::size_t num_qubits, double gap) {
  if (!(gap > 0.0 && gap <= 1.0)) throw InputError("gap must lie in (0, 1]");
  const double log2_value = std::log2(3.0 * static_cast<double>(std::max<std::size_t>(num_gates, 1))) +
                            2.0 * static_cast<double>(num_qubits) - std::log2(gap);
  return static_cast<unsigned>(std::ceil(log2_value)) + 8;
}

DecimalMatrix::DecimalMatrix(std::size_t dim, unsigned scale)
    : dim_(dim), scale_(scale), re_(dim * dim), im_(dim * dim) {
  if (dim == 0) throw InputError("density matrix needs dimension >= 1");
}

void DecimalMatrix::set(std::size_t r, std::size_t c, BigInt re, BigInt im) {
  re_[r * dim_ + c] = std::move(re);
  im_[r * dim_ + c] = std::move(im);
}

void DecimalMatrix::rescale(unsigned scale) {
  if (scale < scale_) throw InputError("rescale cannot drop digits");
  const BigInt f = pow10(scale - scale_);
  for (auto& x : re_) x *= f;
  for (auto& x : im_) x *= f;
  scale_ = scale;
}

Mat DecimalMatrix::to_matrix() const {
  const BigInt unit = pow10(scale_);
  Mat m(static_cast<Eigen::Index>(dim_), static_cast<Eigen::Index>(dim_));
  for (std::size_t r = 0; r < dim_; ++r) {
    for (std::size_t c = 0; c < dim_; ++c) {
      const double a = re(r, c) == 0 ? 0.0 : cpp_rational(re(r, c), unit).convert_to<double>();
      const double b = im(r, c) == 0 ? 0.0 : cpp_rational(im(r, c), unit).convert_to<double>();
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = cplx(a, b);
    }
  }
  return m;
}

Certificate::Certificate(unsigned bits, DecimalMatrix rho1, DecimalMatrix rho2)
    : bits_(bits), rho1_(std::move(rho1)), rho2_(std::move(rho2)) {
  if (bits == 0 || bits > 4096) throw InputError("certificate bits must lie in [1, 4096]");
  if (rho1_.dim() != rho2_.dim()) throw InputError("certificate matrices differ in dimension");
  const unsigned scale = std::max({decimal_digits(bits), rho1_.scale(), rho2_.scale()});
  rho1_.rescale(scale);
  rho2_.rescale(scale);
}

Certificate Certificate::from_ensembles(const std::vector<WeightedState>& first, const std::vector<WeightedState>& second,
                                        std::size_t dim, unsigned bits) {
  const unsigned scale = decimal_digits(bits);
  return Certificate(bits, density_from_ensemble(first, dim, scale), density_from_ensemble(second, dim, scale));
}

Certificate Certificate::from_pair(const ProofPair& p, std::size_t dim, unsigned bits) {
  return from_ensembles({{1.0, p.w1().amps()}}, {{1.0, p.w2().amps()}}, dim, bits);
}

void Certificate::validate(std::size_t used) const {
  validate_matrix(rho1_, bits_, used, "rho1");
  validate_matrix(rho2_, bits_, used, "rho2");
}

nlohmann::json certificate_to_json(const Certificate& c) {
  return nlohmann::json{{"bits", c.bits()}, {"dim", c.dim()}, {"rho1", matrix_json(c.rho1())}, {"rho2", matrix_json(c.rho2())}};
}

Certificate certificate_from_json(const nlohmann::json& j) {
  try {
    if (!j.is_object()) throw InputError("certificate must be a JSON object");
    const auto bits = j.at("bits").get<unsigned>();
    const auto dim = j.at("dim").get<std::size_t>();
    if (bits == 0 || bits > 4096) throw InputError("certificate bits must lie in [1, 4096]");
    if (dim == 0 || dim > 4096) throw InputError("certificate dimension out of range");
    const unsigned digits = decimal_digits(bits);
    return Certificate(bits, matrix_from_json(j.at("rho1"), dim, digits, "rho1"),
                       matrix_from_json(j.at("rho2"), dim, digits, "rho2"));
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("malformed certificate: ") + e.what());
  }
}

}  // namespace qma3col
