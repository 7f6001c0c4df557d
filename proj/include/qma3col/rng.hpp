#pragma once

#include <complex>
#include <cstdint>
#include <random>

namespace qma3col {

// Deterministic random stream. All draws are derived from the raw 64-bit
// engine output so sequences do not depend on the standard library's
// distribution implementations.
class SeedStream {
 public:
  explicit SeedStream(std::uint64_t seed, std::uint64_t stream = 0);

  // Independent stream keyed by (seed, stream, index).
  SeedStream substream(std::uint64_t index) const;

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream() const { return stream_; }

  std::uint64_t next_u64() { return engine_(); }
  // Uniform in [0, 1) with 53 random bits.
  double uniform();
  // Uniform integer in [0, bound).
  std::uint64_t below(std::uint64_t bound);
  // Standard normal via Box-Muller.
  double normal();
  // Standard complex normal (real and imaginary parts each N(0, 1/2)).
  std::complex<double> complex_normal();

 private:
  std::uint64_t seed_;
  std::uint64_t stream_;
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace qma3col
