#include "qma3col/errors.hpp"
#include "qma3col/protocol.hpp"

namespace qma3col {

namespace {

// Basis whose columns are F_n|a> (x) F_3|b>.
Operator fourier_basis(std::size_t n) { return tensor(dft_matrix(n), dft_matrix(kNumColors)); }

bool test3_register_rejects(std::size_t outcome) {
  const std::size_t node = outcome / kNumColors;
  const std::size_t color = outcome % kNumColors;
  return color == 0 && node != 0;
}

}  // namespace

ProtocolRun run_protocol(const VerifierOperators& ops, const ProofPair& p, std::uint64_t trials, std::uint64_t seed,
                         bool keep_transcripts) {
  if (trials < 1) throw InputError("trials must be at least 1");
  if (!ops.structured()) throw InputError("protocol execution needs the factored verifier operators");
  if (p.w1().shape() != ops.register_shape) throw InputError("proof shape does not match the verifier");
  const std::size_t n = p.num_nodes();
  const Eigen::MatrixXd& weights = *ops.test2_weights;

  const double swap_accept = 0.5 + 0.5 * fidelity(p.w1(), p.w2());
  const OutcomeDistribution comp1 = measure_distribution(p.w1());
  const OutcomeDistribution comp2 = measure_distribution(p.w2());
  const Operator fourier = fourier_basis(n);
  const OutcomeDistribution four1 = measure_distribution(p.w1(), &fourier);
  const OutcomeDistribution four2 = measure_distribution(p.w2(), &fourier);

  SeedStream rng(seed, 0x70726f74);
  ProtocolRun run;
  run.trials = trials;
  if (keep_transcripts) run.transcripts.reserve(trials);
  for (std::uint64_t t = 0; t < trials; ++t) {
    ProtocolTranscript tr;
    tr.test = static_cast<int>(rng.below(3)) + 1;
    switch (tr.test) {
      case 1: {
        const bool equal = rng.uniform() < swap_accept;
        tr.outcomes[0] = equal ? 0 : 1;
        tr.num_outcomes = 1;
        tr.accept = equal;
        break;
      }
      case 2: {
        const std::size_t a = sample(comp1, rng);
        const std::size_t b = sample(comp2, rng);
        tr.outcomes[0] = static_cast<std::uint32_t>(a);
        tr.outcomes[1] = static_cast<std::uint32_t>(b);
        tr.num_outcomes = 2;
        tr.accept = weights(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) > 0.5;
        break;
      }
      default: {
        const std::size_t x = sample(four1, rng);
        const std::size_t y = sample(four2, rng);
        tr.outcomes = {static_cast<std::uint32_t>(x / kNumColors), static_cast<std::uint32_t>(x % kNumColors),
                       static_cast<std::uint32_t>(y / kNumColors), static_cast<std::uint32_t>(y % kNumColors)};
        tr.num_outcomes = 4;
        tr.accept = !test3_register_rejects(x) && !test3_register_rejects(y);
        break;
      }
    }
    ++run.test_counts[static_cast<std::size_t>(tr.test - 1)];
    if (tr.accept) ++run.accept_count;
    if (keep_transcripts) run.transcripts.push_back(tr);
  }
  return run;
}

}  // namespace qma3col
