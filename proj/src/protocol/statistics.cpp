#include <algorithm>
#include <cmath>

#include "qma3col/errors.hpp"
#include "qma3col/protocol.hpp"

namespace qma3col {

namespace {

RegisterStatistics register_statistics(const StateVector& w) {
  const std::size_t n = w.shape().dims()[0];
  RegisterStatistics s;
  s.node_mass.assign(n, 0.0);
  s.color_concentration.assign(n, 0.0);
  // Color part projected onto F_3|0>: gamma_i = 3^{-1/2} sum_c w(i, c).
  Vec gamma(static_cast<Eigen::Index>(n));
  const double inv_sqrt3 = 1.0 / std::sqrt(3.0);
  for (std::size_t i = 0; i < n; ++i) {
    double mass = 0.0;
    double best = 0.0;
    cplx sum = 0.0;
    for (std::size_t c = 0; c < kNumColors; ++c) {
      const cplx a = w[kNumColors * i + c];
      mass += std::norm(a);
      best = std::max(best, std::norm(a));
      sum += a;
    }
    s.node_mass[i] = mass;
    s.color_concentration[i] = mass > 0.0 ? best / mass : 0.0;
    gamma[static_cast<Eigen::Index>(i)] = inv_sqrt3 * sum;
  }
  s.fourier_color0_mass = gamma.squaredNorm();
  if (s.fourier_color0_mass > 0.0) {
    const Vec g = gamma / std::sqrt(s.fourier_color0_mass);
    s.postselected_index.resize(n);
    double dist = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      s.postselected_index[i] = std::norm(g[static_cast<Eigen::Index>(i)]);
      dist += std::abs(s.postselected_index[i] - 1.0 / static_cast<double>(n));
    }
    s.index_distance_from_uniform = 0.5 * dist;
    // <F_n 0 | g> = n^{-1/2} sum_i g_i
    const double overlap = std::norm(g.sum()) / static_cast<double>(n);
    s.index_fourier_failure = std::clamp(1.0 - overlap, 0.0, 1.0);
  }
  s.test3_reject = s.fourier_color0_mass * s.index_fourier_failure;
  return s;
}

}  // namespace

LemmaStatistics lemma_statistics(const ProofPair& p) {
  LemmaStatistics out;
  out.n = p.num_nodes();
  out.p = measure_distribution(p.w1());
  out.q = measure_distribution(p.w2());
  out.first = register_statistics(p.w1());
  out.second = register_statistics(p.w2());
  out.fidelity = fidelity(p.w1(), p.w2());
  out.test1_failure = 0.5 * (1.0 - out.fidelity);
  double fail2a = 0.0;
  for (std::size_t i = 0; i < out.n; ++i)
    for (std::size_t c = 0; c < kNumColors; ++c)
      for (std::size_t c2 = 0; c2 < kNumColors; ++c2)
        if (c != c2) fail2a += out.p[kNumColors * i + c] * out.q[kNumColors * i + c2];
  out.test2a_failure = fail2a;
  double gap = 0.0;
  for (std::size_t k = 0; k < p.w1().size(); ++k) gap = std::max(gap, std::abs(std::abs(p.w1()[k]) - std::abs(p.w2()[k])));
  out.max_amplitude_gap = gap;
  return out;
}

double test2b_failure(const Graph& g, const ProofPair& p) {
  if (g.num_nodes() != p.num_nodes()) throw InputError("graph and proof sizes differ");
  const OutcomeDistribution a = measure_distribution(p.w1());
  const OutcomeDistribution b = measure_distribution(p.w2());
  double fail = 0.0;
  for (const auto& [u, v] : g.edges()) {
    for (std::size_t c = 0; c < kNumColors; ++c) {
      fail += a[kNumColors * u + c] * b[kNumColors * v + c];
      fail += a[kNumColors * v + c] * b[kNumColors * u + c];
    }
  }
  return fail;
}

}  // namespace qma3col
