// Acceptance suite: one PASS/FAIL line per criterion. Exit status is
// nonzero when any criterion fails.

#include <boost/multiprecision/cpp_int.hpp>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <string>
#include <vector>

#include "qma3col/adversary.hpp"
#include "qma3col/certificate.hpp"
#include "qma3col/circuit.hpp"
#include "qma3col/cli.hpp"
#include "qma3col/graphs.hpp"
#include "qma3col/lemmas.hpp"
#include "qma3col/protocol.hpp"

using namespace qma3col;
using Rational = boost::multiprecision::cpp_rational;
using Clock = std::chrono::steady_clock;

namespace {

constexpr double kExactTol = 1e-9;
constexpr double kSwapTol = 1e-10;
constexpr double kDualTol = 1e-9;
constexpr double kCompletenessSeconds = 10.0;
constexpr double kSoundnessSeconds = 300.0;
constexpr std::uint64_t kMonteCarloTrials = 100000;
constexpr int kSeesawRestarts = 200;
constexpr int kDualPairs = 100;
constexpr int kLemmaTrials = 1000;

double seconds_since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

double threshold(std::size_t n) { return 1.0 - 1.0 / (24.0 * std::pow(static_cast<double>(n), 6)); }

struct Outcome {
  bool pass = true;
  std::string detail;
};

void fail(Outcome& o, const std::string& why) {
  if (o.pass) o.detail = why;
  o.pass = false;
}

ProofPair random_pair(std::size_t n, SeedStream& rng) {
  return ProofPair(StateVector::random(proof_register_shape(n), rng), StateVector::random(proof_register_shape(n), rng));
}

// Best soundness attack per uncolorable graph, shared by criteria 2 and 6.
struct AttackRecord {
  std::string name;
  Graph graph;
  double value = 0.0;
  std::string source;
  ProofPair pair;
};
std::vector<AttackRecord> g_attacks;

Outcome completeness() {
  Outcome o;
  const auto start = Clock::now();
  int graphs = 0;
  for (const auto& [name, g] : colorable_corpus()) {
    const auto coloring = find_3coloring(g);
    if (!coloring) {
      fail(o, name + " has no coloring");
      continue;
    }
    const VerifierOperators ops = acceptance_operator(g);
    const ProofPair proof = honest_proof(g, *coloring);
    const double p = accept_probability(ops, proof);
    if (std::abs(p - 1.0) > kExactTol) fail(o, name + " exact acceptance " + std::to_string(p));
    const ProtocolRun run = run_protocol(ops, proof, kMonteCarloTrials, 1, false);
    if (run.accept_count != kMonteCarloTrials) fail(o, name + " rejected a Monte Carlo trial");
    ++graphs;
  }
  const double t = seconds_since(start);
  if (t >= kCompletenessSeconds) fail(o, "runtime " + std::to_string(t) + " s");
  if (o.pass) o.detail = std::to_string(graphs) + " graphs, exact 1 within 1e-9, 1e5/1e5 trials accepted, " + std::to_string(t) + " s";
  return o;
}

Outcome soundness() {
  Outcome o;
  const auto start = Clock::now();
  double worst_margin = 1.0;
  std::string worst;
  for (const auto& [name, g] : uncolorable_corpus()) {
    const std::size_t n = g.num_nodes();
    const VerifierOperators ops = acceptance_operator(g);
    const AttackResult s = seesaw(ops, {.restarts = kSeesawRestarts, .seed = 1, .compute_spectral_bound = false});
    AttackRecord rec{name, g, s.best_value, "seesaw", s.best_pair};
    const BasisAttackResult b = basis_attack(ops);
    if (b.value > rec.value) rec = {name, g, b.value, "basis", b.pair};
    if (n <= kColoringFamilyCap) {
      const ColoringAttackResult c = coloring_family_attack(g);
      if (c.value > rec.value) rec = {name, g, c.value, "coloring_family", c.pair};
    }
    const double margin = threshold(n) - rec.value;
    if (margin < worst_margin) {
      worst_margin = margin;
      worst = name;
    }
    if (margin < 0.0) fail(o, name + " best " + std::to_string(rec.value) + " > threshold");
    g_attacks.push_back(std::move(rec));
  }
  const double t = seconds_since(start);
  if (t >= kSoundnessSeconds) fail(o, "runtime " + std::to_string(t) + " s");
  if (o.pass) {
    char buf[200];
    std::snprintf(buf, sizeof buf, "%zu graphs below 1 - 1/(24n^6), smallest margin %.6f (%s), %.1f s", g_attacks.size(),
                  worst_margin, worst.c_str(), t);
    o.detail = buf;
  }
  return o;
}

Outcome dual_path() {
  Outcome o;
  SeedStream rng(0xd0a1);
  std::vector<NamedGraph> graphs = colorable_corpus();
  for (auto& g : uncolorable_corpus()) graphs.push_back(std::move(g));
  double worst = 0.0;
  for (const auto& [name, g] : graphs) {
    const std::size_t n = g.num_nodes();
    const VerifierOperators ops = acceptance_operator(g);
    const Circuit c = compile_verifier(g, VerifierParams::for_nodes(n));
    const VerifierLayout layout = verifier_layout(n);
    for (int t = 0; t < kDualPairs; ++t) {
      const ProofPair p = random_pair(n, rng);
      const double d = std::abs(circuit_accept_probability(c, layout, p) - accept_probability(ops, p));
      worst = std::max(worst, d);
      if (d > kDualTol) fail(o, name + " differs by " + std::to_string(d));
    }
  }
  if (o.pass) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "%zu graphs x %d pairs, max difference %.2e (tol 1e-9)", graphs.size(), kDualPairs, worst);
    o.detail = buf;
  }
  return o;
}

// 3 * Pr[accept and selector = Test 1].
double compiled_test1(const Circuit& c, const VerifierLayout& l, const ProofPair& p) {
  const Vec out = simulate_amplitudes(c, embed_pair(l, p.w1(), p.w2()).amps());
  const std::size_t q = c.num_qubits();
  double total = 0.0;
  for (Eigen::Index i = 0; i < out.size(); ++i) {
    const auto x = static_cast<std::uint64_t>(i);
    const bool sel_zero = !((x >> (q - 1 - l.sel0)) & 1) && !((x >> (q - 1 - l.sel1)) & 1);
    if (sel_zero && ((x >> (q - 1 - l.accept)) & 1)) total += std::norm(out[i]);
  }
  return 3.0 * total;
}

Outcome swap_identity() {
  Outcome o;
  SeedStream rng(0x5a9);
  double worst_op = 0.0, worst_circ = 0.0;
  for (std::size_t n = 2; n <= 6; ++n) {
    const Operator t1 = build_test1(n);
    // The Test-1 branch does not read the edges.
    const Circuit c = compile_verifier(Graph(n), VerifierParams::for_nodes(n));
    const VerifierLayout l = verifier_layout(n);
    for (int t = 0; t < 20; ++t) {
      const ProofPair p = random_pair(n, rng);
      const double formula = 0.5 + 0.5 * std::norm(p.w1().amps().dot(p.w2().amps()));
      const double op = expectation(t1, p.joint());
      const double circ = compiled_test1(c, l, p);
      worst_op = std::max(worst_op, std::abs(op - formula));
      worst_circ = std::max({worst_circ, std::abs(circ - formula), std::abs(circ - op)});
    }
  }
  if (worst_op > kSwapTol) fail(o, "operator differs from the formula by " + std::to_string(worst_op));
  if (worst_circ > kDualTol) fail(o, "compiled Test-1 branch differs by " + std::to_string(worst_circ));
  if (o.pass) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "100 pairs, operator max diff %.2e (tol 1e-10), compiled branch %.2e (tol 1e-9)", worst_op,
                  worst_circ);
    o.detail = buf;
  }
  return o;
}

Outcome lemma_suite() {
  Outcome o;
  std::string summary;
  for (std::size_t n : {4u, 6u, 8u}) {
    const LemmaSuiteReport r = run_lemma_suite(n, kLemmaTrials, 1);
    int passed = 0;
    for (const LemmaCheck& c : r.checks) {
      const bool ok = c.status == LemmaStatus::Pass && c.constructed_applicable > 0 && c.random_applicable > 0;
      if (!ok) fail(o, "n=" + std::to_string(n) + " " + c.name + " " + to_string(c.status));
      passed += ok;
    }
    summary += (summary.empty() ? "" : ", ") + std::string("n=") + std::to_string(n) + " " + std::to_string(passed) + "/5";
  }
  if (o.pass) o.detail = summary + " PASS with constructed and 1000 random instances";
  return o;
}

// Tr(M (rho1 (x) rho2)) over the used register values.
double dense_trace(const VerifierOperators& ops, const Certificate& cert, std::size_t used) {
  const auto u = static_cast<Eigen::Index>(used);
  const Mat r1 = cert.rho1().to_matrix().topLeftCorner(u, u);
  const Mat r2 = cert.rho2().to_matrix().topLeftCorner(u, u);
  Mat rho(u * u, u * u);
  for (Eigen::Index a = 0; a < u; ++a)
    for (Eigen::Index b = 0; b < u; ++b) rho.block(a * u, b * u, u, u) = r1(a, b) * r2;
  return (ops.total.entries() * rho).trace().real();
}

Outcome np_verifier() {
  Outcome o;
  int accepted = 0, rejected = 0;
  double worst_ratio = 0.0;
  auto check = [&](const std::string& name, const Graph& g, const ProofPair& p, bool expect_accept) {
    const std::size_t n = g.num_nodes();
    const VerifierParams params = VerifierParams::for_nodes(n);
    const Circuit c = compile_verifier(g, params);
    const unsigned bits = precision_budget(c.size(), c.num_qubits(), params.gap);
    const Certificate cert = Certificate::from_pair(p, std::size_t{1} << embed_dims(n).k, bits);
    const VerifyResult v = classical_verify(c, cert, params);
    const double oracle = dense_trace(acceptance_operator(g), cert, 3 * n);
    worst_ratio = std::max(worst_ratio, std::abs(v.probability - oracle) / (params.gap / 3.0));
    if (std::abs(v.probability - oracle) > params.gap / 3.0) fail(o, name + " differs from the dense trace");
    if (v.accept != expect_accept) fail(o, name + (expect_accept ? " honest certificate rejected" : " adversary accepted"));
    (expect_accept ? accepted : rejected) += v.accept == expect_accept;
  };
  for (const auto& [name, g] : colorable_corpus()) check(name, g, honest_proof(g, *find_3coloring(g)), true);
  for (const AttackRecord& a : g_attacks) check(a.name, a.graph, a.pair, false);
  if (g_attacks.empty()) fail(o, "no adversary certificates");
  if (o.pass) {
    char buf[200];
    std::snprintf(buf, sizeof buf, "%d honest accepted, %d adversarial rejected, max |p - trace| = %.2e of g/3", accepted,
                  rejected, worst_ratio);
    o.detail = buf;
  }
  return o;
}

// Exact maximum over basis pairs |i,c>|j,d> for K_n by rational enumeration.
Rational basis_pair_oracle(std::size_t n) {
  // Fourier outcomes of a basis state: node part F_n|0> w.p. 1/n, color
  // part F_3|0> w.p. 1/3; one register fails Test 3 w.p. (1 - 1/n)/3.
  const Rational pass3 = 1 - Rational(n - 1, n) / 3;
  Rational best = 0;
  for (std::size_t a = 0; a < 3 * n; ++a) {
    for (std::size_t b = 0; b < 3 * n; ++b) {
      const std::size_t i = a / 3, c = a % 3, j = b / 3, d = b % 3;
      const Rational t1 = a == b ? Rational(1) : Rational(1, 2);
      const bool bad = (i == j && c != d) || (i != j && c == d);  // complete graph
      const Rational t2 = bad ? 0 : 1;
      const Rational total = (t1 + t2 + pass3 * pass3) / 3;
      if (total > best) best = total;
    }
  }
  return best;
}

Outcome exact_values() {
  Outcome o;
  const Rational oracle = basis_pair_oracle(4);
  if (oracle != Rational(41, 48)) fail(o, "enumeration oracle gives " + oracle.str());
  const Graph k4 = generate::complete(4);
  const VerifierOperators ops = acceptance_operator(k4);
  const StateVector s = StateVector::basis(proof_register_shape(4), 0);
  const ProofPair p(s, s);
  const double target = static_cast<double>(oracle);
  const double op = accept_probability(ops, p);
  const double circ = circuit_accept_probability(compile_verifier(k4, VerifierParams::for_nodes(4)), verifier_layout(4), p);
  if (std::abs(op - target) > 1e-12) fail(o, "operator path " + std::to_string(op));
  if (std::abs(circ - target) > kDualTol) fail(o, "circuit path " + std::to_string(circ));
  if (std::abs(basis_attack(ops).value - target) > 1e-12) fail(o, "basis_attack disagrees with the enumeration");

  const Graph k3 = generate::complete(3);
  const LemmaStatistics st = lemma_statistics(honest_proof(k3, {0, 1, 2}));
  for (const RegisterStatistics* r : {&st.first, &st.second}) {
    for (double m : r->node_mass)
      if (std::abs(m - 1.0 / 3.0) > 1e-12) fail(o, "triangle node mass " + std::to_string(m));
    for (double c : r->color_concentration)
      if (std::abs(c - 1.0) > 1e-12) fail(o, "triangle color concentration " + std::to_string(c));
  }
  if (o.pass) {
    char buf[200];
    std::snprintf(buf, sizeof buf, "K4 basis pair: oracle 41/48, operator %.15f, circuit %.15f; triangle masses 1/3, concentration 1",
                  op, circ);
    o.detail = buf;
  }
  return o;
}

Outcome determinism() {
  Outcome o;
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "qma3col_acceptance";
  fs::create_directories(dir);
  const std::string k3 = (dir / "k3.col").string(), k4 = (dir / "k4.col").string(), cert = (dir / "k4.json").string();
  std::ofstream(k3) << serialize_graph(generate::complete(3));
  std::ofstream(k4) << serialize_graph(generate::complete(4));

  const std::vector<std::pair<std::string, std::function<RunReport()>>> commands{
      {"certify", [&] { return cmd_certify({.graph_path = k3, .trials = 20000, .seed = 7}); }},
      {"attack", [&] { return cmd_attack({.graph_path = k4, .restarts = 50, .seed = 7, .emit_certificate = cert}); }},
      {"npverify", [&] { return cmd_npverify({.graph_path = k4, .certificate_path = cert}); }},
      {"lemmas", [&] { return cmd_lemmas({.n = 5, .trials = 500, .seed = 7}); }},
  };
  for (const auto& [name, run] : commands) {
    const std::string first = run().deterministic_dump();
    const std::string second = run().deterministic_dump();
    if (first != second) fail(o, name + " reports differ");
  }
  fs::remove_all(dir);
  if (o.pass) o.detail = "certify, attack, npverify, lemmas: identical result blocks across two runs";
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<int, std::function<Outcome()>>> criteria{
      {1, completeness}, {2, soundness}, {3, dual_path}, {4, swap_identity},
      {5, lemma_suite},  {6, np_verifier}, {7, exact_values}, {8, determinism},
  };
  int failures = 0;
  for (const auto& [id, run] : criteria) {
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::printf("CRITERION %d %s: %s\n", id, o.pass ? "PASS" : "FAIL", o.detail.c_str());
    std::fflush(stdout);
    failures += !o.pass;
  }
  return failures == 0 ? 0 : 1;
}
