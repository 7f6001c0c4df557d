#include "qma3col/cli.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "CLI11.hpp"

#include "qma3col/adversary.hpp"
#include "qma3col/certificate.hpp"
#include "qma3col/circuit.hpp"
#include "qma3col/errors.hpp"
#include "qma3col/graphs.hpp"
#include "qma3col/lemmas.hpp"
#include "qma3col/protocol.hpp"

namespace qma3col {

namespace {

using Clock = std::chrono::steady_clock;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write '" + path + "'");
  out << text;
}

ParseResult load_graph(const std::string& path) { return parse_graph(read_file(path)); }

nlohmann::json graph_summary(const ParseResult& parsed) {
  return {{"nodes", parsed.graph.num_nodes()}, {"edges", parsed.graph.num_edges()}, {"warnings", parsed.warnings}};
}

double soundness_threshold(std::size_t n) { return 1.0 - 1.0 / (24.0 * std::pow(static_cast<double>(n), 6)); }

std::string fmt(double x, int digits = 12) {
  std::ostringstream ss;
  ss << std::setprecision(digits) << x;
  return ss.str();
}

// Certificate at the verifier's precision budget for the pair.
nlohmann::json certificate_for(const Graph& g, const ProofPair& p) {
  const VerifierParams params = VerifierParams::for_nodes(g.num_nodes());
  const Circuit c = compile_verifier(g, params);
  const unsigned bits = precision_budget(c.size(), c.num_qubits(), params.gap);
  return certificate_to_json(Certificate::from_pair(p, std::size_t{1} << embed_dims(g.num_nodes()).k, bits));
}

void finish(RunReport& r, Clock::time_point start) {
  r.wall_seconds = std::chrono::duration<double>(Clock::now() - start).count();
}

}  // namespace

nlohmann::json RunReport::to_json() const {
  return {{"command", command}, {"graph", graph}, {"parameters", parameters}, {"results", results},
          {"wall_time_s", wall_seconds}};
}

std::string RunReport::deterministic_dump() const {
  nlohmann::json j = to_json();
  j.erase("wall_time_s");
  return j.dump();
}

RunReport cmd_certify(const CertifyOptions& o) {
  const auto start = Clock::now();
  RunReport r;
  r.command = "certify";
  const ParseResult parsed = load_graph(o.graph_path);
  const Graph& g = parsed.graph;
  r.graph = graph_summary(parsed);
  r.parameters = {{"trials", o.trials}, {"seed", o.seed}};
  std::ostringstream text;
  text << "certify: " << g.num_nodes() << " nodes, " << g.num_edges() << " edges\n";

  const std::optional<Coloring> coloring = find_3coloring(g);
  if (!coloring) {
    r.results = {{"colorable", false}, {"message", "not 3-colorable"}};
    r.exit_code = kExitReject;
    text << "not 3-colorable; no proof emitted\n";
    r.text = text.str();
    finish(r, start);
    return r;
  }

  const VerifierOperators ops = acceptance_operator(g);
  const ProofPair proof = honest_proof(g, *coloring);
  const TestValues v = test_values(ops, proof);
  const double exact = accept_probability(ops, proof);
  const ProtocolRun run = run_protocol(ops, proof, o.trials, o.seed, false);
  const bool accepted = std::abs(exact - 1.0) <= 1e-9 && run.accept_count == run.trials;

  r.results = {{"colorable", true},
               {"coloring", std::vector<int>(coloring->begin(), coloring->end())},
               {"acceptance", exact},
               {"tests", {{"test1", v.test1}, {"test2", v.test2}, {"test3", v.test3}}},
               {"monte_carlo",
                {{"trials", run.trials}, {"accepted", run.accept_count}, {"test_counts", run.test_counts}}},
               {"verdict", accepted ? "accept" : "reject"}};
  r.exit_code = accepted ? kExitOk : kExitReject;

  if (o.emit_proof) write_file(*o.emit_proof, nlohmann::json(proof).dump(2) + "\n");
  if (o.emit_certificate) write_file(*o.emit_certificate, certificate_for(g, proof).dump() + "\n");

  text << "coloring:";
  for (auto c : *coloring) text << ' ' << int(c);
  text << "\nexact acceptance " << fmt(exact) << "\nmonte carlo " << run.accept_count << "/" << run.trials
       << " accepted (seed " << o.seed << ")\nverdict " << (accepted ? "accept" : "reject") << "\n";
  r.text = text.str();
  finish(r, start);
  return r;
}

RunReport cmd_attack(const AttackOptions& o) {
  const auto start = Clock::now();
  RunReport r;
  r.command = "attack";
  const ParseResult parsed = load_graph(o.graph_path);
  const Graph& g = parsed.graph;
  const std::size_t n = g.num_nodes();
  if (n == 0) throw InputError("graph has no nodes");
  if (o.restarts < 1) throw InputError("--restarts must be positive");
  r.graph = graph_summary(parsed);
  r.parameters = {{"restarts", o.restarts}, {"seed", o.seed}};

  const bool colorable = find_3coloring(g).has_value();
  const VerifierOperators ops = acceptance_operator(g);
  const AttackResult seesaw_result = seesaw(ops, {.restarts = o.restarts, .seed = o.seed});
  const BasisAttackResult basis = basis_attack(ops);

  double best = seesaw_result.best_value;
  std::string source = "seesaw";
  ProofPair best_pair = seesaw_result.best_pair;
  if (basis.value > best) {
    best = basis.value;
    source = "basis";
    best_pair = basis.pair;
  }
  nlohmann::json family = nullptr;
  if (n <= kColoringFamilyCap) {
    const ColoringAttackResult cf = coloring_family_attack(g);
    family = {{"value", cf.value}, {"coloring", std::vector<int>(cf.coloring.begin(), cf.coloring.end())}};
    if (cf.value > best) {
      best = cf.value;
      source = "coloring_family";
      best_pair = cf.pair;
    }
  }

  const double threshold = soundness_threshold(n);
  const std::string check = colorable ? "N/A" : (best <= threshold ? "PASS" : "FAIL");
  r.results = {{"colorable", colorable},
               {"seesaw", seesaw_result},
               {"basis", {{"value", basis.value}, {"first", basis.first}, {"second", basis.second}}},
               {"coloring_family", family},
               {"spectral_bound", seesaw_result.spectral_upper_bound},
               {"best_value", best},
               {"best_source", source},
               {"threshold", threshold},
               {"check", check}};
  r.exit_code = check == "FAIL" ? kExitReject : kExitOk;

  if (o.emit_proof) write_file(*o.emit_proof, nlohmann::json(best_pair).dump(2) + "\n");
  if (o.emit_certificate) write_file(*o.emit_certificate, certificate_for(g, best_pair).dump() + "\n");

  std::ostringstream text;
  text << "attack: " << n << " nodes, " << g.num_edges() << " edges, " << (colorable ? "3-colorable" : "not 3-colorable")
       << "\nseesaw " << fmt(seesaw_result.best_value) << " (" << o.restarts << " restarts, seed " << o.seed
       << ")\nbasis " << fmt(basis.value) << "\n";
  if (!family.is_null()) text << "coloring family " << fmt(family["value"].get<double>()) << "\n";
  text << "spectral bound " << fmt(seesaw_result.spectral_upper_bound) << "\nbest " << fmt(best) << " from " << source
       << "\nthreshold 1 - 1/(24 n^6) = " << fmt(threshold, 17) << "\ncheck " << check << "\n";
  r.text = text.str();
  finish(r, start);
  return r;
}

RunReport cmd_npverify(const NpVerifyOptions& o) {
  const auto start = Clock::now();
  RunReport r;
  r.command = "npverify";
  const ParseResult parsed = load_graph(o.graph_path);
  const Graph& g = parsed.graph;
  r.graph = graph_summary(parsed);

  VerifierParams params = VerifierParams::for_nodes(g.num_nodes());
  if (o.gap) {
    if (!(*o.gap > 0.0 && *o.gap <= 1.0)) throw InputError("--gap must lie in (0, 1]");
    params.gap = *o.gap;
  }
  r.parameters = {{"gap", params.gap}};

  nlohmann::json cert_json;
  try {
    cert_json = nlohmann::json::parse(read_file(o.certificate_path));
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError(std::string("certificate is not valid JSON: ") + e.what());
  }
  const Certificate cert = certificate_from_json(cert_json);
  const Circuit circuit = compile_verifier(g, params);
  const VerifyResult v = classical_verify(circuit, cert, params);

  r.results = {{"circuit", {{"qubits", circuit.num_qubits()}, {"gates", circuit.size()}, {"size_bound", params.size_bound()}}},
               {"verify", v},
               {"verdict", v.accept ? "accept" : "reject"}};
  r.exit_code = v.accept ? kExitOk : kExitReject;

  std::ostringstream text;
  text << "npverify: " << g.num_nodes() << " nodes, circuit " << circuit.num_qubits() << " qubits, " << circuit.size()
       << " gates\nprobability " << fmt(v.probability, 17) << " (error bound " << fmt(v.error_bound, 3)
       << ")\nthreshold 1 - g/2 = " << fmt(v.threshold, 17) << "\nverdict " << (v.accept ? "accept" : "reject") << "\n";
  r.text = text.str();
  finish(r, start);
  return r;
}

RunReport cmd_lemmas(const LemmaOptions& o) {
  const auto start = Clock::now();
  RunReport r;
  r.command = "lemmas";
  r.graph = nullptr;
  r.parameters = {{"n", o.n}, {"trials", o.trials}, {"seed", o.seed}};
  if (o.trials < 0) throw InputError("--trials must be non-negative");
  const LemmaSuiteReport suite = run_lemma_suite(o.n, o.trials, o.seed);
  r.results = suite;
  r.exit_code = suite.passed() ? kExitOk : kExitReject;

  std::ostringstream text;
  text << "lemmas: n = " << o.n << ", " << o.trials << " random instances per check, seed " << o.seed << "\n";
  for (const LemmaCheck& c : suite.checks) {
    text << std::left << std::setw(20) << c.name << ' ' << to_string(c.status);
    if (c.status == LemmaStatus::Skip) {
      text << "  " << c.note;
    } else {
      text << "  bound " << fmt(c.bound, 6) << ", min measured " << fmt(c.min_measured, 6) << ", applicable "
           << c.constructed_applicable << "+" << c.random_applicable << ", violations " << c.violations;
    }
    text << "\n";
  }
  r.text = text.str();
  finish(r, start);
  return r;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Two-proof verifier lab for graph 3-colorability"};
  app.require_subcommand(1);
  app.footer(
      "Graph files use the DIMACS edge format. Caps: operators, attacks, circuits and certificates\n"
      "need n <= 12; the coloring-family attack runs for n <= 8; the coloring search needs n <= 30.\n"
      "Exit codes: 0 success/accept, 1 reject/FAIL, 2 input or precision error, 3 cap exceeded\n"
      "or internal numerical failure.");
  bool text = false;
  app.add_flag("--text", text, "Print a human summary instead of JSON");

  CertifyOptions certify;
  auto* c = app.add_subcommand("certify", "Find a 3-coloring and check the honest proof");
  c->add_option("graph", certify.graph_path, "Graph file")->required();
  c->add_option("--trials", certify.trials, "Monte Carlo trials")->capture_default_str();
  c->add_option("--seed", certify.seed, "Seed")->capture_default_str();
  c->add_option("--emit-proof", certify.emit_proof, "Write the honest proof pair as JSON");
  c->add_option("--emit-certificate", certify.emit_certificate, "Write the honest certificate");

  AttackOptions attack;
  auto* a = app.add_subcommand("attack", "Search for product proofs that beat the soundness bound");
  a->add_option("graph", attack.graph_path, "Graph file")->required();
  a->add_option("--restarts", attack.restarts, "Seesaw restarts")->capture_default_str();
  a->add_option("--seed", attack.seed, "Seed")->capture_default_str();
  a->add_option("--emit-proof", attack.emit_proof, "Write the best pair as JSON");
  a->add_option("--emit-certificate", attack.emit_certificate, "Write the best pair as a certificate");

  NpVerifyOptions npverify;
  auto* v = app.add_subcommand("npverify", "Classically verify a density-matrix certificate");
  v->add_option("graph", npverify.graph_path, "Graph file")->required();
  v->add_option("certificate", npverify.certificate_path, "Certificate JSON")->required();
  v->add_option("--gap", npverify.gap, "Soundness gap g (default 1/(24 n^6))");

  LemmaOptions lemmas;
  auto* l = app.add_subcommand("lemmas", "Run the lemma instantiation suite");
  l->add_option("--n", lemmas.n, "Number of nodes")->capture_default_str();
  l->add_option("--trials", lemmas.trials, "Random instances per check")->capture_default_str();
  l->add_option("--seed", lemmas.seed, "Seed")->capture_default_str();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kExitOk : kExitInput;
  }

  try {
    RunReport report;
    if (*c) report = cmd_certify(certify);
    else if (*a) report = cmd_attack(attack);
    else if (*v) report = cmd_npverify(npverify);
    else report = cmd_lemmas(lemmas);
    if (text) out << report.text;
    else out << report.to_json().dump(2) << "\n";
    return report.exit_code;
  } catch (const PrecisionError& e) {
    err << "precision error: " << e.what() << "\n";
    return kExitInput;
  } catch (const InputError& e) {
    err << "input error: " << e.what() << "\n";
    return kExitInput;
  } catch (const CapError& e) {
    err << "cap exceeded: " << e.what() << "\n";
    return kExitCap;
  } catch (const ConvergenceError& e) {
    err << "numerical failure: " << e.what() << "\n";
    return kExitCap;
  } catch (const NumericalError& e) {
    err << "numerical failure: " << e.what() << "\n";
    return kExitCap;
  }
}

}  // namespace qma3col
