#pragma once

// Batch commands behind the qma3col tool. Each command returns a report
// whose "results" block depends only on the inputs and seeds; wall time is
// kept outside it.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

namespace qma3col {

enum ExitCode : int { kExitOk = 0, kExitReject = 1, kExitInput = 2, kExitCap = 3 };

struct RunReport {
  std::string command;
  nlohmann::json graph;       // nodes, edges, parser warnings
  nlohmann::json parameters;  // includes every seed
  nlohmann::json results;
  double wall_seconds = 0.0;
  int exit_code = kExitOk;
  std::string text;  // human summary

  // {"command", "graph", "parameters", "results", "wall_time_s"}
  nlohmann::json to_json() const;
  // Everything except the wall time; byte-identical across seeded re-runs.
  std::string deterministic_dump() const;
};

struct CertifyOptions {
  std::string graph_path;
  std::uint64_t trials = 100000;
  std::uint64_t seed = 1;
  std::optional<std::string> emit_proof{};
  std::optional<std::string> emit_certificate{};
};

struct AttackOptions {
  std::string graph_path;
  int restarts = 200;
  std::uint64_t seed = 1;
  std::optional<std::string> emit_proof{};
  std::optional<std::string> emit_certificate{};
};

struct NpVerifyOptions {
  std::string graph_path;
  std::string certificate_path;
  std::optional<double> gap{};  // defaults to 1/(24 n^6)
};

struct LemmaOptions {
  std::size_t n = 4;
  int trials = 1000;
  std::uint64_t seed = 1;
};

// Exit 0 when the honest proof is accepted exactly and in every sampled
// trial, 1 when the graph is not 3-colorable.
RunReport cmd_certify(const CertifyOptions& o);
// Exit 1 when an uncolorable graph is accepted above 1 - 1/(24 n^6).
RunReport cmd_attack(const AttackOptions& o);
// Exit 0 on accept, 1 on reject.
RunReport cmd_npverify(const NpVerifyOptions& o);
// Exit 1 when any lemma check fails.
RunReport cmd_lemmas(const LemmaOptions& o);

// Parses argv (without the program name), runs one command and writes the
// report to out. Exceptions map to exit codes: InputError and
// PrecisionError 2, CapError, ConvergenceError and NumericalError 3.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qma3col
