#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cyclehopf/cli.hpp"

namespace cli = cyclehopf::cli;

namespace {

cli::Method method_or_throw(const std::string& s) {
  if (auto m = cli::parse_method(s)) return *m;
  throw CLI::ValidationError("--method", "unknown method '" + s + "'");
}

std::vector<cli::Method> method_list(const std::string& csv) {
  std::vector<cli::Method> out;
  std::stringstream ss(csv);
  for (std::string item; std::getline(ss, item, ',');)
    if (!item.empty()) out.push_back(method_or_throw(item));
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact simple-cycle census of a directed graph"};
  app.require_subcommand(1);

  cli::CensusArgs census;
  std::string method = "conv";
  auto* c = app.add_subcommand("census", "Count simple cycles of every length");
  c->add_option("file", census.file, "Edge-list file")->required();
  c->add_option("--method", method, "conv | brute | hopf-log | hopf-dynkin (also conv-dperm, conv-ddet)");
  c->add_flag("--hamiltonian", census.hamiltonian, "Also report the Hamiltonian cycle count");
  c->add_option("--max-length", census.max_length, "Only report lengths up to this value");
  c->add_option("--format", census.format, "json | tsv")->check(CLI::IsMember({"json", "tsv"}));
  c->add_option("--threads", census.threads, "Worker threads")->check(CLI::PositiveNumber);
  c->add_flag("--verify", census.verify, "Cross-check against conv and brute");
  c->add_option("--size-cap", census.size_cap, "Largest vertex count accepted by conv");
  c->add_option("--budget", census.budget, "Cycle/hike enumeration budget for brute and hopf");

  cli::CheckArgs check;
  auto* k = app.add_subcommand("check", "Verify the counting identities on a graph");
  k->add_option("file", check.file, "Edge-list file")->required();
  k->add_option("--hopf-budget", check.hopf_budget, "Skip the Hopf suite above this many hikes");
  k->add_option("--threads", check.threads, "Worker threads")->check(CLI::PositiveNumber);
  k->add_option("--size-cap", check.size_cap, "Largest vertex count accepted");

  cli::BenchArgs bench;
  std::string methods;
  long long timeout_ms = 0;
  auto* b = app.add_subcommand("bench", "Time each method on every graph in a directory");
  b->add_option("dir", bench.dir, "Directory of edge-list files")->required();
  b->add_option("--methods", methods, "Comma-separated method list");
  b->add_option("--timeout-ms", timeout_ms, "Per-run time limit")->check(CLI::PositiveNumber);
  b->add_option("--threads", bench.threads, "Worker threads")->check(CLI::PositiveNumber);
  b->add_option("--size-cap", bench.size_cap, "Skip graphs with more vertices");
  b->add_option("--budget", bench.budget, "Cycle/hike enumeration budget for brute and hopf");

  try {
    app.parse(argc, argv);
    if (*c) census.method = method_or_throw(method);
    if (*b) {
      if (!methods.empty()) bench.methods = method_list(methods);
      if (timeout_ms > 0) bench.timeout_ms = timeout_ms;
    }
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return cli::kParseFailure;
  }

  if (*c) return cli::cmd_census(census, std::cout, std::cerr);
  if (*k) return cli::cmd_check(check, std::cout, std::cerr);
  return cli::cmd_bench(bench, std::cout, std::cerr);
}
