#include <iostream>
#include <thread>

#include <CLI11.hpp>

#include "commands.hpp"

int main(int argc, char** argv) {
  using namespace orbitsum;
  CLI::App app{"Exact D-finiteness certificates for octant lattice walks"};
  app.require_subcommand(1);

  cli::RunConfig cfg;
  cfg.jobs = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  std::string mode = "positivity";
  bool no_zero_gate = false;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--group-cap", cfg.group_cap, "Largest group order explored")->check(CLI::Range(1, 1 << 20));
    sub->add_option("--mode", mode, "Disjointness test: positivity or paper-cone")
        ->check(CLI::IsMember({"positivity", "paper-cone"}));
    sub->add_flag("--no-zero-gate", no_zero_gate, "Continue past a zero orbit sum");
  };

  std::string stepset;
  auto* analyze = app.add_subcommand("analyze", "Certify one model and print its certificate");
  analyze->add_option("model", stepset, "Steps like \"(-1,0,1),(1,0,0)\" or a hex id")->required();
  analyze->add_option("--out", cfg.out, "Also write the certificate to this file");
  add_common(analyze);

  cli::CensusInput input;
  std::vector<std::string> range;
  auto* census = app.add_subcommand("census", "Certify every canonical model in a range or list");
  auto* range_opt = census->add_option("--range", range, "Inclusive id range LO HI (decimal or 0x hex)")->expected(2);
  auto* file_opt = census->add_option("--file", input.file, "Model list, one per line, '#' comments");
  range_opt->excludes(file_opt);
  census->add_option("--jobs", cfg.jobs, "Worker threads")->check(CLI::Range(1, 4096));
  census->add_option("--out", cfg.out, "Output prefix for .jsonl, .csv and .summary.csv")->default_str("census");
  census->add_flag("--resume", cfg.resume, "Skip models already present in the output");
  add_common(census);

  auto* oracle = app.add_subcommand("oracle", "Check the orbit identity and positive-part formula against walk counts");
  oracle->add_option("model", stepset, "Steps or a hex id")->required();
  oracle->add_option("--oracle-n", cfg.oracle_n, "Largest walk length for the positive-part check")
      ->check(CLI::Range(0, 64));
  oracle->add_option("--identity-n", cfg.identity_n, "Largest walk length for the orbit identity")
      ->check(CLI::Range(0, 64));
  add_common(oracle);

  std::string cert_path;
  auto* verify = app.add_subcommand("verify", "Re-check a certificate file");
  verify->add_option("certificate", cert_path, "Certificate JSON")->required()->check(CLI::ExistingFile);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : cli::kUsageError;
  }
  cfg.mode = *parse_disjoint_mode(mode);
  cfg.zero_orbit_gate = !no_zero_gate;

  if (analyze->parsed()) return cli::cmd_analyze(stepset, cfg, std::cout, std::cerr);
  if (oracle->parsed()) return cli::cmd_oracle(stepset, cfg, std::cout, std::cerr);
  if (verify->parsed()) return cli::cmd_verify(cert_path, std::cout, std::cerr);
  if (census->parsed()) {
    if (range.empty() && input.file.empty()) {
      std::cerr << "error: census needs --range or --file\n";
      return cli::kUsageError;
    }
    if (!range.empty()) {
      try {
        auto lo = std::stoul(range[0], nullptr, 0), hi = std::stoul(range[1], nullptr, 0);
        if (lo > hi || hi > kMaxModelId) throw std::out_of_range("range");
        input.range = {static_cast<std::uint32_t>(lo), static_cast<std::uint32_t>(hi)};
      } catch (const std::exception&) {
        std::cerr << "error: bad --range\n";
        return cli::kUsageError;
      }
    }
    return cli::cmd_census(input, cfg, std::cout, std::cerr);
  }
  return cli::kUsageError;
}
