// Subcommands of the orbitsum tool; each returns the process exit code.

#ifndef ORBITSUM_TOOLS_COMMANDS_HPP
#define ORBITSUM_TOOLS_COMMANDS_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>

#include "orbitsum/certifier.hpp"
#include "orbitsum/oracle.hpp"

namespace orbitsum::cli {

inline constexpr int kUsageError = 1;

struct RunConfig {
  int group_cap = 200;
  DisjointMode mode = DisjointMode::Positivity;
  bool zero_orbit_gate = true;
  int oracle_n = 8;
  int identity_n = 4;
  int jobs = 1;
  std::string out;  // analyze: certificate file; census: output prefix
  bool resume = false;

  CertifyConfig certify_config() const;
};

struct CensusInput {
  std::optional<std::pair<std::uint32_t, std::uint32_t>> range;
  std::string file;
};

int cmd_analyze(const std::string& stepset, const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_census(const CensusInput& input, const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_oracle(const std::string& stepset, const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_verify(const std::string& path, std::ostream& out, std::ostream& err);

// Certifies the model for its weight and runs both oracle checks.
OracleReport run_oracle(const StepSet& s, const RunConfig& cfg);

}  // namespace orbitsum::cli

#endif  // ORBITSUM_TOOLS_COMMANDS_HPP
