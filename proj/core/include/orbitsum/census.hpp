// Batch certification over many models with ordered, resumable output.

#ifndef ORBITSUM_CENSUS_HPP
#define ORBITSUM_CENSUS_HPP

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "orbitsum/certifier.hpp"

namespace orbitsum {

class CensusError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Canonical ids in [lo, hi], increasing.
std::vector<std::uint32_t> canonical_ids_in_range(std::uint32_t lo, std::uint32_t hi);

// One model per line as triples or a hex id; '#' starts a comment. Models are
// canonicalized, deduplicated and sorted. Throws CensusError naming the line.
std::vector<std::uint32_t> read_model_list(std::istream& in);

struct CensusRow {
  std::uint32_t id = 0;
  VerdictKind verdict = VerdictKind::Inconclusive;
  int group_order = 0;
  std::uint64_t choice_index = 0;
  double millis = 0;
  std::string json;  // one line, no newline
};

// Full certificate for models with a finite group, a short record otherwise.
std::string census_line(const Certificate& cert);
CensusRow census_row(std::uint32_t id, const CertifyConfig& config);

struct CensusTally {
  std::map<VerdictKind, std::uint64_t> counts;
  std::uint64_t total() const;
};

// Certifies every id with `jobs` workers and hands rows to `sink` in the
// order of `ids`, whatever the scheduling.
void run_census(const std::vector<std::uint32_t>& ids, const CertifyConfig& config, int jobs,
                const std::function<void(const CensusRow&)>& sink);

// Id and verdict of every line of an existing output; throws CensusError on a
// corrupt line. A final line without a newline is treated as an interrupted
// write: it is dropped and reported through `truncated_bytes`.
struct ResumeState {
  std::vector<CensusRow> rows;  // json empty, millis negative (unknown)
  CensusTally tally;
  std::uint64_t valid_bytes = 0;
  std::uint64_t truncated_bytes = 0;
};
ResumeState read_resume_state(std::istream& jsonl);

std::string csv_header();
// A negative millis value is written as an empty field.
std::string csv_line(const CensusRow& row);
std::string summary_csv(const CensusTally& tally);

}  // namespace orbitsum

#endif  // ORBITSUM_CENSUS_HPP
