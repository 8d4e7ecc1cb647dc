#include "commands.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "orbitsum/census.hpp"
#include "orbitsum/certificate_json.hpp"

namespace orbitsum::cli {

namespace fs = std::filesystem;

CertifyConfig RunConfig::certify_config() const {
  CertifyConfig c;
  c.group_cap = group_cap;
  c.mode = mode;
  c.zero_orbit_gate = zero_orbit_gate;
  return c;
}

namespace {

std::optional<StepSet> parse_or_report(const std::string& text, std::ostream& err) {
  try {
    return parse_stepset(text);
  } catch (const StepSetError& e) {
    err << "error: " << e.what() << '\n';
    return std::nullopt;
  }
}

}  // namespace

int cmd_analyze(const std::string& stepset, const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  auto s = parse_or_report(stepset, err);
  if (!s) return kUsageError;
  Certificate cert = certify(*s, cfg.certify_config());
  std::string json = certificate_to_json(cert, 2);
  if (!cfg.out.empty()) {
    std::ofstream f(cfg.out);
    if (!f) {
      err << "error: cannot write " << cfg.out << '\n';
      return kUsageError;
    }
    f << json << '\n';
  }
  out << json << '\n';
  err << s->id_hex() << ": " << to_string(cert.verdict.kind);
  if (!cert.verdict.element.empty()) err << " (" << cert.verdict.element << ")";
  err << ", group order " << cert.group_order << '\n';
  return exit_code(cert.verdict.kind);
}

OracleReport run_oracle(const StepSet& s, const RunConfig& cfg) {
  OracleReport r;
  r.model_id = s.id();
  r.n_max = cfg.oracle_n;
  r.identity_n = cfg.identity_n;
  std::array<RationalMap, 3> gens{generator(s, 0), generator(s, 1), generator(s, 2)};
  GroupResult group = close_group(gens, cfg.group_cap);
  if (group.status != GroupStatus::Finite) throw GroupError("group is not finite within the cap");
  r.orbit_identity = orbit_identity_check(s, group, cfg.identity_n);
  Certificate cert = certify(s, cfg.certify_config());
  if (cert.weight && cert.verdict.kind == VerdictKind::CertifiedDFinite) {
    auto pp = positive_part_check(s, group, *cert.weight, cfg.oracle_n);
    r.box = pp.box;
    r.bound = pp.bound;
    r.max_terms = pp.max_terms;
    r.positive_part = pp.pass;
    r.mismatch = pp.mismatch;
  }
  return r;
}

int cmd_oracle(const std::string& stepset, const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  auto s = parse_or_report(stepset, err);
  if (!s) return kUsageError;
  if (!uses_all_directions(*s)) {
    err << "error: a generator is undefined for this model\n";
    return 3;
  }
  OracleReport r;
  try {
    r = run_oracle(*s, cfg);
  } catch (const GroupError& e) {
    err << "error: " << e.what() << '\n';
    return 3;
  } catch (const OracleError& e) {
    err << "error: " << e.what() << '\n';
    return 4;
  }
  out << oracle_report_to_json(r, 2) << '\n';
  if (!r.positive_part) err << "positive part skipped: the model is not certified\n";
  return r.pass() ? 0 : 5;
}

int cmd_verify(const std::string& path, std::ostream& out, std::ostream& err) {
  std::ifstream f(path);
  if (!f) {
    err << "error: cannot read " << path << '\n';
    return kUsageError;
  }
  std::stringstream buf;
  buf << f.rdbuf();
  try {
    Certificate cert = certificate_from_json(buf.str());
    VerifyResult v = verify_certificate(cert);
    if (!v.ok) {
      err << "mismatch at " << v.path;
      if (!v.detail.empty()) err << ": " << v.detail;
      err << '\n';
      return 1;
    }
    out << "ok " << StepSet(cert.model_id).id_hex() << ' ' << to_string(cert.verdict.kind) << '\n';
    return 0;
  } catch (const FormatError& e) {
    err << "malformed certificate: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    err << "verification failed: " << e.what() << '\n';
    return 1;
  }
}

int cmd_census(const CensusInput& input, const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  std::vector<std::uint32_t> ids;
  try {
    if (input.range) {
      ids = canonical_ids_in_range(input.range->first, input.range->second);
    } else {
      std::ifstream f(input.file);
      if (!f) {
        err << "error: cannot read " << input.file << '\n';
        return kUsageError;
      }
      ids = read_model_list(f);
    }
  } catch (const CensusError& e) {
    err << "error: " << input.file << ": " << e.what() << '\n';
    return kUsageError;
  }

  const std::string prefix = cfg.out.empty() ? std::string("census") : cfg.out;
  const fs::path jsonl_path = prefix + ".jsonl", csv_path = prefix + ".csv", summary_path = prefix + ".summary.csv";

  ResumeState resumed;
  std::map<std::uint32_t, std::string> old_csv;
  if (cfg.resume && fs::exists(jsonl_path)) {
    try {
      std::ifstream f(jsonl_path, std::ios::binary);
      resumed = read_resume_state(f);
    } catch (const CensusError& e) {
      err << "error: " << jsonl_path.string() << ": " << e.what() << '\n';
      return kUsageError;
    }
    if (resumed.truncated_bytes) {
      err << "warning: dropping an incomplete final line (" << resumed.truncated_bytes << " bytes) from "
          << jsonl_path.string() << '\n';
      fs::resize_file(jsonl_path, resumed.valid_bytes);
    }
    std::ifstream c(csv_path);
    std::string line;
    while (std::getline(c, line)) {
      auto comma = line.find(',');
      if (comma == std::string::npos || line.rfind("id,", 0) == 0) continue;
      try {
        old_csv[parse_stepset(line.substr(0, comma)).id()] = line;
      } catch (const StepSetError&) {
      }
    }
  }

  std::vector<std::uint32_t> todo;
  {
    std::set<std::uint32_t> done;
    for (const auto& r : resumed.rows) done.insert(r.id);
    const std::uint32_t last = done.empty() ? 0 : *done.rbegin();
    std::set<std::uint32_t> wanted(ids.begin(), ids.end());
    bool foreign = std::any_of(done.begin(), done.end(), [&](std::uint32_t id) { return !wanted.count(id); });
    for (auto id : ids) {
      if (done.count(id)) continue;
      if (id < last) foreign = true;
      todo.push_back(id);
    }
    if (foreign) {
      err << "error: " << jsonl_path.string() << " was produced from a different input\n";
      return kUsageError;
    }
  }

  std::ofstream jsonl(jsonl_path, cfg.resume ? std::ios::app | std::ios::binary : std::ios::trunc | std::ios::binary);
  std::ofstream csv(csv_path, std::ios::trunc);
  if (!jsonl || !csv) {
    err << "error: cannot write " << prefix << ".*\n";
    return kUsageError;
  }
  csv << csv_header() << '\n';
  for (const auto& r : resumed.rows) {
    auto it = old_csv.find(r.id);
    csv << (it != old_csv.end() ? it->second : csv_line(r)) << '\n';
  }

  CensusTally tally = resumed.tally;
  try {
    run_census(todo, cfg.certify_config(), cfg.jobs, [&](const CensusRow& row) {
      jsonl << row.json << '\n';
      csv << csv_line(row) << '\n';
      ++tally.counts[row.verdict];
    });
  } catch (const std::exception& e) {
    err << "error: census aborted: " << e.what() << '\n';
    return 4;
  }
  jsonl.close();
  csv.close();
  std::ofstream summary(summary_path, std::ios::trunc);
  summary << summary_csv(tally);
  out << summary_csv(tally);
  out << "# models are identified up to permutations of the axes only; totals are not directly comparable with\n"
         "# counts taken up to a coarser equivalence\n";
  err << "processed " << todo.size() << ", resumed " << resumed.rows.size() << "; wrote " << jsonl_path.string()
      << ", " << csv_path.string() << ", " << summary_path.string() << '\n';
  return 0;
}

}  // namespace orbitsum::cli
