#include "orbitsum/census.hpp"

#include <algorithm>
#include <chrono>
#include <condition_variable>
#include <istream>
#include <mutex>
#include <sstream>
#include <thread>

#include <nlohmann/json.hpp>

#include "orbitsum/certificate_json.hpp"

namespace orbitsum {

std::vector<std::uint32_t> canonical_ids_in_range(std::uint32_t lo, std::uint32_t hi) {
  std::vector<std::uint32_t> out;
  lo = std::max<std::uint32_t>(lo, 1);
  hi = std::min<std::uint32_t>(hi, kMaxModelId);
  for (std::uint32_t id = lo; id <= hi && id >= lo; ++id)
    if (is_axis_canonical(id)) out.push_back(id);
  return out;
}

std::vector<std::uint32_t> read_model_list(std::istream& in) {
  std::set<std::uint32_t> ids;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    auto last = line.find_last_not_of(" \t\r");
    try {
      ids.insert(axis_canonical(parse_stepset(line.substr(first, last - first + 1))).id());
    } catch (const StepSetError& e) {
      throw CensusError("line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  return {ids.begin(), ids.end()};
}

std::string census_line(const Certificate& cert) {
  if (!cert.group.empty()) return certificate_to_json(cert);
  nlohmann::ordered_json j;
  j["schema"] = kCertificateSchema;
  j["model_id"] = StepSet(cert.model_id).id_hex();
  j["group_order"] = std::to_string(cert.group_order);
  j["verdict"] = {{"kind", to_string(cert.verdict.kind)}, {"element", cert.verdict.element}};
  return j.dump();
}

CensusRow census_row(std::uint32_t id, const CertifyConfig& config) {
  auto t0 = std::chrono::steady_clock::now();
  Certificate cert = certify(StepSet(id), config);
  auto t1 = std::chrono::steady_clock::now();
  CensusRow row;
  row.id = id;
  row.verdict = cert.verdict.kind;
  row.group_order = cert.group_order;
  row.choice_index = cert.choice_index;
  row.millis = std::chrono::duration<double, std::milli>(t1 - t0).count();
  row.json = census_line(cert);
  return row;
}

std::uint64_t CensusTally::total() const {
  std::uint64_t t = 0;
  for (const auto& [k, v] : counts) t += v;
  return t;
}

void run_census(const std::vector<std::uint32_t>& ids, const CertifyConfig& config, int jobs,
                const std::function<void(const CensusRow&)>& sink) {
  jobs = std::max(1, jobs);
  const std::size_t window = 64 * static_cast<std::size_t>(jobs);
  std::mutex mu;
  std::condition_variable cv;
  std::map<std::size_t, CensusRow> done;
  std::size_t next_task = 0;
  std::size_t next_write = 0;
  std::exception_ptr failure;

  auto worker = [&] {
    for (;;) {
      std::size_t i;
      {
        std::unique_lock lock(mu);
        cv.wait(lock, [&] { return failure || next_task >= ids.size() || next_task < next_write + window; });
        if (failure || next_task >= ids.size()) return;
        i = next_task++;
      }
      try {
        CensusRow row = census_row(ids[i], config);
        std::lock_guard lock(mu);
        done.emplace(i, std::move(row));
      } catch (...) {
        std::lock_guard lock(mu);
        if (!failure) failure = std::current_exception();
      }
      cv.notify_all();
    }
  };

  std::vector<std::thread> pool;
  for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
  try {
    while (next_write < ids.size()) {
      CensusRow row;
      {
        std::unique_lock lock(mu);
        cv.wait(lock, [&] { return failure || done.count(next_write); });
        if (failure) break;
        auto it = done.find(next_write);
        row = std::move(it->second);
        done.erase(it);
      }
      sink(row);
      {
        std::lock_guard lock(mu);
        ++next_write;
      }
      cv.notify_all();
    }
  } catch (...) {
    std::lock_guard lock(mu);
    if (!failure) failure = std::current_exception();
  }
  cv.notify_all();
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

ResumeState read_resume_state(std::istream& jsonl) {
  ResumeState st;
  std::string content((std::istreambuf_iterator<char>(jsonl)), std::istreambuf_iterator<char>());
  std::size_t pos = 0;
  int lineno = 0;
  std::uint32_t last_id = 0;
  while (pos < content.size()) {
    ++lineno;
    auto nl = content.find('\n', pos);
    if (nl == std::string::npos) {
      st.truncated_bytes = content.size() - pos;
      break;
    }
    std::string_view line(content.data() + pos, nl - pos);
    auto j = nlohmann::json::parse(line, nullptr, false);
    auto fail = [&](const std::string& why) -> CensusError {
      return CensusError("resume file line " + std::to_string(lineno) + ": " + why);
    };
    if (j.is_discarded() || !j.is_object()) throw fail("not a JSON object");
    if (!j.contains("model_id") || !j["model_id"].is_string()) throw fail("missing model_id");
    if (!j.contains("verdict") || !j["verdict"].is_object() || !j["verdict"].contains("kind") ||
        !j["verdict"]["kind"].is_string())
      throw fail("missing verdict");
    std::uint32_t id;
    try {
      id = parse_stepset(j["model_id"].get<std::string>()).id();
    } catch (const StepSetError& e) {
      throw fail(e.what());
    }
    auto kind = parse_verdict_kind(j["verdict"]["kind"].get<std::string>());
    if (!kind) throw fail("unknown verdict");
    if (id <= last_id) throw fail("ids not increasing");
    last_id = id;
    CensusRow row;
    row.id = id;
    row.verdict = *kind;
    row.millis = -1;
    try {
      if (j.contains("group_order")) row.group_order = std::stoi(j["group_order"].get<std::string>());
      if (j.contains("choice_index")) row.choice_index = std::stoull(j["choice_index"].get<std::string>());
    } catch (const std::exception&) {
      throw fail("bad group_order or choice_index");
    }
    st.rows.push_back(std::move(row));
    ++st.tally.counts[*kind];
    pos = nl + 1;
    st.valid_bytes = pos;
  }
  return st;
}

std::string csv_header() { return "id,verdict,group_order,choice_index,millis"; }

std::string csv_line(const CensusRow& row) {
  std::ostringstream os;
  os << StepSet(row.id).id_hex() << ',' << to_string(row.verdict) << ',' << row.group_order << ',' << row.choice_index
     << ',';
  if (row.millis >= 0) {
    os.setf(std::ios::fixed);
    os.precision(3);
    os << row.millis;
  }
  return os.str();
}

std::string summary_csv(const CensusTally& tally) {
  std::ostringstream os;
  os << "verdict,count\n";
  for (VerdictKind k : {VerdictKind::CertifiedDFinite, VerdictKind::ZeroOrbitSum, VerdictKind::GroupCapExceeded,
                        VerdictKind::LowerDimensional, VerdictKind::ParityConflict, VerdictKind::Obstructed,
                        VerdictKind::Inconclusive}) {
    auto it = tally.counts.find(k);
    os << to_string(k) << ',' << (it == tally.counts.end() ? 0 : it->second) << '\n';
  }
  os << "total," << tally.total() << '\n';
  return os.str();
}

}  // namespace orbitsum
