// Acceptance run: one PASS/FAIL line per criterion, exit status 0 iff all pass.
//
//   orbitsum_acceptance [--samples N] [--seed S] [--full-census PREFIX]

#include <chrono>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <thread>

#include "commands.hpp"
#include "orbitsum/census.hpp"
#include "orbitsum/certificate_json.hpp"
#include "orbitsum/certifier.hpp"
#include "orbitsum/oracle.hpp"
#include "support/models.hpp"
#include "support/oracles.hpp"

using namespace orbitsum;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string fmt_seconds(double s) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2fs", s);
  return buf;
}

// Collects the first failure message; later ones only bump the count.
struct Failures {
  int count = 0;
  std::string first;
  void add(const std::string& what) {
    if (count++ == 0) first = what;
  }
  Outcome outcome(const std::string& ok) const {
    if (!count) return {true, ok};
    return {false, std::to_string(count) + " failure(s), first: " + first};
  }
};

GroupResult group_of(const StepSet& s, int cap = 200) {
  return close_group({generator(s, 0), generator(s, 1), generator(s, 2)}, cap);
}

std::string rows_string(const LeadingMatrix& m) {
  std::string out = "[";
  for (int i = 0; i < 4; ++i) out += (i ? "," : "") + vec_to_string(m.row(i));
  return out + "]";
}

Outcome criterion1() {
  auto t0 = Clock::now();
  auto cert = certify(models::example1());
  double secs = seconds_since(t0);
  Failures f;
  if (cert.group_order != 12) f.add("group order " + std::to_string(cert.group_order));
  if (cert.zero_orbit_sum) f.add("orbit sum is zero");
  if (cert.verdict.kind != VerdictKind::CertifiedDFinite) f.add("verdict " + to_string(cert.verdict.kind));
  if (!is_pointed(cert.final_cone)) f.add("final cone not pointed");
  if (auto v = verify_certificate(cert); !v.ok) f.add("certificate does not verify at " + v.path);
  if (secs >= 10) f.add("took " + fmt_seconds(secs));
  return f.outcome("order 12, orbit sum nonzero, CertifiedDFinite, B pointed with " +
                   std::to_string(cert.final_cone.generators().size()) + " generators, " + fmt_seconds(secs));
}

Outcome criterion2() {
  auto g = group_of(models::example1());
  auto pool = collect_polynomials(g);
  auto idx = pool.find(LaurentPolynomial::parse("y*z^2 + y^2 + z", 4));
  if (!idx) return {false, "yz^2 + y^2 + z is not in the pool"};
  std::vector<std::size_t> digits(pool.entries.size(), 0);
  const auto terms = pool.entries[*idx].poly.terms();
  bool found = false;
  for (std::size_t k = 0; k < terms.size(); ++k)
    if (terms[k].exp == ExponentVector{{0, 1, 2, 0}}) {
      digits[*idx] = k;
      found = true;
    }
  if (!found) return {false, "(0,1,2,0) is not a support exponent"};
  auto choice = choice_from_indices(pool, digits);
  const GroupElement* phix = nullptr;
  for (const auto& e : g.elements)
    if (e.word == "x") phix = &e;
  if (!phix) return {false, "phi_x missing from the group"};
  auto m = element_matrix(*phix, pool, choice);
  const std::array<Vec4, 4> expected{{{-1, 0, 0, 0}, {0, 1, 0, 0}, {1, 0, 1, 0}, {0, 0, 0, 1}}};
  Failures f;
  if (m.rows() != expected) f.add("matrix " + rows_string(m));
  if (!kernel_meets_trivially(base_cone(), m)) f.add("kernel meets C");
  return f.outcome("M = " + rows_string(m) + ", kernel meets C trivially");
}

Outcome criterion3() {
  Failures f;
  auto cert = certify(models::example2());
  if (cert.group_order != 12) f.add("group order " + std::to_string(cert.group_order));
  if (cert.verdict.kind != VerdictKind::ZeroOrbitSum) f.add("verdict " + to_string(cert.verdict.kind));
  CertifyConfig open;
  open.zero_orbit_gate = false;
  auto ob = certify(models::example2(), open);
  if (ob.verdict.kind != VerdictKind::Obstructed) f.add("ungated verdict " + to_string(ob.verdict.kind));
  // The map (x,z,y) is phi_z phi_y phi_z; BFS reaches it as the word yzy.
  const RationalMap swap{{RationalFunction::variable(3, 0), RationalFunction::variable(3, 2),
                          RationalFunction::variable(3, 1)}};
  const ElementReport* rep = nullptr;
  for (const auto& e : ob.group)
    if (e.map.equals(swap))
      for (const auto& r : ob.element_reports)
        if (r.word == e.word) rep = &r;
  if (!rep) return {false, "no report for the element (x,z,y)"};
  if (ob.verdict.element != rep->word) f.add("obstructing element " + ob.verdict.element + ", expected " + rep->word);
  const std::array<Vec4, 4> perm{{{1, 0, 0, 0}, {0, 0, 1, 0}, {0, 1, 0, 0}, {0, 0, 0, 1}}};
  if (rep->matrix.rows() != perm) f.add("matrix " + rows_string(rep->matrix));
  if (!(rep->local_cone == base_cone())) f.add("C' differs from C");
  if (rep->checks.disjoint) f.add("element reported disjoint");
  if (!verify_certificate(ob).ok) f.add("obstruction does not verify");
  return f.outcome("order 12, ZeroOrbitSum; ungated: Obstructed at " + ob.verdict.element +
                   " = (x,z,y), M = " + rows_string(rep->matrix) + ", C' = C");
}

Outcome criterion4() {
  auto t0 = Clock::now();
  auto s = models::example1();
  auto cert = certify(s);
  if (!cert.weight) return {false, "no weight order"};
  PositivePartResult r;
  try {
    r = positive_part_check(s, group_of(s), *cert.weight, 8);
  } catch (const OracleError& e) {
    return {false, e.what()};
  }
  double secs = seconds_since(t0);
  Failures f;
  if (!r.pass) {
    std::ostringstream os;
    if (r.mismatch)
      os << "n=" << r.mismatch->n << " at (" << r.mismatch->exponent[0] << "," << r.mismatch->exponent[1] << ","
         << r.mismatch->exponent[2] << "): " << r.mismatch->actual << " vs " << r.mismatch->expected;
    f.add("mismatch " + os.str());
  }
  if (secs >= 120) f.add("took " + fmt_seconds(secs));
  return f.outcome("n <= 8 on box [-" + std::to_string(r.box) + "," + std::to_string(r.box) + "]^3, largest series " +
                   std::to_string(r.max_terms) + " terms, " + fmt_seconds(secs));
}

Outcome criterion5(std::uint64_t seed) {
  Failures f;
  std::vector<StepSet> ms{models::example1(), models::example2()};
  for (auto id : oracle::sample_finite_models(seed, 20)) ms.emplace_back(id);
  for (const auto& s : ms) {
    auto g = group_of(s);
    if (g.status != GroupStatus::Finite) {
      f.add(s.id_hex() + " group not finite");
      continue;
    }
    if (auto bad = orbit_identity_failure(s, g, 4)) f.add(s.id_hex() + " fails at n=" + std::to_string(*bad));
  }
  return f.outcome(std::to_string(ms.size()) + " models (2 examples + 20 sampled), n <= 4");
}

Outcome criterion6(std::uint64_t seed) {
  constexpr int kCases = 100;
  Failures f;
  std::mt19937_64 rng(seed);
  std::vector<StepSet> random_models;
  while (random_models.size() < kCases) {
    StepSet s(static_cast<std::uint32_t>(rng() & kMaxModelId));
    if (uses_all_directions(s)) random_models.push_back(s);
  }
  for (const auto& s : random_models) {
    auto p = step_polynomial(s);
    for (int a = 0; a < 3; ++a) {
      auto g = generator(s, a);
      if (!g.compose(g).equals(RationalMap::identity())) f.add("involution " + s.id_hex());
      if (!rat_equal(substitute(p, g.images), RationalFunction(p))) f.add("invariance " + s.id_hex());
    }
  }

  auto finite = oracle::sample_finite_models(seed + 1, kCases);
  for (auto id : finite) {
    StepSet s(id);
    std::array<RationalMap, 3> gens{generator(s, 0), generator(s, 1), generator(s, 2)};
    auto g = close_group(gens, 200);
    for (const auto& e : g.elements) {
      if (e.sign != (e.word.size() % 2 ? -1 : 1)) f.add("sign " + s.id_hex() + " " + e.word);
      if (e.word.empty()) continue;
      auto parent = e.word.substr(0, e.word.size() - 1);
      bool ok = false;
      for (const auto& q : g.elements)
        if (q.word == parent)
          ok = q.sign == -e.sign && q.map.compose(gens[static_cast<std::size_t>(e.word.back() - 'x')]).equals(e.map);
      if (!ok) f.add("bfs step " + s.id_hex() + " " + e.word);
    }
    if (certificate_to_json(certify(s)) != certificate_to_json(certify(s))) f.add("determinism " + s.id_hex());
  }

  std::uniform_int_distribution<int> n(1, 6), c(-2, 2), nv(1, 5), rel(0, 2);
  for (int i = 0; i < kCases; ++i) {
    std::vector<Vec4> gens;
    for (int k = n(rng); k > 0; --k) gens.push_back({c(rng), c(rng), c(rng), c(rng)});
    Cone cone(gens);
    if (is_pointed(cone) != oracle::pointed_by_elimination(cone)) f.add("pointedness case " + std::to_string(i));

    FeasibilityProblem p;
    p.add_vars(nv(rng), i % 3 == 0);
    for (int r = n(rng); r > 0; --r) {
      std::vector<Rational> a(static_cast<std::size_t>(p.num_vars));
      for (auto& x : a) x = 2 * c(rng);
      p.add(std::move(a), static_cast<Relation>(rel(rng)), c(rng));
    }
    auto res = solve_feasibility(p);
    if (res.feasible != oracle::fm_feasible(p)) f.add("feasibility case " + std::to_string(i));
    if (res.feasible && !satisfies(p, res.witness)) f.add("witness case " + std::to_string(i));
  }
  return f.outcome("involution, P_S invariance, BFS signs, pointedness duality, feasibility witnesses, "
                   "determinism: " + std::to_string(kCases) + " cases each");
}

Outcome criterion7(std::uint64_t seed, int samples) {
  auto t0 = Clock::now();
  std::mt19937_64 rng(seed);
  Failures f;
  int certified = 0, zero = 0, draws = 0;
  std::map<int, int> orders;
  while (certified + static_cast<int>(f.count) < samples) {
    ++draws;
    auto id = static_cast<std::uint32_t>(rng() & kMaxModelId);
    if (!id || !is_axis_canonical(id)) continue;
    StepSet s(id);
    if (!uses_all_directions(s)) continue;
    auto o = model_orbit_size(s, 200);
    if (!o || *o > 200) continue;
    auto cert = certify(s);
    if (cert.verdict.kind == VerdictKind::ZeroOrbitSum) {
      ++zero;
      continue;
    }
    if (cert.verdict.kind == VerdictKind::GroupCapExceeded || cert.verdict.kind == VerdictKind::ParityConflict) continue;
    ++orders[cert.group_order];
    if (cert.verdict.kind != VerdictKind::CertifiedDFinite) {
      f.add(s.id_hex() + " " + to_string(cert.verdict.kind) + " " + cert.verdict.element);
      continue;
    }
    if (auto v = verify_certificate(cert); !v.ok) {
      f.add(s.id_hex() + " certificate fails at " + v.path);
      continue;
    }
    ++certified;
  }
  std::string hist;
  for (const auto& [k, v] : orders) hist += (hist.empty() ? "" : " ") + std::to_string(k) + ":" + std::to_string(v);
  return f.outcome(std::to_string(certified) + " of " + std::to_string(samples) +
                   " nonzero-orbit-sum finite models certified and verified (" + std::to_string(zero) +
                   " zero orbit sum skipped, " + std::to_string(draws) + " draws, group orders " + hist + "), " +
                   fmt_seconds(seconds_since(t0)));
}

Outcome criterion8(const std::string& full_prefix) {
  cli::RunConfig cfg;
  cfg.jobs = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  std::ostringstream out, err;
  cli::CensusInput input;
  std::string scope;
  if (full_prefix.empty()) {
    input.range = {1, 0x7ffff};
    cfg.out = (std::filesystem::temp_directory_path() / "orbitsum-acceptance-census").string();
    scope = "range [0x0000001, 0x007ffff]; the full range runs with --full-census";
  } else {
    input.range = {1, kMaxModelId};
    cfg.out = full_prefix;
    scope = "full canonical range";
  }
  auto t0 = Clock::now();
  int rc = cli::cmd_census(input, cfg, out, err);
  if (rc != 0) return {false, "census exited with " + std::to_string(rc) + ": " + err.str()};
  std::string tallies, line;
  std::istringstream in(out.str());
  while (std::getline(in, line))
    if (!line.empty() && line[0] != '#' && line.rfind("verdict,", 0) != 0) tallies += (tallies.empty() ? "" : " ") + line;
  if (full_prefix.empty())
    for (const char* ext : {".jsonl", ".csv", ".summary.csv"}) std::filesystem::remove(cfg.out + ext);
  return {true, scope + ", " + fmt_seconds(seconds_since(t0)) + "; " + tallies +
                    "; models are identified up to axis permutations only, so totals differ from counts under a "
                    "coarser equivalence"};
}

}  // namespace

int main(int argc, char** argv) {
  std::uint64_t seed = 20240601;
  int samples = 1000;
  std::string full_census;
  for (int i = 1; i < argc; ++i) {
    std::string a = argv[i];
    if (a == "--samples" && i + 1 < argc)
      samples = std::stoi(argv[++i]);
    else if (a == "--seed" && i + 1 < argc)
      seed = std::stoull(argv[++i]);
    else if (a == "--full-census" && i + 1 < argc)
      full_census = argv[++i];
    else {
      std::cerr << "usage: orbitsum_acceptance [--samples N] [--seed S] [--full-census PREFIX]\n";
      return 2;
    }
  }

  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"Example 1 golden run", criterion1},
      {"Example 1 matrix of phi_x", criterion2},
      {"Example 2 golden run", criterion3},
      {"positive part of Example 1 up to n = 8", criterion4},
      {"orbit identity up to n = 4", [&] { return criterion5(seed); }},
      {"property suites", [&] { return criterion6(seed); }},
      {"sampled finite models with nonzero orbit sum", [&] { return criterion7(seed, samples); }},
      {"census run with tallies", [&] { return criterion8(full_census); }},
  };
  bool all = true;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    all = all && o.pass;
    std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << i + 1 << " (" << criteria[i].first << "): " << o.detail
              << std::endl;
  }
  return all ? 0 : 1;
}
