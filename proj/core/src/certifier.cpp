#include "orbitsum/certifier.hpp"

#include <algorithm>

namespace orbitsum {

std::string to_string(DisjointMode m) { return m == DisjointMode::Positivity ? "positivity" : "paper-cone"; }

std::optional<DisjointMode> parse_disjoint_mode(std::string_view s) {
  if (s == "positivity") return DisjointMode::Positivity;
  if (s == "paper-cone") return DisjointMode::PaperCone;
  return std::nullopt;
}

namespace {

constexpr std::pair<VerdictKind, const char*> kVerdictNames[] = {
    {VerdictKind::CertifiedDFinite, "CertifiedDFinite"}, {VerdictKind::ZeroOrbitSum, "ZeroOrbitSum"},
    {VerdictKind::GroupCapExceeded, "GroupCapExceeded"}, {VerdictKind::LowerDimensional, "LowerDimensional"},
    {VerdictKind::ParityConflict, "ParityConflict"},     {VerdictKind::Obstructed, "Obstructed"},
    {VerdictKind::Inconclusive, "Inconclusive"},
};

std::optional<ExponentVector> leading_or_throw(const LaurentPolynomial& p, const PolynomialPool& pool,
                                               const LeadingTermChoice& choice) {
  auto e = leading_exponent(p, pool, choice);
  if (!e) throw CertifierError("polynomial not in pool: " + p.to_string());
  return e;
}

Vec4 shift_of(const LeadingMatrix& m) {
  Vec4 v{};
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t k = 0; k < 4; ++k) v[k] += m.columns[i][k];
  return v;
}

}  // namespace

std::string to_string(VerdictKind k) {
  for (const auto& [kind, name] : kVerdictNames)
    if (kind == k) return name;
  return "?";
}

std::optional<VerdictKind> parse_verdict_kind(std::string_view s) {
  for (const auto& [kind, name] : kVerdictNames)
    if (s == name) return kind;
  return std::nullopt;
}

int exit_code(VerdictKind k) {
  switch (k) {
    case VerdictKind::CertifiedDFinite:
      return 0;
    case VerdictKind::ZeroOrbitSum:
      return 2;
    case VerdictKind::GroupCapExceeded:
    case VerdictKind::LowerDimensional:
    case VerdictKind::ParityConflict:
      return 3;
    case VerdictKind::Obstructed:
    case VerdictKind::Inconclusive:
      return 4;
  }
  return 1;
}

Cone base_cone() {
  std::vector<Vec4> g;
  for (long long i = 0; i < 2; ++i)
    for (long long j = 0; j < 2; ++j)
      for (long long k = 0; k < 2; ++k) g.push_back({i, j, k, 1});
  return Cone(std::move(g));
}

LeadingMatrix element_matrix(const GroupElement& g, const PolynomialPool& pool, const LeadingTermChoice& choice) {
  LeadingMatrix m;
  for (std::size_t i = 0; i < 3; ++i) {
    const auto& f = g.map.images[i];
    auto num = leading_or_throw(f.numerator(), pool, choice);
    auto den = leading_or_throw(f.denominator(), pool, choice);
    m.columns[i] = to_vec4(*num - *den);
    m.columns[i][3] = 0;
  }
  m.columns[3] = {0, 0, 0, 1};
  return m;
}

Cone element_cone(const GroupElement& g, const PolynomialPool& pool, const LeadingTermChoice& choice,
                  const Cone& base) {
  LeadingMatrix m = element_matrix(g, pool, choice);
  std::vector<Vec4> gens;
  for (const auto& c : base.generators()) gens.push_back(m.apply(c));
  for (const auto& f : g.map.images) {
    for (const LaurentPolynomial* part : {&f.numerator(), &f.denominator()}) {
      auto lt = *leading_or_throw(*part, pool, choice);
      for (const auto& t : part->terms()) {
        Vec4 d = to_vec4(t.exp - lt);
        d[3] = 0;
        gens.push_back(d);  // zero vectors are dropped by the Cone constructor
      }
    }
  }
  return Cone(std::move(gens));
}

ElementReport check_element(const GroupElement& g, const PolynomialPool& pool, const LeadingTermChoice& choice,
                            const Cone& base, DisjointMode mode) {
  ElementReport r;
  r.word = g.word;
  r.matrix = element_matrix(g, pool, choice);
  r.local_cone = element_cone(g, pool, choice, base);
  r.shift = shift_of(r.matrix);
  r.checks.kernel_trivial = kernel_meets_trivially(base, r.matrix);
  r.checks.hull_pointed = is_pointed(hull(base, r.local_cone));
  DisjointnessResult d;
  if (mode == DisjointMode::Positivity)
    d = shifted_region_disjoint(r.shift, r.local_cone, RegionBounds{1, 1, 1, 0});
  else
    d = shifted_cone_disjoint(r.shift, r.local_cone, base);
  r.checks.disjoint = d.disjoint;
  r.witness = d.witness;
  return r;
}

namespace {

bool passes_filter(const StepSet& s, const CertifyConfig& config) {
  if (!uses_all_directions(s)) return false;
  return !config.dimension_filter || config.dimension_filter(s);
}

std::vector<ChoiceEntry> choice_entries(const PolynomialPool& pool, const LeadingTermChoice& choice) {
  std::vector<ChoiceEntry> out;
  for (std::size_t i = 0; i < pool.entries.size(); ++i) out.push_back({pool.entries[i].poly, choice.exponent[i]});
  return out;
}

bool weight_nonnegative_on(const WeightOrder& w, const Cone& c) {
  return std::all_of(c.generators().begin(), c.generators().end(),
                     [&](const Vec4& g) { return dot(w.w, g) >= 0; });
}

void assert_sound(const Certificate& c) {
  bool ok = !c.zero_orbit_sum && c.weight && is_pointed(c.final_cone) && weight_nonnegative_on(*c.weight, c.final_cone);
  for (const auto& r : c.element_reports) ok = ok && r.checks.all();
  if (!ok) throw CertifierError("certificate for " + StepSet(c.model_id).id_hex() + " violates the soundness gate");
}

}  // namespace

Certificate certify(const StepSet& s, const CertifyConfig& config) {
  Certificate cert;
  cert.model_id = s.id();
  cert.group_cap = config.group_cap;
  cert.mode = config.mode;
  cert.zero_orbit_gate = config.zero_orbit_gate;
  cert.base_cone = base_cone();

  if (!passes_filter(s, config)) {
    cert.verdict = {VerdictKind::LowerDimensional, {}};
    return cert;
  }
  if (auto bound = model_orbit_size(s, config.group_cap); bound && *bound > config.group_cap) {
    cert.group_order = *bound;
    cert.verdict = {VerdictKind::GroupCapExceeded, {}};
    return cert;
  }
  const std::array<RationalMap, 3> gens{generator(s, 0), generator(s, 1), generator(s, 2)};
  GroupResult group = close_group(gens, config.group_cap);
  cert.group_order = group.order;
  if (group.status == GroupStatus::CapExceeded) {
    cert.verdict = {VerdictKind::GroupCapExceeded, {}};
    return cert;
  }
  if (group.status == GroupStatus::ParityConflict) {
    cert.verdict = {VerdictKind::ParityConflict, group.conflict_word};
    return cert;
  }
  cert.group = group.elements;
  cert.zero_orbit_sum = orbit_sum(group).is_zero;
  if (cert.zero_orbit_sum && config.zero_orbit_gate) {
    cert.verdict = {VerdictKind::ZeroOrbitSum, {}};
    return cert;
  }

  const PolynomialPool pool = collect_polynomials(group);
  const Cone& base = cert.base_cone;
  cert.choice_count = choice_count(pool);
  const std::size_t n_elem = group.elements.size() - 1;
  std::vector<bool> always_blocked(n_elem, true);
  std::uint64_t admissible = 0;
  bool exhausted = true;
  bool certified = false;

  for_each_compatible_choice(pool, base, [&](const LeadingTermChoice& choice, const WeightOrder& order) {
    if (admissible == config.choice_limit) {
      exhausted = false;
      return false;
    }
    ++admissible;
    std::vector<ElementReport> reports;
    Cone b = base;
    bool ok = true;
    for (std::size_t e = 0; e < n_elem; ++e) {
      reports.push_back(check_element(group.elements[e + 1], pool, choice, base, config.mode));
      const auto& r = reports.back();
      if (r.checks.disjoint) always_blocked[e] = false;
      ok = ok && r.checks.all();
      b = hull(b, r.local_cone);
    }
    std::optional<WeightOrder> w = order;
    if (ok) {
      ok = is_pointed(b);
      if (ok && !weight_nonnegative_on(*w, b)) {
        w = realize_order(pool, choice, b);
        ok = w.has_value();
      }
    }
    if (ok || admissible == 1) {
      cert.choice = choice_entries(pool, choice);
      cert.choice_index = choice_index(pool, choice);
      cert.weight = w;
      cert.element_reports = std::move(reports);
      cert.final_cone = b;
    }
    certified = ok;
    return !ok;
  });

  if (certified) {
    cert.verdict = {VerdictKind::CertifiedDFinite, {}};
    assert_sound(cert);
    return cert;
  }
  cert.verdict = {VerdictKind::Inconclusive, {}};
  if (admissible > 0 && exhausted) {
    for (std::size_t e = 0; e < n_elem; ++e) {
      if (always_blocked[e] && cert.element_reports[e].witness) {
        cert.verdict = {VerdictKind::Obstructed, group.elements[e + 1].word};
        break;
      }
    }
  }
  return cert;
}

namespace {

VerifyResult mismatch(std::string path, std::string detail = {}) { return {false, std::move(path), std::move(detail)}; }

VerifyResult verify_certified(const Certificate& cert) {
  const StepSet s(cert.model_id);
  if (cert.zero_orbit_sum) return mismatch("zero_orbit_sum", "certified with zero orbit sum");
  if (!uses_all_directions(s)) return mismatch("model_id", "model fails the axis-usage filter");
  const std::array<RationalMap, 3> gens{generator(s, 0), generator(s, 1), generator(s, 2)};
  GroupResult group = close_group(gens, cert.group_cap);
  if (group.status != GroupStatus::Finite || group.order != cert.group_order)
    return mismatch("group_order", "recomputed " + std::to_string(group.order));
  if (cert.group.size() != group.elements.size()) return mismatch("group", "element count");
  for (std::size_t i = 0; i < group.elements.size(); ++i) {
    const auto& a = cert.group[i];
    const auto& b = group.elements[i];
    std::string path = "group[" + std::to_string(i) + "]";
    if (a.word != b.word || a.sign != b.sign || !a.map.equals(b.map)) return mismatch(path);
  }
  if (orbit_sum(group).is_zero) return mismatch("zero_orbit_sum", "orbit sum recomputes to zero");

  const PolynomialPool pool = collect_polynomials(group);
  if (cert.choice.size() != pool.entries.size()) return mismatch("choice", "pool size");
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < pool.entries.size(); ++i) {
    std::string path = "choice[" + std::to_string(i) + "]";
    const auto& terms = pool.entries[i].poly.terms();
    if (!(cert.choice[i].polynomial == pool.entries[i].poly)) return mismatch(path + ".polynomial");
    auto it = std::find_if(terms.begin(), terms.end(),
                           [&](const Term& t) { return t.exp == cert.choice[i].leading_exponent; });
    if (it == terms.end()) return mismatch(path + ".leading_exponent", "not in the support");
    idx.push_back(static_cast<std::size_t>(it - terms.begin()));
  }
  LeadingTermChoice choice = choice_from_indices(pool, idx);
  if (choice_index(pool, choice) != cert.choice_index) return mismatch("choice_index");
  if (choice_count(pool) != cert.choice_count) return mismatch("choice_count");

  const Cone base = base_cone();
  if (!(cert.base_cone == base)) return mismatch("base_cone");
  if (!cert.weight) return mismatch("weight", "missing");
  if (!weight_is_valid(pool, choice, base, *cert.weight)) return mismatch("weight.w", "inequalities fail");

  if (cert.element_reports.size() + 1 != group.elements.size()) return mismatch("element_reports", "count");
  Cone all = base;
  for (std::size_t e = 0; e < cert.element_reports.size(); ++e) {
    const auto& got = cert.element_reports[e];
    std::string path = "element_reports[" + std::to_string(e) + "]";
    ElementReport want = check_element(group.elements[e + 1], pool, choice, base, cert.mode);
    if (got.word != want.word) return mismatch(path + ".word");
    if (!(got.matrix == want.matrix)) return mismatch(path + ".matrix");
    if (!(got.local_cone == want.local_cone)) return mismatch(path + ".local_cone");
    if (got.shift != want.shift) return mismatch(path + ".shift");
    if (!(got.checks == want.checks)) return mismatch(path + ".checks");
    if (!want.checks.all()) return mismatch(path + ".checks", "a check fails");
    all = hull(all, want.local_cone);
  }

  const Cone& b = cert.final_cone;
  if (!contains_cone(b, base)) return mismatch("final_cone", "does not contain the base cone");
  for (std::size_t e = 0; e < cert.element_reports.size(); ++e)
    if (!contains_cone(b, cert.element_reports[e].local_cone))
      return mismatch("final_cone", "does not contain element_reports[" + std::to_string(e) + "].local_cone");
  if (!contains_cone(all, b)) return mismatch("final_cone", "larger than the hull of the local cones");
  if (!is_pointed(b)) return mismatch("final_cone", "not pointed");
  if (!weight_nonnegative_on(*cert.weight, b)) return mismatch("weight.w", "negative on the final cone");
  return {};
}

}  // namespace

VerifyResult verify_certificate(const Certificate& cert) {
  if (cert.model_id == 0 || cert.model_id > kMaxModelId) return mismatch("model_id", "out of range");
  if (cert.group_cap < 1) return mismatch("config.group_cap");
  if (cert.verdict.kind == VerdictKind::CertifiedDFinite) return verify_certified(cert);

  // Failure verdicts carry no proof; they are re-derived.
  CertifyConfig config;
  config.group_cap = cert.group_cap;
  config.mode = cert.mode;
  config.zero_orbit_gate = cert.zero_orbit_gate;
  Certificate fresh = certify(StepSet(cert.model_id), config);
  if (!(fresh.verdict == cert.verdict)) return mismatch("verdict", "recomputed " + to_string(fresh.verdict.kind));
  if (fresh.group_order != cert.group_order) return mismatch("group_order");
  if (fresh.zero_orbit_sum != cert.zero_orbit_sum) return mismatch("zero_orbit_sum");
  return {};
}

}  // namespace orbitsum
