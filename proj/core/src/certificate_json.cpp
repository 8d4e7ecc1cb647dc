#include "orbitsum/certificate_json.hpp"

#include <nlohmann/json.hpp>

namespace orbitsum {

namespace {

using Json = nlohmann::ordered_json;

Json vec_json(const Vec4& v) {
  Json a = Json::array();
  for (long long x : v) a.push_back(std::to_string(x));
  return a;
}

Json cone_json(const Cone& c) {
  Json a = Json::array();
  for (const auto& g : c.generators()) a.push_back(vec_json(g));
  return a;
}

Json rational_vec_json(const RationalVec4& v) {
  Json a = Json::array();
  for (const auto& x : v) a.push_back(x.get_str());
  return a;
}

// Reader that tracks the path for error messages.
struct Reader {
  const Json& j;
  std::string path;

  [[noreturn]] void fail(const std::string& what) const { throw FormatError(path + ": " + what); }

  Reader at(const std::string& key) const {
    if (!j.is_object() || !j.contains(key)) throw FormatError(path + "." + key + ": missing");
    return {j.at(key), path + "." + key};
  }
  Reader at(std::size_t i) const { return {j.at(i), path + "[" + std::to_string(i) + "]"}; }
  bool has(const std::string& key) const { return j.is_object() && j.contains(key); }
  std::size_t size() const {
    if (!j.is_array()) fail("expected an array");
    return j.size();
  }
  std::string str() const {
    if (!j.is_string()) fail("expected a string");
    return j.get<std::string>();
  }
  bool boolean() const {
    if (!j.is_boolean()) fail("expected a boolean");
    return j.get<bool>();
  }
  long long integer() const {
    std::string s = str();
    try {
      std::size_t used = 0;
      long long v = std::stoll(s, &used);
      if (used != s.size()) fail("bad integer '" + s + "'");
      return v;
    } catch (const std::logic_error&) {
      fail("bad integer '" + s + "'");
    }
  }
  std::uint64_t unsigned_integer() const {
    std::string s = str();
    try {
      std::size_t used = 0;
      unsigned long long v = std::stoull(s, &used);
      if (used != s.size() || s.empty() || s[0] == '-') fail("bad integer '" + s + "'");
      return v;
    } catch (const std::logic_error&) {
      fail("bad integer '" + s + "'");
    }
  }
  Rational rational() const {
    std::string s = str();
    Rational q;
    if (q.set_str(s, 10) != 0) fail("bad rational '" + s + "'");
    q.canonicalize();
    return q;
  }
  Vec4 vec() const {
    if (size() != 4) fail("expected 4 entries");
    Vec4 v{};
    for (std::size_t k = 0; k < 4; ++k) v[k] = at(k).integer();
    return v;
  }
  RationalVec4 rational_vec() const {
    if (size() != 4) fail("expected 4 entries");
    RationalVec4 v;
    for (std::size_t k = 0; k < 4; ++k) v[k] = at(k).rational();
    return v;
  }
  Cone cone() const {
    std::vector<Vec4> g;
    for (std::size_t i = 0; i < size(); ++i) g.push_back(at(i).vec());
    return Cone(std::move(g));
  }
  template <class F>
  auto guarded(F&& f) const {
    try {
      return f();
    } catch (const LaurentError& e) {
      fail(e.what());
    }
  }
};

}  // namespace

std::string certificate_to_json(const Certificate& cert, int indent) {
  Json j;
  j["schema"] = kCertificateSchema;
  j["bit_order"] = "lexicographic over (dx,dy,dz) in {-1,0,1}^3 without (0,0,0), least significant first";
  j["model_id"] = StepSet(cert.model_id).id_hex();
  j["steps"] = StepSet(cert.model_id).to_string();
  j["config"] = {{"group_cap", std::to_string(cert.group_cap)},
                 {"mode", to_string(cert.mode)},
                 {"zero_orbit_gate", cert.zero_orbit_gate}};
  j["group_order"] = std::to_string(cert.group_order);
  j["zero_orbit_sum"] = cert.zero_orbit_sum;
  Json group = Json::array();
  for (const auto& g : cert.group) {
    Json m = Json::array();
    for (const auto& f : g.map.images) m.push_back(f.to_string());
    group.push_back({{"word", g.word}, {"sign", std::to_string(g.sign)}, {"map", m}});
  }
  j["group"] = group;
  j["choice_index"] = std::to_string(cert.choice_index);
  j["choice_count"] = std::to_string(cert.choice_count);
  Json choice = Json::array();
  for (const auto& c : cert.choice)
    choice.push_back({{"polynomial", c.polynomial.to_string()}, {"leading_exponent", vec_json(to_vec4(c.leading_exponent))}});
  j["choice"] = choice;
  if (cert.weight)
    j["weight"] = {{"w", rational_vec_json(cert.weight->w)}, {"tie_break", cert.weight->tie_break}};
  else
    j["weight"] = nullptr;
  j["base_cone"] = cone_json(cert.base_cone);
  Json reports = Json::array();
  for (const auto& r : cert.element_reports) {
    Json rows = Json::array();
    for (const auto& row : r.matrix.rows()) rows.push_back(vec_json(row));
    Json rep = {{"word", r.word},
                {"matrix", rows},
                {"local_cone", cone_json(r.local_cone)},
                {"shift", vec_json(r.shift)},
                {"checks",
                 {{"kernel_trivial", r.checks.kernel_trivial},
                  {"hull_pointed", r.checks.hull_pointed},
                  {"disjoint", r.checks.disjoint}}}};
    if (r.witness) rep["witness"] = rational_vec_json(*r.witness);
    reports.push_back(rep);
  }
  j["element_reports"] = reports;
  j["final_cone"] = cone_json(cert.final_cone);
  j["verdict"] = {{"kind", to_string(cert.verdict.kind)}, {"element", cert.verdict.element}};
  return j.dump(indent);
}

Certificate certificate_from_json(std::string_view text) {
  Json j = Json::parse(text, nullptr, false);
  if (j.is_discarded()) throw FormatError("not valid JSON");
  Reader r{j, "$"};
  if (r.at("schema").str() != kCertificateSchema) r.at("schema").fail("unsupported schema");

  Certificate c;
  try {
    c.model_id = parse_stepset(r.at("model_id").str()).id();
  } catch (const StepSetError& e) {
    r.at("model_id").fail(e.what());
  }
  auto cfg = r.at("config");
  c.group_cap = static_cast<int>(cfg.at("group_cap").integer());
  auto mode = parse_disjoint_mode(cfg.at("mode").str());
  if (!mode) cfg.at("mode").fail("unknown mode");
  c.mode = *mode;
  c.zero_orbit_gate = cfg.at("zero_orbit_gate").boolean();
  c.group_order = static_cast<int>(r.at("group_order").integer());
  c.zero_orbit_sum = r.at("zero_orbit_sum").boolean();

  auto group = r.at("group");
  for (std::size_t i = 0; i < group.size(); ++i) {
    auto g = group.at(i);
    GroupElement e;
    e.word = g.at("word").str();
    e.sign = static_cast<int>(g.at("sign").integer());
    auto m = g.at("map");
    if (m.size() != 3) m.fail("expected 3 images");
    for (std::size_t k = 0; k < 3; ++k) {
      auto f = m.at(k);
      e.map.images[k] = f.guarded([&] { return RationalFunction::parse(f.str()); });
    }
    c.group.push_back(std::move(e));
  }
  c.choice_index = r.at("choice_index").unsigned_integer();
  c.choice_count = r.at("choice_count").unsigned_integer();
  auto choice = r.at("choice");
  for (std::size_t i = 0; i < choice.size(); ++i) {
    auto e = choice.at(i);
    auto p = e.at("polynomial");
    ChoiceEntry ce{p.guarded([&] { return LaurentPolynomial::parse(p.str(), 4); }),
                   to_exponent(e.at("leading_exponent").vec())};
    c.choice.push_back(std::move(ce));
  }
  if (!r.at("weight").j.is_null()) {
    auto w = r.at("weight");
    WeightOrder o;
    o.w = w.at("w").rational_vec();
    o.tie_break = w.at("tie_break").str();
    c.weight = o;
  }
  c.base_cone = r.at("base_cone").cone();
  auto reports = r.at("element_reports");
  for (std::size_t i = 0; i < reports.size(); ++i) {
    auto e = reports.at(i);
    ElementReport rep;
    rep.word = e.at("word").str();
    auto rows = e.at("matrix");
    if (rows.size() != 4) rows.fail("expected 4 rows");
    for (std::size_t a = 0; a < 4; ++a) {
      Vec4 row = rows.at(a).vec();
      for (std::size_t b = 0; b < 4; ++b) rep.matrix.columns[b][a] = row[b];
    }
    rep.local_cone = e.at("local_cone").cone();
    rep.shift = e.at("shift").vec();
    auto checks = e.at("checks");
    rep.checks = {checks.at("kernel_trivial").boolean(), checks.at("hull_pointed").boolean(),
                  checks.at("disjoint").boolean()};
    if (e.has("witness")) rep.witness = e.at("witness").rational_vec();
    c.element_reports.push_back(std::move(rep));
  }
  c.final_cone = r.at("final_cone").cone();
  auto verdict = r.at("verdict");
  auto kind = parse_verdict_kind(verdict.at("kind").str());
  if (!kind) verdict.at("kind").fail("unknown verdict");
  c.verdict = {*kind, verdict.at("element").str()};
  return c;
}

}  // namespace orbitsum
