#include "orbitsum/oracle.hpp"

#include <algorithm>
#include <limits>
#include <unordered_map>

#include <nlohmann/json.hpp>

namespace orbitsum {

WalkTable::WalkTable(const StepSet& s, int order) : order_(order) {
  if (order < 0) throw std::invalid_argument("walk table order must be non-negative");
  levels_.push_back({Integer(1)});
  for (int n = 0; n < order; ++n) {
    const auto& cur = levels_.back();
    const int w = n + 1, nw = n + 2;
    std::vector<Integer> next(static_cast<std::size_t>(nw) * nw * nw);
    for (int i = 0; i < w; ++i)
      for (int j = 0; j < w; ++j)
        for (int k = 0; k < w; ++k) {
          const Integer& c = cur[static_cast<std::size_t>((i * w + j) * w + k)];
          if (c == 0) continue;
          for (const auto& st : s.steps()) {
            int a = i + st.dx, b = j + st.dy, d = k + st.dz;
            if (a < 0 || b < 0 || d < 0) continue;
            next[static_cast<std::size_t>((a * nw + b) * nw + d)] += c;
          }
        }
    levels_.push_back(std::move(next));
  }
}

const Integer& WalkTable::count(int i, int j, int k, int n) const {
  static const Integer zero(0);
  if (n < 0 || n > order_ || i < 0 || j < 0 || k < 0 || i > n || j > n || k > n) return zero;
  const int w = n + 1;
  return levels_[static_cast<std::size_t>(n)][static_cast<std::size_t>((i * w + j) * w + k)];
}

Integer WalkTable::total(int n) const {
  Integer t = 0;
  if (n < 0 || n > order_) return t;
  for (const auto& c : levels_[static_cast<std::size_t>(n)]) t += c;
  return t;
}

LaurentPolynomial WalkTable::generating_polynomial(int n) const {
  std::vector<Term> terms;
  for (int i = 0; i <= n; ++i)
    for (int j = 0; j <= n; ++j)
      for (int k = 0; k <= n; ++k) {
        const Integer& c = count(i, j, k, n);
        if (c != 0) terms.push_back({ExponentVector{{i, j, k, 0}}, Rational(c)});
      }
  return LaurentPolynomial::from_terms(3, std::move(terms));
}

WalkTable walk_counts(const StepSet& s, int order) { return WalkTable(s, order); }

std::optional<int> orbit_identity_failure(const StepSet& s, const GroupResult& group, int n_max) {
  const WalkTable table(s, n_max);
  const LaurentPolynomial p = step_polynomial(s);
  const OrbitSum os = orbit_sum(group);
  LaurentPolynomial pn = LaurentPolynomial::constant(3, 1);
  for (int n = 0; n <= n_max; ++n) {
    const LaurentPolynomial q = table.generating_polynomial(n);
    std::vector<FactoredTerm> terms;
    for (const auto& g : group.elements) {
      FactoredTerm t = substitute_factored(q, g.map.images);
      LaurentPolynomial front = LaurentPolynomial::constant(3, g.sign);
      for (const auto& f : g.map.images) {
        front = front * f.numerator();
        t.denominator_factors.push_back(f.denominator());
      }
      t.numerator = front * t.numerator;
      terms.push_back(std::move(t));
    }
    terms.push_back({(pn * os.value.numerator()).scaled(Rational(-1)), {os.value.denominator()}});
    if (!sum_over_common_denominator(terms, 3).is_zero()) return n;
    pn = pn * p;
  }
  return std::nullopt;
}

bool orbit_identity_check(const StepSet& s, const GroupResult& group, int n_max) {
  return !orbit_identity_failure(s, group, n_max).has_value();
}

namespace {

// Truncated series in x, y, z keyed by packed exponents.
constexpr int kPackOffset = 1 << 20;
constexpr long long kUnbounded = std::numeric_limits<long long>::max() / 4;

std::uint64_t pack(int a, int b, int c) {
  return (static_cast<std::uint64_t>(a + kPackOffset) << 42) | (static_cast<std::uint64_t>(b + kPackOffset) << 21) |
         static_cast<std::uint64_t>(c + kPackOffset);
}

struct STerm {
  std::array<int, 3> e;
  long long weight;
  Rational c;
};

class SeriesBuilder {
 public:
  SeriesBuilder(std::array<long long, 3> w, std::uint64_t limit) : w_(w), limit_(limit) {}

  long long weight(const std::array<int, 3>& e) const { return w_[0] * e[0] + w_[1] * e[1] + w_[2] * e[2]; }

  std::vector<STerm> from_poly(const LaurentPolynomial& p) const {
    std::vector<STerm> out;
    for (const auto& t : p.terms()) {
      std::array<int, 3> e{t.exp[0], t.exp[1], t.exp[2]};
      out.push_back({e, weight(e), t.coeff});
    }
    return sorted(std::move(out));
  }

  static std::vector<STerm> sorted(std::vector<STerm> v) {
    std::sort(v.begin(), v.end(), [](const STerm& a, const STerm& b) {
      return a.weight != b.weight ? a.weight < b.weight : a.e < b.e;
    });
    return v;
  }

  // a * b restricted to weight <= bound; both sorted by weight.
  std::vector<STerm> product(const std::vector<STerm>& a, const std::vector<STerm>& b, long long bound) {
    std::unordered_map<std::uint64_t, std::size_t> index;
    std::vector<STerm> out;
    for (const auto& x : a) {
      if (b.empty() || x.weight + b.front().weight > bound) break;
      for (const auto& y : b) {
        if (x.weight + y.weight > bound) break;
        std::array<int, 3> e{x.e[0] + y.e[0], x.e[1] + y.e[1], x.e[2] + y.e[2]};
        auto [it, fresh] = index.try_emplace(pack(e[0], e[1], e[2]), out.size());
        if (fresh) {
          out.push_back({e, x.weight + y.weight, x.c * y.c});
          check_size(out.size());
        } else {
          out[it->second].c += x.c * y.c;
        }
      }
    }
    std::erase_if(out, [](const STerm& t) { return t.c == 0; });
    return sorted(std::move(out));
  }

  void add_into(std::unordered_map<std::uint64_t, STerm>& acc, const std::vector<STerm>& v) {
    for (const auto& t : v) {
      auto [it, fresh] = acc.try_emplace(pack(t.e[0], t.e[1], t.e[2]), t);
      if (!fresh) it->second.c += t.c;
    }
    check_size(acc.size());
  }

  // 1/d = lt^-1 / (1 - u) with u = 1 - d/lt; every term of u has positive weight.
  std::pair<STerm, std::vector<STerm>> split_leading(const LaurentPolynomial& d) const {
    auto terms = from_poly(d);
    if (terms.size() > 1 && terms[0].weight == terms[1].weight)
      throw OracleError(OracleError::Kind::WeightNotStrict, "weight does not single out a leading term of " + d.to_string());
    const STerm lt = terms[0];
    STerm inv{{-lt.e[0], -lt.e[1], -lt.e[2]}, -lt.weight, Rational(1) / lt.c};
    std::vector<STerm> u;
    for (std::size_t i = 1; i < terms.size(); ++i) {
      const auto& t = terms[i];
      u.push_back({{t.e[0] - lt.e[0], t.e[1] - lt.e[1], t.e[2] - lt.e[2]}, t.weight - lt.weight, -t.c / lt.c});
    }
    return {inv, sorted(std::move(u))};
  }

  // sum_k u^k truncated to weight <= bound.
  std::vector<STerm> geometric(const std::vector<STerm>& u, long long bound) {
    std::unordered_map<std::uint64_t, STerm> acc;
    std::vector<STerm> power{{{0, 0, 0}, 0, Rational(1)}};
    while (!power.empty()) {
      add_into(acc, power);
      power = product(power, u, bound);
    }
    std::vector<STerm> out;
    for (auto& [k, t] : acc)
      if (t.c != 0) out.push_back(std::move(t));
    return sorted(std::move(out));
  }

  std::uint64_t max_terms() const { return max_terms_; }

 private:
  void check_size(std::size_t n) {
    max_terms_ = std::max<std::uint64_t>(max_terms_, n);
    if (n > limit_)
      throw OracleError(OracleError::Kind::WeightBoundOverflow, "truncated series exceeds " + std::to_string(limit_) + " terms");
  }

  std::array<long long, 3> w_;
  std::uint64_t limit_;
  std::uint64_t max_terms_ = 0;
};

}  // namespace

PositivePartResult positive_part_check(const StepSet& s, const GroupResult& group, const WeightOrder& weight,
                                       int n_max, std::uint64_t term_limit) {
  PositivePartResult res;
  res.box = n_max + 2;
  // Integer weights: w scaled by the common denominator of its x, y, z parts.
  Integer scale = 1;
  for (std::size_t i = 0; i < 3; ++i) mpz_lcm(scale.get_mpz_t(), scale.get_mpz_t(), weight.w[i].get_den_mpz_t());
  std::array<long long, 3> w{};
  for (std::size_t i = 0; i < 3; ++i) {
    Rational v = weight.w[i] * Rational(scale);
    if (!v.get_num().fits_slong_p())
      throw OracleError(OracleError::Kind::WeightBoundOverflow, "weight too large for the series expansion");
    w[i] = v.get_num().get_si();
  }
  SeriesBuilder sb(w, term_limit);

  long long wmax = 0;  // largest weight on the box
  for (long long x : w) wmax += std::abs(x) * res.box;
  long long neg = 0;  // largest weight drop from one step
  for (const auto& st : s.steps()) neg = std::max(neg, -(w[0] * st.dx + w[1] * st.dy + w[2] * st.dz));
  res.bound = Rational(Integer(std::to_string(wmax))) / Rational(scale);
  const long long bound_e = wmax + static_cast<long long>(n_max) * neg;

  // OS truncated to weight <= bound_e.
  std::unordered_map<std::uint64_t, STerm> acc;
  for (const auto& g : group.elements) {
    std::vector<STerm> front{{{0, 0, 0}, 0, Rational(g.sign)}};
    std::vector<std::vector<STerm>> ratios;
    for (const auto& f : g.map.images) {
      auto [inv, u] = sb.split_leading(f.denominator());
      front = sb.product(front, sb.from_poly(f.numerator()), kUnbounded);
      front = sb.product(front, {inv}, kUnbounded);
      ratios.push_back(std::move(u));
    }
    const long long budget = bound_e - (front.empty() ? 0 : front.front().weight);
    std::vector<std::vector<STerm>> series;
    for (const auto& u : ratios) series.push_back(sb.geometric(u, budget));
    std::vector<STerm> term = front;
    for (const auto& sv : series) term = sb.product(term, sv, bound_e);
    sb.add_into(acc, term);
  }
  std::vector<STerm> t;
  for (auto& [k, v] : acc)
    if (v.c != 0) t.push_back(std::move(v));
  t = SeriesBuilder::sorted(std::move(t));

  const WalkTable table(s, n_max);
  const auto p = sb.from_poly(step_polynomial(s));
  for (int n = 0; n <= n_max; ++n) {
    std::unordered_map<std::uint64_t, const Rational*> lookup;
    for (const auto& term : t) lookup.emplace(pack(term.e[0], term.e[1], term.e[2]), &term.c);
    for (int a = 1; a <= res.box; ++a)
      for (int b = 1; b <= res.box; ++b)
        for (int c = 1; c <= res.box; ++c) {
          auto it = lookup.find(pack(a, b, c));
          Rational actual = it == lookup.end() ? Rational(0) : *it->second;
          Rational expected(table.count(a - 1, b - 1, c - 1, n));
          if (actual != expected) {
            res.mismatch = CoefficientMismatch{{a, b, c}, n, expected, actual};
            res.max_terms = sb.max_terms();
            return res;
          }
        }
    if (n < n_max) t = sb.product(p, t, wmax + static_cast<long long>(n_max - n - 1) * neg);
  }
  res.max_terms = sb.max_terms();
  res.pass = true;
  return res;
}

std::string oracle_report_to_json(const OracleReport& r, int indent) {
  nlohmann::ordered_json j;
  j["model_id"] = StepSet(r.model_id).id_hex();
  j["n_max"] = std::to_string(r.n_max);
  j["box"] = {std::to_string(-r.box), std::to_string(r.box)};
  j["bound"] = r.bound.get_str();
  j["max_terms"] = std::to_string(r.max_terms);
  j["identity_n"] = std::to_string(r.identity_n);
  j["orbit_identity"] = r.orbit_identity;
  if (r.positive_part)
    j["positive_part"] = *r.positive_part;
  else
    j["positive_part"] = nullptr;
  j["pass"] = r.pass();
  if (r.mismatch) {
    const auto& m = *r.mismatch;
    j["mismatch"] = {{"exponent", {std::to_string(m.exponent[0]), std::to_string(m.exponent[1]), std::to_string(m.exponent[2])}},
                     {"n", std::to_string(m.n)},
                     {"expected", m.expected.get_str()},
                     {"actual", m.actual.get_str()}};
  } else {
    j["mismatch"] = nullptr;
  }
  return j.dump(indent);
}

}  // namespace orbitsum
