#include "orbitsum/walkgroup.hpp"

#include <cstdint>
#include <deque>
#include <map>
#include <unordered_set>

namespace orbitsum {

namespace {

constexpr std::uint64_t kPrime = 2147483647ULL;  // 2^31 - 1

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b) { return (a * b) % kPrime; }

std::uint64_t pow_mod(std::uint64_t a, std::uint64_t e) {
  std::uint64_t r = 1;
  while (e) {
    if (e & 1) r = mul_mod(r, a);
    a = mul_mod(a, a);
    e >>= 1;
  }
  return r;
}

std::uint64_t inv_mod(std::uint64_t a) {
  // Extended Euclid on 64-bit signed values.
  std::int64_t t = 0, new_t = 1;
  std::int64_t r = static_cast<std::int64_t>(kPrime), new_r = static_cast<std::int64_t>(a);
  while (new_r != 0) {
    std::int64_t q = r / new_r;
    std::int64_t tmp = t - q * new_t;
    t = new_t;
    new_t = tmp;
    tmp = r - q * new_r;
    r = new_r;
    new_r = tmp;
  }
  if (t < 0) t += static_cast<std::int64_t>(kPrime);
  return static_cast<std::uint64_t>(t);
}

struct ModTerm {
  std::array<int, 3> exp;
  std::uint64_t coeff;
};

std::vector<ModTerm> to_mod(const LaurentPolynomial& p) {
  std::vector<ModTerm> out;
  for (const auto& t : p.terms()) {
    Integer num = t.coeff.get_num();
    Integer den = t.coeff.get_den();
    std::uint64_t c = mpz_fdiv_ui(num.get_mpz_t(), kPrime);
    std::uint64_t d = mpz_fdiv_ui(den.get_mpz_t(), kPrime);
    out.push_back({{t.exp[0], t.exp[1], t.exp[2]}, mul_mod(c, inv_mod(d))});
  }
  return out;
}

using ModPoint = std::array<std::uint64_t, 3>;

struct ModPointHash {
  std::size_t operator()(const ModPoint& p) const noexcept {
    return static_cast<std::size_t>((p[0] * 0x9e3779b97f4a7c15ULL) ^ (p[1] * 0xc2b2ae3d27d4eb4fULL) ^
                                    (p[2] * 0x165667b19e3779f9ULL));
  }
};

// Evaluates a polynomial with non-negative exponents at p.
std::uint64_t eval_mod(const std::vector<ModTerm>& poly, const ModPoint& p) {
  std::uint64_t sum = 0;
  for (const auto& t : poly) {
    std::uint64_t v = t.coeff;
    for (int i = 0; i < 3; ++i)
      if (t.exp[static_cast<std::size_t>(i)] > 0)
        v = mul_mod(v, pow_mod(p[static_cast<std::size_t>(i)], static_cast<std::uint64_t>(t.exp[static_cast<std::size_t>(i)])));
    sum = (sum + v) % kPrime;
  }
  return sum;
}

// The three fixed evaluation points used to bucket group elements.
const std::array<std::array<Rational, 3>, 3>& bucket_points() {
  static const std::array<std::array<Rational, 3>, 3> pts = {{
      {Rational(3, 5), Rational(7, 11), Rational(13, 17)},
      {Rational(5, 7), Rational(11, 13), Rational(19, 23)},
      {Rational(29, 31), Rational(37, 41), Rational(43, 47)},
  }};
  return pts;
}

std::string bucket_key(const RationalMap& m) {
  std::string key;
  for (const auto& pt : bucket_points()) {
    for (const auto& f : m.images) {
      try {
        key += f.evaluate(pt).get_str();
      } catch (const LaurentError&) {
        key += "pole";
      }
      key += ';';
    }
  }
  return key;
}

}  // namespace

char axis_letter(int axis) { return "xyz"[axis]; }

RationalMap RationalMap::identity() {
  return RationalMap{{RationalFunction::variable(3, 0), RationalFunction::variable(3, 1),
                      RationalFunction::variable(3, 2)}};
}

RationalMap RationalMap::compose(const RationalMap& inner) const {
  RationalMap out;
  for (std::size_t i = 0; i < 3; ++i) out.images[i] = substitute(images[i], inner.images);
  return out;
}

bool RationalMap::equals(const RationalMap& o) const {
  for (std::size_t i = 0; i < 3; ++i)
    if (!rat_equal(images[i], o.images[i])) return false;
  return true;
}

std::string RationalMap::to_string() const {
  return "[" + images[0].to_string() + ", " + images[1].to_string() + ", " + images[2].to_string() + "]";
}

LaurentPolynomial step_polynomial(const StepSet& s) {
  std::vector<Term> terms;
  for (const auto& st : s.steps()) terms.push_back({ExponentVector{{st.dx, st.dy, st.dz, 0}}, Rational(1)});
  return LaurentPolynomial::from_terms(3, std::move(terms));
}

AxisSections axis_sections(const StepSet& s, int axis) {
  std::vector<Term> minus, plus;
  for (const auto& st : s.steps()) {
    ExponentVector e{{st.dx, st.dy, st.dz, 0}};
    e[static_cast<std::size_t>(axis)] = 0;
    if (st[axis] < 0) minus.push_back({e, Rational(1)});
    if (st[axis] > 0) plus.push_back({e, Rational(1)});
  }
  return {LaurentPolynomial::from_terms(3, std::move(minus)), LaurentPolynomial::from_terms(3, std::move(plus))};
}

std::optional<RationalMap> try_generator(const StepSet& s, int axis) {
  auto sec = axis_sections(s, axis);
  if (sec.minus.is_zero() || sec.plus.is_zero()) return std::nullopt;
  RationalMap m = RationalMap::identity();
  ExponentVector inv;
  inv[static_cast<std::size_t>(axis)] = -1;
  m.images[static_cast<std::size_t>(axis)] = RationalFunction(sec.minus.shifted(inv), sec.plus);
  return m;
}

RationalMap generator(const StepSet& s, int axis) {
  auto g = try_generator(s, axis);
  if (!g)
    throw GroupError(std::string("generator phi_") + axis_letter(axis) + " undefined: empty axis section");
  return *g;
}

namespace {

// A pole hit mod p says nothing about the group, so each filter retries from
// a few other points before giving up.
constexpr std::array<ModPoint, 4> kStarts{{{1234567891ULL % kPrime, 987654321ULL % kPrime, 1122334455ULL % kPrime},
                                           {271828182, 314159265, 161803398},
                                           {1414213562, 1732050807, 223606797},
                                           {577215664, 693147180, 1098612288}}};

std::optional<int> modular_orbit_from(const std::array<RationalMap, 3>& gens, int cap, const ModPoint& start) {
  struct ModMap {
    std::array<std::vector<ModTerm>, 3> num, den;
  };
  std::array<ModMap, 3> mm;
  for (std::size_t g = 0; g < 3; ++g) {
    for (std::size_t i = 0; i < 3; ++i) {
      mm[g].num[i] = to_mod(gens[g].images[i].numerator());
      mm[g].den[i] = to_mod(gens[g].images[i].denominator());
    }
  }
  std::unordered_set<ModPoint, ModPointHash> seen{start};
  std::vector<ModPoint> queue{start};
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const ModPoint p = queue[head];
    for (std::size_t g = 0; g < 3; ++g) {
      ModPoint q;
      for (std::size_t i = 0; i < 3; ++i) {
        std::uint64_t d = eval_mod(mm[g].den[i], p);
        if (d == 0) return std::nullopt;
        q[i] = mul_mod(eval_mod(mm[g].num[i], p), inv_mod(d));
      }
      if (seen.insert(q).second) {
        if (static_cast<int>(seen.size()) > cap) return cap + 1;
        queue.push_back(q);
      }
    }
  }
  return static_cast<int>(seen.size());
}

inline std::uint64_t reduce31(std::uint64_t x) {
  x = (x & kPrime) + (x >> 31);
  x = (x & kPrime) + (x >> 31);
  return x == kPrime ? 0 : x;
}

std::optional<int> model_orbit_from(const StepSet& s, int cap, const ModPoint& start) {
  // For axis a with other coordinates (u, v): phi_a sends the a-coordinate to
  // A(u,v) / (c_a * B(u,v)) where A, B are the homogenized sections with
  // exponents in {0,1,2}; bit 3*i+j of a mask selects u^i v^j.
  std::array<std::uint16_t, 3> minus_mask{}, plus_mask{};
  constexpr int kOther[3][2] = {{1, 2}, {0, 2}, {0, 1}};
  for (const auto& st : s.steps()) {
    for (int a = 0; a < 3; ++a) {
      int i = st[kOther[a][0]] + 1, j = st[kOther[a][1]] + 1;
      auto bit = static_cast<std::uint16_t>(1u << (3 * i + j));
      if (st[a] < 0) minus_mask[static_cast<std::size_t>(a)] |= bit;
      if (st[a] > 0) plus_mask[static_cast<std::size_t>(a)] |= bit;
    }
  }
  for (int a = 0; a < 3; ++a)
    if (!minus_mask[static_cast<std::size_t>(a)] || !plus_mask[static_cast<std::size_t>(a)]) return std::nullopt;

  std::vector<ModPoint> points{start};
  std::size_t table_size = 64;
  while (table_size < 4 * static_cast<std::size_t>(cap + 2)) table_size <<= 1;
  std::vector<std::uint32_t> table(table_size, 0);  // point index + 1
  ModPointHash hasher;
  auto insert = [&](const ModPoint& q) {
    std::size_t h = hasher(q) & (table_size - 1);
    while (table[h]) {
      if (points[table[h] - 1] == q) return false;
      h = (h + 1) & (table_size - 1);
    }
    points.push_back(q);
    table[h] = static_cast<std::uint32_t>(points.size());
    return true;
  };
  {
    std::size_t h = hasher(points[0]) & (table_size - 1);
    table[h] = 1;
  }
  struct Pending {
    std::size_t from;
    int axis;
  };
  std::vector<std::pair<std::size_t, int>> level{{0, -1}};  // point, axis that produced it
  std::vector<Pending> pend;
  std::vector<std::uint64_t> nums, dens, prefix;
  while (!level.empty()) {
    pend.clear();
    nums.clear();
    dens.clear();
    for (auto [idx, came] : level) {
      const ModPoint p = points[idx];
      for (int a = 0; a < 3; ++a) {
        if (a == came) continue;
        const std::uint64_t u = p[static_cast<std::size_t>(kOther[a][0])];
        const std::uint64_t v = p[static_cast<std::size_t>(kOther[a][1])];
        const std::uint64_t u2 = reduce31(u * u), v2 = reduce31(v * v);
        const std::uint64_t mono[9] = {1, v, v2, u, reduce31(u * v), reduce31(u * v2),
                                       u2, reduce31(u2 * v), reduce31(u2 * v2)};
        std::uint64_t num = 0, den = 0;
        for (int b = 0; b < 9; ++b) {
          if ((minus_mask[static_cast<std::size_t>(a)] >> b) & 1u) num += mono[b];
          if ((plus_mask[static_cast<std::size_t>(a)] >> b) & 1u) den += mono[b];
        }
        num = reduce31(num);
        den = reduce31(reduce31(den) * p[static_cast<std::size_t>(a)]);
        if (den == 0) return std::nullopt;
        pend.push_back({idx, a});
        nums.push_back(num);
        dens.push_back(den);
      }
    }
    // Montgomery batch inversion of all denominators in the level.
    prefix.resize(dens.size());
    std::uint64_t acc = 1;
    for (std::size_t i = 0; i < dens.size(); ++i) {
      prefix[i] = acc;
      acc = reduce31(acc * dens[i]);
    }
    std::uint64_t inv = inv_mod(acc);
    std::vector<std::pair<std::size_t, int>> next;
    std::vector<std::uint64_t> coord(dens.size());
    for (std::size_t i = dens.size(); i-- > 0;) {
      coord[i] = reduce31(reduce31(inv * prefix[i]) * nums[i]);
      inv = reduce31(inv * dens[i]);
    }
    for (std::size_t i = 0; i < pend.size(); ++i) {
      ModPoint q = points[pend[i].from];
      q[static_cast<std::size_t>(pend[i].axis)] = coord[i];
      if (insert(q)) {
        if (static_cast<int>(points.size()) > cap) return cap + 1;
        next.emplace_back(points.size() - 1, pend[i].axis);
      }
    }
    level = std::move(next);
  }
  return static_cast<int>(points.size());
}

}  // namespace

std::optional<int> modular_orbit_size(const std::array<RationalMap, 3>& gens, int cap) {
  for (const auto& start : kStarts)
    if (auto n = modular_orbit_from(gens, cap, start)) return n;
  return std::nullopt;
}

std::optional<int> model_orbit_size(const StepSet& s, int cap) {
  for (const auto& start : kStarts)
    if (auto n = model_orbit_from(s, cap, start)) return n;
  return std::nullopt;
}

GroupResult close_group(const std::array<RationalMap, 3>& gens, int cap) {
  if (cap < 1) throw GroupError("group cap must be positive");
  GroupResult result;
  if (auto orbit = modular_orbit_size(gens, cap); orbit && *orbit > cap) {
    result.status = GroupStatus::CapExceeded;
    result.order = *orbit;
    return result;
  }
  std::vector<GroupElement> elems{{RationalMap::identity(), "", 1}};
  std::multimap<std::string, std::size_t> buckets{{bucket_key(elems[0].map), 0}};
  for (std::size_t head = 0; head < elems.size(); ++head) {
    for (int a = 0; a < 3; ++a) {
      GroupElement child{elems[head].map.compose(gens[static_cast<std::size_t>(a)]),
                         elems[head].word + axis_letter(a), -elems[head].sign};
      std::string key = bucket_key(child.map);
      auto [lo, hi] = buckets.equal_range(key);
      std::optional<std::size_t> found;
      for (auto it = lo; it != hi && !found; ++it)
        if (elems[it->second].map.equals(child.map)) found = it->second;
      if (found) {
        if (elems[*found].sign != child.sign) {
          result.status = GroupStatus::ParityConflict;
          result.order = static_cast<int>(elems.size());
          result.conflict_word = child.word;
          return result;
        }
        continue;
      }
      buckets.emplace(std::move(key), elems.size());
      elems.push_back(std::move(child));
      if (static_cast<int>(elems.size()) > cap) {
        result.status = GroupStatus::CapExceeded;
        result.order = static_cast<int>(elems.size());
        return result;
      }
    }
  }
  result.order = static_cast<int>(elems.size());
  result.elements = std::move(elems);
  return result;
}

OrbitSum orbit_sum(const GroupResult& group) {
  if (group.status != GroupStatus::Finite) throw GroupError("orbit sum requires a finite group");
  std::vector<FactoredTerm> terms;
  for (const auto& g : group.elements) {
    FactoredTerm t{LaurentPolynomial::constant(3, g.sign), {}};
    for (const auto& f : g.map.images) {
      t.numerator = t.numerator * f.numerator();
      t.denominator_factors.push_back(f.denominator());
    }
    terms.push_back(std::move(t));
  }
  OrbitSum os{sum_over_common_denominator(terms, 3), false};
  os.is_zero = os.value.is_zero();
  return os;
}

}  // namespace orbitsum
