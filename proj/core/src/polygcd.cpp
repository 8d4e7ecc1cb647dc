// Multivariate GCD over Q by recursive primitive pseudo-remainder sequences.
// All inputs are first shifted to honest polynomials; monomials are units.

#include <algorithm>
#include <cstdint>
#include <map>
#include <random>

#include "orbitsum/laurent.hpp"

namespace orbitsum {

namespace {

int degree_in(const LaurentPolynomial& p, int v) {
  int d = 0;
  for (const auto& t : p.terms()) d = std::max(d, t.exp[static_cast<std::size_t>(v)]);
  return d;
}

// First variable in which p has positive degree, or -1 for a constant.
int main_variable(const LaurentPolynomial& p) {
  for (int v = 0; v < p.dim(); ++v)
    if (degree_in(p, v) > 0) return v;
  return -1;
}

// Coefficients of p viewed as a polynomial in variable v.
std::map<int, LaurentPolynomial> coefficients_in(const LaurentPolynomial& p, int v) {
  std::map<int, std::vector<Term>> parts;
  for (const auto& t : p.terms()) {
    Term c = t;
    c.exp[static_cast<std::size_t>(v)] = 0;
    parts[t.exp[static_cast<std::size_t>(v)]].push_back(std::move(c));
  }
  std::map<int, LaurentPolynomial> out;
  for (auto& [d, terms] : parts) out.emplace(d, LaurentPolynomial::from_terms(p.dim(), std::move(terms)));
  return out;
}

LaurentPolynomial leading_coefficient_in(const LaurentPolynomial& p, int v) {
  int d = degree_in(p, v);
  std::vector<Term> terms;
  for (const auto& t : p.terms()) {
    if (t.exp[static_cast<std::size_t>(v)] != d) continue;
    Term c = t;
    c.exp[static_cast<std::size_t>(v)] = 0;
    terms.push_back(std::move(c));
  }
  return LaurentPolynomial::from_terms(p.dim(), std::move(terms));
}

LaurentPolynomial primitive(const LaurentPolynomial& p) {
  if (p.is_zero()) return p;
  return primitive_decomposition(p).primitive;
}

LaurentPolynomial exact(const LaurentPolynomial& a, const LaurentPolynomial& b) {
  auto q = divide_exact(a, b);
  if (!q) throw LaurentError(LaurentError::Kind::DivisionByZero, "inexact division in gcd");
  return *q;
}

LaurentPolynomial gcd_rec(LaurentPolynomial a, LaurentPolynomial b);

// Upper bounds on the degree of gcd(a, b) in each variable, from univariate
// images modulo 2^31 - 1. Specializing the other variables where neither
// leading coefficient vanishes can only raise the degree of the gcd.
constexpr std::uint64_t kPrime = 2147483647ULL;

std::uint64_t pow_mod(std::uint64_t b, std::uint64_t e) {
  std::uint64_t r = 1;
  for (b %= kPrime; e; e >>= 1, b = b * b % kPrime)
    if (e & 1) r = r * b % kPrime;
  return r;
}

std::uint64_t inv_mod(std::uint64_t a) { return pow_mod(a, kPrime - 2); }

// Dense image of p in variable v, other variables set to `point`. nullopt
// when a coefficient denominator vanishes mod p.
std::optional<std::vector<std::uint64_t>> univariate_image(const LaurentPolynomial& p, int v,
                                                           const std::array<std::uint64_t, kMaxDim>& point) {
  std::vector<std::uint64_t> out(static_cast<std::size_t>(degree_in(p, v)) + 1, 0);
  for (const auto& t : p.terms()) {
    std::uint64_t den = mpz_fdiv_ui(t.coeff.get_den_mpz_t(), kPrime);
    if (!den) return std::nullopt;
    std::uint64_t c = mpz_fdiv_ui(t.coeff.get_num_mpz_t(), kPrime) * inv_mod(den) % kPrime;
    for (int i = 0; i < p.dim(); ++i) {
      if (i == v) continue;
      int e = t.exp[static_cast<std::size_t>(i)];
      std::uint64_t x = point[static_cast<std::size_t>(i)];
      c = c * pow_mod(e >= 0 ? x : inv_mod(x), static_cast<std::uint64_t>(e >= 0 ? e : -e)) % kPrime;
    }
    auto& slot = out[static_cast<std::size_t>(t.exp[static_cast<std::size_t>(v)])];
    slot = (slot + c) % kPrime;
  }
  return out;
}

int univariate_gcd_degree(std::vector<std::uint64_t> a, std::vector<std::uint64_t> b) {
  auto trim = [](std::vector<std::uint64_t>& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
  };
  trim(a);
  trim(b);
  while (!b.empty()) {
    std::uint64_t inv = inv_mod(b.back());
    while (a.size() >= b.size()) {
      std::uint64_t f = a.back() * inv % kPrime;
      std::size_t off = a.size() - b.size();
      for (std::size_t k = 0; k < b.size(); ++k) a[off + k] = (a[off + k] + kPrime - f * b[k] % kPrime) % kPrime;
      trim(a);
    }
    std::swap(a, b);
  }
  return static_cast<int>(a.size()) - 1;
}

std::array<int, kMaxDim> gcd_degree_bounds(const LaurentPolynomial& a, const LaurentPolynomial& b) {
  std::array<int, kMaxDim> bound{};
  std::mt19937_64 rng(0x6763645f626f756eULL);
  std::uniform_int_distribution<std::uint64_t> pick(2, kPrime - 1);
  for (int v = 0; v < a.dim(); ++v) {
    const int da = degree_in(a, v), db = degree_in(b, v);
    bound[static_cast<std::size_t>(v)] = std::min(da, db);
    if (std::min(da, db) == 0) continue;
    for (int attempt = 0; attempt < 4; ++attempt) {
      std::array<std::uint64_t, kMaxDim> point{};
      for (auto& x : point) x = pick(rng);
      auto ia = univariate_image(a, v, point), ib = univariate_image(b, v, point);
      if (!ia || !ib || ia->back() == 0 || ib->back() == 0) continue;
      bound[static_cast<std::size_t>(v)] = univariate_gcd_degree(std::move(*ia), std::move(*ib));
      break;
    }
  }
  return bound;
}

// gcd of the coefficients of p with respect to v (a polynomial free of v).
LaurentPolynomial content_in(const LaurentPolynomial& p, int v) {
  LaurentPolynomial g(p.dim());
  for (auto& [d, c] : coefficients_in(p, v)) {
    g = g.is_zero() ? primitive(c) : gcd_rec(g, c);
    if (g.size() == 1) break;  // a unit
  }
  return g;
}

// Pseudo-remainder of a by b with respect to v.
LaurentPolynomial pseudo_remainder(LaurentPolynomial a, const LaurentPolynomial& b, int v) {
  const int db = degree_in(b, v);
  const LaurentPolynomial lb = leading_coefficient_in(b, v);
  while (!a.is_zero() && degree_in(a, v) >= db) {
    const int da = degree_in(a, v);
    LaurentPolynomial la = leading_coefficient_in(a, v);
    ExponentVector shift;
    shift[static_cast<std::size_t>(v)] = da - db;
    a = a * lb - (la * b).shifted(shift);
  }
  return a;
}

LaurentPolynomial gcd_rec(LaurentPolynomial a, LaurentPolynomial b) {
  if (a.is_zero()) return b.is_zero() ? b : primitive(b);
  if (b.is_zero()) return primitive(a);
  a = primitive(a);
  b = primitive(b);
  if (a == b) return a;
  const int dim = a.dim();
  const LaurentPolynomial one = LaurentPolynomial::constant(dim, 1);
  if (a.size() == 1 || b.size() == 1) return one;
  int v = main_variable(a);
  if (v < 0) return one;
  const auto bound = gcd_degree_bounds(a, b);
  if (std::all_of(bound.begin(), bound.end(), [](int d) { return d == 0; })) return one;
  if (bound[static_cast<std::size_t>(v)] == 0) return gcd_rec(content_in(a, v), content_in(b, v));
  LaurentPolynomial ca = content_in(a, v);
  LaurentPolynomial cb = content_in(b, v);
  LaurentPolynomial c = gcd_rec(ca, cb);
  LaurentPolynomial pa = ca.size() == 1 ? a : exact(a, ca);
  LaurentPolynomial pb = cb.size() == 1 ? b : exact(b, cb);
  if (degree_in(pa, v) < degree_in(pb, v)) std::swap(pa, pb);
  while (true) {
    LaurentPolynomial r = pseudo_remainder(pa, pb, v);
    if (r.is_zero()) break;
    if (degree_in(r, v) == 0) {
      pb = one;
      break;
    }
    LaurentPolynomial cr = content_in(r, v);
    r = cr.size() == 1 ? primitive(r) : primitive(exact(r, cr));
    pa = std::move(pb);
    pb = std::move(r);
  }
  return primitive(c * pb);
}

}  // namespace

std::optional<LaurentPolynomial> divide_exact(const LaurentPolynomial& a, const LaurentPolynomial& b) {
  if (b.is_zero()) throw LaurentError(LaurentError::Kind::DivisionByZero, "division by zero polynomial");
  const int dim = a.dim();
  if (a.is_zero()) return LaurentPolynomial(dim);
  if (b.size() == 1) {
    const auto& t = b.terms()[0];
    return a.shifted(-t.exp).scaled(Rational(1) / t.coeff);
  }
  // Work with honest polynomials; the quotient absorbs the shift.
  const ExponentVector sa = a.min_exponent();
  const ExponentVector sb = b.min_exponent();
  LaurentPolynomial r = a.shifted(-sa);
  const LaurentPolynomial d = b.shifted(-sb);
  const Term lead = d.terms().back();  // lex-largest term
  // An exact quotient has degree deg(a) - deg(b) in every variable.
  const ExponentVector qmax = r.max_exponent() - d.max_exponent();
  std::vector<Term> quotient;
  while (!r.is_zero()) {
    const Term& lr = r.terms().back();
    ExponentVector e = lr.exp - lead.exp;
    for (int i = 0; i < kMaxDim; ++i)
      if (e[i] < 0 || e[i] > qmax[i]) return std::nullopt;
    Rational c = lr.coeff / lead.coeff;
    r -= d.shifted(e).scaled(c);
    quotient.push_back({e, c});
  }
  return LaurentPolynomial::from_terms(dim, std::move(quotient)).shifted(sa - sb);
}

LaurentPolynomial polynomial_gcd(const LaurentPolynomial& a, const LaurentPolynomial& b) {
  if (a.dim() != b.dim())
    throw LaurentError(LaurentError::Kind::DimensionMismatch, "polynomial dimensions differ");
  LaurentPolynomial ha = a.is_zero() ? a : a.shifted(-a.min_exponent());
  LaurentPolynomial hb = b.is_zero() ? b : b.shifted(-b.min_exponent());
  return gcd_rec(std::move(ha), std::move(hb));
}

}  // namespace orbitsum
