#include "orbitsum/laurent.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <unordered_map>

namespace orbitsum {

namespace {

constexpr char kVarNames[kMaxDim] = {'x', 'y', 'z', 't'};

void sort_and_combine(std::vector<Term>& terms) {
  std::sort(terms.begin(), terms.end(),
            [](const Term& a, const Term& b) { return a.exp < b.exp; });
  std::size_t out = 0;
  for (std::size_t i = 0; i < terms.size();) {
    std::size_t j = i + 1;
    Rational c = terms[i].coeff;
    while (j < terms.size() && terms[j].exp == terms[i].exp) c += terms[j++].coeff;
    if (c != 0) {
      terms[out].exp = terms[i].exp;
      terms[out].coeff = std::move(c);
      ++out;
    }
    i = j;
  }
  terms.resize(out);
}

}  // namespace

LaurentPolynomial::LaurentPolynomial(int dim) : dim_(dim) {
  if (dim < 1 || dim > kMaxDim)
    throw LaurentError(LaurentError::Kind::DimensionMismatch, "dimension out of range");
}

LaurentPolynomial LaurentPolynomial::constant(int dim, const Rational& c) {
  return monomial(dim, ExponentVector{}, c);
}

LaurentPolynomial LaurentPolynomial::monomial(int dim, const ExponentVector& e, const Rational& c) {
  LaurentPolynomial p(dim);
  if (c != 0) p.terms_.push_back({e, c});
  return p;
}

LaurentPolynomial LaurentPolynomial::variable(int dim, int index) {
  ExponentVector e;
  e[index] = 1;
  return monomial(dim, e);
}

LaurentPolynomial LaurentPolynomial::from_terms(int dim, std::vector<Term> terms) {
  LaurentPolynomial p(dim);
  sort_and_combine(terms);
  p.terms_ = std::move(terms);
  return p;
}

bool LaurentPolynomial::is_one() const {
  return terms_.size() == 1 && terms_[0].exp.is_zero() && terms_[0].coeff == 1;
}

Rational LaurentPolynomial::coeff(const ExponentVector& e) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), e,
                             [](const Term& t, const ExponentVector& k) { return t.exp < k; });
  if (it != terms_.end() && it->exp == e) return it->coeff;
  return 0;
}

ExponentVector LaurentPolynomial::min_exponent() const {
  ExponentVector m = terms_.at(0).exp;
  for (const auto& t : terms_)
    for (int i = 0; i < kMaxDim; ++i) m[i] = std::min(m[i], t.exp[i]);
  return m;
}

ExponentVector LaurentPolynomial::max_exponent() const {
  ExponentVector m = terms_.at(0).exp;
  for (const auto& t : terms_)
    for (int i = 0; i < kMaxDim; ++i) m[i] = std::max(m[i], t.exp[i]);
  return m;
}

LaurentPolynomial LaurentPolynomial::shifted(const ExponentVector& by) const {
  LaurentPolynomial r = *this;
  for (auto& t : r.terms_) t.exp = t.exp + by;  // order preserved
  return r;
}

LaurentPolynomial LaurentPolynomial::scaled(const Rational& c) const {
  if (c == 0) return LaurentPolynomial(dim_);
  LaurentPolynomial r = *this;
  for (auto& t : r.terms_) t.coeff *= c;
  return r;
}

LaurentPolynomial LaurentPolynomial::pow(unsigned k) const {
  LaurentPolynomial result = constant(dim_, 1);
  LaurentPolynomial base = *this;
  while (k) {
    if (k & 1u) result = result * base;
    k >>= 1u;
    if (k) base = base * base;
  }
  return result;
}

LaurentPolynomial LaurentPolynomial::with_dim(int dim) const {
  LaurentPolynomial r(dim);
  for (const auto& t : terms_)
    for (int i = dim; i < kMaxDim; ++i)
      if (t.exp[i] != 0)
        throw LaurentError(LaurentError::Kind::DimensionMismatch, "cannot drop a used variable");
  r.terms_ = terms_;
  return r;
}

Rational LaurentPolynomial::evaluate(std::span<const Rational> point) const {
  if (static_cast<int>(point.size()) < dim_)
    throw LaurentError(LaurentError::Kind::DimensionMismatch, "point has too few coordinates");
  Rational sum = 0;
  for (const auto& t : terms_) {
    Rational v = t.coeff;
    for (int i = 0; i < dim_; ++i) {
      int e = t.exp[i];
      if (e == 0) continue;
      if (e < 0 && point[i] == 0)
        throw LaurentError(LaurentError::Kind::PoleAtPoint, "negative power of zero");
      Rational base = e > 0 ? point[i] : Rational(1) / point[i];
      Rational pw;
      mpz_pow_ui(pw.get_num_mpz_t(), base.get_num_mpz_t(), static_cast<unsigned long>(std::abs(e)));
      mpz_pow_ui(pw.get_den_mpz_t(), base.get_den_mpz_t(), static_cast<unsigned long>(std::abs(e)));
      pw.canonicalize();
      v *= pw;
    }
    sum += v;
  }
  return sum;
}

void LaurentPolynomial::check_dim(const LaurentPolynomial& o) const {
  if (dim_ != o.dim_)
    throw LaurentError(LaurentError::Kind::DimensionMismatch, "polynomial dimensions differ");
}

void LaurentPolynomial::combine_sorted(const LaurentPolynomial& o, int sign) {
  check_dim(o);
  std::vector<Term> out;
  out.reserve(terms_.size() + o.terms_.size());
  auto a = terms_.begin();
  auto b = o.terms_.begin();
  while (a != terms_.end() || b != o.terms_.end()) {
    if (b == o.terms_.end() || (a != terms_.end() && a->exp < b->exp)) {
      out.push_back(std::move(*a++));
    } else if (a == terms_.end() || b->exp < a->exp) {
      out.push_back({b->exp, sign > 0 ? b->coeff : Rational(-b->coeff)});
      ++b;
    } else {
      Rational c = sign > 0 ? Rational(a->coeff + b->coeff) : Rational(a->coeff - b->coeff);
      if (c != 0) out.push_back({a->exp, std::move(c)});
      ++a;
      ++b;
    }
  }
  terms_ = std::move(out);
}

LaurentPolynomial LaurentPolynomial::operator-() const {
  LaurentPolynomial r = *this;
  for (auto& t : r.terms_) t.coeff = -t.coeff;
  return r;
}

LaurentPolynomial& LaurentPolynomial::operator+=(const LaurentPolynomial& o) {
  combine_sorted(o, +1);
  return *this;
}

LaurentPolynomial& LaurentPolynomial::operator-=(const LaurentPolynomial& o) {
  combine_sorted(o, -1);
  return *this;
}

LaurentPolynomial operator*(const LaurentPolynomial& a, const LaurentPolynomial& b) {
  a.check_dim(b);
  LaurentPolynomial r(a.dim_);
  if (a.is_zero() || b.is_zero()) return r;
  if (a.terms_.size() == 1 || b.terms_.size() == 1) {
    const auto& mono = a.terms_.size() == 1 ? a.terms_[0] : b.terms_[0];
    const auto& other = a.terms_.size() == 1 ? b : a;
    r.terms_.reserve(other.terms_.size());
    for (const auto& t : other.terms_) r.terms_.push_back({t.exp + mono.exp, t.coeff * mono.coeff});
    return r;
  }
  std::unordered_map<ExponentVector, Rational, ExponentHash> acc;
  acc.reserve(a.terms_.size() * b.terms_.size());
  Rational prod;
  for (const auto& s : a.terms_) {
    for (const auto& t : b.terms_) {
      mpq_mul(prod.get_mpq_t(), s.coeff.get_mpq_t(), t.coeff.get_mpq_t());
      auto [it, inserted] = acc.try_emplace(s.exp + t.exp, prod);
      if (!inserted) it->second += prod;
    }
  }
  r.terms_.reserve(acc.size());
  for (auto& [e, c] : acc)
    if (c != 0) r.terms_.push_back({e, std::move(c)});
  std::sort(r.terms_.begin(), r.terms_.end(),
            [](const Term& x, const Term& y) { return x.exp < y.exp; });
  return r;
}

bool operator==(const LaurentPolynomial& a, const LaurentPolynomial& b) {
  if (a.dim_ != b.dim_ || a.terms_.size() != b.terms_.size()) return false;
  for (std::size_t i = 0; i < a.terms_.size(); ++i)
    if (a.terms_[i].exp != b.terms_[i].exp || a.terms_[i].coeff != b.terms_[i].coeff) return false;
  return true;
}

std::string LaurentPolynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& t : terms_) {
    Rational c = t.coeff;
    if (first) {
      if (c < 0) {
        os << '-';
        c = -c;
      }
    } else {
      os << (c < 0 ? " - " : " + ");
      if (c < 0) c = -c;
    }
    first = false;
    bool has_var = !t.exp.is_zero();
    if (!has_var || c != 1) {
      os << c.get_str();
      if (has_var) os << '*';
    }
    bool first_var = true;
    for (int i = 0; i < dim_; ++i) {
      if (t.exp[i] == 0) continue;
      if (!first_var) os << '*';
      first_var = false;
      os << kVarNames[i];
      if (t.exp[i] != 1) os << '^' << t.exp[i];
    }
  }
  return os.str();
}

namespace {

class PolyParser {
 public:
  PolyParser(std::string_view s, int dim) : s_(s), dim_(dim) {}

  LaurentPolynomial parse_all() {
    LaurentPolynomial p = parse_poly();
    skip_ws();
    if (pos_ != s_.size()) fail("trailing characters");
    return p;
  }

  LaurentPolynomial parse_poly() {
    std::vector<Term> terms;
    skip_ws();
    int sign = 1;
    if (peek() == '-') {
      sign = -1;
      ++pos_;
    } else if (peek() == '+') {
      ++pos_;
    }
    terms.push_back(parse_term(sign));
    for (;;) {
      skip_ws();
      char c = peek();
      if (c != '+' && c != '-') break;
      ++pos_;
      terms.push_back(parse_term(c == '-' ? -1 : 1));
    }
    return LaurentPolynomial::from_terms(dim_, std::move(terms));
  }

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }
  std::size_t pos() const { return pos_; }
  void expect(char c) {
    skip_ws();
    if (peek() != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw LaurentError(LaurentError::Kind::BadSyntax,
                       "polynomial parse error at " + std::to_string(pos_) + ": " + msg);
  }

  std::string digits() {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected digits");
    return std::string(s_.substr(start, pos_ - start));
  }

  int var_index(char c) const {
    for (int i = 0; i < dim_; ++i)
      if (kVarNames[i] == c) return i;
    return -1;
  }

  Term parse_term(int sign) {
    skip_ws();
    Term t{ExponentVector{}, Rational(sign)};
    bool need_factor = true;
    if (std::isdigit(static_cast<unsigned char>(peek()))) {
      Rational c{Integer(digits())};
      skip_ws();
      if (peek() == '/') {
        ++pos_;
        Integer d(digits());
        if (d == 0) fail("zero denominator");
        c /= Rational(d);
      }
      t.coeff *= c;
      skip_ws();
      if (peek() != '*') need_factor = false;
      else ++pos_;
    }
    if (!need_factor) return t;
    for (;;) {
      skip_ws();
      int idx = var_index(peek());
      if (idx < 0) fail("expected variable");
      ++pos_;
      int e = 1;
      skip_ws();
      if (peek() == '^') {
        ++pos_;
        skip_ws();
        int s = 1;
        if (peek() == '-') {
          s = -1;
          ++pos_;
        }
        e = s * std::stoi(digits());
      }
      t.exp[idx] += e;
      skip_ws();
      if (peek() != '*') break;
      ++pos_;
    }
    return t;
  }

  std::string_view s_;
  std::size_t pos_ = 0;
  int dim_;
};

}  // namespace

LaurentPolynomial LaurentPolynomial::parse(std::string_view text, int dim) {
  return PolyParser(text, dim).parse_all();
}

PrimitiveDecomposition primitive_decomposition(const LaurentPolynomial& p) {
  if (p.is_zero()) throw LaurentError(LaurentError::Kind::DivisionByZero, "zero polynomial");
  ExponentVector shift = p.min_exponent();
  Integer lcm_den = 1;
  Integer g = 0;
  for (const auto& t : p.terms()) mpz_lcm(lcm_den.get_mpz_t(), lcm_den.get_mpz_t(), t.coeff.get_den_mpz_t());
  std::vector<Term> terms;
  terms.reserve(p.size());
  for (const auto& t : p.terms()) {
    Integer v = t.coeff.get_num() * (lcm_den / t.coeff.get_den());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
    terms.push_back({t.exp - shift, Rational(v)});
  }
  if (terms.front().coeff < 0) g = -g;
  for (auto& t : terms) t.coeff /= Rational(g);
  Rational scalar = Rational(g) / Rational(lcm_den);
  scalar.canonicalize();
  return {scalar, shift, LaurentPolynomial::from_terms(p.dim(), std::move(terms))};
}

RationalFunction::RationalFunction(int dim)
    : num_(dim), den_(LaurentPolynomial::constant(dim, 1)) {}

RationalFunction::RationalFunction(const LaurentPolynomial& p)
    : num_(p), den_(LaurentPolynomial::constant(p.dim(), 1)) {
  normalize();
}

RationalFunction::RationalFunction(LaurentPolynomial num, LaurentPolynomial den)
    : num_(std::move(num)), den_(std::move(den)) {
  if (num_.dim() != den_.dim())
    throw LaurentError(LaurentError::Kind::DimensionMismatch, "numerator/denominator dimensions differ");
  normalize();
}

void RationalFunction::normalize() {
  if (den_.is_zero()) throw LaurentError(LaurentError::Kind::DivisionByZero, "zero denominator");
  const int d = num_.dim();
  if (num_.is_zero()) {
    den_ = LaurentPolynomial::constant(d, 1);
    return;
  }
  auto np = primitive_decomposition(num_);
  auto dp = primitive_decomposition(den_);
  Rational scalar = np.scalar / dp.scalar;
  ExponentVector e = np.shift - dp.shift;
  LaurentPolynomial ncore = std::move(np.primitive);
  LaurentPolynomial dcore = std::move(dp.primitive);
  if (ncore == dcore) {
    ncore = LaurentPolynomial::constant(d, 1);
    dcore = ncore;
  } else if (ncore.size() > 1 && dcore.size() > 1) {
    LaurentPolynomial g = polynomial_gcd(ncore, dcore);
    if (g.size() > 1) {
      auto nq = primitive_decomposition(*divide_exact(ncore, g));
      auto dq = primitive_decomposition(*divide_exact(dcore, g));
      scalar *= nq.scalar / dq.scalar;
      e = e + nq.shift - dq.shift;
      ncore = std::move(nq.primitive);
      dcore = std::move(dq.primitive);
    }
  }
  ExponentVector pos, neg;
  for (int i = 0; i < kMaxDim; ++i) {
    pos[i] = std::max(e[i], 0);
    neg[i] = std::max(-e[i], 0);
  }
  // Joint content 1 with integer coefficients: scalar = a/b goes as a*ncore / b*dcore.
  num_ = ncore.shifted(pos).scaled(Rational(scalar.get_num()));
  den_ = dcore.shifted(neg).scaled(Rational(scalar.get_den()));
}

RationalFunction RationalFunction::inverse() const {
  if (num_.is_zero()) throw LaurentError(LaurentError::Kind::DivisionByZero, "inverse of zero");
  return RationalFunction(den_, num_);
}

RationalFunction RationalFunction::pow(int k) const {
  if (k < 0) return inverse().pow(-k);
  RationalFunction r(dim());
  r.num_ = num_.pow(static_cast<unsigned>(k));
  r.den_ = den_.pow(static_cast<unsigned>(k));
  r.normalize();
  return r;
}

Rational RationalFunction::evaluate(std::span<const Rational> point) const {
  Rational d = den_.evaluate(point);
  if (d == 0) throw LaurentError(LaurentError::Kind::PoleAtPoint, "denominator vanishes at point");
  return num_.evaluate(point) / d;
}

RationalFunction operator+(const RationalFunction& a, const RationalFunction& b) {
  if (a.den_ == b.den_) return RationalFunction(a.num_ + b.num_, a.den_);
  return RationalFunction(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

RationalFunction operator-(const RationalFunction& a, const RationalFunction& b) {
  if (a.den_ == b.den_) return RationalFunction(a.num_ - b.num_, a.den_);
  return RationalFunction(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
}

RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
  return RationalFunction(a.num_ * b.num_, a.den_ * b.den_);
}

RationalFunction operator/(const RationalFunction& a, const RationalFunction& b) {
  if (b.is_zero()) throw LaurentError(LaurentError::Kind::DivisionByZero, "division by zero");
  return RationalFunction(a.num_ * b.den_, a.den_ * b.num_);
}

RationalFunction RationalFunction::operator-() const {
  RationalFunction r = *this;
  r.num_ = -r.num_;
  return r;
}

std::string RationalFunction::to_string() const {
  if (den_.is_one()) return num_.to_string();
  return "(" + num_.to_string() + ")/(" + den_.to_string() + ")";
}

RationalFunction RationalFunction::parse(std::string_view text, int dim) {
  PolyParser p(text, dim);
  p.skip_ws();
  if (p.peek() != '(') return RationalFunction(p.parse_all());
  // "(num)/(den)" or a parenthesized polynomial.
  p.expect('(');
  LaurentPolynomial num = p.parse_poly();
  p.expect(')');
  p.skip_ws();
  if (p.peek() == '\0') return RationalFunction(num);
  p.expect('/');
  p.expect('(');
  LaurentPolynomial den = p.parse_poly();
  p.expect(')');
  p.skip_ws();
  if (p.peek() != '\0')
    throw LaurentError(LaurentError::Kind::BadSyntax, "trailing characters after rational function");
  if (den.is_zero()) throw LaurentError(LaurentError::Kind::DivisionByZero, "zero denominator");
  return RationalFunction(std::move(num), std::move(den));
}

bool rat_equal(const RationalFunction& f, const RationalFunction& g) {
  if (f.dim() != g.dim())
    throw LaurentError(LaurentError::Kind::DimensionMismatch, "rational function dimensions differ");
  if (f == g) return true;
  return f.numerator() * g.denominator() == g.numerator() * f.denominator();
}

namespace {

// p(images) = numerator / (prod_i N_i^{low_i} D_i^{high_i}) where images[i] = N_i / D_i.
struct SubstitutedParts {
  LaurentPolynomial numerator;
  std::vector<int> low;   // power of N_i in the implied denominator
  std::vector<int> high;  // power of D_i in the implied denominator
};

SubstitutedParts substitute_parts(const LaurentPolynomial& p, std::span<const RationalFunction> images) {
  const std::size_t k = std::min<std::size_t>(images.size(), static_cast<std::size_t>(p.dim()));
  const int out_dim = images.empty() ? p.dim() : images[0].dim();
  SubstitutedParts r{LaurentPolynomial(out_dim), std::vector<int>(k, 0), std::vector<int>(k, 0)};
  if (p.is_zero()) return r;
  for (std::size_t i = 0; i < k; ++i) {
    for (const auto& t : p.terms()) {
      r.low[i] = std::max(r.low[i], -t.exp[i]);
      r.high[i] = std::max(r.high[i], t.exp[i]);
    }
    if (r.low[i] > 0 && images[i].is_zero())
      throw LaurentError(LaurentError::Kind::ZeroImage, "zero substituted at a negative exponent");
  }
  // Cached powers N_i^a and D_i^b.
  std::vector<std::vector<LaurentPolynomial>> npow(k), dpow(k);
  for (std::size_t i = 0; i < k; ++i) {
    const int span_i = r.low[i] + r.high[i];
    npow[i].push_back(LaurentPolynomial::constant(out_dim, 1));
    dpow[i].push_back(LaurentPolynomial::constant(out_dim, 1));
    for (int a = 1; a <= span_i; ++a) {
      npow[i].push_back(npow[i].back() * images[i].numerator());
      dpow[i].push_back(dpow[i].back() * images[i].denominator());
    }
  }
  std::vector<Term> acc;
  for (const auto& t : p.terms()) {
    ExponentVector rest;
    for (int j = static_cast<int>(k); j < p.dim(); ++j) rest[j] = t.exp[j];
    LaurentPolynomial term = LaurentPolynomial::monomial(out_dim, rest, t.coeff);
    for (std::size_t i = 0; i < k; ++i) {
      const int e = t.exp[i];
      const auto& a = npow[i][static_cast<std::size_t>(e + r.low[i])];
      const auto& b = dpow[i][static_cast<std::size_t>(r.high[i] - e)];
      if (!a.is_one()) term = term * a;
      if (!b.is_one()) term = term * b;
    }
    for (const auto& tt : term.terms()) acc.push_back(tt);
  }
  r.numerator = LaurentPolynomial::from_terms(out_dim, std::move(acc));
  return r;
}

}  // namespace

RationalFunction substitute(const LaurentPolynomial& p, std::span<const RationalFunction> images) {
  auto parts = substitute_parts(p, images);
  const int out_dim = parts.numerator.dim();
  LaurentPolynomial den = LaurentPolynomial::constant(out_dim, 1);
  for (std::size_t i = 0; i < parts.low.size(); ++i) {
    if (parts.low[i]) den = den * images[i].numerator().pow(static_cast<unsigned>(parts.low[i]));
    if (parts.high[i]) den = den * images[i].denominator().pow(static_cast<unsigned>(parts.high[i]));
  }
  return RationalFunction(std::move(parts.numerator), std::move(den));
}

FactoredTerm substitute_factored(const LaurentPolynomial& p, std::span<const RationalFunction> images) {
  auto parts = substitute_parts(p, images);
  FactoredTerm out{std::move(parts.numerator), {}};
  for (std::size_t i = 0; i < parts.low.size(); ++i) {
    for (int a = 0; a < parts.low[i]; ++a) out.denominator_factors.push_back(images[i].numerator());
    for (int a = 0; a < parts.high[i]; ++a) out.denominator_factors.push_back(images[i].denominator());
  }
  return out;
}

RationalFunction substitute(const RationalFunction& f, std::span<const RationalFunction> images) {
  auto top = substitute_parts(f.numerator(), images);
  auto bot = substitute_parts(f.denominator(), images);
  const int out_dim = top.numerator.dim();
  // f(r) = top.num * implied_den(bot) / (bot.num * implied_den(top)); cancel shared powers.
  LaurentPolynomial num = std::move(top.numerator);
  LaurentPolynomial den = std::move(bot.numerator);
  for (std::size_t i = 0; i < top.low.size(); ++i) {
    int dn = bot.low[i] - top.low[i];
    int dd = bot.high[i] - top.high[i];
    const auto& ni = images[i].numerator();
    const auto& di = images[i].denominator();
    if (dn > 0) num = num * ni.pow(static_cast<unsigned>(dn));
    if (dn < 0) den = den * ni.pow(static_cast<unsigned>(-dn));
    if (dd > 0) num = num * di.pow(static_cast<unsigned>(dd));
    if (dd < 0) den = den * di.pow(static_cast<unsigned>(-dd));
  }
  if (den.is_zero()) throw LaurentError(LaurentError::Kind::DivisionByZero, "substitution annihilates denominator");
  (void)out_dim;
  return RationalFunction(std::move(num), std::move(den));
}

RationalFunction sum_over_common_denominator(std::span<const FactoredTerm> terms, int dim) {
  std::vector<LaurentPolynomial> cores;
  std::vector<int> max_mult;
  struct Prepared {
    LaurentPolynomial numerator;
    std::vector<int> mult;
  };
  std::vector<Prepared> prepared;
  prepared.reserve(terms.size());
  for (const auto& t : terms) {
    Prepared p{t.numerator, {}};
    for (const auto& f : t.denominator_factors) {
      auto parts = primitive_decomposition(f);
      p.numerator = p.numerator.shifted(-parts.shift).scaled(Rational(1) / parts.scalar);
      if (parts.primitive.is_one()) continue;
      auto it = std::find(cores.begin(), cores.end(), parts.primitive);
      auto idx = static_cast<std::size_t>(it - cores.begin());
      if (it == cores.end()) {
        cores.push_back(std::move(parts.primitive));
        max_mult.push_back(0);
      }
      if (p.mult.size() < cores.size()) p.mult.resize(cores.size(), 0);
      ++p.mult[idx];
    }
    prepared.push_back(std::move(p));
  }
  for (auto& p : prepared) {
    p.mult.resize(cores.size(), 0);
    for (std::size_t i = 0; i < cores.size(); ++i) max_mult[i] = std::max(max_mult[i], p.mult[i]);
  }
  // powers[i][k] = cores[i]^k
  std::vector<std::vector<LaurentPolynomial>> powers(cores.size());
  for (std::size_t i = 0; i < cores.size(); ++i) {
    powers[i].push_back(LaurentPolynomial::constant(dim, 1));
    for (int k = 1; k <= max_mult[i]; ++k) powers[i].push_back(powers[i].back() * cores[i]);
  }
  LaurentPolynomial total(dim);
  for (const auto& p : prepared) {
    LaurentPolynomial num = p.numerator;
    for (std::size_t i = 0; i < cores.size(); ++i) {
      int missing = max_mult[i] - p.mult[i];
      if (missing > 0) num = num * powers[i][static_cast<std::size_t>(missing)];
    }
    total += num;
  }
  LaurentPolynomial den = LaurentPolynomial::constant(dim, 1);
  for (std::size_t i = 0; i < cores.size(); ++i)
    if (max_mult[i] > 0) den = den * powers[i][static_cast<std::size_t>(max_mult[i])];
  return RationalFunction(std::move(total), std::move(den));
}

}  // namespace orbitsum
