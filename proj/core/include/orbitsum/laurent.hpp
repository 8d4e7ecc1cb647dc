// Exact multivariate Laurent polynomials and rational functions over Q.
//
// Variables are x, y, z and optionally t. Every exponent vector carries four
// slots; a polynomial of dimension 3 keeps the t slot at zero.

#ifndef ORBITSUM_LAURENT_HPP
#define ORBITSUM_LAURENT_HPP

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace orbitsum {

using Integer = mpz_class;
using Rational = mpq_class;

inline constexpr int kMaxDim = 4;

struct ExponentVector {
  std::array<int, kMaxDim> v{};

  constexpr int& operator[](std::size_t i) { return v[i]; }
  constexpr int operator[](std::size_t i) const { return v[i]; }

  friend constexpr auto operator<=>(const ExponentVector&, const ExponentVector&) = default;

  friend constexpr ExponentVector operator+(ExponentVector a, const ExponentVector& b) {
    for (std::size_t i = 0; i < kMaxDim; ++i) a.v[i] += b.v[i];
    return a;
  }
  friend constexpr ExponentVector operator-(ExponentVector a, const ExponentVector& b) {
    for (std::size_t i = 0; i < kMaxDim; ++i) a.v[i] -= b.v[i];
    return a;
  }
  constexpr ExponentVector operator-() const {
    ExponentVector r;
    for (std::size_t i = 0; i < kMaxDim; ++i) r.v[i] = -v[i];
    return r;
  }
  friend constexpr ExponentVector operator*(int k, ExponentVector a) {
    for (auto& c : a.v) c *= k;
    return a;
  }
  constexpr bool is_zero() const { return v == std::array<int, kMaxDim>{}; }
};

struct ExponentHash {
  std::size_t operator()(const ExponentVector& e) const noexcept {
    std::uint64_t h = 0x9e3779b97f4a7c15ULL;
    for (int c : e.v) h = (h ^ static_cast<std::uint32_t>(c)) * 0x100000001b3ULL;
    return static_cast<std::size_t>(h);
  }
};

class LaurentError : public std::runtime_error {
 public:
  enum class Kind { DimensionMismatch, ZeroImage, PoleAtPoint, DivisionByZero, BadSyntax };
  LaurentError(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

struct Term {
  ExponentVector exp;
  Rational coeff;
};

/// Sparse Laurent polynomial with rational coefficients. Terms are kept
/// sorted by exponent (lexicographic over x, y, z, t) with no zero entries.
class LaurentPolynomial {
 public:
  explicit LaurentPolynomial(int dim = 3);

  static LaurentPolynomial constant(int dim, const Rational& c);
  static LaurentPolynomial monomial(int dim, const ExponentVector& e, const Rational& c = 1);
  static LaurentPolynomial variable(int dim, int index);
  // Builds from arbitrary (possibly repeated, unsorted, zero) terms.
  static LaurentPolynomial from_terms(int dim, std::vector<Term> terms);

  int dim() const { return dim_; }
  std::span<const Term> terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_monomial() const { return terms_.size() == 1; }
  bool is_one() const;
  // Coefficient at e, zero when absent.
  Rational coeff(const ExponentVector& e) const;
  const Term& leading_lex() const { return terms_.front(); }

  // Componentwise min / max over the support. Requires nonzero.
  ExponentVector min_exponent() const;
  ExponentVector max_exponent() const;

  LaurentPolynomial shifted(const ExponentVector& by) const;
  LaurentPolynomial scaled(const Rational& c) const;
  LaurentPolynomial pow(unsigned k) const;
  // Changes the declared dimension. Shrinking requires the dropped slots to be zero.
  LaurentPolynomial with_dim(int dim) const;

  Rational evaluate(std::span<const Rational> point) const;

  LaurentPolynomial operator-() const;
  LaurentPolynomial& operator+=(const LaurentPolynomial& o);
  LaurentPolynomial& operator-=(const LaurentPolynomial& o);
  friend LaurentPolynomial operator+(LaurentPolynomial a, const LaurentPolynomial& b) { return a += b; }
  friend LaurentPolynomial operator-(LaurentPolynomial a, const LaurentPolynomial& b) { return a -= b; }
  friend LaurentPolynomial operator*(const LaurentPolynomial& a, const LaurentPolynomial& b);
  friend bool operator==(const LaurentPolynomial& a, const LaurentPolynomial& b);

  std::string to_string() const;
  static LaurentPolynomial parse(std::string_view text, int dim = 3);

 private:
  void check_dim(const LaurentPolynomial& o) const;
  void combine_sorted(const LaurentPolynomial& o, int sign);

  int dim_;
  std::vector<Term> terms_;
};

// Primitive part: integer coefficients with content 1, support shifted so the
// componentwise minimum exponent is zero, and positive lexicographically-first
// coefficient. Two polynomials agree up to monomial and scalar factors iff
// their primitive parts are identical.
struct PrimitiveDecomposition {
  Rational scalar;
  ExponentVector shift;
  LaurentPolynomial primitive;
};
PrimitiveDecomposition primitive_decomposition(const LaurentPolynomial& p);

/// Quotient of two Laurent polynomials in normal form: numerator and
/// denominator are coprime honest polynomials (non-negative exponents),
/// coefficients are integers with joint content 1 and the
/// lexicographically-first coefficient of the denominator is positive.
class RationalFunction {
 public:
  explicit RationalFunction(int dim = 3);
  RationalFunction(const LaurentPolynomial& p);  // NOLINT: polynomials embed implicitly
  RationalFunction(LaurentPolynomial num, LaurentPolynomial den);

  static RationalFunction variable(int dim, int index) {
    return RationalFunction(LaurentPolynomial::variable(dim, index));
  }

  int dim() const { return num_.dim(); }
  const LaurentPolynomial& numerator() const { return num_; }
  const LaurentPolynomial& denominator() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const { return den_.is_monomial(); }

  // Numerator / denominator as monomial shift times primitive core.
  PrimitiveDecomposition numerator_parts() const { return primitive_decomposition(num_); }
  PrimitiveDecomposition denominator_parts() const { return primitive_decomposition(den_); }

  RationalFunction inverse() const;
  RationalFunction pow(int k) const;

  Rational evaluate(std::span<const Rational> point) const;

  friend RationalFunction operator+(const RationalFunction& a, const RationalFunction& b);
  friend RationalFunction operator-(const RationalFunction& a, const RationalFunction& b);
  friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b);
  friend RationalFunction operator/(const RationalFunction& a, const RationalFunction& b);
  RationalFunction operator-() const;

  // Structural identity of normal forms.
  friend bool operator==(const RationalFunction& a, const RationalFunction& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }

  std::string to_string() const;
  static RationalFunction parse(std::string_view text, int dim = 3);

 private:
  void normalize();

  LaurentPolynomial num_;
  LaurentPolynomial den_;
};

// f.num * g.den - g.num * f.den == 0.
bool rat_equal(const RationalFunction& f, const RationalFunction& g);

// Substitutes images[i] for variable i (i < p.dim()). Variables beyond
// images.size() are left in place.
RationalFunction substitute(const LaurentPolynomial& p, std::span<const RationalFunction> images);
RationalFunction substitute(const RationalFunction& f, std::span<const RationalFunction> images);

// Exact quotient a / b when b divides a in the Laurent ring over Q (monomials
// are units); nullopt otherwise.
std::optional<LaurentPolynomial> divide_exact(const LaurentPolynomial& a, const LaurentPolynomial& b);

// Greatest common divisor up to units (monomials and scalars), returned as a
// primitive polynomial. gcd(0, 0) = 0.
LaurentPolynomial polynomial_gcd(const LaurentPolynomial& a, const LaurentPolynomial& b);

// A numerator over a product of denominator factors.
struct FactoredTerm {
  LaurentPolynomial numerator;
  std::vector<LaurentPolynomial> denominator_factors;
};

// p(images) as a numerator over the implied product of image numerators (for
// negative exponents) and image denominators (for positive ones), unreduced.
FactoredTerm substitute_factored(const LaurentPolynomial& p, std::span<const RationalFunction> images);

// Sums terms over the least common multiple of their denominators, where
// factors are compared up to monomial and scalar multiples (primitive parts).
RationalFunction sum_over_common_denominator(std::span<const FactoredTerm> terms, int dim);

}  // namespace orbitsum

#endif  // ORBITSUM_LAURENT_HPP
