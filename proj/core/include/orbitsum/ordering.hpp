// Leading-term choices for the polynomials occurring in group elements, and
// their realization as a strict rational weight order.

#ifndef ORBITSUM_ORDERING_HPP
#define ORBITSUM_ORDERING_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "orbitsum/geometry.hpp"
#include "orbitsum/laurent.hpp"
#include "orbitsum/walkgroup.hpp"

namespace orbitsum {

struct PoolEntry {
  LaurentPolynomial poly;          // primitive, at least two terms, t-exponent 0
  std::vector<std::string> users;  // words of the group elements using it
};

struct PolynomialPool {
  std::vector<PoolEntry> entries;

  // Index of the entry equal to primitive_decomposition(p).primitive, if any.
  std::optional<std::size_t> find(const LaurentPolynomial& primitive) const;
};

/// One selected support exponent per pool entry.
struct LeadingTermChoice {
  std::vector<std::size_t> term_index;  // index into entry.poly.terms()
  std::vector<ExponentVector> exponent;
};

/// A strict weight order: w.c >= 1 on the base cone generators and
/// w.(m - lt) >= 1 for every non-chosen support exponent m.
struct WeightOrder {
  RationalVec4 w{};
  std::string tie_break = "lex";
};

PolynomialPool collect_polynomials(const GroupResult& group);

// Number of choices in the full Cartesian product (saturating).
std::uint64_t choice_count(const PolynomialPool& pool);

// Deterministic stream over all choices: entries are digits, entry 0 most
// significant, each digit running over the entry's support in lex order.
class ChoiceEnumerator {
 public:
  explicit ChoiceEnumerator(const PolynomialPool& pool);
  // Next choice, or nullopt when exhausted.
  std::optional<LeadingTermChoice> next();

 private:
  const PolynomialPool& pool_;
  std::vector<std::size_t> digits_;
  bool done_ = false;
};

std::vector<LeadingTermChoice> enumerate_choices(const PolynomialPool& pool);

// Position of a choice in the ChoiceEnumerator stream.
std::uint64_t choice_index(const PolynomialPool& pool, const LeadingTermChoice& choice);
LeadingTermChoice choice_from_indices(const PolynomialPool& pool, std::vector<std::size_t> term_index);

// Solves for a weight; entries beyond choice.term_index.size() are
// unconstrained (used for pruning partial choices).
std::optional<WeightOrder> realize_order(const PolynomialPool& pool, const LeadingTermChoice& choice,
                                         const Cone& base);

// Visits, in stream order, every full choice whose every prefix admits a
// weight order against base. The visitor returns false to stop.
void for_each_compatible_choice(const PolynomialPool& pool, const Cone& base,
                                const std::function<bool(const LeadingTermChoice&, const WeightOrder&)>& visit);

// Exact re-check of the WeightOrder invariants.
bool weight_is_valid(const PolynomialPool& pool, const LeadingTermChoice& choice, const Cone& base,
                     const WeightOrder& order);

// Leading exponent of a polynomial under a choice: the exponent of a monomial,
// or the chosen term of its pool entry shifted back by its monomial factor.
std::optional<ExponentVector> leading_exponent(const LaurentPolynomial& p, const PolynomialPool& pool,
                                               const LeadingTermChoice& choice);

}  // namespace orbitsum

#endif  // ORBITSUM_ORDERING_HPP
