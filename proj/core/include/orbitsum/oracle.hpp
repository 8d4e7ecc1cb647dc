// Brute-force walk counts and truncated checks of the orbit-sum identity and
// of the positive-part formula for xyzF.

#ifndef ORBITSUM_ORACLE_HPP
#define ORBITSUM_ORACLE_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "orbitsum/laurent.hpp"
#include "orbitsum/ordering.hpp"
#include "orbitsum/stepmodel.hpp"
#include "orbitsum/walkgroup.hpp"

namespace orbitsum {

// f(i,j,k;n): walks of length n from the origin ending at (i,j,k) that never
// leave the octant.
class WalkTable {
 public:
  WalkTable(const StepSet& s, int order);

  int order() const { return order_; }
  // Zero outside 0 <= i,j,k <= n <= order.
  const Integer& count(int i, int j, int k, int n) const;
  Integer total(int n) const;
  // Q_n(x,y,z) = sum f(i,j,k;n) x^i y^j z^k.
  LaurentPolynomial generating_polynomial(int n) const;

 private:
  int order_;
  std::vector<std::vector<Integer>> levels_;  // level n is (n+1)^3, index (i*(n+1)+j)*(n+1)+k
};

WalkTable walk_counts(const StepSet& s, int order);

// Compares t^n coefficients of both sides of the orbit-sum identity for
// n <= n_max. Returns the first failing n, or nullopt when all hold.
std::optional<int> orbit_identity_failure(const StepSet& s, const GroupResult& group, int n_max);
bool orbit_identity_check(const StepSet& s, const GroupResult& group, int n_max);

class OracleError : public std::runtime_error {
 public:
  enum class Kind { WeightBoundOverflow, WeightNotStrict };
  OracleError(Kind k, const std::string& what) : std::runtime_error(what), kind_(k) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

struct CoefficientMismatch {
  std::array<int, 3> exponent{};  // of x, y, z in P^n * OS
  int n = 0;
  Rational expected;  // f(i-1, j-1, k-1; n)
  Rational actual;
};

struct OracleReport {
  std::uint32_t model_id = 0;
  int n_max = 0;
  int box = 0;           // exponents of x, y, z range over [-box, box]
  Rational bound;        // weight bound used for truncation
  std::uint64_t max_terms = 0;
  int identity_n = 0;
  bool orbit_identity = false;
  std::optional<bool> positive_part;  // unset when no weight order is available
  std::optional<CoefficientMismatch> mismatch;
  bool pass() const { return orbit_identity && positive_part.value_or(true); }
};

struct PositivePartResult {
  bool pass = false;
  int box = 0;
  Rational bound;
  std::uint64_t max_terms = 0;
  std::optional<CoefficientMismatch> mismatch;
};

// Expands P^n * OS in the order given by the weight, exact on
// [-(n_max+2), n_max+2]^3, and compares its positive part with the walk counts.
// Throws OracleError when the truncated series would exceed term_limit terms.
PositivePartResult positive_part_check(const StepSet& s, const GroupResult& group, const WeightOrder& weight,
                                       int n_max, std::uint64_t term_limit = 20'000'000);

std::string oracle_report_to_json(const OracleReport& r, int indent = -1);

}  // namespace orbitsum

#endif  // ORBITSUM_ORACLE_HPP
