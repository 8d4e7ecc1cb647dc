// Rational polyhedral cones in Z^4 and an exact phase-1 simplex solver.

#ifndef ORBITSUM_GEOMETRY_HPP
#define ORBITSUM_GEOMETRY_HPP

#include <array>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "orbitsum/laurent.hpp"

namespace orbitsum {

using Vec4 = std::array<long long, 4>;
using RationalVec4 = std::array<Rational, 4>;

Vec4 to_vec4(const ExponentVector& e);
ExponentVector to_exponent(const Vec4& v);
RationalVec4 to_rational(const Vec4& v);
Rational dot(const RationalVec4& a, const Vec4& b);
std::string vec_to_string(const Vec4& v);

// --- exact linear feasibility -------------------------------------------

enum class Relation { LessEqual, GreaterEqual, Equal };

struct LinearConstraint {
  std::vector<Rational> coeffs;  // one per unknown
  Relation relation = Relation::Equal;
  Rational rhs;
};

/// Unknowns are non-negative unless flagged free. Strict inequalities are
/// expressed by the caller as ">= 1" after scaling.
struct FeasibilityProblem {
  int num_vars = 0;
  std::vector<bool> free_vars;  // empty means all non-negative
  std::vector<LinearConstraint> constraints;

  int add_vars(int n, bool free = false);
  void add(std::vector<Rational> coeffs, Relation rel, Rational rhs);
};

struct FeasibilityResult {
  bool feasible = false;
  std::vector<Rational> witness;  // satisfies every constraint when feasible
};

// Phase-1 simplex on a dense rational tableau with Bland's rule.
FeasibilityResult solve_feasibility(const FeasibilityProblem& p);

bool satisfies(const FeasibilityProblem& p, std::span<const Rational> x);

// --- cones ----------------------------------------------------------------

/// Cone generated by non-negative combinations of integer vectors. Canonical:
/// generators primitive, nonzero, deduplicated and sorted.
class Cone {
 public:
  Cone() = default;
  explicit Cone(std::vector<Vec4> generators);

  const std::vector<Vec4>& generators() const { return gens_; }
  bool empty() const { return gens_.empty(); }

  friend bool operator==(const Cone&, const Cone&) = default;

 private:
  std::vector<Vec4> gens_;
};

Vec4 primitive_vector(const Vec4& v);

/// Columns are images of the unit vectors; apply(v) = sum_i v_i * column_i.
struct LeadingMatrix {
  std::array<Vec4, 4> columns{};

  static LeadingMatrix identity();
  Vec4 apply(const Vec4& v) const;
  Vec4 row(int i) const;
  std::array<Vec4, 4> rows() const;
  friend bool operator==(const LeadingMatrix&, const LeadingMatrix&) = default;
};

bool is_pointed(const Cone& c);
// A functional w with w.g >= 1 on every generator, when one exists.
std::optional<RationalVec4> strictly_positive_functional(const Cone& c);
bool kernel_meets_trivially(const Cone& c, const LeadingMatrix& m);
Cone hull(const Cone& a, const Cone& b);
bool contains(const Cone& c, const RationalVec4& v);
bool contains(const Cone& c, const Vec4& v);
bool contains_cone(const Cone& outer, const Cone& inner);

// Per-coordinate lower bounds; unconstrained coordinates are nullopt.
using RegionBounds = std::array<std::optional<long long>, 4>;

struct DisjointnessResult {
  bool disjoint = true;
  std::optional<RationalVec4> witness;  // a common point when not disjoint
};

// Is {v0 + cone} disjoint from {e : e_j >= bound_j}?
DisjointnessResult shifted_region_disjoint(const Vec4& v0, const Cone& c, const RegionBounds& region);
// Is {v0 + c} disjoint from the cone target?
DisjointnessResult shifted_cone_disjoint(const Vec4& v0, const Cone& c, const Cone& target);

}  // namespace orbitsum

#endif  // ORBITSUM_GEOMETRY_HPP
