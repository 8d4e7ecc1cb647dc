// The group of a model: generators phi_x, phi_y, phi_z, closure under
// composition, signs and the orbit sum.

#ifndef ORBITSUM_WALKGROUP_HPP
#define ORBITSUM_WALKGROUP_HPP

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "orbitsum/laurent.hpp"
#include "orbitsum/stepmodel.hpp"

namespace orbitsum {

// A rational map (x,y,z) -> (f_x, f_y, f_z).
struct RationalMap {
  std::array<RationalFunction, 3> images;

  static RationalMap identity();
  // (this o inner)(p) = this(inner(p)).
  RationalMap compose(const RationalMap& inner) const;
  bool equals(const RationalMap& o) const;
  std::string to_string() const;
};

struct GroupElement {
  RationalMap map;
  std::string word;  // letters from {x,y,z}; empty for the identity
  int sign = 1;      // (-1)^word.size()
};

enum class GroupStatus { Finite, CapExceeded, ParityConflict };

struct GroupResult {
  GroupStatus status = GroupStatus::Finite;
  std::vector<GroupElement> elements;  // BFS order, identity first; empty unless Finite
  int order = 0;                       // exact when Finite, a lower bound otherwise
  std::string conflict_word;           // set on ParityConflict
};

struct OrbitSum {
  RationalFunction value;
  bool is_zero = true;
};

class GroupError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

LaurentPolynomial step_polynomial(const StepSet& s);

// Sections of P_S: coefficient polynomials of axis^-1 and axis^+1.
struct AxisSections {
  LaurentPolynomial minus;
  LaurentPolynomial plus;
};
AxisSections axis_sections(const StepSet& s, int axis);

// phi_axis; throws GroupError when a section is empty.
RationalMap generator(const StepSet& s, int axis);
std::optional<RationalMap> try_generator(const StepSet& s, int axis);

// Size of the orbit of a fixed random point modulo a 31-bit prime under the
// maps, capped at cap + 1. An orbit larger than cap proves |G| > cap. Returns
// nullopt when the evaluation hits a pole.
std::optional<int> modular_orbit_size(const std::array<RationalMap, 3>& gens, int cap);

// Same bound computed directly from the model's axis sections; much cheaper
// than building the maps. nullopt when a generator is undefined or a pole is hit.
std::optional<int> model_orbit_size(const StepSet& s, int cap);

// Breadth-first closure under right composition with the generators.
GroupResult close_group(const std::array<RationalMap, 3>& gens, int cap);

OrbitSum orbit_sum(const GroupResult& group);

char axis_letter(int axis);

}  // namespace orbitsum

#endif  // ORBITSUM_WALKGROUP_HPP
