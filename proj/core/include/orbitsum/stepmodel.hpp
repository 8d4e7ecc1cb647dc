// Octant step sets: encoding, parsing, canonical forms and enumeration.
//
// A model is a nonempty subset of {-1,0,1}^3 \ {0}. Its id is a 26-bit mask:
// bit k is set iff the k-th triple, in lexicographic order over (dx,dy,dz)
// with the origin skipped, belongs to the model. So bit 0 is (-1,-1,-1),
// bit 12 is (0,0,-1), bit 13 is (0,0,1) and bit 25 is (1,1,1).

#ifndef ORBITSUM_STEPMODEL_HPP
#define ORBITSUM_STEPMODEL_HPP

#include <array>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace orbitsum {

inline constexpr int kStepCount = 26;
inline constexpr std::uint32_t kMaxModelId = (1u << kStepCount) - 1;

struct Step {
  int dx = 0, dy = 0, dz = 0;

  int operator[](int axis) const { return axis == 0 ? dx : axis == 1 ? dy : dz; }
  friend auto operator<=>(const Step&, const Step&) = default;
};

// Bit index of a nonzero step in {-1,0,1}^3.
int step_bit(const Step& s);
Step step_from_bit(int bit);

class StepSetError : public std::runtime_error {
 public:
  enum class Kind { ZeroStep, OutOfRange, Duplicate, Empty, BadSyntax };
  StepSetError(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

class StepSet {
 public:
  // Throws StepSetError::Empty for id 0 and OutOfRange above 26 bits.
  explicit StepSet(std::uint32_t id);
  // Throws on duplicates, zero steps or an empty list.
  static StepSet from_steps(const std::vector<Step>& steps);

  std::uint32_t id() const { return id_; }
  // Steps in bit order.
  std::vector<Step> steps() const;
  int size() const;
  bool contains(const Step& s) const { return (id_ >> step_bit(s)) & 1u; }

  // "(dx,dy,dz),(...)" in bit order.
  std::string to_string() const;
  // "0x" followed by 7 lowercase hex digits.
  std::string id_hex() const;

  friend auto operator<=>(const StepSet&, const StepSet&) = default;

 private:
  std::uint32_t id_;
};

StepSet parse_stepset(std::string_view text);

// Minimal-id image under the six coordinate permutations.
StepSet axis_canonical(const StepSet& s);
bool is_axis_canonical(std::uint32_t id);
// Number of distinct images under coordinate permutations (1, 2, 3 or 6).
int axis_orbit_size(const StepSet& s);
// Image of s under the permutation sending axis i to axis perm[i].
StepSet permute_axes(const StepSet& s, const std::array<int, 3>& perm);

struct AxisUsage {
  bool has_minus = false;
  bool has_plus = false;
  friend bool operator==(const AxisUsage&, const AxisUsage&) = default;
};

std::array<AxisUsage, 3> axis_usage(const StepSet& s);

// Necessary condition for a genuinely three-dimensional model: every axis has
// a step in each direction.
bool uses_all_directions(const StepSet& s);

using ModelPredicate = std::function<bool(const StepSet&)>;

// Calls fn for every canonical model with id in [lo, hi] accepted by pred
// (null pred accepts everything), in increasing id order. fn returns false to
// stop early.
void enumerate_models(std::uint32_t lo, std::uint32_t hi, const ModelPredicate& pred,
                      const std::function<bool(const StepSet&)>& fn);

std::vector<StepSet> collect_models(std::uint32_t lo, std::uint32_t hi, const ModelPredicate& pred = {});

}  // namespace orbitsum

#endif  // ORBITSUM_STEPMODEL_HPP
