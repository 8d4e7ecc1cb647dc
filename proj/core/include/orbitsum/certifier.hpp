// Per-element composition checks, the accumulated cone B, verdicts and
// certificates.

#ifndef ORBITSUM_CERTIFIER_HPP
#define ORBITSUM_CERTIFIER_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "orbitsum/geometry.hpp"
#include "orbitsum/ordering.hpp"
#include "orbitsum/stepmodel.hpp"
#include "orbitsum/walkgroup.hpp"

namespace orbitsum {

enum class DisjointMode { Positivity, PaperCone };

std::string to_string(DisjointMode m);
std::optional<DisjointMode> parse_disjoint_mode(std::string_view s);

struct CertifyConfig {
  int group_cap = 200;
  DisjointMode mode = DisjointMode::Positivity;
  bool zero_orbit_gate = true;
  // Upper limit on admissible choices examined before giving up.
  std::uint64_t choice_limit = 100000;
  // Extra three-dimensionality test applied after the axis-usage filter.
  std::function<bool(const StepSet&)> dimension_filter;
};

enum class VerdictKind {
  CertifiedDFinite,
  ZeroOrbitSum,
  GroupCapExceeded,
  LowerDimensional,
  ParityConflict,
  Obstructed,
  Inconclusive,
};

std::string to_string(VerdictKind k);
std::optional<VerdictKind> parse_verdict_kind(std::string_view s);

struct Verdict {
  VerdictKind kind = VerdictKind::Inconclusive;
  std::string element;  // the obstructing word for Obstructed
  friend bool operator==(const Verdict&, const Verdict&) = default;
};

struct ElementChecks {
  bool kernel_trivial = false;
  bool hull_pointed = false;
  bool disjoint = false;
  bool all() const { return kernel_trivial && hull_pointed && disjoint; }
  friend bool operator==(const ElementChecks&, const ElementChecks&) = default;
};

struct ElementReport {
  std::string word;
  LeadingMatrix matrix;
  Cone local_cone;
  Vec4 shift{};
  ElementChecks checks;
  std::optional<RationalVec4> witness;  // common point when not disjoint
};

struct ChoiceEntry {
  LaurentPolynomial polynomial;
  ExponentVector leading_exponent;
};

struct Certificate {
  std::uint32_t model_id = 0;
  int group_cap = 200;
  DisjointMode mode = DisjointMode::Positivity;
  bool zero_orbit_gate = true;
  int group_order = 0;
  bool zero_orbit_sum = false;
  std::vector<GroupElement> group;
  std::uint64_t choice_index = 0;
  std::uint64_t choice_count = 0;
  std::vector<ChoiceEntry> choice;
  std::optional<WeightOrder> weight;
  Cone base_cone;
  std::vector<ElementReport> element_reports;
  Cone final_cone;
  Verdict verdict;
};

class CertifierError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Generators (i,j,k,1) for i,j,k in {0,1}.
Cone base_cone();

// Column i: lexp(numerator_i) - lexp(denominator_i); column 4 is e_4.
// Throws CertifierError when a polynomial is missing from the pool.
LeadingMatrix element_matrix(const GroupElement& g, const PolynomialPool& pool, const LeadingTermChoice& choice);

Cone element_cone(const GroupElement& g, const PolynomialPool& pool, const LeadingTermChoice& choice,
                  const Cone& base);

ElementReport check_element(const GroupElement& g, const PolynomialPool& pool, const LeadingTermChoice& choice,
                            const Cone& base, DisjointMode mode);

Certificate certify(const StepSet& s, const CertifyConfig& config = {});

struct VerifyResult {
  bool ok = true;
  std::string path;    // first mismatch, e.g. "element_reports[3].matrix"
  std::string detail;
  explicit operator bool() const { return ok; }
};

// Recomputes everything from the model id and stored config; no search.
VerifyResult verify_certificate(const Certificate& cert);

int exit_code(VerdictKind k);

}  // namespace orbitsum

#endif  // ORBITSUM_CERTIFIER_HPP
