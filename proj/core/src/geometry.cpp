#include "orbitsum/geometry.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace orbitsum {

Vec4 to_vec4(const ExponentVector& e) { return {e[0], e[1], e[2], e[3]}; }

ExponentVector to_exponent(const Vec4& v) {
  return ExponentVector{{static_cast<int>(v[0]), static_cast<int>(v[1]), static_cast<int>(v[2]),
                         static_cast<int>(v[3])}};
}

RationalVec4 to_rational(const Vec4& v) {
  return {Rational(static_cast<long>(v[0])), Rational(static_cast<long>(v[1])),
          Rational(static_cast<long>(v[2])), Rational(static_cast<long>(v[3]))};
}

Rational dot(const RationalVec4& a, const Vec4& b) {
  Rational s = 0;
  for (std::size_t i = 0; i < 4; ++i) s += a[i] * static_cast<long>(b[i]);
  return s;
}

std::string vec_to_string(const Vec4& v) {
  return "(" + std::to_string(v[0]) + "," + std::to_string(v[1]) + "," + std::to_string(v[2]) + "," +
         std::to_string(v[3]) + ")";
}

// --- simplex --------------------------------------------------------------

int FeasibilityProblem::add_vars(int n, bool free) {
  int first = num_vars;
  num_vars += n;
  if (free || !free_vars.empty()) {
    free_vars.resize(static_cast<std::size_t>(first), false);
    free_vars.resize(static_cast<std::size_t>(num_vars), free);
  }
  return first;
}

void FeasibilityProblem::add(std::vector<Rational> coeffs, Relation rel, Rational rhs) {
  coeffs.resize(static_cast<std::size_t>(num_vars));
  constraints.push_back({std::move(coeffs), rel, std::move(rhs)});
}

namespace {

bool is_free(const FeasibilityProblem& p, int j) {
  return !p.free_vars.empty() && p.free_vars[static_cast<std::size_t>(j)];
}

}  // namespace

bool satisfies(const FeasibilityProblem& p, std::span<const Rational> x) {
  if (static_cast<int>(x.size()) != p.num_vars) return false;
  for (int j = 0; j < p.num_vars; ++j)
    if (!is_free(p, j) && x[static_cast<std::size_t>(j)] < 0) return false;
  for (const auto& c : p.constraints) {
    Rational lhs = 0;
    for (std::size_t j = 0; j < x.size(); ++j)
      if (c.coeffs[j] != 0) lhs += c.coeffs[j] * x[j];
    switch (c.relation) {
      case Relation::LessEqual:
        if (lhs > c.rhs) return false;
        break;
      case Relation::GreaterEqual:
        if (lhs < c.rhs) return false;
        break;
      case Relation::Equal:
        if (lhs != c.rhs) return false;
        break;
    }
  }
  return true;
}

FeasibilityResult solve_feasibility(const FeasibilityProblem& p) {
  const int n = p.num_vars;
  const int m = static_cast<int>(p.constraints.size());
  // Column layout: split original variables, then one slack/surplus per
  // inequality row, then one artificial per row that needs it.
  std::vector<int> plus_col(static_cast<std::size_t>(n)), minus_col(static_cast<std::size_t>(n), -1);
  int cols = 0;
  for (int j = 0; j < n; ++j) {
    plus_col[static_cast<std::size_t>(j)] = cols++;
    if (is_free(p, j)) minus_col[static_cast<std::size_t>(j)] = cols++;
  }
  struct RowPlan {
    Relation rel;
    bool negate;
    int slack = -1;
    int artificial = -1;
  };
  std::vector<RowPlan> plan(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) {
    const auto& c = p.constraints[static_cast<std::size_t>(i)];
    RowPlan& r = plan[static_cast<std::size_t>(i)];
    r.negate = c.rhs < 0;
    r.rel = c.relation;
    if (r.negate && r.rel != Relation::Equal)
      r.rel = r.rel == Relation::LessEqual ? Relation::GreaterEqual : Relation::LessEqual;
    if (r.rel != Relation::Equal) r.slack = cols++;
  }
  const int first_artificial = cols;
  for (auto& r : plan)
    if (r.rel != Relation::LessEqual) r.artificial = cols++;
  const int total = cols;

  // Tableau rows 0..m-1 are constraints, row m is the phase-1 reduced cost.
  std::vector<std::vector<Rational>> T(static_cast<std::size_t>(m + 1),
                                       std::vector<Rational>(static_cast<std::size_t>(total + 1)));
  std::vector<int> basis(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) {
    const auto& c = p.constraints[static_cast<std::size_t>(i)];
    const RowPlan& r = plan[static_cast<std::size_t>(i)];
    auto& row = T[static_cast<std::size_t>(i)];
    const int s = r.negate ? -1 : 1;
    for (int j = 0; j < n; ++j) {
      const Rational& a = c.coeffs[static_cast<std::size_t>(j)];
      if (a == 0) continue;
      row[static_cast<std::size_t>(plus_col[static_cast<std::size_t>(j)])] = s * a;
      if (minus_col[static_cast<std::size_t>(j)] >= 0)
        row[static_cast<std::size_t>(minus_col[static_cast<std::size_t>(j)])] = -s * a;
    }
    row[static_cast<std::size_t>(total)] = s * c.rhs;
    if (r.rel == Relation::LessEqual) {
      row[static_cast<std::size_t>(r.slack)] = 1;
      basis[static_cast<std::size_t>(i)] = r.slack;
    } else {
      if (r.rel == Relation::GreaterEqual) row[static_cast<std::size_t>(r.slack)] = -1;
      row[static_cast<std::size_t>(r.artificial)] = 1;
      basis[static_cast<std::size_t>(i)] = r.artificial;
    }
  }
  auto& cost = T[static_cast<std::size_t>(m)];
  for (int i = 0; i < m; ++i) {
    if (plan[static_cast<std::size_t>(i)].artificial < 0) continue;
    const auto& row = T[static_cast<std::size_t>(i)];
    for (int j = 0; j <= total; ++j) {
      if (j >= first_artificial && j < total) continue;
      cost[static_cast<std::size_t>(j)] -= row[static_cast<std::size_t>(j)];
    }
  }

  auto pivot = [&](int r, int c) {
    auto& prow = T[static_cast<std::size_t>(r)];
    const Rational inv = 1 / prow[static_cast<std::size_t>(c)];
    for (auto& v : prow)
      if (v != 0) v *= inv;
    for (int i = 0; i <= m; ++i) {
      if (i == r) continue;
      auto& row = T[static_cast<std::size_t>(i)];
      const Rational f = row[static_cast<std::size_t>(c)];
      if (f == 0) continue;
      for (int j = 0; j <= total; ++j)
        if (prow[static_cast<std::size_t>(j)] != 0) row[static_cast<std::size_t>(j)] -= f * prow[static_cast<std::size_t>(j)];
    }
    basis[static_cast<std::size_t>(r)] = c;
  };

  for (;;) {
    int enter = -1;
    for (int j = 0; j < total; ++j) {
      if (cost[static_cast<std::size_t>(j)] < 0) {
        enter = j;
        break;
      }
    }
    if (enter < 0) break;
    int leave = -1;
    Rational best;
    for (int i = 0; i < m; ++i) {
      const Rational& a = T[static_cast<std::size_t>(i)][static_cast<std::size_t>(enter)];
      if (a <= 0) continue;
      Rational ratio = T[static_cast<std::size_t>(i)][static_cast<std::size_t>(total)] / a;
      if (leave < 0 || ratio < best ||
          (ratio == best && basis[static_cast<std::size_t>(i)] < basis[static_cast<std::size_t>(leave)])) {
        leave = i;
        best = ratio;
      }
    }
    if (leave < 0) break;  // unbounded direction; cannot occur in phase 1
    pivot(leave, enter);
  }

  FeasibilityResult result;
  if (cost[static_cast<std::size_t>(total)] != 0) return result;
  std::vector<Rational> values(static_cast<std::size_t>(total));
  for (int i = 0; i < m; ++i)
    values[static_cast<std::size_t>(basis[static_cast<std::size_t>(i)])] =
        T[static_cast<std::size_t>(i)][static_cast<std::size_t>(total)];
  result.feasible = true;
  result.witness.resize(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) {
    Rational v = values[static_cast<std::size_t>(plus_col[static_cast<std::size_t>(j)])];
    if (minus_col[static_cast<std::size_t>(j)] >= 0) v -= values[static_cast<std::size_t>(minus_col[static_cast<std::size_t>(j)])];
    result.witness[static_cast<std::size_t>(j)] = v;
  }
  if (!satisfies(p, result.witness)) throw std::logic_error("simplex witness failed verification");
  return result;
}

// --- cones ----------------------------------------------------------------

Vec4 primitive_vector(const Vec4& v) {
  long long g = 0;
  for (long long c : v) g = std::gcd(g, c < 0 ? -c : c);
  if (g <= 1) return v;
  return {v[0] / g, v[1] / g, v[2] / g, v[3] / g};
}

Cone::Cone(std::vector<Vec4> generators) {
  for (const auto& g : generators) {
    if (g == Vec4{0, 0, 0, 0}) continue;
    gens_.push_back(primitive_vector(g));
  }
  std::sort(gens_.begin(), gens_.end());
  gens_.erase(std::unique(gens_.begin(), gens_.end()), gens_.end());
}

LeadingMatrix LeadingMatrix::identity() {
  LeadingMatrix m;
  for (std::size_t i = 0; i < 4; ++i) m.columns[i][i] = 1;
  return m;
}

Vec4 LeadingMatrix::apply(const Vec4& v) const {
  Vec4 out{0, 0, 0, 0};
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t k = 0; k < 4; ++k) out[k] += v[i] * columns[i][k];
  return out;
}

Vec4 LeadingMatrix::row(int i) const {
  return {columns[0][static_cast<std::size_t>(i)], columns[1][static_cast<std::size_t>(i)],
          columns[2][static_cast<std::size_t>(i)], columns[3][static_cast<std::size_t>(i)]};
}

std::array<Vec4, 4> LeadingMatrix::rows() const { return {row(0), row(1), row(2), row(3)}; }

namespace {

// Adds lambda_i >= 0 (one per generator) and returns the index of the first.
int add_combination(FeasibilityProblem& p, const Cone& c) {
  return p.add_vars(static_cast<int>(c.generators().size()));
}

std::vector<Rational> zero_row(const FeasibilityProblem& p) {
  return std::vector<Rational>(static_cast<std::size_t>(p.num_vars));
}

RationalVec4 combination_point(const Cone& c, std::span<const Rational> lambda, int first) {
  RationalVec4 pt{};
  for (std::size_t i = 0; i < c.generators().size(); ++i)
    for (std::size_t k = 0; k < 4; ++k)
      pt[k] += lambda[static_cast<std::size_t>(first) + i] * static_cast<long>(c.generators()[i][k]);
  return pt;
}

}  // namespace

bool is_pointed(const Cone& c) {
  if (c.empty()) return true;
  FeasibilityProblem p;
  add_combination(p, c);
  const auto& g = c.generators();
  for (std::size_t k = 0; k < 4; ++k) {
    auto row = zero_row(p);
    for (std::size_t i = 0; i < g.size(); ++i) row[i] = static_cast<long>(g[i][k]);
    p.add(std::move(row), Relation::Equal, 0);
  }
  p.add(std::vector<Rational>(g.size(), Rational(1)), Relation::Equal, 1);
  return !solve_feasibility(p).feasible;
}

std::optional<RationalVec4> strictly_positive_functional(const Cone& c) {
  FeasibilityProblem p;
  p.add_vars(4, true);
  for (const auto& g : c.generators()) p.add({to_rational(g)[0], to_rational(g)[1], to_rational(g)[2], to_rational(g)[3]}, Relation::GreaterEqual, 1);
  auto r = solve_feasibility(p);
  if (!r.feasible) return std::nullopt;
  return RationalVec4{r.witness[0], r.witness[1], r.witness[2], r.witness[3]};
}

bool kernel_meets_trivially(const Cone& c, const LeadingMatrix& m) {
  if (c.empty()) return true;
  FeasibilityProblem p;
  add_combination(p, c);
  const auto& g = c.generators();
  std::vector<Vec4> images;
  for (const auto& v : g) images.push_back(m.apply(v));
  for (std::size_t k = 0; k < 4; ++k) {
    auto row = zero_row(p);
    for (std::size_t i = 0; i < g.size(); ++i) row[i] = static_cast<long>(images[i][k]);
    p.add(std::move(row), Relation::Equal, 0);
  }
  p.add(std::vector<Rational>(g.size(), Rational(1)), Relation::Equal, 1);
  return !solve_feasibility(p).feasible;
}

Cone hull(const Cone& a, const Cone& b) {
  std::vector<Vec4> gens = a.generators();
  gens.insert(gens.end(), b.generators().begin(), b.generators().end());
  return Cone(std::move(gens));
}

bool contains(const Cone& c, const RationalVec4& v) {
  FeasibilityProblem p;
  add_combination(p, c);
  const auto& g = c.generators();
  for (std::size_t k = 0; k < 4; ++k) {
    auto row = zero_row(p);
    for (std::size_t i = 0; i < g.size(); ++i) row[i] = static_cast<long>(g[i][k]);
    p.add(std::move(row), Relation::Equal, v[k]);
  }
  return solve_feasibility(p).feasible;
}

bool contains(const Cone& c, const Vec4& v) { return contains(c, to_rational(v)); }

bool contains_cone(const Cone& outer, const Cone& inner) {
  for (const auto& g : inner.generators())
    if (!contains(outer, g)) return false;
  return true;
}

DisjointnessResult shifted_region_disjoint(const Vec4& v0, const Cone& c, const RegionBounds& region) {
  FeasibilityProblem p;
  int first = add_combination(p, c);
  const auto& g = c.generators();
  for (std::size_t k = 0; k < 4; ++k) {
    if (!region[k]) continue;
    auto row = zero_row(p);
    for (std::size_t i = 0; i < g.size(); ++i) row[i] = static_cast<long>(g[i][k]);
    p.add(std::move(row), Relation::GreaterEqual, Rational(static_cast<long>(*region[k] - v0[k])));
  }
  auto r = solve_feasibility(p);
  if (!r.feasible) return {true, std::nullopt};
  RationalVec4 pt = combination_point(c, r.witness, first);
  for (std::size_t k = 0; k < 4; ++k) pt[k] += static_cast<long>(v0[k]);
  return {false, pt};
}

DisjointnessResult shifted_cone_disjoint(const Vec4& v0, const Cone& c, const Cone& target) {
  FeasibilityProblem p;
  int first = add_combination(p, c);
  int second = add_combination(p, target);
  const auto& g = c.generators();
  const auto& h = target.generators();
  for (std::size_t k = 0; k < 4; ++k) {
    auto row = zero_row(p);
    for (std::size_t i = 0; i < g.size(); ++i) row[static_cast<std::size_t>(first) + i] = static_cast<long>(g[i][k]);
    for (std::size_t i = 0; i < h.size(); ++i) row[static_cast<std::size_t>(second) + i] = -static_cast<long>(h[i][k]);
    p.add(std::move(row), Relation::Equal, Rational(static_cast<long>(-v0[k])));
  }
  auto r = solve_feasibility(p);
  if (!r.feasible) return {true, std::nullopt};
  RationalVec4 pt = combination_point(c, r.witness, first);
  for (std::size_t k = 0; k < 4; ++k) pt[k] += static_cast<long>(v0[k]);
  return {false, pt};
}

}  // namespace orbitsum
