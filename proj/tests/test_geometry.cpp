#include <gtest/gtest.h>

#include <random>

#include "orbitsum/certifier.hpp"
#include "orbitsum/geometry.hpp"
#include "support/oracles.hpp"

using namespace orbitsum;

namespace {

Vec4 random_vec(std::mt19937& rng, int lo, int hi) {
  std::uniform_int_distribution<int> d(lo, hi);
  return {d(rng), d(rng), d(rng), d(rng)};
}

Cone random_cone(std::mt19937& rng, int n, int lo, int hi) {
  std::vector<Vec4> g;
  for (int i = 0; i < n; ++i) g.push_back(random_vec(rng, lo, hi));
  return Cone(std::move(g));
}

FeasibilityProblem random_problem(std::mt19937& rng) {
  std::uniform_int_distribution<int> nv(1, 4), nc(1, 5), c(-3, 3), rel(0, 2), fr(0, 3);
  FeasibilityProblem p;
  int vars = nv(rng);
  for (int v = 0; v < vars; ++v) p.add_vars(1, fr(rng) == 0);
  int rows = nc(rng);
  for (int r = 0; r < rows; ++r) {
    std::vector<Rational> a(static_cast<std::size_t>(vars));
    for (auto& x : a) x = c(rng);
    p.add(std::move(a), static_cast<Relation>(rel(rng)), c(rng));
  }
  return p;
}

}  // namespace

TEST(Cone, CanonicalGenerators) {
  Cone c({{2, 4, 0, 0}, {1, 2, 0, 0}, {0, 0, 0, 0}, {0, 0, 3, 0}});
  EXPECT_EQ(c.generators(), (std::vector<Vec4>{{0, 0, 1, 0}, {1, 2, 0, 0}}));
  EXPECT_EQ(primitive_vector({-4, 6, 0, 2}), (Vec4{-2, 3, 0, 1}));
}

TEST(Cone, BaseConeIsPointed) {
  Cone c = base_cone();
  EXPECT_EQ(c.generators().size(), 8u);
  EXPECT_TRUE(is_pointed(c));
  EXPECT_TRUE(contains(c, Vec4{0, 0, 0, 1}));
  EXPECT_TRUE(contains(c, Vec4{1, 2, 1, 3}));
  EXPECT_FALSE(contains(c, Vec4{1, 0, 0, 0}));
  EXPECT_FALSE(contains(c, Vec4{2, 0, 0, 1}));
  auto w = strictly_positive_functional(c);
  ASSERT_TRUE(w);
  for (const auto& g : c.generators()) EXPECT_GE(dot(*w, g), 1);
}

TEST(Cone, LinesAreNotPointed) {
  EXPECT_FALSE(is_pointed(Cone({{1, 0, 0, 0}, {-1, 0, 0, 0}})));
  EXPECT_FALSE(is_pointed(Cone({{1, 1, 0, 0}, {-1, 0, 0, 0}, {0, -1, 0, 0}})));
  EXPECT_TRUE(is_pointed(Cone({{1, 1, 0, 0}, {-1, 0, 0, 0}})));
  EXPECT_TRUE(is_pointed(Cone()));
  EXPECT_FALSE(strictly_positive_functional(Cone({{0, 1, 0, 0}, {0, -1, 0, 0}})));
}

TEST(Cone, HullAndContainment) {
  Cone a({{1, 0, 0, 0}, {0, 1, 0, 0}}), b({{1, 1, 0, 0}, {0, 0, 1, 0}});
  Cone h = hull(a, b);
  EXPECT_TRUE(contains_cone(h, a));
  EXPECT_TRUE(contains_cone(h, b));
  EXPECT_FALSE(contains_cone(a, b));
  EXPECT_TRUE(contains_cone(a, Cone({{1, 1, 0, 0}})));
  EXPECT_TRUE(contains(a, RationalVec4{Rational(1, 2), Rational(1, 3), 0, 0}));
}

TEST(Cone, KernelCheck) {
  auto m = LeadingMatrix::identity();
  EXPECT_TRUE(kernel_meets_trivially(base_cone(), m));
  LeadingMatrix drop = m;
  drop.columns[3] = {0, 0, 0, 0};
  drop.columns[0] = {0, 0, 0, 0};
  EXPECT_FALSE(kernel_meets_trivially(Cone({{1, 0, 0, 1}, {0, 1, 0, 0}}), drop));
  EXPECT_TRUE(kernel_meets_trivially(Cone({{0, 1, 0, 0}}), drop));
}

TEST(Cone, ShiftedRegion) {
  RegionBounds pos{1, 1, 1, 0};
  auto r = shifted_region_disjoint({0, 0, 0, 0}, base_cone(), pos);
  EXPECT_FALSE(r.disjoint);
  ASSERT_TRUE(r.witness);
  for (std::size_t k = 0; k < 3; ++k) EXPECT_GE((*r.witness)[k], 1);
  EXPECT_TRUE(shifted_region_disjoint({-1, 0, 0, 0}, Cone({{0, 1, 0, 0}, {0, 0, 1, 1}}), pos).disjoint);
  EXPECT_FALSE(shifted_cone_disjoint({0, 0, 0, 0}, base_cone(), base_cone()).disjoint);
  EXPECT_TRUE(shifted_cone_disjoint({0, 0, 0, -1}, Cone({{1, 0, 0, 0}}), base_cone()).disjoint);
}

TEST(Feasibility, WitnessesVerifyAndAgreeWithElimination) {
  std::mt19937 rng(1);
  int feasible = 0;
  for (int i = 0; i < 400; ++i) {
    auto p = random_problem(rng);
    auto r = solve_feasibility(p);
    EXPECT_EQ(r.feasible, oracle::fm_feasible(p)) << "case " << i;
    if (r.feasible) {
      ++feasible;
      EXPECT_TRUE(satisfies(p, r.witness)) << "case " << i;
    }
  }
  EXPECT_GT(feasible, 50);
  EXPECT_LT(feasible, 380);
}

TEST(Feasibility, PointednessAgreesWithElimination) {
  std::mt19937 rng(2);
  int pointed = 0;
  for (int i = 0; i < 300; ++i) {
    std::uniform_int_distribution<int> n(1, 6);
    Cone c = random_cone(rng, n(rng), i % 2 ? -1 : -2, 2);
    bool p = is_pointed(c);
    EXPECT_EQ(p, oracle::pointed_by_elimination(c)) << "case " << i;
    EXPECT_EQ(p, strictly_positive_functional(c).has_value());
    pointed += p;
  }
  EXPECT_GT(pointed, 30);
  EXPECT_LT(pointed, 295);
}

TEST(Feasibility, HullContainsBothOperands) {
  std::mt19937 rng(4);
  for (int i = 0; i < 100; ++i) {
    Cone a = random_cone(rng, 3, -2, 2), b = random_cone(rng, 2, -2, 2);
    Cone h = hull(a, b);
    EXPECT_TRUE(contains_cone(h, a));
    EXPECT_TRUE(contains_cone(h, b));
    Vec4 s = a.generators().empty() ? Vec4{} : a.generators().front();
    if (!b.generators().empty())
      for (std::size_t k = 0; k < 4; ++k) s[k] += b.generators().back()[k];
    EXPECT_TRUE(contains(h, s));
  }
}
