#include <gtest/gtest.h>

#include <random>

#include "orbitsum/certificate_json.hpp"
#include "orbitsum/certifier.hpp"
#include "support/models.hpp"
#include "support/oracles.hpp"

using namespace orbitsum;

namespace {

constexpr int kCases = 100;

// Random models with all three generators defined.
std::vector<StepSet> random_models(std::uint64_t seed, int count) {
  std::mt19937_64 rng(seed);
  std::vector<StepSet> out;
  while (static_cast<int>(out.size()) < count) {
    StepSet s(static_cast<std::uint32_t>(rng() & kMaxModelId));
    if (uses_all_directions(s)) out.push_back(s);
  }
  return out;
}

}  // namespace

TEST(Property, GeneratorsAreInvolutions) {
  for (const auto& s : random_models(101, kCases))
    for (int a = 0; a < 3; ++a) {
      auto g = generator(s, a);
      EXPECT_TRUE(g.compose(g).equals(RationalMap::identity())) << s.id_hex() << " axis " << a;
    }
}

TEST(Property, GeneratorsFixStepPolynomial) {
  for (const auto& s : random_models(202, kCases)) {
    auto p = step_polynomial(s);
    for (int a = 0; a < 3; ++a) {
      auto g = generator(s, a);
      EXPECT_TRUE(rat_equal(substitute(p, g.images), RationalFunction(p))) << s.id_hex() << " axis " << a;
    }
  }
}

TEST(Property, SignsMultiplyAlongBfs) {
  auto finite = models::finite_models(kCases);
  ASSERT_EQ(finite.size(), static_cast<std::size_t>(kCases));
  for (const auto& m : finite) {
    StepSet s(m.id);
    std::array<RationalMap, 3> gens{generator(s, 0), generator(s, 1), generator(s, 2)};
    auto g = close_group(gens, 200);
    ASSERT_EQ(g.status, GroupStatus::Finite);
    EXPECT_EQ(g.elements[0].sign, 1);
    for (const auto& e : g.elements) {
      EXPECT_EQ(e.sign, e.word.size() % 2 ? -1 : 1);
      if (e.word.empty()) continue;
      std::string parent = e.word.substr(0, e.word.size() - 1);
      auto it = std::find_if(g.elements.begin(), g.elements.end(),
                             [&](const GroupElement& x) { return x.word == parent; });
      ASSERT_NE(it, g.elements.end()) << s.id_hex() << " " << e.word;
      EXPECT_EQ(e.sign, -it->sign);
      EXPECT_TRUE(it->map.compose(gens[static_cast<std::size_t>(e.word.back() - 'x')]).equals(e.map));
    }
    for (std::size_t i = 0; i < g.elements.size(); ++i)
      for (std::size_t j = i + 1; j < g.elements.size(); ++j)
        EXPECT_FALSE(g.elements[i].map.equals(g.elements[j].map));
  }
}

TEST(Property, PointednessDuality) {
  std::mt19937 rng(303);
  std::uniform_int_distribution<int> n(1, 6), c(-2, 2);
  for (int i = 0; i < 2 * kCases; ++i) {
    std::vector<Vec4> g;
    for (int k = n(rng); k > 0; --k) g.push_back({c(rng), c(rng), c(rng), c(rng)});
    Cone cone(g);
    bool pointed = is_pointed(cone);
    EXPECT_EQ(pointed, oracle::pointed_by_elimination(cone));
    auto w = strictly_positive_functional(cone);
    EXPECT_EQ(pointed, w.has_value());
    if (w)
      for (const auto& v : cone.generators()) EXPECT_GE(dot(*w, v), 1);
  }
}

TEST(Property, FeasibilityWitnessesSatisfyConstraints) {
  std::mt19937 rng(404);
  std::uniform_int_distribution<int> nv(1, 5), nc(1, 6), c(-4, 4), rel(0, 2);
  int feasible = 0;
  for (int i = 0; i < 3 * kCases; ++i) {
    FeasibilityProblem p;
    int vars = nv(rng);
    p.add_vars(vars, i % 3 == 0);
    for (int r = nc(rng); r > 0; --r) {
      std::vector<Rational> a(static_cast<std::size_t>(vars));
      for (auto& x : a) x = c(rng);
      p.add(std::move(a), static_cast<Relation>(rel(rng)), c(rng));
    }
    auto res = solve_feasibility(p);
    EXPECT_EQ(res.feasible, oracle::fm_feasible(p));
    if (!res.feasible) continue;
    ++feasible;
    ASSERT_EQ(res.witness.size(), static_cast<std::size_t>(vars));
    for (const auto& row : p.constraints) {
      Rational lhs = 0;
      for (std::size_t k = 0; k < row.coeffs.size(); ++k) lhs += row.coeffs[k] * res.witness[k];
      if (row.relation == Relation::LessEqual) EXPECT_LE(lhs, row.rhs);
      if (row.relation == Relation::GreaterEqual) EXPECT_GE(lhs, row.rhs);
      if (row.relation == Relation::Equal) EXPECT_EQ(lhs, row.rhs);
    }
    if (i % 3) for (const auto& x : res.witness) EXPECT_GE(x, 0);
  }
  EXPECT_GE(feasible, kCases);
}

TEST(Property, CertificatesAreDeterministic) {
  auto finite = models::finite_models(kCases);
  for (const auto& m : finite) {
    StepSet s(m.id);
    auto a = certificate_to_json(certify(s));
    auto b = certificate_to_json(certify(s));
    EXPECT_EQ(a, b) << s.id_hex();
  }
}

TEST(Property, CanonicalFormIsPermutationInvariant) {
  std::mt19937 rng(505);
  std::uniform_int_distribution<std::uint32_t> ids(1, kMaxModelId);
  std::array<int, 3> perm{0, 1, 2};
  for (int i = 0; i < kCases; ++i) {
    StepSet s(ids(rng));
    std::shuffle(perm.begin(), perm.end(), rng);
    EXPECT_EQ(axis_canonical(permute_axes(s, perm)), axis_canonical(s));
    EXPECT_EQ(axis_canonical(s).id(), oracle::canonical_id(s.id()));
  }
}
