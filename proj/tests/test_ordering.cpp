#include <gtest/gtest.h>

#include "orbitsum/certifier.hpp"
#include "orbitsum/ordering.hpp"
#include "support/models.hpp"

using namespace orbitsum;

namespace {

GroupResult group_of(const StepSet& s) {
  return close_group({generator(s, 0), generator(s, 1), generator(s, 2)}, 200);
}

}  // namespace

TEST(Pool, Example1) {
  auto g = group_of(models::example1());
  auto pool = collect_polynomials(g);
  ASSERT_FALSE(pool.entries.empty());
  auto idx = pool.find(LaurentPolynomial::parse("y*z^2 + y^2 + z", 4));
  ASSERT_TRUE(idx);
  EXPECT_FALSE(pool.entries[*idx].users.empty());
  for (const auto& e : pool.entries) {
    EXPECT_GE(e.poly.size(), 2u);
    EXPECT_EQ(primitive_decomposition(e.poly).primitive, e.poly);
  }
  std::uint64_t product = 1;
  for (const auto& e : pool.entries) product *= e.poly.size();
  EXPECT_EQ(choice_count(pool), product);
}

TEST(Choices, StreamOrderAndIndex) {
  for (auto s : {models::example1(), models::example2()}) {
    auto pool = collect_polynomials(group_of(s));
    auto all = enumerate_choices(pool);
    ASSERT_EQ(all.size(), choice_count(pool));
    for (std::size_t i = 0; i < all.size(); ++i) {
      EXPECT_EQ(choice_index(pool, all[i]), i);
      auto again = choice_from_indices(pool, all[i].term_index);
      EXPECT_EQ(again.exponent, all[i].exponent);
    }
    for (std::size_t i = 1; i < all.size(); ++i) EXPECT_LT(all[i - 1].term_index, all[i].term_index);
  }
}

TEST(Choices, CompatibleChoicesAreExactlyTheRealizableOnes) {
  std::vector<StepSet> ms{models::example1(), models::example2()};
  for (const auto& m : models::finite_models(25)) ms.emplace_back(m.id);
  for (const auto& s : ms) {
    auto pool = collect_polynomials(group_of(s));
    if (choice_count(pool) > 5000) continue;
    Cone base = base_cone();
    std::vector<std::uint64_t> expected;
    for (const auto& c : enumerate_choices(pool)) {
      auto w = realize_order(pool, c, base);
      if (w) {
        EXPECT_TRUE(weight_is_valid(pool, c, base, *w)) << s.id_hex();
        expected.push_back(choice_index(pool, c));
      }
    }
    std::vector<std::uint64_t> visited;
    for_each_compatible_choice(pool, base, [&](const LeadingTermChoice& c, const WeightOrder& w) {
      EXPECT_TRUE(weight_is_valid(pool, c, base, w));
      visited.push_back(choice_index(pool, c));
      return true;
    });
    EXPECT_EQ(visited, expected) << s.id_hex();
  }
}

TEST(Weight, ChosenTermIsLeading) {
  auto pool = collect_polynomials(group_of(models::example1()));
  Cone base = base_cone();
  int checked = 0;
  for (const auto& c : enumerate_choices(pool)) {
    auto w = realize_order(pool, c, base);
    if (!w) continue;
    ++checked;
    for (std::size_t e = 0; e < pool.entries.size(); ++e) {
      Vec4 lt = to_vec4(c.exponent[e]);
      for (const auto& t : pool.entries[e].poly.terms()) {
        if (t.exp == c.exponent[e]) continue;
        Vec4 m = to_vec4(t.exp);
        EXPECT_GT(dot(w->w, m), dot(w->w, lt));
      }
    }
    for (const auto& g : base.generators()) EXPECT_GT(dot(w->w, g), 0);
    WeightOrder bad = *w;
    bad.w[0] = -bad.w[0] - 100;
    EXPECT_FALSE(weight_is_valid(pool, c, base, bad));
  }
  EXPECT_GT(checked, 0);
}

TEST(Weight, LeadingExponentOfShiftedPolynomial) {
  auto pool = collect_polynomials(group_of(models::example1()));
  auto idx = pool.find(LaurentPolynomial::parse("y*z^2 + y^2 + z", 4));
  ASSERT_TRUE(idx);
  std::vector<std::size_t> digits(pool.entries.size(), 0);
  const auto& terms = pool.entries[*idx].poly.terms();
  for (std::size_t k = 0; k < terms.size(); ++k)
    if (terms[k].exp == ExponentVector{{0, 1, 2, 0}}) digits[*idx] = k;
  auto choice = choice_from_indices(pool, digits);
  auto p = LaurentPolynomial::parse("2*x^-1*y^2*z^3 + 2*x^-1*y^3*z + 2*x^-1*y*z^2");
  EXPECT_EQ(leading_exponent(p, pool, choice), (ExponentVector{{-1, 2, 3, 0}}));
  EXPECT_EQ(leading_exponent(LaurentPolynomial::parse("3*x*y^-1"), pool, choice), (ExponentVector{{1, -1, 0, 0}}));
  EXPECT_FALSE(leading_exponent(LaurentPolynomial::parse("x + y + z^5"), pool, choice).has_value());
}
