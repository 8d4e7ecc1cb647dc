#include "orbitsum/ordering.hpp"

#include <algorithm>
#include <limits>

namespace orbitsum {

std::optional<std::size_t> PolynomialPool::find(const LaurentPolynomial& primitive) const {
  for (std::size_t i = 0; i < entries.size(); ++i)
    if (entries[i].poly == primitive) return i;
  return std::nullopt;
}

PolynomialPool collect_polynomials(const GroupResult& group) {
  PolynomialPool pool;
  for (const auto& g : group.elements) {
    for (const auto& f : g.map.images) {
      for (const LaurentPolynomial* part : {&f.numerator(), &f.denominator()}) {
        if (part->size() < 2) continue;
        LaurentPolynomial prim = primitive_decomposition(*part).primitive.with_dim(4);
        auto idx = pool.find(prim);
        if (!idx) {
          pool.entries.push_back({std::move(prim), {}});
          idx = pool.entries.size() - 1;
        }
        auto& users = pool.entries[*idx].users;
        if (std::find(users.begin(), users.end(), g.word) == users.end()) users.push_back(g.word);
      }
    }
  }
  return pool;
}

std::uint64_t choice_count(const PolynomialPool& pool) {
  std::uint64_t n = 1;
  for (const auto& e : pool.entries) {
    if (n > std::numeric_limits<std::uint64_t>::max() / e.poly.size()) return std::numeric_limits<std::uint64_t>::max();
    n *= e.poly.size();
  }
  return n;
}

LeadingTermChoice choice_from_indices(const PolynomialPool& pool, std::vector<std::size_t> term_index) {
  LeadingTermChoice c;
  for (std::size_t i = 0; i < term_index.size(); ++i)
    c.exponent.push_back(pool.entries[i].poly.terms()[term_index[i]].exp);
  c.term_index = std::move(term_index);
  return c;
}

ChoiceEnumerator::ChoiceEnumerator(const PolynomialPool& pool)
    : pool_(pool), digits_(pool.entries.size(), 0) {}

std::optional<LeadingTermChoice> ChoiceEnumerator::next() {
  if (done_) return std::nullopt;
  LeadingTermChoice out = choice_from_indices(pool_, digits_);
  // Advance the mixed-radix counter, last entry fastest.
  std::size_t i = digits_.size();
  for (;;) {
    if (i == 0) {
      done_ = true;
      break;
    }
    --i;
    if (++digits_[i] < pool_.entries[i].poly.size()) break;
    digits_[i] = 0;
  }
  return out;
}

std::vector<LeadingTermChoice> enumerate_choices(const PolynomialPool& pool) {
  std::vector<LeadingTermChoice> out;
  ChoiceEnumerator it(pool);
  while (auto c = it.next()) out.push_back(std::move(*c));
  return out;
}

std::uint64_t choice_index(const PolynomialPool& pool, const LeadingTermChoice& choice) {
  std::uint64_t idx = 0;
  for (std::size_t i = 0; i < pool.entries.size(); ++i)
    idx = idx * pool.entries[i].poly.size() + choice.term_index.at(i);
  return idx;
}

namespace {

FeasibilityProblem weight_problem(const PolynomialPool& pool, const LeadingTermChoice& choice, const Cone& base) {
  FeasibilityProblem p;
  p.add_vars(4, true);
  auto add_ge1 = [&](const Vec4& v) {
    p.add({Rational(static_cast<long>(v[0])), Rational(static_cast<long>(v[1])), Rational(static_cast<long>(v[2])),
           Rational(static_cast<long>(v[3]))},
          Relation::GreaterEqual, 1);
  };
  for (const auto& g : base.generators()) add_ge1(g);
  for (std::size_t i = 0; i < choice.term_index.size(); ++i) {
    const auto& terms = pool.entries[i].poly.terms();
    for (std::size_t k = 0; k < terms.size(); ++k) {
      if (k == choice.term_index[i]) continue;
      add_ge1(to_vec4(terms[k].exp - choice.exponent[i]));
    }
  }
  return p;
}

}  // namespace

std::optional<WeightOrder> realize_order(const PolynomialPool& pool, const LeadingTermChoice& choice,
                                         const Cone& base) {
  auto r = solve_feasibility(weight_problem(pool, choice, base));
  if (!r.feasible) return std::nullopt;
  WeightOrder o;
  for (std::size_t k = 0; k < 4; ++k) o.w[k] = r.witness[k];
  return o;
}

void for_each_compatible_choice(const PolynomialPool& pool, const Cone& base,
                                const std::function<bool(const LeadingTermChoice&, const WeightOrder&)>& visit) {
  const std::size_t n = pool.entries.size();
  if (n == 0) {
    LeadingTermChoice empty;
    if (auto order = realize_order(pool, empty, base)) visit(empty, *order);
    return;
  }
  std::vector<std::size_t> prefix;
  bool stop = false;
  std::function<void()> descend = [&] {
    const std::size_t depth = prefix.size();
    for (std::size_t k = 0; k < pool.entries[depth].poly.size() && !stop; ++k) {
      prefix.push_back(k);
      LeadingTermChoice c = choice_from_indices(pool, prefix);
      if (auto order = realize_order(pool, c, base)) {
        if (prefix.size() == n) stop = !visit(c, *order);
        else descend();
      }
      prefix.pop_back();
    }
  };
  descend();
}

bool weight_is_valid(const PolynomialPool& pool, const LeadingTermChoice& choice, const Cone& base,
                     const WeightOrder& order) {
  if (choice.term_index.size() != pool.entries.size()) return false;
  auto p = weight_problem(pool, choice, base);
  std::vector<Rational> w(order.w.begin(), order.w.end());
  return satisfies(p, w);
}

std::optional<ExponentVector> leading_exponent(const LaurentPolynomial& p, const PolynomialPool& pool,
                                               const LeadingTermChoice& choice) {
  if (p.is_zero()) return std::nullopt;
  if (p.size() == 1) return p.terms()[0].exp;
  auto parts = primitive_decomposition(p);
  auto idx = pool.find(parts.primitive.with_dim(4));
  if (!idx || *idx >= choice.exponent.size()) return std::nullopt;
  return choice.exponent[*idx] + parts.shift;
}

}  // namespace orbitsum
