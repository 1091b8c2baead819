#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "pucohom/gamma.hpp"
#include "support.hpp"

using namespace pucohom;

namespace {

std::vector<SL2Element> whole_group(int p) {
  std::vector<SL2Element> out;
  for (int a = 0; a < p; ++a)
    for (int b = 0; b < p; ++b)
      for (int c = 0; c < p; ++c)
        for (int d = 0; d < p; ++d)
          if (((a * d - b * c) % p + p) % p == 1) out.push_back(SL2Element::make(p, a, b, c, d));
  return out;
}

// Fixed subspace dimension under every group element, by brute force.
std::size_t brute_fixed_dim(int p, int degree) {
  auto g = GammaModP::get(p);
  auto slice = DegreeSlice::enumerate(g->table(), degree);
  auto group = whole_group(p);
  ExactMatrix m(g->ring(), group.size() * slice.size(), slice.size());
  for (std::size_t j = 0; j < slice.size(); ++j) {
    Polynomial mono = Polynomial::term(g->table(), g->ring(), slice[j], 1);
    for (std::size_t k = 0; k < group.size(); ++k) {
      auto c = slice.coordinates(g->act(group[k], mono) - mono);
      for (std::size_t i = 0; i < c.size(); ++i)
        if (c[i] != 0) m.set(k * slice.size() + i, j, c[i]);
    }
  }
  return slice.size() - rank(m);
}

SL2Element random_element(int p) {
  std::uniform_int_distribution<int> pick(0, 1), len(1, 6);
  SL2Element g = SL2Element::identity(p);
  for (int i = len(testing::rng()); i > 0; --i)
    g = g * (pick(testing::rng()) ? SL2Element::unipotent(p) : SL2Element::rotation(p));
  return g;
}

}  // namespace

TEST_CASE("SL2 elements must have determinant one") {
  CHECK_THROWS_AS(SL2Element::make(3, 1, 1, 1, 1), AlgebraError);
  CHECK_THROWS_AS(SL2Element::make(5, 2, 0, 0, 2), AlgebraError);
  CHECK(SL2Element::make(5, 2, 0, 0, 3)(2, 2) == 3);
  CHECK(whole_group(3).size() == 24);
}

TEST_CASE("bockstein examples") {
  for (int p : {3, 5}) {
    auto g = GammaModP::get(p);
    CHECK(g->bockstein(g->y()) == g->xi() * g->b() - g->eta() * g->a());
    CHECK(g->bockstein(g->z()) == g->f());
    CHECK(g->bockstein(g->xi().pow(3) * g->eta().pow(2)).is_zero());
  }
}

TEST_CASE("p1 examples") {
  for (int p : {3, 5, 7}) {
    auto g = GammaModP::get(p);
    CHECK(g->p1(g->s()) == g->z());
    CHECK(g->p1(Polynomial::constant(g->table(), g->ring(), 1)).is_zero());
    CHECK(g->p1(g->xi().pow(2)) == g->xi().pow(static_cast<unsigned>(p + 1)).scaled(2));
  }
}

TEST_CASE("sl2_act examples") {
  auto g = GammaModP::get(3);
  auto f = testing::random_polynomial(g->table(), g->ring(), 8);
  CHECK(g->act(SL2Element::identity(3), f) == f);
  CHECK(g->act(SL2Element::unipotent(3), g->y()) == g->y());
  CHECK(g->act(SL2Element::rotation(3), g->s()) == g->s());
}

TEST_CASE("restrict_to_tau examples") {
  for (int p : {3, 5}) {
    auto g = GammaModP::get(p);
    CHECK(g->restrict_to_tau(g->s()).is_zero());
    CHECK(g->restrict_to_tau(g->f()).is_zero());
    CHECK(g->restrict_to_tau(g->h()) == g->eta().pow(static_cast<unsigned>(p * p - p)));
  }
}

TEST_CASE("distinguished elements: degrees, invariance and relations") {
  for (int p : {3, 5, 7}) {
    auto g = GammaModP::get(p);
    CHECK(g->y().homogeneous_degree() == 2);
    CHECK(g->s().homogeneous_degree() == 3);
    CHECK(g->z().homogeneous_degree() == 2 * p + 1);
    CHECK(g->f().homogeneous_degree() == 2 * p + 2);
    CHECK(g->h().homogeneous_degree() == 2 * p * p - 2 * p);
    CHECK(g->bockstein(g->p1(g->bockstein(g->y()))) == g->f());
    for (const auto& e : {g->y(), g->s(), g->z(), g->f(), g->h()})
      for (const auto& el : whole_group(p)) CHECK(g->act(el, e) == e);
    CHECK((g->y() * g->s()).is_zero());
    CHECK((g->y() * g->z()).is_zero());
    CHECK((g->f() * g->y() + g->s() * g->z()).is_zero());
  }
}

TEST_CASE("the action is a group action commuting with beta and P1") {
  for (int p : {3, 5}) {
    auto g = GammaModP::get(p);
    for (int trial = 0; trial < 25; ++trial) {
      auto u = random_element(p), v = random_element(p);
      auto f = testing::random_polynomial(g->table(), g->ring(), 2 * p + 3, 6);
      CHECK(g->act(u, g->act(v, f)) == g->act(u * v, f));
      CHECK(g->act(u, g->bockstein(f)) == g->bockstein(g->act(u, f)));
      CHECK(g->act(u, g->p1(f)) == g->p1(g->act(u, f)));
      CHECK(g->bockstein(g->bockstein(f)).is_zero());
    }
  }
}

TEST_CASE("invariant_slice examples") {
  auto g = GammaModP::get(3);
  auto i2 = invariant_slice(3, 2, GammaSlice::ModP);
  REQUIRE(i2.dim() == 1);
  CHECK(i2.elements[0] == g->y());
  auto i3 = invariant_slice(3, 3, GammaSlice::ModP);
  REQUIRE(i3.dim() == 1);
  CHECK((i3.elements[0] == g->s() || i3.elements[0] == -g->s()));
  CHECK(invariant_slice(3, 1, GammaSlice::ModP).dim() == 0);
  CHECK(invariant_slice(3, 0, GammaSlice::Integral).elements[0].ring() == Ring::integers());
}

TEST_CASE("fixed subspaces of the two generators equal those of the whole group") {
  for (int p : {3, 5}) {
    for (int d = 0; d <= (p == 3 ? 14 : 12); ++d) {
      INFO("p = " << p << ", degree " << d);
      auto inv = invariant_slice(p, d, GammaSlice::ModP);
      CHECK(inv.dim() == brute_fixed_dim(p, d));
      auto g = GammaModP::get(p);
      for (const auto& e : inv.elements) CHECK(g->act(random_element(p), e) == e);
    }
  }
}

TEST_CASE("Dickson invariants have the Hilbert function of F_p[f, h]") {
  auto r3 = dickson_check(3, 30);
  CHECK(r3.ok());
  CHECK(r3.rows.size() == 16);
  auto r5 = dickson_check(5, 24);
  CHECK(r5.ok());
  for (const auto& row : r3.rows)
    if (row.degree == 8 || row.degree == 12) CHECK(row.fixed_dim == 1);
}

TEST_CASE("Mui presentation matches the fixed subspace") {
  auto r3 = mui_check(3, 20);
  CHECK(r3.failures.empty());
  for (const auto& row : r3.rows) {
    INFO("degree " << row.degree);
    CHECK(row.ok);
  }
  CHECK(r3.rows[8].fixed_dim >= 1);  // f
  CHECK(mui_check(5, 20).ok());
}

TEST_CASE("integral invariants are generated by s, f, h") {
  auto r = integral_invariants_check(3, 24);
  CHECK(r.ok());
  CHECK(integral_invariants_check(5, 20).ok());
  auto gi = GammaIntegral::get(3);
  auto g = GammaModP::get(3);
  CHECK(gi->reduce(gi->s()) == g->s());
  CHECK(gi->reduce(gi->f()) == g->f());
  CHECK(gi->reduce(gi->h()) == g->h());
}
