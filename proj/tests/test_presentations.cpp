#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "pucohom/presentations.hpp"
#include "support.hpp"

using namespace pucohom;

namespace {

// L_d by brute closure: every product of reductions of K and powers of c1,
// with no use of the recursion the library relies on.
std::size_t closure_l_dim(int p, int degree) {
  Ring r = Ring::modp(p);
  TablePtr ct = chern_table(p);
  std::vector<std::vector<Polynomial>> gens(static_cast<std::size_t>(degree + 1));
  gens[0].push_back(Polynomial::constant(ct, r, 1));
  if (degree >= 2) gens[2].push_back(Polynomial::generator(ct, r, 0));
  for (int e = 2; e <= degree; e += 2)
    for (const auto& k : k_basis(p, e).basis) gens[static_cast<std::size_t>(e)].push_back(k.in_ring(r).on_table(ct));
  std::vector<std::vector<Polynomial>> span(gens.size());
  for (int d = 0; d <= degree; d += 2) {
    auto slice = DegreeSlice::enumerate(ct, d);
    ModpSpan s(p, slice.size());
    auto add = [&](const Polynomial& f) {
      if (s.insert(to_modp(slice.coordinates(f), p))) span[static_cast<std::size_t>(d)].push_back(f);
    };
    for (const auto& g : gens[static_cast<std::size_t>(d)]) add(g);
    for (int e = 2; e < d; e += 2)
      for (const auto& a : span[static_cast<std::size_t>(e)])
        for (const auto& b : span[static_cast<std::size_t>(d - e)]) add(a * b);
  }
  return span[static_cast<std::size_t>(degree)].size();
}

std::size_t rho_i_dim(int p, int degree) {
  if (degree <= 0 || degree % 2) return 0;
  auto slice = DegreeSlice::enumerate(SigmaContext::get(p)->sigma_table(), degree);
  ModpSpan s(p, slice.size());
  for (const auto& u : i_basis(p, degree).basis) s.insert(to_modp(slice.coordinates(u), p));
  return s.rank();
}

// K_d plus one Z/p for each nontrivial x-monomial q with (K/I) nonzero in
// degree d - |q|.
AbelianGroupType vistoli_oracle(int p, int degree) {
  AbelianGroupType g;
  g.free_rank = k_basis(p, degree).rank();
  for (int e1 = 0; e1 <= 1; ++e1)
    for (int k = 0; 3 * e1 + (2 * p + 2) * k <= degree; ++k) {
      if (e1 == 0 && k == 0) continue;
      int rest = degree - 3 * e1 - (2 * p + 2) * k;
      if (rest % 2) continue;
      auto i = i_basis(p, rest);
      if (rest == 0 || *i.index == p) g.factors.push_back(p);
    }
  return g;
}

Polynomial main_gen(int p, int index) {
  return Polynomial::generator(main_presentation_table(p), Ring::modp(p), static_cast<std::size_t>(index));
}

}  // namespace

TEST_CASE("l_p_slice examples") {
  auto l2 = l_p_slice(3, 2);
  REQUIRE(l2.size() == 1);
  CHECK(serialize(l2[0]) == "1*c1");
  auto l4 = l_p_slice(3, 4);
  REQUIRE(l4.size() == 1);
  CHECK(serialize(l4[0]) == "1*c1^2");
  auto l0 = l_p_slice(3, 0);
  REQUIRE(l0.size() == 1);
  CHECK(serialize(l0[0]) == "1");
  CHECK(l_p_slice(3, 5).empty());
}

TEST_CASE("l_p_slice agrees with the full multiplicative closure") {
  for (int p : {3, 5})
    for (int d = 0; d <= (p == 3 ? 24 : 16); d += 2) {
      INFO("p = " << p << ", degree " << d);
      CHECK(l_p_slice(p, d).size() == closure_l_dim(p, d));
    }
}

TEST_CASE("subring_R_slices examples") {
  auto r = subring_R_slices(3, 12);
  CHECK(r.stable);
  CHECK(r.dims[2] == 1);
  CHECK(r.dims[3] == 1);
  CHECK(r.dims[5] == 0);
  auto g = GammaModP::get(3);
  REQUIRE(r.elements[2].size() == 1);
  CHECK(r.elements[2][0].right == g->y());
  CHECK(serialize(r.elements[2][0].left) == "1*c1");
  REQUIRE(r.elements[3].size() == 1);
  CHECK(r.elements[3][0].left.is_zero());
  CHECK(r.elements[3][0].right == g->s());
}

TEST_CASE("main_theorem_quotient_slices examples") {
  auto q = main_theorem_quotient_slices(3, 12);
  CHECK(q.dims[0] == 1);
  CHECK(q.dims[3] == 1);
  CHECK(q.dims[5] == 0);
  CHECK(q.dims[10] == subring_R_slices(3, 12).dims[10]);
}

TEST_CASE("subring_R0_slices examples") {
  auto r0 = subring_R0_slices(3, 12);
  CHECK(r0.stable);
  CHECK(r0.types[0].to_string() == "Z");
  CHECK(r0.types[3].to_string() == "Z/3");
  CHECK(r0.types[4].to_string() == "Z");
  CHECK(r0.types[7].to_string() == "0");
  CHECK(r0.types[8].to_string() == "Z+Z/3");
}

TEST_CASE("vistoli_quotient_slices examples and the closed-form count") {
  auto q = vistoli_quotient_slices(3, 24);
  CHECK(q.types[3].to_string() == "Z/3");
  CHECK(q.types[7].to_string() == "0");
  CHECK(q.types[8].to_string() == "Z+Z/3");
  for (int d = 0; d <= 24; ++d) {
    INFO("degree " << d);
    CHECK(q.types[static_cast<std::size_t>(d)] == vistoli_oracle(3, d));
  }
  auto q5 = vistoli_quotient_slices(5, 24);
  for (int d = 0; d <= 24; ++d) CHECK(q5.types[static_cast<std::size_t>(d)] == vistoli_oracle(5, d));
}

TEST_CASE("relation witnesses under the generator images") {
  for (int p : {3, 5}) {
    CHECK(phi_word(p, 1, 0, 1, 0, 0).is_zero());  // c1*x3 -> (0, ys)
    CHECK(phi_word(p, 1, 0, 0, 1, 0).is_zero());  // c1*x_{2p+1} -> (0, yz)
    auto a = phi_word(p, 1, 0, 0, 0, 1), b = phi_word(p, 0, 0, 1, 1, 0);
    CHECK((a.left + b.left).is_zero());
    CHECK((a.right + b.right).is_zero());  // yf + sz
    CHECK(!phi_word(p, 0, 0, 1, 0, 0).is_zero());
  }
}

TEST_CASE("Phi is multiplicative on random pairs of words") {
  for (int p : {3, 5}) {
    const int top = 24;
    std::uniform_int_distribution<int> small(0, 1), a_pick(0, 3), k_pick(0, 1);
    auto& rng = testing::rng();
    Ring r = Ring::modp(p);
    Polynomial delta = SigmaContext::get(p)->delta_polynomial().in_ring(r).on_table(chern_table(p));
    auto embed = [&](const Polynomial& c) {
      GeneratorMap m;
      for (int i = 0; i < p; ++i) m.emplace(i, main_gen(p, i));
      return substitute(c, m, main_presentation_table(p), r);
    };
    auto random_word = [&](Polynomial& poly, ProductElement& img) {
      int a = a_pick(rng), e1 = small(rng), e2 = small(rng), k = k_pick(rng);
      int b = (p == 3 && small(rng) && small(rng)) ? 1 : 0;
      Polynomial c = Polynomial::generator(chern_table(p), r, 0).pow(static_cast<unsigned>(a)) *
                     delta.pow(static_cast<unsigned>(b));
      poly = embed(c) * main_gen(p, p).pow(static_cast<unsigned>(e1)) *
             main_gen(p, p + 1).pow(static_cast<unsigned>(e2)) * main_gen(p, p + 2).pow(static_cast<unsigned>(k));
      img = phi_word(p, a, b, e1, e2, k);
    };
    int checked = 0;
    for (int trial = 0; trial < 60; ++trial) {
      Polynomial u(main_presentation_table(p), r), v(main_presentation_table(p), r);
      ProductElement iu = phi_word(p, 0, 0, 0, 0, 0), iv = iu;
      random_word(u, iu);
      random_word(v, iv);
      auto du = u.homogeneous_degree(), dv = v.homogeneous_degree();
      if (!du || !dv || *du + *dv > top) continue;
      ++checked;
      CHECK(on_phi_graph(p, u * v, iu * iv));
    }
    CHECK(checked > 10);
    // A wrong image is detected.
    auto g = GammaModP::get(p);
    ProductElement wrong{Polynomial(chern_table(p), r), g->s().scaled(2)};
    CHECK_FALSE(on_phi_graph(p, main_gen(p, p), wrong));
  }
}

TEST_CASE("Phi on rho(I) words") {
  const int p = 3;
  Ring r = Ring::modp(p);
  auto g = GammaModP::get(p);
  for (int e : {4, 6, 8}) {
    for (const auto& u : i_basis(p, e).basis) {
      Polynomial uc = u.in_ring(r).on_table(chern_table(p));
      GeneratorMap m;
      for (int i = 0; i < p; ++i) m.emplace(i, main_gen(p, i));
      Polynomial word = substitute(uc, m, main_presentation_table(p), r);
      CHECK(on_phi_graph(p, word, ProductElement{uc, Polynomial(g->table(), r)}));
      CHECK(on_phi_graph(p, word * main_gen(p, p),
                         ProductElement{Polynomial(chern_table(p), r), Polynomial(g->table(), r)}));
    }
  }
}

TEST_CASE("verify_main passes") {
  auto r3 = verify_main(3, 24);
  for (const auto& f : r3.failures) MESSAGE(f);
  CHECK(r3.ok());
  CHECK(r3.rows.size() == 25);
  auto r5 = verify_main(5, 16);
  CHECK(r5.ok());
}

TEST_CASE("quotient dimension equals invariants plus rho(I)") {
  auto q = main_theorem_quotient_slices(3, 24);
  for (int d = 0; d <= 24; ++d) {
    INFO("degree " << d);
    CHECK(q.dims[static_cast<std::size_t>(d)] ==
          invariant_slice(3, d, GammaSlice::ModP).dim() + rho_i_dim(3, d));
  }
}

TEST_CASE("verify_vistoli passes") {
  auto r3 = verify_vistoli(3, 24);
  for (const auto& f : r3.failures) MESSAGE(f);
  CHECK(r3.ok());
  CHECK(verify_vistoli(5, 24).ok());
}

TEST_CASE("report renderings") {
  auto r = verify_vistoli(3, 4);
  auto csv = render_csv(r);
  CHECK(csv.rfind("degree,lhs_dim_or_factors,rhs_dim_or_factors,status\n", 0) == 0);
  CHECK(csv.find("3,Z/3,Z/3,OK\n") != std::string::npos);
  auto text = render_table(r);
  CHECK(text.find("# verified through degree 4") != std::string::npos);
  CHECK(text.find("PASS vistoli") != std::string::npos);
}
