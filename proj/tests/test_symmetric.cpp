#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "pucohom/symmetric.hpp"
#include "support.hpp"

#include <algorithm>
#include <numeric>

using namespace pucohom;

namespace {

// Sum of f over all n! permutations of the variables: symmetric by
// construction, independent of the transposition-based check.
Polynomial symmetrize(const SigmaContext& ctx, const Polynomial& f) {
  std::vector<std::size_t> perm(static_cast<std::size_t>(ctx.n()));
  std::iota(perm.begin(), perm.end(), 0);
  Polynomial out(ctx.t_table(), f.ring());
  do {
    for (const auto& [m, c] : f.terms()) {
      auto e = m.exponents(perm.size());
      std::vector<unsigned> moved(perm.size());
      for (std::size_t i = 0; i < perm.size(); ++i) moved[perm[i]] = e[i];
      out.add_term(Monomial::from_exponents(*ctx.t_table(), moved), c);
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

Polynomial sig(const SigmaContext& ctx, const std::string& text, Ring ring = Ring::integers()) {
  return parse(text, ctx.sigma_table(), ring);
}

Polynomial tee(const SigmaContext& ctx, const std::string& text, Ring ring = Ring::integers()) {
  return parse(text, ctx.t_table(), ring);
}

}  // namespace

TEST_CASE("elementary symmetric polynomials") {
  auto c3 = SigmaContext::get(3);
  CHECK(c3->elementary_symmetric(0) == Polynomial::constant(c3->t_table(), Ring::integers(), 1));
  CHECK(c3->elementary_symmetric(2) == tee(*c3, "t1*t2 + t1*t3 + t2*t3"));
  auto c2 = SigmaContext::get(2);
  CHECK(c2->elementary_symmetric(2) == tee(*c2, "t1*t2"));
  CHECK_THROWS_AS(c3->elementary_symmetric(4), AlgebraError);
  CHECK_THROWS_AS(c3->elementary_symmetric(-1), AlgebraError);
  CHECK((*c3->sigma_table())[2].degree == 6);
}

TEST_CASE("t_to_sigma examples") {
  auto c3 = SigmaContext::get(3);
  CHECK(c3->t_to_sigma(tee(*c3, "t1*t2 + t1*t3 + t2*t3")) == sig(*c3, "s2"));
  CHECK(c3->t_to_sigma(tee(*c3, "t1^2 + t2^2 + t3^2")) == sig(*c3, "s1^2 - 2*s2"));
  CHECK(c3->t_to_sigma(tee(*c3, "t1^3 + t2^3 + t3^3")) == sig(*c3, "s1^3 - 3*s1*s2 + 3*s3"));
  CHECK_THROWS_AS(c3->t_to_sigma(tee(*c3, "t1")), SymmetryError);
  CHECK_THROWS_AS(c3->t_to_sigma(tee(*c3, "t1^2*t2 + t2^2*t3 + t3^2*t1")), SymmetryError);
}

TEST_CASE("nabla_sigma examples") {
  auto c3 = SigmaContext::get(3);
  CHECK(c3->nabla_sigma(sig(*c3, "s2")) == sig(*c3, "2*s1"));
  CHECK(c3->nabla_sigma(sig(*c3, "1")).is_zero());
  CHECK(c3->nabla_sigma(sig(*c3, "27*s3 - 9*s1*s2 + 2*s1^3")).is_zero());
}

TEST_CASE("delta examples") {
  auto c2 = SigmaContext::get(2);
  CHECK(c2->delta_polynomial() == sig(*c2, "-1*s1^2 + 4*s2"));
  auto c3 = SigmaContext::get(3);
  const auto& d3 = c3->delta_polynomial();
  CHECK(d3 == sig(*c3, "4*s1^3*s3 - s1^2*s2^2 - 18*s1*s2*s3 + 4*s2^3 + 27*s3^2"));
  CHECK(d3.in_ring(Ring::modp(3)) == sig(*c3, "s1^3*s3 - s1^2*s2^2 + s2^3", Ring::modp(3)));
  CHECK_THROWS_AS(SigmaContext::get(1)->delta_polynomial(), AlgebraError);
}

TEST_CASE("delta has degree 2(n^2 - n) and lies in the kernel of nabla") {
  for (int n = 2; n <= 5; ++n) {
    auto ctx = SigmaContext::get(n);
    const auto& d = ctx->delta_polynomial();
    CHECK(d.homogeneous_degree() == 2 * (n * n - n));
    CHECK(ctx->nabla_sigma(d).is_zero());
    CHECK(ctx->sigma_to_t(d) == ctx->delta_in_t());
  }
}

TEST_CASE("t_to_sigma inverts sigma_to_t on random symmetric input") {
  std::uniform_int_distribution<int> deg(0, 5);
  for (int n = 1; n <= 4; ++n) {
    auto ctx = SigmaContext::get(n);
    for (Ring ring : {Ring::integers(), Ring::rationals(), Ring::modp(5)}) {
      for (int trial = 0; trial < 8; ++trial) {
        auto f = symmetrize(*ctx, testing::random_homogeneous(ctx->t_table(), ring, 2 * deg(testing::rng()), 2));
        auto s = ctx->t_to_sigma(f);
        CHECK(ctx->sigma_to_t(s) == f);
        auto g = testing::random_polynomial(ctx->sigma_table(), ring, 10, 4);
        CHECK(ctx->t_to_sigma(ctx->sigma_to_t(g)) == g);
      }
    }
  }
}

TEST_CASE("nabla commutes with the change of alphabet") {
  std::uniform_int_distribution<int> deg(1, 6);
  for (int n = 2; n <= 5; ++n) {
    auto ctx = SigmaContext::get(n);
    for (int trial = 0; trial < 8; ++trial) {
      auto f = symmetrize(*ctx, testing::random_homogeneous(ctx->t_table(), Ring::integers(), 2 * deg(testing::rng()), 2));
      CHECK(ctx->nabla_sigma(ctx->t_to_sigma(f)) == ctx->t_to_sigma(ctx->nabla_t(f)));
    }
  }
}
