#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "pucohom/kernels.hpp"
#include "support.hpp"

#include <filesystem>
#include <fstream>

using namespace pucohom;

namespace {

Polynomial sig(int n, const std::string& text) {
  return parse(text, SigmaContext::get(n)->sigma_table(), Ring::integers());
}

// Theta by brute substitution t_i -> i*eta into a one-generator ring over Z,
// then reduction mod p of the single coefficient.
mpz_class theta_oracle(int p, const Polynomial& f_in_sigma) {
  auto ctx = SigmaContext::get(p);
  auto eta_table = GeneratorTable::make({{"eta", 2, Parity::Even}});
  Ring z = Ring::integers();
  auto eta = Polynomial::generator(eta_table, z, "eta");
  GeneratorMap images;
  for (int i = 1; i <= p; ++i) images.emplace(static_cast<std::size_t>(i - 1), eta.scaled(i));
  Polynomial image = substitute(ctx->sigma_to_t(f_in_sigma), images, eta_table, z);
  if (image.is_zero()) return 0;
  mpz_class c = image.terms().begin()->second.get_num();
  if (image.terms().begin()->first.degree() > 0) {
    mpz_class pp = p;
    mpz_fdiv_r(c.get_mpz_t(), c.get_mpz_t(), pp.get_mpz_t());
  }
  return c;
}

// Monomial count of Q[c_2, ..., c_n] via slice enumeration.
std::size_t rational_rank(int n, int degree) {
  std::vector<Generator> g;
  for (int i = 2; i <= n; ++i) g.push_back({"c" + std::to_string(i), 2 * i, Parity::Even});
  return DegreeSlice::enumerate(GeneratorTable::make(g), degree).size();
}

std::filesystem::path fresh_dir(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("pucohom-" + name + "-" + std::to_string(testing::test_seed()));
  std::filesystem::remove_all(dir);
  return dir;
}

}  // namespace

TEST_CASE("theta_eval examples") {
  CHECK(theta_eval(3, sig(3, "s1")).is_zero());
  CHECK(theta_eval(3, sig(3, "s2")).residue == 2);
  CHECK(theta_eval(3, sig(3, "s2")).to_string() == "2*eta^2");
  auto ctx = SigmaContext::get(3);
  auto d = theta_eval(3, ctx->delta_in_t());
  CHECK(d.degree == 12);
  CHECK(d.residue == 2);
  CHECK(theta_eval(3, sig(3, "5")).residue == 5);
  CHECK(theta_eval(3, sig(3, "5")).to_string() == "5");
  CHECK_THROWS_AS(theta_eval(3, sig(3, "s1 + s2")), AlgebraError);
  CHECK_THROWS_AS(theta_eval(3, sig(5, "s1")), TableMismatchError);
}

TEST_CASE("theta_eval agrees with direct substitution and is multiplicative") {
  std::uniform_int_distribution<int> deg(0, 6);
  for (int p : {3, 5}) {
    auto ctx = SigmaContext::get(p);
    for (int trial = 0; trial < 25; ++trial) {
      int da = 2 * deg(testing::rng()), db = 2 * deg(testing::rng());
      auto a = testing::random_homogeneous(ctx->sigma_table(), Ring::integers(), da);
      auto b = testing::random_homogeneous(ctx->sigma_table(), Ring::integers(), db);
      auto ta = theta_eval(p, a, da), tb = theta_eval(p, b, db), tab = theta_eval(p, a * b, da + db);
      CHECK(ta.residue == theta_oracle(p, a));
      CHECK(theta_eval(p, ctx->sigma_to_t(a), da) == ta);
      mpz_class prod = ta.residue * tb.residue;
      if (da + db > 0) prod %= p;
      CHECK(tab.residue == prod);
      CHECK(tab.degree == da + db);
    }
  }
}

TEST_CASE("k_basis examples") {
  CHECK(k_basis(3, 2).rank() == 0);
  auto k4 = k_basis(3, 4);
  REQUIRE(k4.rank() == 1);
  CHECK(k4.basis[0] == sig(3, "3*s2 - s1^2"));
  CHECK(k_basis(3, 12).rank() == 2);
  CHECK(k_basis(3, 0).rank() == 1);
  CHECK(k_basis(3, 7).rank() == 0);
}

TEST_CASE("k_hilbert examples") {
  CHECK(k_hilbert(3, 12) == std::vector<std::size_t>{1, 0, 1, 1, 1, 1, 2});
  CHECK(k_hilbert(2, 8) == std::vector<std::size_t>{1, 0, 1, 0, 1});
  for (int n = 2; n <= 6; ++n) CHECK(k_basis(n, 2).rank() == 0);
}

TEST_CASE("K ranks match Q[c_2..c_n], bases are killed by nabla and saturated") {
  for (int n = 2; n <= 5; ++n) {
    auto ctx = SigmaContext::get(n);
    auto ranks = k_hilbert(n, 24);
    for (std::size_t i = 0; i < ranks.size(); ++i) {
      int degree = static_cast<int>(2 * i);
      CHECK(ranks[i] == rational_rank(n, degree));
      std::vector<int> gens;
      for (int j = 2; j <= n; ++j) gens.push_back(2 * j);
      CHECK(ranks[i] == polynomial_algebra_dimension(gens, degree));
      auto k = k_basis(n, degree);
      for (const auto& f : k.basis) CHECK(ctx->nabla_sigma(f).is_zero());
      for (std::int64_t p : {2, 3, 5}) {
        ModpSpan span(p, k.sigma_slice.size());
        for (const auto& v : k.coordinates) span.insert(to_modp(v, p));
        CHECK(span.rank() == k.rank());
      }
    }
  }
}

TEST_CASE("i_basis examples and index profile") {
  auto i0 = i_basis(3, 0);
  CHECK(i0.rank() == 0);
  CHECK_FALSE(i0.index.has_value());
  auto i4 = i_basis(3, 4);
  CHECK(i4.rank() == 1);
  CHECK(*i4.index == 1);
  CHECK(i4.coordinates == k_basis(3, 4).coordinates);
  auto i12 = i_basis(3, 12);
  CHECK(i12.rank() == 2);
  CHECK(*i12.index == 3);
  for (int p : {3, 5}) {
    for (int degree = 2; degree <= (p == 3 ? 36 : 40); degree += 2) {
      auto i = i_basis(p, degree);
      auto k = k_basis(p, degree);
      REQUIRE(i.index.has_value());
      CHECK((*i.index == 1 || *i.index == p));
      CHECK(i.rank() == k.rank());
      for (const auto& f : i.basis) CHECK(theta_eval(p, f, degree).is_zero());
      // p * K is inside I and I is inside K.
      for (const auto& v : k.coordinates) {
        IntVector pv = v;
        for (auto& x : pv) x *= p;
        CHECK(lattice_coordinates(i.coordinates, pv).has_value());
      }
      for (const auto& v : i.coordinates) CHECK(lattice_coordinates(k.coordinates, v).has_value());
      if (i.rank() > 0) {
        mpz_class det_k = 1, det_i = 1;
        for (std::size_t r = 0; r < k.rank(); ++r) {
          auto lead = [](const IntVector& row) {
            for (const auto& x : row)
              if (x != 0) return x;
            return mpz_class(0);
          };
          det_k *= lead(k.coordinates[r]);
          det_i *= lead(i.coordinates[r]);
        }
        CHECK(det_i / det_k == *i.index);
      }
    }
  }
}

TEST_CASE("delta lies in K_p but not in I_p") {
  for (int p : {3, 5}) {
    auto ctx = SigmaContext::get(p);
    const auto& delta = ctx->delta_polynomial();
    int degree = 2 * (p * p - p);
    auto k = k_basis(p, degree);
    auto i = i_basis(p, degree);
    auto coords = k.sigma_slice.coordinates(delta);
    IntVector v(coords.size());
    for (std::size_t j = 0; j < v.size(); ++j) v[j] = coords[j].get_num();
    CHECK(lattice_coordinates(k.coordinates, v).has_value());
    CHECK_FALSE(lattice_coordinates(i.coordinates, v).has_value());
    CHECK(theta_eval(p, delta).residue == p - 1);
  }
}

TEST_CASE("theta image profile for p = 3 through degree 16") {
  auto rows = theta_image_profile(3, 16, ProfileRule::GeneratedSubring);
  REQUIRE(rows.size() == 9);
  for (const auto& r : rows) {
    CHECK(r.ok());
    bool full = r.degree % 12 == 0;
    CHECK((r.observed == ThetaImage::Full) == full);
  }
  // Degree 14 is zero: K_{3,14} is spanned by gamma_2^2 gamma_3.
  auto literal = theta_image_profile(3, 16, ProfileRule::Threshold);
  CHECK_FALSE(literal[7].ok());
  CHECK(literal[6].ok());
}

TEST_CASE("k_generators for n = 3 through degree 12") {
  auto gens = k_generators(3, 12);
  REQUIRE(gens.size() == 3);
  CHECK(gens[0].degree == 4);
  CHECK(gens[1].degree == 6);
  CHECK(gens[2].degree == 12);
  for (const auto& g : gens) CHECK(g.integral_count() == 1);
  CHECK(gens[0].rational_count() == 1);
  CHECK(gens[1].rational_count() == 1);
  CHECK(gens[2].rational_count() == 0);  // gamma_2^3 and gamma_3^2 span over Q

  auto matches = [](const Polynomial& rep, const Polynomial& target) {
    return is_decomposable(3, rep - target) || is_decomposable(3, rep + target);
  };
  CHECK(matches(gens[0].representatives[0], sig(3, "3*s2 - s1^2")));
  CHECK(matches(gens[1].representatives[0], sig(3, "27*s3 - 9*s1*s2 + 2*s1^3")));
  CHECK(matches(gens[2].representatives[0], SigmaContext::get(3)->delta_polynomial()));
  CHECK(is_decomposable(3, k_basis(3, 8).basis[0]));
}

TEST_CASE("k_generators for n = 2: one generator in degree 4") {
  auto gens = k_generators(2, 20);
  REQUIRE(gens.size() == 1);
  CHECK(gens[0].degree == 4);
  CHECK(gens[0].quotient.to_string() == "Z");
}

TEST_CASE("zero column of E_3 agrees with K") {
  for (int n : {3, 4, 5}) {
    for (const auto& row : e4_zero_column_check(n, 12)) {
      CHECK(row.ok);
      CHECK(row.k_rank == row.zero_column_rank);
    }
  }
}

TEST_CASE("slice cache: reuse, corruption and idempotence") {
  auto dir = fresh_dir("kcache");
  std::vector<std::string> first;
  {
    Engine engine({dir.string(), 2});
    for (int degree = 0; degree <= 16; degree += 2)
      for (const auto& f : k_basis(3, degree, engine).basis) first.push_back(serialize(f));
  }
  std::size_t files = 0;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    ++files;
    std::ifstream in(entry.path());
    std::string header;
    std::getline(in, header);
    CHECK(header.rfind("v1;kind=K;p=3;deg=", 0) == 0);
  }
  CHECK(files == 9);

  // Flip one byte in each file; every slice must still come back right.
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    std::fstream io(entry.path(), std::ios::in | std::ios::out | std::ios::binary);
    io.seekg(0, std::ios::end);
    auto size = static_cast<long>(io.tellg());
    std::uniform_int_distribution<long> pos(0, size - 2);
    long at = pos(testing::rng());
    io.seekg(at);
    char c = static_cast<char>(io.get());
    io.seekp(at);
    io.put(static_cast<char>(c == '1' ? '2' : '1'));
  }
  std::vector<std::string> second, third;
  {
    Engine engine({dir.string(), 1});
    for (int degree = 0; degree <= 16; degree += 2)
      for (const auto& f : k_basis(3, degree, engine).basis) second.push_back(serialize(f));
  }
  {
    Engine engine({dir.string(), 1});
    for (int degree = 0; degree <= 16; degree += 2)
      for (const auto& f : k_basis(3, degree, engine).basis) third.push_back(serialize(f));
  }
  CHECK(second == first);
  CHECK(third == first);
  std::filesystem::remove_all(dir);
}
