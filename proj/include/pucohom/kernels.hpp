#pragma once

// Degree slices of K_n (symmetric polynomials killed by nabla), the mod-p
// evaluation Theta_p (t_i -> i*eta), and the ideal I_p of K_p on which
// Theta_p vanishes.

#include "pucohom/engine.hpp"
#include "pucohom/linalg.hpp"
#include "pucohom/slice.hpp"
#include "pucohom/symmetric.hpp"

#include <optional>
#include <string>
#include <vector>

namespace pucohom {

// Raised when a computed slice contradicts a statement being verified.
class TheoremViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Value of Theta_p in degree 2d: an integer for d = 0, a residue mod p
// times eta^d otherwise.
struct ThetaValue {
  std::int64_t p = 0;
  int degree = 0;
  mpz_class residue;

  bool is_zero() const { return residue == 0; }
  std::string to_string() const;  // "5", "0", "2*eta^6"
  friend bool operator==(const ThetaValue& a, const ThetaValue& b) {
    return a.p == b.p && a.degree == b.degree && a.residue == b.residue;
  }
};

// Theta_p of a homogeneous polynomial in t1..tp or s1..sp of the
// p-variable context. `degree` is needed only for the zero polynomial.
ThetaValue theta_eval(int p, const Polynomial& f, std::optional<int> degree = std::nullopt);

struct KSlice {
  int n = 0;
  int degree = 0;
  DegreeSlice sigma_slice;
  std::vector<IntVector> coordinates;  // Hermite basis in sigma_slice coordinates
  std::vector<Polynomial> basis;       // the same vectors as polynomials over Z

  std::size_t rank() const { return coordinates.size(); }
};

// Saturated Z-basis of K_{n,degree}; empty for odd degrees.
KSlice k_basis(int n, int degree, Engine& engine = default_engine());

// Ranks of K_{n,2d} for 2d = 0, 2, ..., max_degree.
std::vector<std::size_t> k_hilbert(int n, int max_degree, Engine& engine = default_engine());

// Number of monomials of the given degree in a polynomial algebra with
// generators of the listed (positive, even) degrees.
std::size_t polynomial_algebra_dimension(const std::vector<int>& generator_degrees, int degree);

struct ISlice {
  int p = 0;
  int degree = 0;
  std::vector<IntVector> coordinates;  // Hermite basis, sigma-slice coordinates
  std::vector<Polynomial> basis;
  // [K : I] in this degree; nullopt in degree 0 where I = 0 and K = Z.
  std::optional<mpz_class> index;

  std::size_t rank() const { return coordinates.size(); }
};

ISlice i_basis(int p, int degree, Engine& engine = default_engine());

// Whether Theta_p(K_{p,2d}) is zero or all of Z/p*eta^d (Z in degree 0).
enum class ThetaImage { Zero, Full };

// Which degrees are expected to have full image.
enum class ProfileRule {
  // Image equals the subring generated by Theta_p(delta): full exactly when
  // (p^2 - p) divides d.
  GeneratedSubring,
  // Full for every 2d >= 2(p^2 - p).
  Threshold,
};

struct ThetaProfileRow {
  int degree = 0;
  ThetaImage observed = ThetaImage::Zero;
  ThetaImage expected = ThetaImage::Zero;
  bool ok() const { return observed == expected; }
};

std::vector<ThetaProfileRow> theta_image_profile(int p, int max_degree, ProfileRule rule,
                                                 Engine& engine = default_engine());
std::string to_string(ThetaImage image);

struct KGeneratorDegree {
  int degree = 0;
  // Structure of K_{n,2d} / (products of lower-degree elements).
  AbelianGroupType quotient;
  // Elements of K_{n,2d} whose classes generate that quotient, one per
  // invariant factor (free part last).
  std::vector<Polynomial> representatives;
  // Number of new generators needed over Q (the free rank of the quotient).
  std::size_t rational_count() const { return quotient.free_rank; }
  std::size_t integral_count() const { return quotient.minimal_generators(); }
};

// Degreewise minimal generators of K_n through max_degree, over Z. Degrees
// where nothing new is needed are omitted.
std::vector<KGeneratorDegree> k_generators(int n, int max_degree, Engine& engine = default_engine());

// Whether f in K_{n,2d} lies in the span of products of lower-degree
// elements of K_n.
bool is_decomposable(int n, const Polynomial& f, Engine& engine = default_engine());

struct E4Row {
  int degree = 0;
  std::size_t k_rank = 0;
  std::size_t zero_column_rank = 0;
  bool ok = false;
};

// Recomputes the zero column of the E_3 page as the integer kernel of
// f -> nabla(f)*x written in t-monomials with x odd of degree 3, and compares
// the lattice with k_basis degree by degree.
std::vector<E4Row> e4_zero_column_check(int n, int max_degree, Engine& engine = default_engine());

}  // namespace pucohom
