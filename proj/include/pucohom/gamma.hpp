#pragma once

// Cohomology of the rank-two elementary abelian p-group Gamma: the mod-p
// ring F_p[xi, eta] (x) Lambda[a, b] with the Bockstein, the first Steenrod
// power and the SL_2(F_p) action, the integral ring Z[xi, eta, s]/(p xi,
// p eta, p s, s^2), and fixed subspaces of the action.

#include "pucohom/engine.hpp"
#include "pucohom/linalg.hpp"
#include "pucohom/slice.hpp"

#include <array>
#include <memory>
#include <vector>

namespace pucohom {

class SL2Element {
 public:
  // Entries are reduced mod p; throws AlgebraError unless det = 1 mod p.
  static SL2Element make(std::int64_t p, std::int64_t g11, std::int64_t g12, std::int64_t g21, std::int64_t g22);
  static SL2Element identity(std::int64_t p) { return make(p, 1, 0, 0, 1); }
  // [[1,1],[0,1]] and [[0,-1],[1,0]], which generate SL_2(F_p).
  static SL2Element unipotent(std::int64_t p) { return make(p, 1, 1, 0, 1); }
  static SL2Element rotation(std::int64_t p) { return make(p, 0, -1, 1, 0); }

  std::int64_t p() const { return p_; }
  std::int64_t operator()(int r, int c) const { return m_[static_cast<std::size_t>(2 * (r - 1) + (c - 1))]; }
  SL2Element operator*(const SL2Element& o) const;

 private:
  SL2Element(std::int64_t p, std::array<std::int64_t, 4> m) : p_(p), m_(m) {}
  std::int64_t p_;
  std::array<std::int64_t, 4> m_;
};

class GammaModP {
 public:
  static std::shared_ptr<const GammaModP> get(int p);
  explicit GammaModP(int p);

  int p() const { return p_; }
  const Ring& ring() const { return ring_; }
  // xi, eta (degree 2), a, b (degree 1)
  const TablePtr& table() const { return table_; }
  // xi, eta only
  const TablePtr& polynomial_table() const { return poly_table_; }

  Polynomial xi() const { return gen(0); }
  Polynomial eta() const { return gen(1); }
  Polynomial a() const { return gen(2); }
  Polynomial b() const { return gen(3); }
  Polynomial y() const;  // ab
  Polynomial s() const;  // xi b - eta a
  Polynomial z() const;  // xi^p b - eta^p a
  Polynomial f() const;  // xi^p eta - eta^p xi
  Polynomial h() const;  // xi^{p^2-p} + eta^{p-1} (xi^{p-1} - eta^{p-1})^{p-1}

  // Odd derivation with a -> xi, b -> eta.
  Polynomial bockstein(const Polynomial& f) const;
  // Derivation with xi -> xi^p, eta -> eta^p, a, b -> 0.
  Polynomial p1(const Polynomial& f) const;
  // a -> g11 a + g21 b, b -> g12 a + g22 b, and the same on (xi, eta).
  // Works on either table.
  Polynomial act(const SL2Element& g, const Polynomial& f) const;
  // a -> 0, xi -> 0.
  Polynomial restrict_to_tau(const Polynomial& f) const;

 private:
  Polynomial gen(std::size_t i) const { return Polynomial::generator(table_, ring_, i); }
  int p_;
  Ring ring_;
  TablePtr table_;
  TablePtr poly_table_;
};

// Z[xi, eta, s]/(p xi, p eta, p s, s^2). In positive degrees every slice is
// an F_p-vector space with basis xi^i eta^j and xi^i eta^j s; elements are
// therefore stored with F_p coefficients, and degree 0 is Z.
class GammaIntegral {
 public:
  static std::shared_ptr<const GammaIntegral> get(int p);
  explicit GammaIntegral(int p);

  int p() const { return p_; }
  const TablePtr& table() const { return table_; }  // xi, eta, s (s odd, degree 3)
  Ring ring_in_degree(int degree) const { return degree == 0 ? Ring::integers() : Ring::modp(p_); }

  Polynomial xi() const { return gen(0); }
  Polynomial eta() const { return gen(1); }
  Polynomial s() const { return gen(2); }
  Polynomial f() const;
  Polynomial h() const;

  // xi, eta transform as in GammaModP; s is fixed.
  Polynomial act(const SL2Element& g, const Polynomial& f) const;
  // Mod-p reduction into GammaModP: s -> xi b - eta a.
  Polynomial reduce(const Polynomial& f) const;

 private:
  Polynomial gen(std::size_t i) const { return Polynomial::generator(table_, Ring::modp(p_), i); }
  int p_;
  TablePtr table_;
};

enum class GammaSlice {
  ModP,        // F_p[xi, eta] (x) Lambda[a, b]
  Polynomial,  // F_p[xi, eta]
  Integral,    // Z[xi, eta, s]/(p xi, p eta, p s, s^2)
};

struct InvariantSlice {
  int p = 0;
  int degree = 0;
  GammaSlice kind = GammaSlice::ModP;
  DegreeSlice monomials;
  // Basis of the fixed subspace in monomial coordinates, reduced echelon
  // over F_p (over Z in integral degree 0, where the slice is Z itself).
  std::vector<std::vector<std::int64_t>> basis;
  std::vector<Polynomial> elements;

  std::size_t dim() const { return basis.size(); }
};

// Common fixed subspace of the unipotent and rotation generators.
InvariantSlice invariant_slice(int p, int degree, GammaSlice kind, Engine& engine = default_engine());

struct GammaCheckRow {
  int degree = 0;
  std::size_t fixed_dim = 0;
  std::size_t expected_dim = 0;  // presented quotient or free-algebra count
  std::size_t generated_dim = 0; // span of the images of the generators' monomials
  bool ok = false;
};

struct GammaCheckReport {
  std::vector<GammaCheckRow> rows;
  std::vector<std::string> failures;  // identities that did not hold
  bool ok() const;
};

// Fixed subspace of F_p[xi, eta] against F_p[f, h] in even degrees.
GammaCheckReport dickson_check(int p, int max_degree, Engine& engine = default_engine());

// Fixed subspace of the full mod-p ring against the presentation
// F_p[f, h] (x) Lambda[s, y, z] / (ys, yz, fy + sz), together with the
// relations, the invariance of y, s, z, f, h and the chain y -> s -> z -> f.
GammaCheckReport mui_check(int p, int max_degree, Engine& engine = default_engine());

// Integral fixed slices against the span of monomials in s, f, h.
GammaCheckReport integral_invariants_check(int p, int max_degree, Engine& engine = default_engine());

// The abstract algebra F_p[f, h] (x) Lambda[s, y, z] (y is recorded as an
// even generator of degree 2; y^2 is one of its relations).
struct MuiPresentation {
  TablePtr table;  // f, h, s, y, z
  std::vector<Polynomial> relations;  // ys, yz, fy + sz, y^2
  GeneratorMap images;                // into GammaModP
};
MuiPresentation mui_presentation(int p);

}  // namespace pucohom
