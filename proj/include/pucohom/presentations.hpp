#pragma once

// The image subrings R (mod p) and R_0 (integral) inside the product of the
// Chern-class side and the Gamma side, the two presented quotients, and the
// degreewise comparison of each quotient with its subring.

#include "pucohom/gamma.hpp"
#include "pucohom/kernels.hpp"
#include "pucohom/report.hpp"

#include <vector>

namespace pucohom {

// c1..cp with c_i of degree 2i; the same exponents as s1..sp.
TablePtr chern_table(int p);

// A pair (left, right): left over chern_table(p), right over the mod-p
// Gamma table (or the integral one). Both components have the same degree.
struct ProductElement {
  Polynomial left;
  Polynomial right;

  bool is_zero() const { return left.is_zero() && right.is_zero(); }
  friend bool operator==(const ProductElement& a, const ProductElement& b) {
    return a.left == b.left && a.right == b.right;
  }
};

// Componentwise product. A degree-0 integral right factor is read in the
// ring of the other factor.
ProductElement operator*(const ProductElement& a, const ProductElement& b);

// Reduced echelon basis over F_p of the degree-d part of the subring of
// F_p[c1..cp] generated by c1 and the reductions of K_p.
std::vector<Polynomial> l_p_slice(int p, int degree, Engine& engine = default_engine());

struct SubringSliceSet {
  int p = 0;
  bool integral = false;
  int max_degree = 0;
  // Per degree: an F_p-basis (mod p), or generators of the lattice L + T
  // with the rows lying in T dropped (integral).
  std::vector<std::vector<ProductElement>> elements;
  std::vector<std::size_t> dims;         // mod p
  std::vector<AbelianGroupType> types;   // integral: (L + T) / T
  // One more closure pass added nothing; otherwise the offending degrees.
  bool stable = false;
  std::vector<std::string> unstable;
};

// Subring generated by (rho(I_p), 0), (0, s), (0, z), (0, f), (c1, y),
// (delta, -h) inside F_p[c] x (F_p[xi, eta] (x) Lambda[a, b]).
SubringSliceSet subring_R_slices(int p, int max_degree, Engine& engine = default_engine());

// Subring generated by (I_p, 0), (0, s), (0, f), (delta, -h) inside
// Z[c] x Z[xi, eta, s]/(p xi, p eta, p s, s^2).
SubringSliceSet subring_R0_slices(int p, int max_degree, Engine& engine = default_engine());

struct PresentationSliceSet {
  int p = 0;
  bool integral = false;
  TablePtr table;
  std::vector<Polynomial> relations;   // named generators of the ideal (mod p case)
  std::vector<std::size_t> dims;       // mod p
  std::vector<AbelianGroupType> types; // integral
};

// L_p (x) F_p[x_{2p+2}] (x) Lambda[x3, x_{2p+1}] modulo the ideal generated by
// u*x3, u*x_{2p+1}, u*x_{2p+2} (u in rho(I_p)), c1*x3, c1*x_{2p+1} and
// c1*x_{2p+2} + x3*x_{2p+1}.
PresentationSliceSet main_theorem_quotient_slices(int p, int max_degree, Engine& engine = default_engine());

// K_p (x) Z[x_{2p+2}] (x) Lambda[x3] modulo p*x_{2p+2}, p*x3, I_p*x_{2p+2},
// I_p*x3, as abelian groups degree by degree.
PresentationSliceSet vistoli_quotient_slices(int p, int max_degree, Engine& engine = default_engine());

// Generator table of the mod-p presentation: c1..cp, x3, x_{2p+1}, x_{2p+2}.
TablePtr main_presentation_table(int p);

// Whether (v, image) lies on the graph of Phi in degree d, where v is an
// element of L_p (x) Q_p written over main_presentation_table(p) and Phi
// sends x3, x_{2p+1}, x_{2p+2}, c1, delta, u in rho(I_p) to (0, s), (0, z),
// (0, f), (c1, y), (delta, -h), (u, 0).
bool on_phi_graph(int p, const Polynomial& v, const ProductElement& image, Engine& engine = default_engine());
// Phi of a product of generators: c1^a delta^b x3^e1 x_{2p+1}^e2 x_{2p+2}^k.
ProductElement phi_word(int p, int a, int b, int e1, int e2, int k);

// Checks that Phi is well defined and onto R in each degree, that every
// relation maps to zero, and that dim quotient = dim R.
VerifyReport verify_main(int p, int max_degree, Engine& engine = default_engine());

// Checks that the map x3 -> (0, s), x_{2p+2} -> (0, f), k -> (k, psi(k)) on
// K_p (psi(I_p) = 0, psi(delta) = -h) sends the relation lattice into the
// relations of the ambient, induces an isomorphism onto R_0, and that the
// group types agree.
VerifyReport verify_vistoli(int p, int max_degree, Engine& engine = default_engine());

}  // namespace pucohom
