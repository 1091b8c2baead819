#pragma once

#include "pucohom/ring.hpp"

#include <memory>
#include <mutex>

namespace pucohom {

class SymmetryError : public AlgebraError {
 public:
  using AlgebraError::AlgebraError;
};

// The two alphabets for n variables: t1..tn (degree 2) and the elementary
// symmetric s1..sn (s_i of degree 2i). s_i plays the role of the Chern class
// c_i.
class SigmaContext {
 public:
  // Shared immutable context for n variables.
  static std::shared_ptr<const SigmaContext> get(int n);

  int n() const { return n_; }
  const TablePtr& t_table() const { return t_table_; }
  const TablePtr& sigma_table() const { return sigma_table_; }

  // sigma_k as a polynomial in t; sigma_0 = 1.
  Polynomial elementary_symmetric(int k, const Ring& ring = Ring::integers()) const;
  Polynomial sigma(int k, const Ring& ring = Ring::integers()) const;

  bool is_symmetric(const Polynomial& f_in_t) const;

  // Unique expression of a symmetric polynomial in the sigma_i, by repeated
  // subtraction of the leading term. Throws SymmetryError otherwise.
  Polynomial t_to_sigma(const Polynomial& f_in_t) const;
  Polynomial sigma_to_t(const Polynomial& f_in_sigma) const;

  // The derivation sum_i d/dt_i restricted to symmetric polynomials,
  // sigma_k -> (n - k + 1) sigma_{k-1}.
  Polynomial nabla_sigma(const Polynomial& f_in_sigma) const;
  // The same operator on t-polynomials.
  Polynomial nabla_t(const Polynomial& f_in_t) const;

  // prod_{i != j} (t_i - t_j) in t, over Z.
  Polynomial delta_in_t() const;
  // The same product written in the sigma_i; computed once per n.
  const Polynomial& delta_polynomial() const;

  explicit SigmaContext(int n);

 private:
  int n_;
  TablePtr t_table_;
  TablePtr sigma_table_;
  mutable std::once_flag delta_once_;
  mutable std::unique_ptr<Polynomial> delta_;
};

}  // namespace pucohom
