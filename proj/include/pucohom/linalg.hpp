#pragma once

// Exact linear algebra over Q and F_p, and lattice computations over Z.
//
// Field routines work on dense row-major matrices. Integer routines use GMP
// integers throughout; pivoting is deterministic (first entry of minimal
// absolute value in a row-major scan) so that bases are reproducible.

#include "pucohom/ring.hpp"

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <vector>

namespace pucohom {

using Vector = std::vector<mpq_class>;
using IntVector = std::vector<mpz_class>;

class ExactMatrix {
 public:
  ExactMatrix(Ring ring, std::size_t rows, std::size_t cols);
  static ExactMatrix from_rows(Ring ring, const std::vector<Vector>& rows, std::size_t cols);
  static ExactMatrix from_int_rows(const std::vector<IntVector>& rows, std::size_t cols);
  static ExactMatrix from_int_columns(const std::vector<IntVector>& columns, std::size_t rows);
  static ExactMatrix identity(Ring ring, std::size_t n);

  const Ring& ring() const { return ring_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  const mpq_class& at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  void set(std::size_t r, std::size_t c, const mpq_class& v) { data_[r * cols_ + c] = ring_.normalize(v); }

  Vector row(std::size_t r) const;
  IntVector int_row(std::size_t r) const;
  ExactMatrix transposed() const;
  ExactMatrix operator*(const ExactMatrix& other) const;
  friend bool operator==(const ExactMatrix& a, const ExactMatrix& b) {
    return a.ring_ == b.ring_ && a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  Ring ring_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<mpq_class> data_;
};

// Rank over the matrix's field; integer matrices are ranked over Q.
std::size_t rank(const ExactMatrix& m);

// Basis of the right kernel, returned in reduced row echelon form (each
// vector has leading coefficient 1 and zeros in the other vectors' leading
// positions). Integer matrices are treated over Q.
std::vector<Vector> kernel_basis(const ExactMatrix& m);

// Reduced row echelon form of the row space (nonzero rows only).
std::vector<Vector> row_echelon_basis(const ExactMatrix& m);

// Z-basis of {x in Z^cols : M x = 0}, in Hermite normal form. The kernel of
// an integer matrix is saturated, and the returned basis generates all of it.
std::vector<IntVector> integer_kernel(const ExactMatrix& m);

// Row Hermite normal form of the lattice generated by `generators`: pivots
// strictly increase, are positive, and the entries above each pivot are
// reduced into [0, pivot).
std::vector<IntVector> hermite_basis(const std::vector<IntVector>& generators, std::size_t dim);

// Integer coordinates of v in a Hermite basis, nullopt when v is not in the
// lattice.
std::optional<IntVector> lattice_coordinates(const std::vector<IntVector>& hermite, const IntVector& v);

struct SmithForm {
  ExactMatrix U;
  ExactMatrix D;
  ExactMatrix V;
};

// U * M * V = D with U, V unimodular and d_1 | d_2 | ... >= 0 on the diagonal.
SmithForm smith_normal_form(const ExactMatrix& m);

// Inverse of a square integer matrix of determinant +-1; throws AlgebraError
// otherwise.
ExactMatrix unimodular_inverse(const ExactMatrix& m);

// Diagonal of the Smith form only (no transforms).
std::vector<mpz_class> smith_diagonal(const ExactMatrix& m);

struct AbelianGroupType {
  std::size_t free_rank = 0;
  std::vector<mpz_class> factors;  // each >= 2, each dividing the next

  bool is_zero() const { return free_rank == 0 && factors.empty(); }
  std::size_t minimal_generators() const { return free_rank + factors.size(); }
  // "Z^r+Z/d1+Z/d2"; "Z" for rank one and "0" for the trivial group.
  std::string to_string() const;
  friend bool operator==(const AbelianGroupType& a, const AbelianGroupType& b) {
    return a.free_rank == b.free_rank && a.factors == b.factors;
  }
  friend bool operator!=(const AbelianGroupType& a, const AbelianGroupType& b) { return !(a == b); }

  // Z^cols / (column span of `relations`).
  static AbelianGroupType cokernel(const ExactMatrix& relations);
};

// Isomorphism type of (L + T) / T where T is the column span of
// `ambient_relations` (rows = ambient dimension) and L is spanned by
// `subgroup_generators`.
AbelianGroupType subquotient_invariants(const ExactMatrix& ambient_relations,
                                        const std::vector<IntVector>& subgroup_generators);

// Incremental reduced echelon basis of a subspace of F_p^dim. Vectors are
// stored with entries in [0, p).
class ModpSpan {
 public:
  ModpSpan(std::int64_t p, std::size_t dim) : p_(p), dim_(dim) {}

  std::int64_t characteristic() const { return p_; }
  std::size_t dim() const { return dim_; }
  std::size_t rank() const { return rows_.size(); }

  // Returns true when v was independent of the current span.
  bool insert(std::vector<std::int64_t> v);
  bool contains(std::vector<std::int64_t> v) const;
  // Reduced form of v modulo the span (zero iff contained).
  std::vector<std::int64_t> reduce(std::vector<std::int64_t> v) const;
  // Basis in reduced row echelon form, ordered by pivot column.
  std::vector<std::vector<std::int64_t>> basis() const;

 private:
  std::int64_t p_;
  std::size_t dim_;
  std::vector<std::vector<std::int64_t>> rows_;  // each normalized to pivot 1
  std::vector<std::size_t> pivots_;
};

std::int64_t mod_inverse(std::int64_t a, std::int64_t p);
std::vector<std::int64_t> to_modp(const Vector& v, std::int64_t p);
std::vector<std::int64_t> to_modp(const IntVector& v, std::int64_t p);

}  // namespace pucohom
