#pragma once

#include "pucohom/ring.hpp"

#include <map>
#include <vector>

namespace pucohom {

// Monomial basis of one cohomological degree, in ascending graded-lex order,
// together with the coordinate map for polynomials of that degree.
class DegreeSlice {
 public:
  static DegreeSlice enumerate(const TablePtr& table, int degree);

  const TablePtr& table() const { return table_; }
  int degree() const { return degree_; }
  std::size_t size() const { return basis_.size(); }
  const std::vector<Monomial>& basis() const { return basis_; }
  const Monomial& operator[](std::size_t i) const { return basis_[i]; }
  std::optional<std::size_t> index_of(const Monomial& m) const;

  // Coordinates of a polynomial all of whose terms lie in this slice; throws
  // AlgebraError for a term of another degree.
  std::vector<mpq_class> coordinates(const Polynomial& f) const;
  Polynomial combine(const std::vector<mpq_class>& coords, const Ring& ring) const;

 private:
  TablePtr table_;
  int degree_ = 0;
  std::vector<Monomial> basis_;
  std::map<Monomial, std::size_t> index_;
};

}  // namespace pucohom
