#include "pucohom/slice.hpp"

#include <algorithm>

namespace pucohom {

namespace {

void enumerate_rec(const GeneratorTable& table, std::size_t i, int remaining,
                   std::vector<unsigned>& exps, std::vector<Monomial>& out) {
  if (i == table.size()) {
    if (remaining == 0) out.push_back(Monomial::from_exponents(table, exps));
    return;
  }
  const Generator& g = table[i];
  unsigned max_e = static_cast<unsigned>(remaining / g.degree);
  if (g.parity == Parity::Odd) max_e = std::min(max_e, 1U);
  for (unsigned e = 0; e <= max_e; ++e) {
    exps[i] = e;
    enumerate_rec(table, i + 1, remaining - static_cast<int>(e) * g.degree, exps, out);
  }
  exps[i] = 0;
}

}  // namespace

DegreeSlice DegreeSlice::enumerate(const TablePtr& table, int degree) {
  DegreeSlice s;
  s.table_ = table;
  s.degree_ = degree;
  if (degree >= 0) {
    std::vector<unsigned> exps(table->size(), 0);
    enumerate_rec(*table, 0, degree, exps, s.basis_);
  }
  std::sort(s.basis_.begin(), s.basis_.end());
  for (std::size_t i = 0; i < s.basis_.size(); ++i) s.index_.emplace(s.basis_[i], i);
  return s;
}

std::optional<std::size_t> DegreeSlice::index_of(const Monomial& m) const {
  auto it = index_.find(m);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::vector<mpq_class> DegreeSlice::coordinates(const Polynomial& f) const {
  if (!same_table(f.table(), table_)) throw TableMismatchError("slice and polynomial tables differ");
  std::vector<mpq_class> v(basis_.size(), 0);
  for (const auto& [m, c] : f.terms()) {
    auto idx = index_of(m);
    if (!idx)
      throw AlgebraError("term of degree " + std::to_string(m.degree()) + " outside slice of degree " +
                         std::to_string(degree_));
    v[*idx] = c;
  }
  return v;
}

Polynomial DegreeSlice::combine(const std::vector<mpq_class>& coords, const Ring& ring) const {
  if (coords.size() != basis_.size()) throw AlgebraError("coordinate vector has wrong length");
  Polynomial f(table_, ring);
  for (std::size_t i = 0; i < coords.size(); ++i)
    if (coords[i] != 0) f.add_term(basis_[i], coords[i]);
  return f;
}

}  // namespace pucohom
