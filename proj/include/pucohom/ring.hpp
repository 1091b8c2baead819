#pragma once

// Sparse graded-commutative polynomials with exact coefficients.
//
// A polynomial lives over a GeneratorTable (the ordered alphabet of even and
// odd generators) and a coefficient Ring (Z, Q or F_p). Odd generators
// anticommute and square to zero; inside a Monomial they are always kept in
// table order, the Koszul sign of any reordering being folded into the
// coefficient.

#include <gmpxx.h>

#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace pucohom {

class AlgebraError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class TableMismatchError : public AlgebraError {
 public:
  using AlgebraError::AlgebraError;
};

class SubstitutionError : public AlgebraError {
 public:
  using AlgebraError::AlgebraError;
};

class ParseError : public AlgebraError {
 public:
  ParseError(const std::string& what, std::size_t position)
      : AlgebraError(what + " at position " + std::to_string(position)),
        position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

enum class Parity : std::uint8_t { Even, Odd };

struct Generator {
  std::string name;
  int degree = 0;
  Parity parity = Parity::Even;
};

inline constexpr std::size_t kMaxGenerators = 12;

class GeneratorTable;
using TablePtr = std::shared_ptr<const GeneratorTable>;

class GeneratorTable {
 public:
  // Validates unique identifier names, positive degrees, and that the parity
  // agrees with the parity of the degree.
  static TablePtr make(std::vector<Generator> generators);

  std::size_t size() const { return gens_.size(); }
  const Generator& operator[](std::size_t i) const { return gens_[i]; }
  const std::vector<Generator>& generators() const { return gens_; }
  const std::vector<std::size_t>& odd_indices() const { return odd_; }
  std::optional<std::size_t> index_of(std::string_view name) const;
  std::size_t require(std::string_view name) const;

  std::uint64_t hash() const { return hash_; }
  std::string hash_hex() const;

  bool same_as(const GeneratorTable& other) const;

 private:
  explicit GeneratorTable(std::vector<Generator> generators);

  std::vector<Generator> gens_;
  std::vector<std::size_t> odd_;
  std::uint64_t hash_ = 0;
};

bool same_table(const TablePtr& a, const TablePtr& b);

class Ring {
 public:
  enum class Kind : std::uint8_t { Integer, Rational, ModP };

  static Ring integers() { return Ring(Kind::Integer, 0); }
  static Ring rationals() { return Ring(Kind::Rational, 0); }
  static Ring modp(std::int64_t p);

  Kind kind() const { return kind_; }
  std::int64_t characteristic() const { return p_; }
  bool is_field() const { return kind_ != Kind::Integer; }

  // Canonical representative: reduced fraction, integer, or value in [0, p).
  mpq_class normalize(const mpq_class& x) const;
  bool is_zero(const mpq_class& x) const { return normalize(x) == 0; }

  // "Z", "Q" or "F<p>".
  std::string name() const;
  static Ring from_name(std::string_view name);

  friend bool operator==(const Ring& a, const Ring& b) {
    return a.kind_ == b.kind_ && a.p_ == b.p_;
  }

 private:
  Ring(Kind kind, std::int64_t p) : kind_(kind), p_(p) {}
  Kind kind_;
  std::int64_t p_;
};

// Exponent vector over a table. The cohomological degree is computed once at
// construction from the table and carried along; all monomials are built
// through the table so it cannot disagree with the exponents.
class Monomial {
 public:
  Monomial() = default;
  static Monomial one() { return Monomial(); }
  static Monomial from_exponents(const GeneratorTable& table,
                                 const std::vector<unsigned>& exponents);
  static Monomial of_generator(const GeneratorTable& table, std::size_t index,
                               unsigned exponent = 1);

  unsigned exponent(std::size_t i) const { return exps_[i]; }
  int degree() const { return degree_; }
  bool is_one() const { return degree_ == 0 && exps_ == Exponents{}; }
  std::vector<unsigned> exponents(std::size_t n) const;

  // Graded-lexicographic: total degree first, then exponent vectors compared
  // from the first generator of the table.
  friend bool operator<(const Monomial& a, const Monomial& b) {
    if (a.degree_ != b.degree_) return a.degree_ < b.degree_;
    return a.exps_ < b.exps_;
  }
  friend bool operator==(const Monomial& a, const Monomial& b) {
    return a.degree_ == b.degree_ && a.exps_ == b.exps_;
  }
  friend bool operator!=(const Monomial& a, const Monomial& b) { return !(a == b); }

  // Product of two monomials with its Koszul sign, or nullopt when an odd
  // generator would appear twice.
  static std::optional<std::pair<Monomial, int>> multiply(const GeneratorTable& table,
                                                          const Monomial& a,
                                                          const Monomial& b);

 private:
  using Exponents = std::array<std::uint16_t, kMaxGenerators>;
  Exponents exps_{};
  int degree_ = 0;
};

class Polynomial {
 public:
  using TermMap = std::map<Monomial, mpq_class>;

  Polynomial(TablePtr table, Ring ring) : table_(std::move(table)), ring_(ring) {}

  static Polynomial constant(TablePtr table, Ring ring, const mpq_class& c);
  static Polynomial generator(TablePtr table, Ring ring, std::size_t index);
  static Polynomial generator(TablePtr table, Ring ring, std::string_view name);
  static Polynomial term(TablePtr table, Ring ring, const Monomial& m, const mpq_class& c);

  const TablePtr& table() const { return table_; }
  const Ring& ring() const { return ring_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  mpq_class coefficient(const Monomial& m) const;

  // Degree shared by every term, nullopt if the terms disagree or f = 0.
  std::optional<int> homogeneous_degree() const;
  bool is_homogeneous() const;

  // Adds c * m in place (the coefficient is normalized; zeros are dropped).
  void add_term(const Monomial& m, const mpq_class& c);

  Polynomial& operator+=(const Polynomial& other);
  Polynomial& operator-=(const Polynomial& other);
  Polynomial operator-() const;
  Polynomial scaled(const mpq_class& c) const;
  Polynomial pow(unsigned e) const;

  // Re-reads the coefficients in another ring (Z -> F_p, Z -> Q, ...).
  Polynomial in_ring(Ring target) const;
  // Same exponents over a structurally different table of equal length and
  // degrees (used to rename sigma_i into c_i).
  Polynomial on_table(TablePtr target) const;

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend bool operator==(const Polynomial& a, const Polynomial& b);
  friend bool operator!=(const Polynomial& a, const Polynomial& b) { return !(a == b); }

 private:
  TablePtr table_;
  Ring ring_;
  TermMap terms_;
};

Polynomial multiply(const Polynomial& a, const Polynomial& b);
inline Polynomial operator*(const Polynomial& a, const Polynomial& b) { return multiply(a, b); }

// Generator index -> image. Generators without an entry map to zero for
// derivations; substitution requires an entry for every generator in use.
using GeneratorMap = std::map<std::size_t, Polynomial>;

// Ring homomorphism extension of `images`. Every image must live over
// `target`, be homogeneous of its generator's degree, and share `target_ring`.
Polynomial substitute(const Polynomial& f, const GeneratorMap& images, const TablePtr& target,
                      const Ring& target_ring);

enum class DerivationRule : std::uint8_t { Even, Odd };

// Leibniz extension of d. The odd rule is d(uv) = d(u)v + (-1)^{|u|} u d(v).
Polynomial apply_derivation(const Polynomial& f, const GeneratorMap& d, DerivationRule rule);

std::string serialize(const Polynomial& f);
Polynomial parse(std::string_view text, const TablePtr& table, const Ring& ring);

std::ostream& operator<<(std::ostream& os, const Polynomial& f);

}  // namespace pucohom
