#include "pucohom/ring.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <ostream>
#include <set>

namespace pucohom {

namespace {

bool is_identifier(std::string_view s) {
  if (s.empty()) return false;
  if (!(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  return std::all_of(s.begin(), s.end(), [](char ch) {
    return std::isalnum(static_cast<unsigned char>(ch)) || ch == '_';
  });
}

void require_same(const Polynomial& a, const Polynomial& b) {
  if (!same_table(a.table(), b.table()))
    throw TableMismatchError("polynomials live over different generator tables");
  if (!(a.ring() == b.ring()))
    throw TableMismatchError("polynomials have different coefficient rings (" + a.ring().name() +
                             " vs " + b.ring().name() + ")");
}

}  // namespace

// ---------------------------------------------------------------------------
// GeneratorTable

GeneratorTable::GeneratorTable(std::vector<Generator> generators) : gens_(std::move(generators)) {
  std::uint64_t h = 1469598103934665603ULL;
  auto mix = [&h](std::string_view s) {
    for (unsigned char ch : s) {
      h ^= ch;
      h *= 1099511628211ULL;
    }
  };
  for (std::size_t i = 0; i < gens_.size(); ++i) {
    if (gens_[i].parity == Parity::Odd) odd_.push_back(i);
    mix(gens_[i].name);
    mix(":" + std::to_string(gens_[i].degree) + (gens_[i].parity == Parity::Odd ? "o;" : "e;"));
  }
  hash_ = h;
}

TablePtr GeneratorTable::make(std::vector<Generator> generators) {
  if (generators.size() > kMaxGenerators)
    throw AlgebraError("generator table exceeds " + std::to_string(kMaxGenerators) + " entries");
  std::set<std::string> names;
  for (const auto& g : generators) {
    if (!is_identifier(g.name)) throw AlgebraError("invalid generator name '" + g.name + "'");
    if (!names.insert(g.name).second) throw AlgebraError("duplicate generator name '" + g.name + "'");
    if (g.degree <= 0) throw AlgebraError("generator '" + g.name + "' must have positive degree");
    bool odd_degree = (g.degree % 2) != 0;
    if (odd_degree != (g.parity == Parity::Odd))
      throw AlgebraError("generator '" + g.name + "' has parity inconsistent with its degree");
  }
  return TablePtr(new GeneratorTable(std::move(generators)));
}

std::optional<std::size_t> GeneratorTable::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < gens_.size(); ++i)
    if (gens_[i].name == name) return i;
  return std::nullopt;
}

std::size_t GeneratorTable::require(std::string_view name) const {
  auto idx = index_of(name);
  if (!idx) throw AlgebraError("unknown generator '" + std::string(name) + "'");
  return *idx;
}

std::string GeneratorTable::hash_hex() const {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(hash_));
  return buf;
}

bool GeneratorTable::same_as(const GeneratorTable& other) const {
  if (this == &other) return true;
  if (hash_ != other.hash_ || gens_.size() != other.gens_.size()) return false;
  for (std::size_t i = 0; i < gens_.size(); ++i) {
    const auto& a = gens_[i];
    const auto& b = other.gens_[i];
    if (a.name != b.name || a.degree != b.degree || a.parity != b.parity) return false;
  }
  return true;
}

bool same_table(const TablePtr& a, const TablePtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  return a->same_as(*b);
}

// ---------------------------------------------------------------------------
// Ring

Ring Ring::modp(std::int64_t p) {
  if (p < 2) throw AlgebraError("modulus must be at least 2");
  for (std::int64_t q = 2; q * q <= p; ++q)
    if (p % q == 0) throw AlgebraError("modulus " + std::to_string(p) + " is not prime");
  return Ring(Kind::ModP, p);
}

mpq_class Ring::normalize(const mpq_class& x) const {
  switch (kind_) {
    case Kind::Rational: {
      mpq_class r = x;
      r.canonicalize();
      return r;
    }
    case Kind::Integer: {
      mpq_class r = x;
      r.canonicalize();
      if (r.get_den() != 1) throw AlgebraError("non-integral coefficient " + r.get_str() + " over Z");
      return r;
    }
    case Kind::ModP: {
      mpz_class P(static_cast<long>(p_));
      mpq_class r = x;
      r.canonicalize();
      mpz_class num = r.get_num() % P;
      if (num < 0) num += P;
      if (r.get_den() != 1) {
        mpz_class den = r.get_den() % P;
        mpz_class inv;
        if (mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), P.get_mpz_t()) == 0)
          throw AlgebraError("denominator " + r.get_den().get_str() + " not invertible mod " +
                             std::to_string(p_));
        num = (num * inv) % P;
      }
      return mpq_class(num);
    }
  }
  return x;
}

std::string Ring::name() const {
  switch (kind_) {
    case Kind::Integer:
      return "Z";
    case Kind::Rational:
      return "Q";
    case Kind::ModP:
      return "F" + std::to_string(p_);
  }
  return "?";
}

Ring Ring::from_name(std::string_view name) {
  if (name == "Z") return integers();
  if (name == "Q") return rationals();
  if (name.size() > 1 && name[0] == 'F') return modp(std::stoll(std::string(name.substr(1))));
  throw AlgebraError("unknown ring '" + std::string(name) + "'");
}

// ---------------------------------------------------------------------------
// Monomial

Monomial Monomial::from_exponents(const GeneratorTable& table,
                                  const std::vector<unsigned>& exponents) {
  if (exponents.size() > table.size()) throw AlgebraError("exponent vector longer than table");
  Monomial m;
  for (std::size_t i = 0; i < exponents.size(); ++i) {
    unsigned e = exponents[i];
    if (e == 0) continue;
    if (table[i].parity == Parity::Odd && e > 1)
      throw AlgebraError("odd generator '" + table[i].name + "' raised to power " + std::to_string(e));
    if (e > 0xFFFF) throw AlgebraError("exponent overflow");
    m.exps_[i] = static_cast<std::uint16_t>(e);
    m.degree_ += static_cast<int>(e) * table[i].degree;
  }
  return m;
}

Monomial Monomial::of_generator(const GeneratorTable& table, std::size_t index, unsigned exponent) {
  std::vector<unsigned> e(table.size(), 0);
  e.at(index) = exponent;
  return from_exponents(table, e);
}

std::vector<unsigned> Monomial::exponents(std::size_t n) const {
  return std::vector<unsigned>(exps_.begin(), exps_.begin() + static_cast<std::ptrdiff_t>(n));
}

std::optional<std::pair<Monomial, int>> Monomial::multiply(const GeneratorTable& table,
                                                           const Monomial& a, const Monomial& b) {
  int sign = 1;
  const auto& odd = table.odd_indices();
  if (!odd.empty()) {
    // Each odd generator of b moves left past the odd generators of a with a
    // larger table index.
    std::size_t later_in_a = 0;
    for (auto it = odd.rbegin(); it != odd.rend(); ++it) {
      std::size_t i = *it;
      if (a.exps_[i] && b.exps_[i]) return std::nullopt;
      if (b.exps_[i] && (later_in_a % 2)) sign = -sign;
      if (a.exps_[i]) ++later_in_a;
    }
  }
  Monomial m;
  for (std::size_t i = 0; i < table.size(); ++i) {
    unsigned e = static_cast<unsigned>(a.exps_[i]) + b.exps_[i];
    if (e > 0xFFFF) throw AlgebraError("exponent overflow");
    m.exps_[i] = static_cast<std::uint16_t>(e);
  }
  m.degree_ = a.degree_ + b.degree_;
  return std::make_pair(m, sign);
}

// ---------------------------------------------------------------------------
// Polynomial

Polynomial Polynomial::constant(TablePtr table, Ring ring, const mpq_class& c) {
  Polynomial f(std::move(table), ring);
  f.add_term(Monomial::one(), c);
  return f;
}

Polynomial Polynomial::generator(TablePtr table, Ring ring, std::size_t index) {
  Polynomial f(table, ring);
  f.add_term(Monomial::of_generator(*table, index), 1);
  return f;
}

Polynomial Polynomial::generator(TablePtr table, Ring ring, std::string_view name) {
  std::size_t idx = table->require(name);
  return generator(std::move(table), ring, idx);
}

Polynomial Polynomial::term(TablePtr table, Ring ring, const Monomial& m, const mpq_class& c) {
  Polynomial f(std::move(table), ring);
  f.add_term(m, c);
  return f;
}

mpq_class Polynomial::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? mpq_class(0) : it->second;
}

std::optional<int> Polynomial::homogeneous_degree() const {
  if (terms_.empty()) return std::nullopt;
  int d = terms_.begin()->first.degree();
  for (const auto& [m, c] : terms_)
    if (m.degree() != d) return std::nullopt;
  return d;
}

bool Polynomial::is_homogeneous() const { return terms_.empty() || homogeneous_degree().has_value(); }

void Polynomial::add_term(const Monomial& m, const mpq_class& c) {
  mpq_class v = ring_.normalize(c);
  if (v == 0) return;
  auto [it, inserted] = terms_.try_emplace(m, v);
  if (!inserted) {
    it->second = ring_.normalize(it->second + v);
    if (it->second == 0) terms_.erase(it);
  }
}

Polynomial& Polynomial::operator+=(const Polynomial& other) {
  require_same(*this, other);
  for (const auto& [m, c] : other.terms_) add_term(m, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& other) {
  require_same(*this, other);
  for (const auto& [m, c] : other.terms_) add_term(m, -c);
  return *this;
}

Polynomial Polynomial::operator-() const { return scaled(-1); }

Polynomial Polynomial::scaled(const mpq_class& c) const {
  Polynomial r(table_, ring_);
  mpq_class k = ring_.normalize(c);
  if (k == 0) return r;
  for (const auto& [m, v] : terms_) r.add_term(m, v * k);
  return r;
}

Polynomial Polynomial::pow(unsigned e) const {
  Polynomial result = constant(table_, ring_, 1);
  Polynomial base = *this;
  while (e) {
    if (e & 1U) result = multiply(result, base);
    e >>= 1U;
    if (e) base = multiply(base, base);
  }
  return result;
}

Polynomial Polynomial::in_ring(Ring target) const {
  Polynomial r(table_, target);
  for (const auto& [m, c] : terms_) r.add_term(m, c);
  return r;
}

Polynomial Polynomial::on_table(TablePtr target) const {
  if (target->size() != table_->size())
    throw TableMismatchError("cannot transport polynomial between tables of different length");
  for (std::size_t i = 0; i < target->size(); ++i)
    if ((*target)[i].degree != (*table_)[i].degree)
      throw TableMismatchError("cannot transport polynomial: generator degrees differ");
  Polynomial r(target, ring_);
  for (const auto& [m, c] : terms_) r.add_term(Monomial::from_exponents(*target, m.exponents(table_->size())), c);
  return r;
}

bool operator==(const Polynomial& a, const Polynomial& b) {
  return same_table(a.table_, b.table_) && a.ring_ == b.ring_ && a.terms_ == b.terms_;
}

Polynomial multiply(const Polynomial& a, const Polynomial& b) {
  require_same(a, b);
  Polynomial r(a.table(), a.ring());
  const GeneratorTable& table = *a.table();
  for (const auto& [ma, ca] : a.terms()) {
    for (const auto& [mb, cb] : b.terms()) {
      auto prod = Monomial::multiply(table, ma, mb);
      if (!prod) continue;
      mpq_class c = ca * cb;
      if (prod->second < 0) c = -c;
      r.add_term(prod->first, c);
    }
  }
  return r;
}

Polynomial substitute(const Polynomial& f, const GeneratorMap& images, const TablePtr& target,
                      const Ring& target_ring) {
  const GeneratorTable& source = *f.table();
  for (const auto& [idx, img] : images) {
    if (idx >= source.size()) throw SubstitutionError("image given for nonexistent generator");
    if (!same_table(img.table(), target))
      throw SubstitutionError("image of '" + source[idx].name + "' is not over the target table");
    if (!(img.ring() == target_ring))
      throw SubstitutionError("image of '" + source[idx].name + "' is not over the target ring");
    if (img.is_zero()) continue;
    auto d = img.homogeneous_degree();
    if (!d || *d != source[idx].degree)
      throw SubstitutionError("image of '" + source[idx].name + "' is not homogeneous of degree " +
                              std::to_string(source[idx].degree));
  }
  // Coefficients of f are read in the target ring; Q -> Z and F_p -> other
  // rings are not ring maps and are refused.
  const Ring& src = f.ring();
  if (!(src == target_ring) && src.kind() != Ring::Kind::Integer &&
      !(src.kind() == Ring::Kind::Rational && target_ring.kind() == Ring::Kind::Rational))
    throw SubstitutionError("no coefficient map from " + src.name() + " to " + target_ring.name());

  std::map<std::pair<std::size_t, unsigned>, Polynomial> powers;
  auto power = [&](std::size_t idx, unsigned e) -> const Polynomial& {
    auto key = std::make_pair(idx, e);
    auto it = powers.find(key);
    if (it != powers.end()) return it->second;
    auto img = images.find(idx);
    if (img == images.end())
      throw SubstitutionError("no image given for generator '" + source[idx].name + "'");
    return powers.emplace(key, img->second.pow(e)).first->second;
  };

  Polynomial result(target, target_ring);
  for (const auto& [m, c] : f.terms()) {
    Polynomial acc = Polynomial::constant(target, target_ring, c);
    for (std::size_t i = 0; i < source.size() && !acc.is_zero(); ++i) {
      unsigned e = m.exponent(i);
      if (e) acc = multiply(acc, power(i, e));
    }
    result += acc;
  }
  return result;
}

Polynomial apply_derivation(const Polynomial& f, const GeneratorMap& d, DerivationRule rule) {
  const TablePtr& table = f.table();
  const Ring& ring = f.ring();
  for (const auto& [idx, img] : d) {
    if (!same_table(img.table(), table) || !(img.ring() == ring))
      throw TableMismatchError("derivation image does not share the polynomial's table and ring");
  }
  Polynomial result(table, ring);
  const std::size_t n = table->size();
  for (const auto& [m, c] : f.terms()) {
    // Factors F_0 F_1 ... in table order; d hits one factor at a time.
    Polynomial prefix = Polynomial::constant(table, ring, c);
    int prefix_degree = 0;
    for (std::size_t i = 0; i < n; ++i) {
      unsigned e = m.exponent(i);
      if (e == 0) continue;
      auto di = d.find(i);
      if (di != d.end() && !di->second.is_zero()) {
        // d(g^e) = e g^{e-1} d(g); odd generators only occur with e = 1.
        Polynomial piece = prefix;
        if (rule == DerivationRule::Odd && (prefix_degree % 2)) piece = -piece;
        if (e > 1) piece = multiply(piece, Polynomial::term(table, ring, Monomial::of_generator(*table, i, e - 1), e));
        piece = multiply(piece, di->second);
        std::vector<unsigned> rest(n, 0);
        for (std::size_t j = i + 1; j < n; ++j) rest[j] = m.exponent(j);
        piece = multiply(piece, Polynomial::term(table, ring, Monomial::from_exponents(*table, rest), 1));
        result += piece;
      }
      prefix = multiply(prefix, Polynomial::term(table, ring, Monomial::of_generator(*table, i, e), 1));
      prefix_degree += static_cast<int>(e) * (*table)[i].degree;
    }
  }
  return result;
}

// ---------------------------------------------------------------------------
// Text form

std::string serialize(const Polynomial& f) {
  if (f.is_zero()) return "0";
  const GeneratorTable& table = *f.table();
  std::string out;
  bool first = true;
  for (auto it = f.terms().rbegin(); it != f.terms().rend(); ++it) {
    if (!first) out += " + ";
    first = false;
    out += it->second.get_str();
    for (std::size_t i = 0; i < table.size(); ++i) {
      unsigned e = it->first.exponent(i);
      if (!e) continue;
      out += '*';
      out += table[i].name;
      if (e > 1) out += '^' + std::to_string(e);
    }
  }
  return out;
}

std::ostream& operator<<(std::ostream& os, const Polynomial& f) { return os << serialize(f); }

namespace {

class Parser {
 public:
  Parser(std::string_view text, const TablePtr& table, const Ring& ring)
      : s_(text), table_(table), ring_(ring) {}

  Polynomial run() {
    Polynomial result(table_, ring_);
    skip_ws();
    if (pos_ >= s_.size()) fail("empty input");
    bool first = true;
    while (true) {
      skip_ws();
      int sign = 1;
      if (!first) {
        if (pos_ >= s_.size()) break;
        if (s_[pos_] == '+') {
          ++pos_;
        } else if (s_[pos_] == '-') {
          sign = -1;
          ++pos_;
        } else {
          fail("expected '+' or '-'");
        }
        skip_ws();
      }
      first = false;
      result += parse_term().scaled(sign);
      skip_ws();
      if (pos_ >= s_.size()) break;
    }
    return result;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, pos_); }

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  std::string digits() {
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    return std::string(s_.substr(start, pos_ - start));
  }

  Polynomial parse_term() {
    mpq_class coeff = 1;
    bool have_factor = false;
    if (pos_ < s_.size() && s_[pos_] == '-') {
      coeff = -1;
      ++pos_;
      skip_ws();
    }
    Polynomial acc(table_, ring_);
    if (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
      std::string num = digits();
      mpq_class value{mpz_class(num)};
      if (pos_ < s_.size() && s_[pos_] == '/') {
        ++pos_;
        std::string den = digits();
        if (den.empty()) fail("expected denominator");
        mpz_class d(den);
        if (d == 0) fail("zero denominator");
        value = mpq_class(mpz_class(num), d);
        value.canonicalize();
      }
      coeff *= value;
      acc = Polynomial::constant(table_, ring_, coeff);
      have_factor = true;
    } else {
      acc = Polynomial::constant(table_, ring_, coeff);
    }
    skip_ws();
    while (true) {
      if (have_factor) {
        if (pos_ >= s_.size() || s_[pos_] != '*') break;
        ++pos_;
        skip_ws();
      }
      acc = multiply(acc, parse_factor());
      have_factor = true;
      skip_ws();
    }
    return acc;
  }

  Polynomial parse_factor() {
    std::size_t start = pos_;
    if (pos_ >= s_.size() ||
        !(std::isalpha(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
      fail("expected generator name");
    while (pos_ < s_.size() &&
           (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
      ++pos_;
    std::string name(s_.substr(start, pos_ - start));
    auto idx = table_->index_of(name);
    if (!idx) {
      pos_ = start;
      fail("unknown generator '" + name + "'");
    }
    unsigned e = 1;
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] == '^') {
      ++pos_;
      skip_ws();
      std::string exp = digits();
      if (exp.empty()) fail("expected exponent");
      e = static_cast<unsigned>(std::stoul(exp));
    }
    if ((*table_)[*idx].parity == Parity::Odd && e > 1) fail("odd generator '" + name + "' raised to a power");
    return Polynomial::term(table_, ring_, Monomial::of_generator(*table_, *idx, e), 1);
  }

  std::string_view s_;
  std::size_t pos_ = 0;
  const TablePtr& table_;
  Ring ring_;
};

}  // namespace

Polynomial parse(std::string_view text, const TablePtr& table, const Ring& ring) {
  return Parser(text, table, ring).run();
}

}  // namespace pucohom
