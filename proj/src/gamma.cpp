#include "pucohom/gamma.hpp"

#include "pucohom/kernels.hpp"

#include <map>
#include <mutex>

namespace pucohom {

namespace {

std::int64_t mod(std::int64_t x, std::int64_t p) { return ((x % p) + p) % p; }

std::vector<std::int64_t> coords_modp(const DegreeSlice& slice, const Polynomial& f, std::int64_t p) {
  return to_modp(slice.coordinates(f), p);
}

template <class T>
std::shared_ptr<const T> registry_get(int p) {
  static std::mutex mu;
  static std::map<int, std::shared_ptr<const T>> registry;
  std::lock_guard<std::mutex> lock(mu);
  auto it = registry.find(p);
  if (it != registry.end()) return it->second;
  auto made = std::make_shared<const T>(p);
  registry.emplace(p, made);
  return made;
}

void require_prime(int p) {
  if (p < 2) throw AlgebraError("p must be a prime");
  for (int q = 2; q * q <= p; ++q)
    if (p % q == 0) throw AlgebraError("p must be a prime");
}

}  // namespace

SL2Element SL2Element::make(std::int64_t p, std::int64_t g11, std::int64_t g12, std::int64_t g21, std::int64_t g22) {
  std::array<std::int64_t, 4> m{mod(g11, p), mod(g12, p), mod(g21, p), mod(g22, p)};
  if (mod(m[0] * m[3] - m[1] * m[2], p) != 1) throw AlgebraError("matrix does not have determinant 1 mod p");
  return SL2Element(p, m);
}

SL2Element SL2Element::operator*(const SL2Element& o) const {
  if (p_ != o.p_) throw AlgebraError("SL2 elements over different primes");
  const auto& a = m_;
  const auto& b = o.m_;
  return SL2Element(p_, {mod(a[0] * b[0] + a[1] * b[2], p_), mod(a[0] * b[1] + a[1] * b[3], p_),
                         mod(a[2] * b[0] + a[3] * b[2], p_), mod(a[2] * b[1] + a[3] * b[3], p_)});
}

// ---------------------------------------------------------------------------

std::shared_ptr<const GammaModP> GammaModP::get(int p) { return registry_get<GammaModP>(p); }

GammaModP::GammaModP(int p) : p_(p), ring_(Ring::modp(p)) {
  require_prime(p);
  table_ = GeneratorTable::make(
      {{"xi", 2, Parity::Even}, {"eta", 2, Parity::Even}, {"a", 1, Parity::Odd}, {"b", 1, Parity::Odd}});
  poly_table_ = GeneratorTable::make({{"xi", 2, Parity::Even}, {"eta", 2, Parity::Even}});
}

Polynomial GammaModP::y() const { return a() * b(); }
Polynomial GammaModP::s() const { return xi() * b() - eta() * a(); }
Polynomial GammaModP::z() const {
  const auto p = static_cast<unsigned>(p_);
  return xi().pow(p) * b() - eta().pow(p) * a();
}
Polynomial GammaModP::f() const {
  const auto p = static_cast<unsigned>(p_);
  return xi().pow(p) * eta() - eta().pow(p) * xi();
}
Polynomial GammaModP::h() const {
  const auto p = static_cast<unsigned>(p_);
  return xi().pow(p * p - p) + eta().pow(p - 1) * (xi().pow(p - 1) - eta().pow(p - 1)).pow(p - 1);
}

Polynomial GammaModP::bockstein(const Polynomial& f) const {
  if (!same_table(f.table(), table_)) throw TableMismatchError("bockstein expects an element of H*(BGamma; F_p)");
  return apply_derivation(f, GeneratorMap{{2, xi()}, {3, eta()}}, DerivationRule::Odd);
}

Polynomial GammaModP::p1(const Polynomial& f) const {
  const auto p = static_cast<unsigned>(p_);
  if (same_table(f.table(), table_))
    return apply_derivation(f, GeneratorMap{{0, xi().pow(p)}, {1, eta().pow(p)}}, DerivationRule::Even);
  if (same_table(f.table(), poly_table_)) {
    auto x = Polynomial::generator(poly_table_, ring_, 0);
    auto e = Polynomial::generator(poly_table_, ring_, 1);
    return apply_derivation(f, GeneratorMap{{0, x.pow(p)}, {1, e.pow(p)}}, DerivationRule::Even);
  }
  throw TableMismatchError("p1 expects an element of H*(BGamma; F_p)");
}

Polynomial GammaModP::act(const SL2Element& g, const Polynomial& f) const {
  if (g.p() != p_) throw AlgebraError("SL2 element over the wrong prime");
  const TablePtr& t = f.table();
  if (!same_table(t, table_) && !same_table(t, poly_table_))
    throw TableMismatchError("act expects an element of H*(BGamma; F_p)");
  auto G = [&](std::size_t i) { return Polynomial::generator(t, ring_, i); };
  GeneratorMap images{{0, G(0).scaled(g(1, 1)) + G(1).scaled(g(2, 1))},
                      {1, G(0).scaled(g(1, 2)) + G(1).scaled(g(2, 2))}};
  if (t->size() == 4) {
    images.emplace(2, G(2).scaled(g(1, 1)) + G(3).scaled(g(2, 1)));
    images.emplace(3, G(2).scaled(g(1, 2)) + G(3).scaled(g(2, 2)));
  }
  return substitute(f.in_ring(ring_), images, t, ring_);
}

Polynomial GammaModP::restrict_to_tau(const Polynomial& f) const {
  if (!same_table(f.table(), table_)) throw TableMismatchError("restrict_to_tau expects an element of H*(BGamma; F_p)");
  Polynomial zero(table_, ring_);
  return substitute(f, GeneratorMap{{0, zero}, {1, eta()}, {2, zero}, {3, b()}}, table_, ring_);
}

// ---------------------------------------------------------------------------

std::shared_ptr<const GammaIntegral> GammaIntegral::get(int p) { return registry_get<GammaIntegral>(p); }

GammaIntegral::GammaIntegral(int p) : p_(p) {
  require_prime(p);
  table_ = GeneratorTable::make({{"xi", 2, Parity::Even}, {"eta", 2, Parity::Even}, {"s", 3, Parity::Odd}});
}

Polynomial GammaIntegral::f() const {
  const auto p = static_cast<unsigned>(p_);
  return xi().pow(p) * eta() - eta().pow(p) * xi();
}

Polynomial GammaIntegral::h() const {
  const auto p = static_cast<unsigned>(p_);
  return xi().pow(p * p - p) + eta().pow(p - 1) * (xi().pow(p - 1) - eta().pow(p - 1)).pow(p - 1);
}

Polynomial GammaIntegral::act(const SL2Element& g, const Polynomial& f) const {
  if (g.p() != p_) throw AlgebraError("SL2 element over the wrong prime");
  if (!same_table(f.table(), table_)) throw TableMismatchError("act expects an element of H*(BGamma)");
  Ring r = f.ring();
  auto G = [&](std::size_t i) { return Polynomial::generator(table_, r, i); };
  GeneratorMap images{{0, G(0).scaled(g(1, 1)) + G(1).scaled(g(2, 1))},
                      {1, G(0).scaled(g(1, 2)) + G(1).scaled(g(2, 2))},
                      {2, G(2)}};
  return substitute(f, images, table_, r);
}

Polynomial GammaIntegral::reduce(const Polynomial& f) const {
  if (!same_table(f.table(), table_)) throw TableMismatchError("reduce expects an element of H*(BGamma)");
  auto g = GammaModP::get(p_);
  return substitute(f.in_ring(g->ring()), GeneratorMap{{0, g->xi()}, {1, g->eta()}, {2, g->s()}}, g->table(),
                    g->ring());
}

// ---------------------------------------------------------------------------

InvariantSlice invariant_slice(int p, int degree, GammaSlice kind, Engine& engine) {
  std::string key = "inv/" + std::to_string(static_cast<int>(kind)) + "/" + std::to_string(p) + "/" +
                    std::to_string(degree);
  return *engine.memo<InvariantSlice>(key, [&] {
    InvariantSlice out;
    out.p = p;
    out.degree = degree;
    out.kind = kind;
    auto gm = GammaModP::get(p);
    auto gi = GammaIntegral::get(p);
    TablePtr table = kind == GammaSlice::ModP ? gm->table()
                     : kind == GammaSlice::Polynomial ? gm->polynomial_table()
                                                      : gi->table();
    Ring ring = kind == GammaSlice::Integral ? gi->ring_in_degree(degree) : gm->ring();
    out.monomials = DegreeSlice::enumerate(table, degree);
    const std::size_t n = out.monomials.size();
    if (n == 0) return out;
    if (degree == 0) {
      out.basis.push_back({1});
      out.elements.push_back(Polynomial::constant(table, ring, 1));
      return out;
    }
    auto act = [&](const SL2Element& g, const Polynomial& f) {
      return kind == GammaSlice::Integral ? gi->act(g, f) : gm->act(g, f);
    };
    ExactMatrix stacked(ring, 2 * n, n);
    const SL2Element gens[2] = {SL2Element::unipotent(p), SL2Element::rotation(p)};
    for (std::size_t j = 0; j < n; ++j) {
      Polynomial m = Polynomial::term(table, ring, out.monomials[j], 1);
      for (std::size_t k = 0; k < 2; ++k) {
        auto c = out.monomials.coordinates(act(gens[k], m) - m);
        for (std::size_t i = 0; i < n; ++i)
          if (c[i] != 0) stacked.set(k * n + i, j, c[i]);
      }
    }
    for (const auto& v : kernel_basis(stacked)) {
      out.basis.push_back(to_modp(v, p));
      out.elements.push_back(out.monomials.combine(v, ring));
    }
    return out;
  });
}

bool GammaCheckReport::ok() const {
  if (!failures.empty()) return false;
  for (const auto& r : rows)
    if (!r.ok) return false;
  return true;
}

MuiPresentation mui_presentation(int p) {
  auto g = GammaModP::get(p);
  Ring r = g->ring();
  MuiPresentation out;
  out.table = GeneratorTable::make({{"f", 2 * p + 2, Parity::Even},
                                    {"h", 2 * p * p - 2 * p, Parity::Even},
                                    {"s", 3, Parity::Odd},
                                    {"y", 2, Parity::Even},
                                    {"z", 2 * p + 1, Parity::Odd}});
  auto G = [&](const char* name) { return Polynomial::generator(out.table, r, name); };
  out.relations = {G("y") * G("s"), G("y") * G("z"), G("f") * G("y") + G("s") * G("z"), G("y") * G("y")};
  out.images = {{0, g->f()}, {1, g->h()}, {2, g->s()}, {3, g->y()}, {4, g->z()}};
  return out;
}

namespace {

// Rank of the images of `monomials` (substituted through `images`) inside
// the fixed slice, and whether they all lie in it.
std::pair<std::size_t, bool> generated_rank(const InvariantSlice& inv, const DegreeSlice& monomials,
                                            const GeneratorMap& images, const TablePtr& target, const Ring& ring) {
  ModpSpan fixed(inv.p, inv.monomials.size());
  for (const auto& v : inv.basis) fixed.insert(v);
  ModpSpan gen(inv.p, inv.monomials.size());
  bool inside = true;
  for (const auto& m : monomials.basis()) {
    Polynomial image = substitute(Polynomial::term(monomials.table(), ring, m, 1), images, target, ring);
    auto v = coords_modp(inv.monomials, image, inv.p);
    inside = inside && fixed.contains(v);
    gen.insert(std::move(v));
  }
  return {gen.rank(), inside};
}

std::vector<int> degrees_up_to(int max_degree, int step) {
  std::vector<int> out;
  for (int d = 0; d <= max_degree; d += step) out.push_back(d);
  return out;
}

}  // namespace

GammaCheckReport dickson_check(int p, int max_degree, Engine& engine) {
  auto g = GammaModP::get(p);
  Ring r = g->ring();
  TablePtr fh = GeneratorTable::make({{"f", 2 * p + 2, Parity::Even}, {"h", 2 * p * p - 2 * p, Parity::Even}});
  auto X = Polynomial::generator(g->polynomial_table(), r, 0);
  auto E = Polynomial::generator(g->polynomial_table(), r, 1);
  const auto up = static_cast<unsigned>(p);
  GeneratorMap images{{0, X.pow(up) * E - E.pow(up) * X},
                      {1, X.pow(up * up - up) + E.pow(up - 1) * (X.pow(up - 1) - E.pow(up - 1)).pow(up - 1)}};
  auto degrees = degrees_up_to(max_degree, 2);
  GammaCheckReport report;
  report.rows.resize(degrees.size());
  engine.parallel_for(degrees.size(), [&](std::size_t i) {
    const int d = degrees[i];
    InvariantSlice inv = invariant_slice(p, d, GammaSlice::Polynomial, engine);
    DegreeSlice mons = DegreeSlice::enumerate(fh, d);
    auto [rank, inside] = generated_rank(inv, mons, images, g->polynomial_table(), r);
    GammaCheckRow& row = report.rows[i];
    row.degree = d;
    row.fixed_dim = inv.dim();
    row.expected_dim = polynomial_algebra_dimension({2 * p + 2, 2 * p * p - 2 * p}, d);
    row.generated_dim = rank;
    row.ok = inside && row.fixed_dim == row.expected_dim && rank == row.fixed_dim;
  });
  return report;
}

GammaCheckReport mui_check(int p, int max_degree, Engine& engine) {
  auto g = GammaModP::get(p);
  Ring r = g->ring();
  MuiPresentation pres = mui_presentation(p);
  GammaCheckReport report;

  // Identities among the distinguished elements.
  auto expect = [&](bool holds, const std::string& what) {
    if (!holds) report.failures.push_back(what);
  };
  expect((g->y() * g->s()).is_zero(), "ys = 0");
  expect((g->y() * g->z()).is_zero(), "yz = 0");
  expect((g->f() * g->y() + g->s() * g->z()).is_zero(), "fy + sz = 0");
  expect(g->bockstein(g->y()) == g->s(), "beta(y) = s");
  expect(g->p1(g->s()) == g->z(), "P1(s) = z");
  expect(g->bockstein(g->z()) == g->f(), "beta(z) = f");
  expect(g->bockstein(g->p1(g->bockstein(g->y()))) == g->f(), "f = beta(P1(beta(y)))");
  const Polynomial eta_power = g->eta().pow(static_cast<unsigned>(p * p - p));
  expect(g->restrict_to_tau(g->h()) == eta_power, "h restricts to eta^(p^2-p)");
  expect(g->restrict_to_tau(g->s()).is_zero(), "s restricts to 0");
  expect(g->restrict_to_tau(g->f()).is_zero(), "f restricts to 0");
  const std::pair<const char*, Polynomial> named[] = {
      {"y", g->y()}, {"s", g->s()}, {"z", g->z()}, {"f", g->f()}, {"h", g->h()}};
  for (const auto& [name, e] : named)
    for (const auto& gen : {SL2Element::unipotent(p), SL2Element::rotation(p)})
      expect(g->act(gen, e) == e, std::string(name) + " is fixed by SL2");

  auto degrees = degrees_up_to(max_degree, 1);
  report.rows.resize(degrees.size());
  engine.parallel_for(degrees.size(), [&](std::size_t i) {
    const int d = degrees[i];
    InvariantSlice inv = invariant_slice(p, d, GammaSlice::ModP, engine);
    DegreeSlice mons = DegreeSlice::enumerate(pres.table, d);
    ModpSpan rel(p, mons.size());
    for (const auto& rho : pres.relations) {
      DegreeSlice cofactors = DegreeSlice::enumerate(pres.table, d - *rho.homogeneous_degree());
      for (const auto& m : cofactors.basis())
        rel.insert(coords_modp(mons, rho * Polynomial::term(pres.table, r, m, 1), p));
    }
    auto [rank, inside] = generated_rank(inv, mons, pres.images, g->table(), r);
    GammaCheckRow& row = report.rows[i];
    row.degree = d;
    row.fixed_dim = inv.dim();
    row.expected_dim = mons.size() - rel.rank();
    row.generated_dim = rank;
    row.ok = inside && row.fixed_dim == row.expected_dim && rank == row.fixed_dim;
  });
  return report;
}

GammaCheckReport integral_invariants_check(int p, int max_degree, Engine& engine) {
  auto gi = GammaIntegral::get(p);
  TablePtr sfh = GeneratorTable::make(
      {{"s", 3, Parity::Odd}, {"f", 2 * p + 2, Parity::Even}, {"h", 2 * p * p - 2 * p, Parity::Even}});
  auto degrees = degrees_up_to(max_degree, 1);
  GammaCheckReport report;
  report.rows.resize(degrees.size());
  engine.parallel_for(degrees.size(), [&](std::size_t i) {
    const int d = degrees[i];
    InvariantSlice inv = invariant_slice(p, d, GammaSlice::Integral, engine);
    DegreeSlice mons = DegreeSlice::enumerate(sfh, d);
    GammaCheckRow& row = report.rows[i];
    row.degree = d;
    row.fixed_dim = inv.dim();
    row.expected_dim = inv.dim();
    if (d == 0) {
      // Z, generated by the empty monomial.
      row.generated_dim = mons.size();
      row.ok = inv.dim() == 1 && mons.size() == 1;
      return;
    }
    Ring r = gi->ring_in_degree(d);
    GeneratorMap images{{0, gi->s()}, {1, gi->f()}, {2, gi->h()}};
    auto [rank, inside] = generated_rank(inv, mons, images, gi->table(), r);
    row.generated_dim = rank;
    row.ok = inside && rank == inv.dim();
  });
  return report;
}

}  // namespace pucohom
