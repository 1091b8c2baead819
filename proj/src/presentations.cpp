#include "pucohom/presentations.hpp"

#include <map>
#include <mutex>
#include <sstream>

namespace pucohom {

namespace {

using ModpVector = std::vector<std::int64_t>;

std::string key_of(const char* kind, int p, int degree) {
  return std::string(kind) + "/" + std::to_string(p) + "/" + std::to_string(degree);
}

IntVector to_int(const Vector& v) {
  IntVector out;
  out.reserve(v.size());
  for (const auto& x : v) {
    if (x.get_den() != 1) throw AlgebraError("expected integer coordinates");
    out.push_back(x.get_num());
  }
  return out;
}

ModpVector concat(ModpVector a, const ModpVector& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

IntVector concat(IntVector a, const IntVector& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

Polynomial zero_like(const TablePtr& table, const Ring& ring) { return Polynomial(table, ring); }

Polynomial one(const TablePtr& table, const Ring& ring) { return Polynomial::constant(table, ring, 1); }

Polynomial power(const Polynomial& f, int e) { return f.pow(static_cast<unsigned>(e)); }

// Reduction mod p of a polynomial in s1..sp, renamed to c1..cp.
Polynomial rho(int p, const Polynomial& f) { return f.in_ring(Ring::modp(p)).on_table(chern_table(p)); }

Polynomial delta_modp(int p) { return rho(p, SigmaContext::get(p)->delta_polynomial()); }

int delta_degree(int p) { return 2 * p * p - 2 * p; }

// Reduced echelon basis of the span of `polys` inside `slice`, over F_p.
std::vector<Polynomial> echelon_polys(const DegreeSlice& slice, const std::vector<Polynomial>& polys, int p) {
  ModpSpan span(p, slice.size());
  for (const auto& f : polys) span.insert(to_modp(slice.coordinates(f), p));
  std::vector<Polynomial> out;
  for (const auto& row : span.basis()) {
    Vector q(row.begin(), row.end());
    out.push_back(slice.combine(q, Ring::modp(p)));
  }
  return out;
}

// Echelon basis of rho(I_p) in degree d, over chern_table(p).
std::vector<Polynomial> rho_i_basis(int p, int degree, Engine& engine) {
  auto cached = engine.memo<std::vector<Polynomial>>(key_of("rhoI", p, degree), [&] {
    if (degree <= 0 || degree % 2) return std::vector<Polynomial>{};
    std::vector<Polynomial> reduced;
    for (const auto& u : i_basis(p, degree, engine).basis) reduced.push_back(rho(p, u));
    return echelon_polys(DegreeSlice::enumerate(chern_table(p), degree), reduced, p);
  });
  return *cached;
}

// x3, x_{2p+1}, x_{2p+2} inside main_presentation_table(p).
struct QMonomial {
  int e1 = 0, e2 = 0, k = 0;
  int degree(int p) const { return 3 * e1 + (2 * p + 1) * e2 + (2 * p + 2) * k; }
  bool is_one() const { return e1 == 0 && e2 == 0 && k == 0; }
};

std::vector<QMonomial> q_monomials(int p, int degree) {
  std::vector<QMonomial> out;
  for (int e1 = 0; e1 <= 1; ++e1)
    for (int e2 = 0; e2 <= 1; ++e2)
      for (int k = 0;; ++k) {
        QMonomial q{e1, e2, k};
        int d = q.degree(p);
        if (d > degree) break;
        if (d == degree) out.push_back(q);
      }
  return out;
}

Polynomial q_poly(int p, const QMonomial& q) {
  const TablePtr& t = main_presentation_table(p);
  Ring r = Ring::modp(p);
  auto gen = [&](int i) { return Polynomial::generator(t, r, static_cast<std::size_t>(p + i)); };
  return power(gen(0), q.e1) * power(gen(1), q.e2) * power(gen(2), q.k);
}

// c-polynomial over F_p, viewed in the main presentation table.
Polynomial embed_c(int p, const Polynomial& f) {
  const TablePtr& t = main_presentation_table(p);
  Ring r = Ring::modp(p);
  GeneratorMap images;
  for (int i = 0; i < p; ++i) images.emplace(i, Polynomial::generator(t, r, static_cast<std::size_t>(i)));
  return substitute(f, images, t, r);
}

ProductElement element_zero_modp(int p) {
  auto g = GammaModP::get(p);
  return {zero_like(chern_table(p), g->ring()), zero_like(g->table(), g->ring())};
}

ModpVector modp_coordinates(int p, int degree, const ProductElement& e) {
  auto g = GammaModP::get(p);
  auto cs = DegreeSlice::enumerate(chern_table(p), degree);
  auto gs = DegreeSlice::enumerate(g->table(), degree);
  return concat(to_modp(cs.coordinates(e.left), p), to_modp(gs.coordinates(e.right), p));
}

std::vector<ProductElement> r_seeds(int p, int degree, Engine& engine) {
  auto g = GammaModP::get(p);
  const TablePtr& ct = chern_table(p);
  Ring r = g->ring();
  std::vector<ProductElement> out;
  if (degree == 0) out.push_back({one(ct, r), one(g->table(), r)});
  for (const auto& u : rho_i_basis(p, degree, engine)) out.push_back({u, zero_like(g->table(), r)});
  if (degree == 3) out.push_back({zero_like(ct, r), g->s()});
  if (degree == 2 * p + 1) out.push_back({zero_like(ct, r), g->z()});
  if (degree == 2 * p + 2) out.push_back({zero_like(ct, r), g->f()});
  if (degree == 2) out.push_back({Polynomial::generator(ct, r, 0), g->y()});
  if (degree == delta_degree(p)) out.push_back({delta_modp(p), -g->h()});
  return out;
}

// --- integral side ---------------------------------------------------------

IntVector integral_coordinates(int p, int degree, const ProductElement& e) {
  auto gi = GammaIntegral::get(p);
  auto cs = DegreeSlice::enumerate(chern_table(p), degree);
  auto gs = DegreeSlice::enumerate(gi->table(), degree);
  return concat(to_int(cs.coordinates(e.left)), to_int(gs.coordinates(e.right)));
}

ProductElement integral_element(int p, int degree, const IntVector& v) {
  auto gi = GammaIntegral::get(p);
  auto cs = DegreeSlice::enumerate(chern_table(p), degree);
  auto gs = DegreeSlice::enumerate(gi->table(), degree);
  Vector left(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(cs.size()));
  Vector right(v.begin() + static_cast<std::ptrdiff_t>(cs.size()), v.end());
  return {cs.combine(left, Ring::integers()), gs.combine(right, gi->ring_in_degree(degree))};
}

// Relations of the integral ambient in degree d: p times each Gamma-side
// coordinate (none in degree 0). Returned as row vectors.
std::vector<IntVector> ambient_torsion_rows(int p, int degree) {
  auto gi = GammaIntegral::get(p);
  std::size_t nc = DegreeSlice::enumerate(chern_table(p), degree).size();
  std::size_t ng = DegreeSlice::enumerate(gi->table(), degree).size();
  std::vector<IntVector> out;
  if (degree == 0) return out;
  for (std::size_t j = 0; j < ng; ++j) {
    IntVector v(nc + ng, 0);
    v[nc + j] = p;
    out.push_back(std::move(v));
  }
  return out;
}

bool in_torsion(int p, int degree, const IntVector& v) {
  std::size_t nc = DegreeSlice::enumerate(chern_table(p), degree).size();
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i < nc || degree == 0) {
      if (v[i] != 0) return false;
    } else if (v[i] % p != 0) {
      return false;
    }
  }
  return true;
}

ExactMatrix torsion_matrix(int p, int degree, std::size_t dim) {
  auto rows = ambient_torsion_rows(p, degree);
  ExactMatrix t(Ring::integers(), dim, rows.size());
  for (std::size_t j = 0; j < rows.size(); ++j)
    for (std::size_t i = 0; i < dim; ++i)
      if (rows[j][i] != 0) t.set(i, j, mpq_class(rows[j][i]));
  return t;
}

std::vector<ProductElement> r0_seeds(int p, int degree, Engine& engine) {
  auto gi = GammaIntegral::get(p);
  const TablePtr& ct = chern_table(p);
  Ring z = Ring::integers();
  Ring rd = gi->ring_in_degree(degree);
  std::vector<ProductElement> out;
  if (degree == 0) out.push_back({one(ct, z), one(gi->table(), z)});
  for (const auto& u : i_basis(p, degree, engine).basis) out.push_back({u.on_table(ct), zero_like(gi->table(), rd)});
  if (degree == 3) out.push_back({zero_like(ct, z), gi->s()});
  if (degree == 2 * p + 2) out.push_back({zero_like(ct, z), gi->f()});
  if (degree == delta_degree(p))
    out.push_back({SigmaContext::get(p)->delta_polynomial().on_table(ct), -gi->h()});
  return out;
}

// psi on K_p: the ring map to the integral Gamma ring with psi(I_p) = 0 and
// psi(delta) = -h, read off from Theta_p. Throws TheoremViolation when Theta
// is nonzero in a degree where psi has no prescribed value.
Polynomial psi(int p, const Polynomial& k, int degree) {
  auto gi = GammaIntegral::get(p);
  if (degree == 0) return Polynomial::constant(gi->table(), Ring::integers(), k.coefficient(Monomial::one()));
  mpz_class value = theta_eval(p, k, degree).residue;
  Ring fp = Ring::modp(p);
  if (value == 0) return zero_like(gi->table(), fp);
  if (degree % delta_degree(p) != 0)
    throw TheoremViolation("Theta is nonzero in degree " + std::to_string(degree) + " on " + serialize(k));
  int j = degree / delta_degree(p);
  mpz_class theta_delta = theta_eval(p, SigmaContext::get(p)->delta_polynomial()).residue;
  mpz_class denom;
  mpz_pow_ui(denom.get_mpz_t(), theta_delta.get_mpz_t(), static_cast<unsigned long>(j));
  mpz_class m = value * mod_inverse(mpz_class(denom % p).get_si(), p);
  return power(-gi->h(), j).scaled(mpq_class(m));
}

// --- mod-p presentation, per degree -----------------------------------------

struct MainDegree {
  int degree = 0;
  std::vector<Polynomial> ambient;  // L basis times Q monomials
  std::size_t ambient_rank = 0;
  std::size_t ideal_rank = 0;
  std::vector<std::string> ideal_labels;
  std::vector<Polynomial> ideal;  // spanning products r * a
};

struct RelationGenerator {
  Polynomial poly;
  int degree;
  std::string label;
};

std::vector<Polynomial> ambient_basis(int p, int degree, Engine& engine) {
  auto cached = engine.memo<std::vector<Polynomial>>(key_of("LQ", p, degree), [&] {
    std::vector<Polynomial> out;
    for (int dq = 0; dq <= degree; ++dq)
      for (const auto& q : q_monomials(p, dq)) {
        Polynomial qp = q_poly(p, q);
        for (const auto& l : l_p_slice(p, degree - dq, engine)) out.push_back(embed_c(p, l) * qp);
      }
    return out;
  });
  return *cached;
}

std::vector<RelationGenerator> relation_generators(int p, int max_degree, Engine& engine) {
  const TablePtr& t = main_presentation_table(p);
  Ring r = Ring::modp(p);
  auto gen = [&](int i) { return Polynomial::generator(t, r, static_cast<std::size_t>(i)); };
  Polynomial c1 = gen(0), x3 = gen(p), xo = gen(p + 1), xe = gen(p + 2);
  std::string no = "x" + std::to_string(2 * p + 1), ne = "x" + std::to_string(2 * p + 2);
  std::vector<RelationGenerator> out;
  const std::vector<std::pair<Polynomial, int>> xs = {{x3, 3}, {xo, 2 * p + 1}, {xe, 2 * p + 2}};
  for (int e = 2; e <= max_degree; e += 2)
    for (const auto& u : rho_i_basis(p, e, engine))
      for (const auto& [x, dx] : xs)
        if (e + dx <= max_degree)
          out.push_back({embed_c(p, u) * x, e + dx, "(" + serialize(u) + ")*" + t->operator[](static_cast<std::size_t>(p + (dx == 3 ? 0 : dx == 2 * p + 1 ? 1 : 2))).name});
  out.push_back({c1 * x3, 5, "c1*x3"});
  out.push_back({c1 * xo, 2 * p + 3, "c1*" + no});
  out.push_back({c1 * xe + x3 * xo, 2 * p + 4, "c1*" + ne + " + x3*" + no});
  return out;
}

std::string vector_text(const ModpVector& v) {
  std::ostringstream out;
  out << '[';
  for (std::size_t i = 0; i < v.size(); ++i) out << (i ? " " : "") << v[i];
  out << ']';
  return out.str();
}

}  // namespace

// ---------------------------------------------------------------------------

TablePtr chern_table(int p) {
  static std::mutex mu;
  static std::map<int, TablePtr> tables;
  std::lock_guard<std::mutex> lock(mu);
  auto it = tables.find(p);
  if (it != tables.end()) return it->second;
  std::vector<Generator> gens;
  for (int i = 1; i <= p; ++i) gens.push_back({"c" + std::to_string(i), 2 * i, Parity::Even});
  auto t = GeneratorTable::make(gens);
  tables.emplace(p, t);
  return t;
}

TablePtr main_presentation_table(int p) {
  static std::mutex mu;
  static std::map<int, TablePtr> tables;
  std::lock_guard<std::mutex> lock(mu);
  auto it = tables.find(p);
  if (it != tables.end()) return it->second;
  std::vector<Generator> gens;
  for (int i = 1; i <= p; ++i) gens.push_back({"c" + std::to_string(i), 2 * i, Parity::Even});
  gens.push_back({"x3", 3, Parity::Odd});
  gens.push_back({"x" + std::to_string(2 * p + 1), 2 * p + 1, Parity::Odd});
  gens.push_back({"x" + std::to_string(2 * p + 2), 2 * p + 2, Parity::Even});
  auto t = GeneratorTable::make(gens);
  tables.emplace(p, t);
  return t;
}

ProductElement operator*(const ProductElement& a, const ProductElement& b) {
  auto mul = [](const Polynomial& x, const Polynomial& y) {
    if (x.ring() == y.ring()) return x * y;
    if (x.ring() == Ring::integers()) return x.in_ring(y.ring()) * y;
    if (y.ring() == Ring::integers()) return x * y.in_ring(x.ring());
    throw AlgebraError("product components over incompatible rings");
  };
  return {mul(a.left, b.left), mul(a.right, b.right)};
}

std::vector<Polynomial> l_p_slice(int p, int degree, Engine& engine) {
  auto cached = engine.memo<std::vector<Polynomial>>(key_of("L", p, degree), [&] {
    const TablePtr& ct = chern_table(p);
    Ring r = Ring::modp(p);
    if (degree < 0 || degree % 2) return std::vector<Polynomial>{};
    if (degree == 0) return std::vector<Polynomial>{one(ct, r)};
    std::vector<Polynomial> span;
    for (const auto& k : k_basis(p, degree, engine).basis) span.push_back(rho(p, k));
    Polynomial c1 = Polynomial::generator(ct, r, 0);
    for (const auto& l : l_p_slice(p, degree - 2, engine)) span.push_back(c1 * l);
    return echelon_polys(DegreeSlice::enumerate(ct, degree), span, p);
  });
  return *cached;
}

SubringSliceSet subring_R_slices(int p, int max_degree, Engine& engine) {
  auto cached = engine.memo<SubringSliceSet>(key_of("R", p, max_degree), [&] {
    SubringSliceSet out;
    out.p = p;
    out.max_degree = max_degree;
    auto g = GammaModP::get(p);
    auto dim_of = [&](int d) {
      return DegreeSlice::enumerate(chern_table(p), d).size() + DegreeSlice::enumerate(g->table(), d).size();
    };
    std::vector<ModpSpan> spans;
    for (int d = 0; d <= max_degree; ++d) {
      ModpSpan span(p, dim_of(d));
      std::vector<ProductElement> elems;
      auto add = [&](const ProductElement& e) {
        if (span.insert(modp_coordinates(p, d, e))) elems.push_back(e);
      };
      for (const auto& s : r_seeds(p, d, engine)) add(s);
      for (int e = 1; 2 * e <= d; ++e)
        for (const auto& a : out.elements[static_cast<std::size_t>(e)])
          for (const auto& b : out.elements[static_cast<std::size_t>(d - e)]) add(a * b);
      out.dims.push_back(elems.size());
      out.elements.push_back(std::move(elems));
      spans.push_back(std::move(span));
    }
    // One more pass with every ordered pair of degrees.
    for (int d = 0; d <= max_degree; ++d) {
      const auto& span = spans[static_cast<std::size_t>(d)];
      bool closed = true;
      for (const auto& s : r_seeds(p, d, engine)) closed = closed && span.contains(modp_coordinates(p, d, s));
      for (int e = 1; e < d && closed; ++e)
        for (const auto& a : out.elements[static_cast<std::size_t>(e)])
          for (const auto& b : out.elements[static_cast<std::size_t>(d - e)])
            closed = closed && span.contains(modp_coordinates(p, d, a * b));
      if (!closed) out.unstable.push_back("degree " + std::to_string(d));
    }
    out.stable = out.unstable.empty();
    return out;
  });
  return *cached;
}

SubringSliceSet subring_R0_slices(int p, int max_degree, Engine& engine) {
  auto cached = engine.memo<SubringSliceSet>(key_of("R0", p, max_degree), [&] {
    SubringSliceSet out;
    out.p = p;
    out.integral = true;
    out.max_degree = max_degree;
    auto gi = GammaIntegral::get(p);
    std::vector<std::vector<IntVector>> lattices;
    for (int d = 0; d <= max_degree; ++d) {
      std::size_t dim = DegreeSlice::enumerate(chern_table(p), d).size() +
                        DegreeSlice::enumerate(gi->table(), d).size();
      std::vector<IntVector> gens;
      for (const auto& s : r0_seeds(p, d, engine)) gens.push_back(integral_coordinates(p, d, s));
      for (int e = 1; 2 * e <= d; ++e)
        for (const auto& a : out.elements[static_cast<std::size_t>(e)])
          for (const auto& b : out.elements[static_cast<std::size_t>(d - e)])
            gens.push_back(integral_coordinates(p, d, a * b));
      out.types.push_back(subquotient_invariants(torsion_matrix(p, d, dim), gens));
      auto all = gens;
      for (auto& t : ambient_torsion_rows(p, d)) all.push_back(std::move(t));
      auto lattice = hermite_basis(all, dim);
      std::vector<ProductElement> elems;
      for (const auto& row : lattice)
        if (!in_torsion(p, d, row)) elems.push_back(integral_element(p, d, row));
      out.elements.push_back(std::move(elems));
      lattices.push_back(std::move(lattice));
    }
    for (int d = 0; d <= max_degree; ++d) {
      const auto& lattice = lattices[static_cast<std::size_t>(d)];
      bool closed = true;
      for (const auto& s : r0_seeds(p, d, engine))
        closed = closed && lattice_coordinates(lattice, integral_coordinates(p, d, s)).has_value();
      for (int e = 1; e < d && closed; ++e)
        for (const auto& a : out.elements[static_cast<std::size_t>(e)])
          for (const auto& b : out.elements[static_cast<std::size_t>(d - e)])
            closed = closed && lattice_coordinates(lattice, integral_coordinates(p, d, a * b)).has_value();
      if (!closed) out.unstable.push_back("degree " + std::to_string(d));
    }
    out.stable = out.unstable.empty();
    return out;
  });
  return *cached;
}

PresentationSliceSet main_theorem_quotient_slices(int p, int max_degree, Engine& engine) {
  auto cached = engine.memo<PresentationSliceSet>(key_of("QM", p, max_degree), [&] {
    PresentationSliceSet out;
    out.p = p;
    out.table = main_presentation_table(p);
    auto rels = relation_generators(p, max_degree, engine);
    for (const auto& r : rels) out.relations.push_back(r.poly);
    out.dims.assign(static_cast<std::size_t>(max_degree + 1), 0);
    engine.parallel_for(out.dims.size(), [&](std::size_t i) {
      const int d = static_cast<int>(i);
      auto slice = DegreeSlice::enumerate(out.table, d);
      ModpSpan ambient(p, slice.size()), ideal(p, slice.size());
      for (const auto& a : ambient_basis(p, d, engine)) ambient.insert(to_modp(slice.coordinates(a), p));
      for (const auto& r : rels) {
        if (r.degree > d) continue;
        for (const auto& a : ambient_basis(p, d - r.degree, engine))
          ideal.insert(to_modp(slice.coordinates(r.poly * a), p));
      }
      out.dims[i] = ambient.rank() - ideal.rank();
    });
    return out;
  });
  return *cached;
}

namespace {

struct VistoliBlock {
  QMonomial q;  // x3^e1 x_{2p+2}^k (e2 = 0)
  int k_degree = 0;
  std::size_t offset = 0;
  KSlice k;
};

struct VistoliDegree {
  std::vector<VistoliBlock> blocks;
  std::size_t dim = 0;
  std::vector<IntVector> relations;  // columns, as vectors of length dim
  std::vector<std::string> relation_labels;
  AbelianGroupType type;
};

std::vector<VistoliBlock> vistoli_blocks(int p, int degree, Engine& engine, std::size_t& dim) {
  std::vector<VistoliBlock> out;
  dim = 0;
  for (int e1 = 0; e1 <= 1; ++e1)
    for (int k = 0;; ++k) {
      QMonomial q{e1, 0, k};
      int rest = degree - q.degree(p);
      if (rest < 0) break;
      if (rest % 2) continue;
      VistoliBlock b{q, rest, dim, k_basis(p, rest, engine)};
      dim += b.k.rank();
      out.push_back(std::move(b));
    }
  return out;
}

VistoliDegree vistoli_degree(int p, int degree, Engine& engine) {
  auto cached = engine.memo<VistoliDegree>(key_of("QV", p, degree), [&] {
    VistoliDegree out;
    out.blocks = vistoli_blocks(p, degree, engine, out.dim);
    auto locate = [&](const QMonomial& q) -> const VistoliBlock* {
      for (const auto& b : out.blocks)
        if (b.q.e1 == q.e1 && b.q.k == q.k) return &b;
      return nullptr;
    };
    // (coefficient * kpoly) (x) q written in ambient coordinates.
    auto place = [&](const Polynomial& kpoly, const mpz_class& coeff, const QMonomial& q) {
      IntVector v(out.dim, 0);
      const VistoliBlock* b = locate(q);
      if (!b) throw AlgebraError("product outside the ambient slice");
      auto coords = lattice_coordinates(b->k.coordinates, to_int(b->k.sigma_slice.coordinates(kpoly)));
      if (!coords) throw TheoremViolation("product of K elements left K in degree " + std::to_string(b->k_degree));
      for (std::size_t i = 0; i < coords->size(); ++i) v[b->offset + i] = coeff * (*coords)[i];
      return v;
    };
    // Relation generators r = (coefficient, I element or 1, x) times every
    // ambient basis element of complementary degree.
    struct Family {
      std::string label;
      int degree;
      mpz_class coeff;
      std::optional<Polynomial> u;
      bool x3;
    };
    std::vector<Family> families;
    const int xe = 2 * p + 2;
    families.push_back({"p*x" + std::to_string(xe), xe, p, std::nullopt, false});
    families.push_back({"p*x3", 3, p, std::nullopt, true});
    for (int e = 2; e <= degree; e += 2)
      for (const auto& u : i_basis(p, e, engine).basis) {
        families.push_back({"(" + serialize(u) + ")*x" + std::to_string(xe), e + xe, 1, u, false});
        families.push_back({"(" + serialize(u) + ")*x3", e + 3, 1, u, true});
      }
    for (const auto& f : families) {
      if (f.degree > degree) continue;
      std::size_t sub_dim = 0;
      for (const auto& b : vistoli_blocks(p, degree - f.degree, engine, sub_dim)) {
        QMonomial q = b.q;
        if (f.x3) {
          if (q.e1) continue;  // x3^2 = 0
          q.e1 = 1;
        } else {
          ++q.k;
        }
        for (const auto& k : b.k.basis) {
          Polynomial prod = f.u ? (*f.u) * k : k;
          out.relations.push_back(place(prod, f.coeff, q));
          out.relation_labels.push_back(f.label + " * (" + serialize(k) + ")");
        }
      }
    }
    out.type = AbelianGroupType::cokernel(ExactMatrix::from_int_columns(out.relations, out.dim));
    return out;
  });
  return *cached;
}

}  // namespace

PresentationSliceSet vistoli_quotient_slices(int p, int max_degree, Engine& engine) {
  PresentationSliceSet out;
  out.p = p;
  out.integral = true;
  out.types.resize(static_cast<std::size_t>(max_degree + 1));
  engine.parallel_for(out.types.size(), [&](std::size_t i) {
    out.types[i] = vistoli_degree(p, static_cast<int>(i), engine).type;
  });
  return out;
}

ProductElement phi_word(int p, int a, int b, int e1, int e2, int k) {
  auto g = GammaModP::get(p);
  const TablePtr& ct = chern_table(p);
  Ring r = g->ring();
  ProductElement c1{Polynomial::generator(ct, r, 0), g->y()};
  ProductElement delta{delta_modp(p), -g->h()};
  ProductElement x3{zero_like(ct, r), g->s()}, xo{zero_like(ct, r), g->z()}, xe{zero_like(ct, r), g->f()};
  ProductElement out{one(ct, r), one(g->table(), r)};
  for (int i = 0; i < a; ++i) out = out * c1;
  for (int i = 0; i < b; ++i) out = out * delta;
  if (e1) out = out * x3;
  if (e2) out = out * xo;
  for (int i = 0; i < k; ++i) out = out * xe;
  return out;
}

namespace {

// Words spanning (L_p (x) Q_p)_d together with their Phi images:
// c1^a delta^b q and c1^a u q for u in the echelon basis of rho(I_p).
struct Word {
  Polynomial poly;
  ProductElement image;
  std::string label;
};

std::vector<Word> words(int p, int degree, Engine& engine) {
  std::vector<Word> out;
  const TablePtr& ct = chern_table(p);
  Ring r = Ring::modp(p);
  auto g = GammaModP::get(p);
  Polynomial c1 = Polynomial::generator(ct, r, 0);
  Polynomial delta = delta_modp(p);
  const int dd = delta_degree(p);
  for (int dq = 0; dq <= degree; ++dq)
    for (const auto& q : q_monomials(p, dq)) {
      Polynomial qp = q_poly(p, q);
      std::string qs = q.is_one() ? "" : "*" + serialize(qp);
      for (int b = 0; b * dd + dq <= degree; ++b) {
        int rest = degree - dq - b * dd;
        if (rest % 2) continue;
        int a = rest / 2;
        Polynomial left = power(c1, a) * power(delta, b);
        out.push_back({embed_c(p, left) * qp, phi_word(p, a, b, q.e1, q.e2, q.k),
                       "c1^" + std::to_string(a) + "*delta^" + std::to_string(b) + qs});
      }
      for (int e = 2; e + dq <= degree; e += 2) {
        int rest = degree - dq - e;
        if (rest % 2) continue;
        int a = rest / 2;
        for (const auto& u : rho_i_basis(p, e, engine)) {
          Polynomial left = power(c1, a) * u;
          ProductElement img{q.is_one() ? left : zero_like(ct, r), zero_like(g->table(), r)};
          out.push_back({embed_c(p, left) * qp, img, "c1^" + std::to_string(a) + "*(" + serialize(u) + ")" + qs});
        }
      }
    }
  return out;
}

struct GraphData {
  std::size_t slice_size = 0;
  std::size_t image_size = 0;
  ModpSpan graph{2, 0};
};

std::shared_ptr<const GraphData> phi_graph(int p, int degree, Engine& engine) {
  return engine.memo<GraphData>(key_of("PhiGraph", p, degree), [&] {
    GraphData out;
    auto slice = DegreeSlice::enumerate(main_presentation_table(p), degree);
    out.slice_size = slice.size();
    out.image_size = modp_coordinates(p, degree, element_zero_modp(p)).size();
    out.graph = ModpSpan(p, out.slice_size + out.image_size);
    for (const auto& w : words(p, degree, engine))
      out.graph.insert(concat(to_modp(slice.coordinates(w.poly), p), modp_coordinates(p, degree, w.image)));
    return out;
  });
}

}  // namespace

bool on_phi_graph(int p, const Polynomial& v, const ProductElement& image, Engine& engine) {
  auto d = v.homogeneous_degree();
  if (!d) d = image.left.homogeneous_degree() ? image.left.homogeneous_degree() : image.right.homogeneous_degree();
  if (!d) return true;  // (0, 0)
  auto graph = phi_graph(p, *d, engine);
  auto slice = DegreeSlice::enumerate(main_presentation_table(p), *d);
  return graph->graph.contains(concat(to_modp(slice.coordinates(v), p), modp_coordinates(p, *d, image)));
}

VerifyReport verify_main(int p, int max_degree, Engine& engine) {
  VerifyReport report;
  report.name = "main";
  const std::string xo = "x" + std::to_string(2 * p + 1), xe = "x" + std::to_string(2 * p + 2);
  report.header = {
      "p = " + std::to_string(p) + ", mod-p presentation against the image subring R",
      "Phi: x3 -> (0, s), " + xo + " -> (0, z), " + xe + " -> (0, f), c1 -> (c1, y), delta -> (delta, -h), u -> (u, 0)",
      "sign convention: delta -> (delta, -h)",
      "lhs = dim of the presented quotient, rhs = dim R",
      "R equals the mod-p cohomology only through the trusted injectivity of the restriction pair",
      "verified through degree " + std::to_string(max_degree),
  };
  // The three named relations, through the generator images.
  {
    auto g = GammaModP::get(p);
    auto zero = [](const ProductElement& e) { return e.is_zero(); };
    ProductElement sum = phi_word(p, 1, 0, 0, 0, 1);
    ProductElement x3xo = phi_word(p, 0, 0, 1, 1, 0);
    ProductElement total{sum.left + x3xo.left, sum.right + x3xo.right};
    const std::vector<std::pair<std::string, bool>> named = {
        {"c1*x3", zero(phi_word(p, 1, 0, 1, 0, 0))},
        {"c1*" + xo, zero(phi_word(p, 1, 0, 0, 1, 0))},
        {"c1*" + xe + " + x3*" + xo, zero(total)},
    };
    std::string line = "relation images:";
    for (const auto& [name, ok] : named) {
      line += " Phi(" + name + ") " + (ok ? "= 0;" : "!= 0;");
      if (!ok) report.failures.push_back("Phi(" + name + ") is nonzero");
    }
    report.header.push_back(line);
  }
  SubringSliceSet r = subring_R_slices(p, max_degree, engine);
  if (!r.stable)
    for (const auto& u : r.unstable) report.failures.push_back("closure of R not stable in " + u);
  PresentationSliceSet quotient = main_theorem_quotient_slices(p, max_degree, engine);
  auto rels = relation_generators(p, max_degree, engine);

  std::vector<VerifyRow> rows(static_cast<std::size_t>(max_degree + 1));
  std::vector<std::vector<std::string>> failures(rows.size());
  engine.parallel_for(rows.size(), [&](std::size_t i) {
    const int d = static_cast<int>(i);
    auto& fail = failures[i];
    auto slice = DegreeSlice::enumerate(main_presentation_table(p), d);
    const std::size_t image_size = modp_coordinates(p, d, element_zero_modp(p)).size();
    ModpSpan ambient(p, slice.size()), spanned(p, slice.size()), graph(p, slice.size() + image_size),
        image(p, image_size), rspan(p, image_size);
    for (const auto& a : ambient_basis(p, d, engine)) ambient.insert(to_modp(slice.coordinates(a), p));
    for (const auto& e : r.elements[i]) rspan.insert(modp_coordinates(p, d, e));
    for (const auto& w : words(p, d, engine)) {
      auto wv = to_modp(slice.coordinates(w.poly), p);
      auto iv = modp_coordinates(p, d, w.image);
      if (!ambient.contains(wv)) fail.push_back("degree " + std::to_string(d) + ": word " + w.label + " outside the ambient slice");
      bool new_word = spanned.insert(wv);
      bool new_pair = graph.insert(concat(wv, iv));
      if (new_pair && !new_word)
        fail.push_back("degree " + std::to_string(d) + ": Phi not well defined at word " + w.label);
      image.insert(iv);
      if (!rspan.contains(iv))
        fail.push_back("degree " + std::to_string(d) + ": Phi(" + w.label + ") = " + vector_text(iv) + " not in R");
    }
    if (spanned.rank() != ambient.rank())
      fail.push_back("degree " + std::to_string(d) + ": words span " + std::to_string(spanned.rank()) + " of " +
                     std::to_string(ambient.rank()) + " ambient dimensions");
    if (image.rank() != rspan.rank())
      fail.push_back("degree " + std::to_string(d) + ": Phi not onto R (" + std::to_string(image.rank()) + " of " +
                     std::to_string(rspan.rank()) + ")");
    for (const auto& rel : rels) {
      if (rel.degree > d) continue;
      for (const auto& a : ambient_basis(p, d - rel.degree, engine)) {
        auto v = to_modp(slice.coordinates(rel.poly * a), p);
        if (!graph.contains(concat(v, ModpVector(image_size, 0))))
          fail.push_back("degree " + std::to_string(d) + ": relation " + rel.label + " times " + serialize(a) +
                         " does not map to zero");
      }
    }
    VerifyRow& row = rows[i];
    row.degree = d;
    row.lhs = std::to_string(quotient.dims[i]);
    row.rhs = std::to_string(r.dims[i]);
    row.ok = fail.empty() && quotient.dims[i] == r.dims[i];
    if (quotient.dims[i] != r.dims[i])
      fail.push_back("degree " + std::to_string(d) + ": quotient has dimension " + row.lhs + ", R has " + row.rhs);
  });
  report.rows = std::move(rows);
  for (auto& f : failures) report.failures.insert(report.failures.end(), f.begin(), f.end());
  return report;
}

VerifyReport verify_vistoli(int p, int max_degree, Engine& engine) {
  VerifyReport report;
  report.name = "vistoli";
  const std::string xe = "x" + std::to_string(2 * p + 2);
  report.header = {
      "p = " + std::to_string(p) + ", integral presentation against the image subring R0",
      "Phi0: x3 -> (0, s), " + xe + " -> (0, f), k -> (k, psi(k)) with psi(I) = 0, psi(delta) = -h",
      "sign convention: delta -> (delta, -h)",
      "lhs = presented quotient, rhs = R0, as abelian groups",
      "verified through degree " + std::to_string(max_degree),
  };
  SubringSliceSet r0 = subring_R0_slices(p, max_degree, engine);
  if (!r0.stable)
    for (const auto& u : r0.unstable) report.failures.push_back("closure of R0 not stable in " + u);
  auto gi = GammaIntegral::get(p);

  std::vector<VerifyRow> rows(static_cast<std::size_t>(max_degree + 1));
  std::vector<std::vector<std::string>> failures(rows.size());
  engine.parallel_for(rows.size(), [&](std::size_t i) {
    const int d = static_cast<int>(i);
    auto& fail = failures[i];
    const std::string at = "degree " + std::to_string(d) + ": ";
    VistoliDegree q = vistoli_degree(p, d, engine);
    const std::size_t amb = DegreeSlice::enumerate(chern_table(p), d).size() +
                            DegreeSlice::enumerate(gi->table(), d).size();
    // Phi0 of every ambient basis element.
    std::vector<IntVector> images;
    try {
      for (const auto& b : q.blocks) {
        const bool bare = b.q.k == 0 && b.q.e1 == 0;
        Polynomial tail = power(gi->f(), b.q.k) * (b.q.e1 ? gi->s() : one(gi->table(), Ring::modp(p)));
        for (const auto& k : b.k.basis) {
          Polynomial ps = psi(p, k, b.k_degree);
          ProductElement e = bare ? ProductElement{k.on_table(chern_table(p)), ps}
                                  : ProductElement{zero_like(chern_table(p), Ring::integers()),
                                                   ps.in_ring(Ring::modp(p)) * tail};
          images.push_back(integral_coordinates(p, d, e));
        }
      }
    } catch (const TheoremViolation& e) {
      fail.push_back(at + e.what());
    }
    AbelianGroupType type_r0 = r0.types[i];
    VerifyRow& row = rows[i];
    row.degree = d;
    row.lhs = q.type.to_string();
    row.rhs = type_r0.to_string();
    if (images.size() == q.dim) {
      // Relations land in the ambient relations T.
      for (std::size_t c = 0; c < q.relations.size(); ++c) {
        IntVector v(amb, 0);
        for (std::size_t j = 0; j < q.dim; ++j)
          if (q.relations[c][j] != 0)
            for (std::size_t t = 0; t < amb; ++t) v[t] += q.relations[c][j] * images[j][t];
        if (!in_torsion(p, d, v)) fail.push_back(at + "relation " + q.relation_labels[c] + " does not map to zero");
      }
      // Image plus T equals R0 plus T.
      auto torsion = ambient_torsion_rows(p, d);
      auto lhs = images;
      lhs.insert(lhs.end(), torsion.begin(), torsion.end());
      auto rhs = torsion;
      for (const auto& e : r0.elements[i]) rhs.push_back(integral_coordinates(p, d, e));
      if (hermite_basis(lhs, amb) != hermite_basis(rhs, amb)) fail.push_back(at + "image of Phi0 differs from R0");
      // Preimage of T equals the relation lattice.
      ExactMatrix aug(Ring::integers(), amb, q.dim + torsion.size());
      for (std::size_t j = 0; j < q.dim; ++j)
        for (std::size_t t = 0; t < amb; ++t)
          if (images[j][t] != 0) aug.set(t, j, mpq_class(images[j][t]));
      for (std::size_t j = 0; j < torsion.size(); ++j)
        for (std::size_t t = 0; t < amb; ++t)
          if (torsion[j][t] != 0) aug.set(t, q.dim + j, mpq_class(-torsion[j][t]));
      std::vector<IntVector> kernel;
      for (const auto& v : integer_kernel(aug))
        kernel.emplace_back(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(q.dim));
      if (hermite_basis(kernel, q.dim) != hermite_basis(q.relations, q.dim))
        fail.push_back(at + "kernel of Phi0 differs from the relation lattice");
    }
    if (q.type != type_r0) fail.push_back(at + "quotient is " + row.lhs + ", R0 is " + row.rhs);
    row.ok = fail.empty();
  });
  report.rows = std::move(rows);
  for (auto& f : failures) report.failures.insert(report.failures.end(), f.begin(), f.end());
  return report;
}

}  // namespace pucohom
