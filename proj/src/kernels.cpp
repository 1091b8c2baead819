#include "pucohom/kernels.hpp"

#include <algorithm>

namespace pucohom {

namespace {

IntVector to_int(const std::vector<mpq_class>& v) {
  IntVector out;
  out.reserve(v.size());
  for (const auto& x : v) {
    if (x.get_den() != 1) throw AlgebraError("expected integer coordinates");
    out.push_back(x.get_num());
  }
  return out;
}

Polynomial combine_int(const DegreeSlice& slice, const IntVector& coords) {
  std::vector<mpq_class> q(coords.begin(), coords.end());
  return slice.combine(q, Ring::integers());
}

std::string slice_key(const char* kind, int n, int degree) {
  return std::string(kind) + "/" + std::to_string(n) + "/" + std::to_string(degree);
}

std::vector<IntVector> compute_kernel(const SigmaContext& ctx, const DegreeSlice& source) {
  DegreeSlice target = DegreeSlice::enumerate(ctx.sigma_table(), source.degree() - 2);
  ExactMatrix m(Ring::integers(), target.size(), source.size());
  Ring z = Ring::integers();
  for (std::size_t j = 0; j < source.size(); ++j) {
    Polynomial image = ctx.nabla_sigma(Polynomial::term(ctx.sigma_table(), z, source[j], 1));
    auto coords = target.coordinates(image);
    for (std::size_t i = 0; i < coords.size(); ++i)
      if (coords[i] != 0) m.set(i, j, coords[i]);
  }
  return integer_kernel(m);
}

std::optional<std::vector<IntVector>> load_kernel(const SliceCache& cache, const CacheKey& key,
                                                  const SigmaContext& ctx, const DegreeSlice& slice) {
  auto lines = cache.load(key);
  if (!lines) return std::nullopt;
  try {
    std::vector<IntVector> rows;
    for (const auto& line : *lines) {
      Polynomial f = parse(line, ctx.sigma_table(), Ring::integers());
      if (!ctx.nabla_sigma(f).is_zero()) return std::nullopt;
      rows.push_back(to_int(slice.coordinates(f)));
    }
    if (hermite_basis(rows, slice.size()) != rows) return std::nullopt;
    return rows;
  } catch (const AlgebraError&) {
    return std::nullopt;
  }
}

// Products K_e * K_{2d-e} in the coordinates of the Hermite basis of K_{2d}.
std::vector<IntVector> decomposables(int n, const KSlice& k, Engine& engine) {
  std::vector<IntVector> out;
  for (int e = 2; 2 * e <= k.degree; e += 2) {
    KSlice a = k_basis(n, e, engine);
    KSlice b = k_basis(n, k.degree - e, engine);
    for (const auto& x : a.basis)
      for (const auto& y : b.basis) {
        auto coords = lattice_coordinates(k.coordinates, to_int(k.sigma_slice.coordinates(x * y)));
        if (!coords) throw TheoremViolation("product of kernel elements left the kernel");
        out.push_back(std::move(*coords));
      }
  }
  return out;
}

}  // namespace

std::string ThetaValue::to_string() const {
  if (degree == 0 || residue == 0) return residue.get_str();
  std::string out = residue.get_str() + "*eta";
  if (degree / 2 > 1) out += "^" + std::to_string(degree / 2);
  return out;
}

ThetaValue theta_eval(int p, const Polynomial& f, std::optional<int> degree) {
  auto ctx = SigmaContext::get(p);
  std::vector<mpz_class> values(static_cast<std::size_t>(p));
  if (same_table(f.table(), ctx->sigma_table())) {
    // sigma_k -> e_k(1, ..., p) eta^k
    std::vector<mpz_class> e(static_cast<std::size_t>(p) + 1, 0);
    e[0] = 1;
    for (int i = 1; i <= p; ++i)
      for (int k = i; k >= 1; --k) e[static_cast<std::size_t>(k)] += i * e[static_cast<std::size_t>(k - 1)];
    for (int k = 1; k <= p; ++k) values[static_cast<std::size_t>(k - 1)] = e[static_cast<std::size_t>(k)];
  } else if (same_table(f.table(), ctx->t_table())) {
    for (int i = 1; i <= p; ++i) values[static_cast<std::size_t>(i - 1)] = i;
  } else {
    throw TableMismatchError("theta_eval expects a polynomial in t or sigma for n = " + std::to_string(p));
  }
  ThetaValue out;
  out.p = p;
  if (f.is_zero()) {
    out.degree = degree.value_or(0);
  } else {
    auto d = f.homogeneous_degree();
    if (!d) throw AlgebraError("theta_eval of an inhomogeneous polynomial");
    if (degree && *degree != *d) throw AlgebraError("theta_eval degree does not match the polynomial");
    out.degree = *d;
  }
  mpz_class sum = 0;
  for (const auto& [m, c] : f.terms()) {
    if (c.get_den() != 1) throw AlgebraError("theta_eval needs integral coefficients");
    mpz_class term = c.get_num();
    for (std::size_t i = 0; i < values.size(); ++i) {
      mpz_class power;
      mpz_pow_ui(power.get_mpz_t(), values[i].get_mpz_t(), m.exponent(i));
      term *= power;
    }
    sum += term;
  }
  if (out.degree > 0 || f.ring().kind() == Ring::Kind::ModP) {
    mpz_class pp = p;
    mpz_fdiv_r(sum.get_mpz_t(), sum.get_mpz_t(), pp.get_mpz_t());
  }
  out.residue = sum;
  return out;
}

KSlice k_basis(int n, int degree, Engine& engine) {
  auto slice = engine.memo<KSlice>(slice_key("K", n, degree), [&] {
    auto ctx = SigmaContext::get(n);
    KSlice k;
    k.n = n;
    k.degree = degree;
    k.sigma_slice = DegreeSlice::enumerate(ctx->sigma_table(), degree);
    const SliceCache* cache = engine.cache();
    CacheKey key{"K", n, degree, "Z", ctx->sigma_table()->hash_hex()};
    std::optional<std::vector<IntVector>> rows;
    if (cache) rows = load_kernel(*cache, key, *ctx, k.sigma_slice);
    bool fresh = !rows;
    if (fresh) rows = compute_kernel(*ctx, k.sigma_slice);
    k.coordinates = std::move(*rows);
    for (const auto& r : k.coordinates) k.basis.push_back(combine_int(k.sigma_slice, r));
    if (cache && fresh) {
      std::vector<std::string> payload;
      for (const auto& f : k.basis) payload.push_back(serialize(f));
      cache->store(key, payload);
    }
    return k;
  });
  return *slice;
}

std::vector<std::size_t> k_hilbert(int n, int max_degree, Engine& engine) {
  std::size_t count = max_degree < 0 ? 0 : static_cast<std::size_t>(max_degree / 2 + 1);
  std::vector<std::size_t> ranks(count);
  engine.parallel_for(count, [&](std::size_t i) { ranks[i] = k_basis(n, static_cast<int>(2 * i), engine).rank(); });
  return ranks;
}

std::size_t polynomial_algebra_dimension(const std::vector<int>& generator_degrees, int degree) {
  if (degree < 0) return 0;
  std::vector<std::size_t> ways(static_cast<std::size_t>(degree) + 1, 0);
  ways[0] = 1;
  for (int g : generator_degrees) {
    if (g <= 0) throw AlgebraError("generator degrees must be positive");
    for (int d = g; d <= degree; ++d) ways[static_cast<std::size_t>(d)] += ways[static_cast<std::size_t>(d - g)];
  }
  return ways[static_cast<std::size_t>(degree)];
}

ISlice i_basis(int p, int degree, Engine& engine) {
  auto slice = engine.memo<ISlice>(slice_key("I", p, degree), [&] {
    KSlice k = k_basis(p, degree, engine);
    ISlice out;
    out.p = p;
    out.degree = degree;
    if (degree == 0) return out;  // Theta is the identity on constants
    out.index = 1;
    IntVector values;
    bool all_zero = true;
    for (const auto& f : k.basis) {
      values.push_back(theta_eval(p, f, degree).residue);
      all_zero = all_zero && values.back() == 0;
    }
    if (all_zero) {
      out.coordinates = k.coordinates;
      out.basis = k.basis;
      return out;
    }
    // {x : sum x_j v_j = 0 mod p} is the projection of the kernel of [v | p].
    IntVector row = values;
    row.emplace_back(p);
    std::vector<IntVector> gens;
    for (const auto& w : integer_kernel(ExactMatrix::from_int_rows({row}, row.size()))) {
      IntVector v(k.sigma_slice.size(), 0);
      for (std::size_t j = 0; j < k.rank(); ++j)
        for (std::size_t c = 0; c < v.size(); ++c) v[c] += w[j] * k.coordinates[j][c];
      gens.push_back(std::move(v));
    }
    out.coordinates = hermite_basis(gens, k.sigma_slice.size());
    for (const auto& r : out.coordinates) out.basis.push_back(combine_int(k.sigma_slice, r));
    out.index = p;
    return out;
  });
  return *slice;
}

std::string to_string(ThetaImage image) { return image == ThetaImage::Full ? "full" : "0"; }

std::vector<ThetaProfileRow> theta_image_profile(int p, int max_degree, ProfileRule rule, Engine& engine) {
  const int period = p * p - p;
  std::size_t count = max_degree < 0 ? 0 : static_cast<std::size_t>(max_degree / 2 + 1);
  std::vector<ThetaProfileRow> rows(count);
  engine.parallel_for(count, [&](std::size_t i) {
    const int degree = static_cast<int>(2 * i);
    const int d = degree / 2;
    ThetaProfileRow& row = rows[i];
    row.degree = degree;
    if (d == 0) {
      row.observed = row.expected = ThetaImage::Full;
      return;
    }
    KSlice k = k_basis(p, degree, engine);
    bool any = std::any_of(k.basis.begin(), k.basis.end(),
                           [&](const Polynomial& f) { return !theta_eval(p, f, degree).is_zero(); });
    row.observed = any ? ThetaImage::Full : ThetaImage::Zero;
    bool full = rule == ProfileRule::GeneratedSubring ? d % period == 0 : d >= period;
    row.expected = full ? ThetaImage::Full : ThetaImage::Zero;
  });
  return rows;
}

std::vector<KGeneratorDegree> k_generators(int n, int max_degree, Engine& engine) {
  std::vector<int> degrees;
  for (int degree = 2; degree <= max_degree; degree += 2) degrees.push_back(degree);
  engine.parallel_for(degrees.size(), [&](std::size_t i) { k_basis(n, degrees[i], engine); });

  std::vector<std::optional<KGeneratorDegree>> found(degrees.size());
  engine.parallel_for(degrees.size(), [&](std::size_t i) {
    KSlice k = k_basis(n, degrees[i], engine);
    if (k.rank() == 0) return;
    const std::size_t r = k.rank();
    std::vector<IntVector> products = decomposables(n, k, engine);

    // With U M V = D, the product lattice is spanned by d_i * w_i where w_i
    // are the columns of U^{-1}; the w_i with d_i != 1 generate the quotient.
    ExactMatrix w = ExactMatrix::identity(Ring::integers(), r);
    std::vector<mpz_class> diag(r, 0);
    if (!products.empty()) {
      SmithForm s = smith_normal_form(ExactMatrix::from_int_columns(products, r));
      w = unimodular_inverse(s.U);
      for (std::size_t j = 0; j < std::min(r, products.size()); ++j) diag[j] = s.D.at(j, j).get_num();
    }
    KGeneratorDegree g;
    g.degree = degrees[i];
    std::vector<std::size_t> torsion, free;
    for (std::size_t j = 0; j < r; ++j) {
      if (diag[j] == 0) free.push_back(j);
      else if (diag[j] != 1) torsion.push_back(j);
    }
    for (std::size_t j : torsion) g.quotient.factors.push_back(diag[j]);
    g.quotient.free_rank = free.size();
    torsion.insert(torsion.end(), free.begin(), free.end());
    for (std::size_t j : torsion) {
      IntVector v(k.sigma_slice.size(), 0);
      for (std::size_t b = 0; b < r; ++b)
        for (std::size_t c = 0; c < v.size(); ++c) v[c] += w.at(b, j).get_num() * k.coordinates[b][c];
      g.representatives.push_back(combine_int(k.sigma_slice, v));
    }
    if (!g.quotient.is_zero()) found[i] = std::move(g);
  });
  std::vector<KGeneratorDegree> out;
  for (auto& g : found)
    if (g) out.push_back(std::move(*g));
  return out;
}

bool is_decomposable(int n, const Polynomial& f, Engine& engine) {
  auto degree = f.homogeneous_degree();
  if (!degree) return f.is_zero();
  KSlice k = k_basis(n, *degree, engine);
  Polynomial g = f.in_ring(Ring::integers());
  auto coords = lattice_coordinates(k.coordinates, to_int(k.sigma_slice.coordinates(g)));
  if (!coords) throw AlgebraError("polynomial is not in K_" + std::to_string(n));
  return lattice_coordinates(hermite_basis(decomposables(n, k, engine), k.rank()), *coords).has_value();
}

std::vector<E4Row> e4_zero_column_check(int n, int max_degree, Engine& engine) {
  auto ctx = SigmaContext::get(n);
  std::vector<Generator> gens = ctx->t_table()->generators();
  gens.push_back({"x", 3, Parity::Odd});
  TablePtr e3 = GeneratorTable::make(gens);
  Ring z = Ring::integers();
  GeneratorMap d;
  for (int i = 0; i < n; ++i) d.emplace(static_cast<std::size_t>(i), Polynomial::generator(e3, z, "x"));

  std::size_t count = max_degree < 0 ? 0 : static_cast<std::size_t>(max_degree / 2 + 1);
  std::vector<E4Row> rows(count);
  engine.parallel_for(count, [&](std::size_t idx) {
    const int degree = static_cast<int>(2 * idx);
    DegreeSlice source = DegreeSlice::enumerate(ctx->sigma_table(), degree);
    DegreeSlice target = DegreeSlice::enumerate(e3, degree + 1);
    ExactMatrix m(z, target.size(), source.size());
    for (std::size_t j = 0; j < source.size(); ++j) {
      Polynomial in_t = ctx->sigma_to_t(Polynomial::term(ctx->sigma_table(), z, source[j], 1));
      Polynomial lifted(e3, z);
      for (const auto& [mono, c] : in_t.terms()) {
        auto e = mono.exponents(static_cast<std::size_t>(n));
        e.push_back(0);
        lifted.add_term(Monomial::from_exponents(*e3, e), c);
      }
      auto coords = target.coordinates(apply_derivation(lifted, d, DerivationRule::Odd));
      for (std::size_t i = 0; i < coords.size(); ++i)
        if (coords[i] != 0) m.set(i, j, coords[i]);
    }
    std::vector<IntVector> zero_column = integer_kernel(m);
    KSlice k = k_basis(n, degree, engine);
    rows[idx] = E4Row{degree, k.rank(), zero_column.size(), zero_column == k.coordinates};
  });
  return rows;
}

}  // namespace pucohom
