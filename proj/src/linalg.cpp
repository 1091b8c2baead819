#include "pucohom/linalg.hpp"

#include <algorithm>
#include <map>
#include <utility>

namespace pucohom {

// ---------------------------------------------------------------------------
// ExactMatrix

ExactMatrix::ExactMatrix(Ring ring, std::size_t rows, std::size_t cols)
    : ring_(ring), rows_(rows), cols_(cols), data_(rows * cols, mpq_class(0)) {}

ExactMatrix ExactMatrix::from_rows(Ring ring, const std::vector<Vector>& rows, std::size_t cols) {
  ExactMatrix m(ring, rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) throw AlgebraError("ragged matrix rows");
    for (std::size_t c = 0; c < cols; ++c) m.set(r, c, rows[r][c]);
  }
  return m;
}

ExactMatrix ExactMatrix::from_int_rows(const std::vector<IntVector>& rows, std::size_t cols) {
  ExactMatrix m(Ring::integers(), rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) throw AlgebraError("ragged matrix rows");
    for (std::size_t c = 0; c < cols; ++c) m.data_[r * cols + c] = mpq_class(rows[r][c]);
  }
  return m;
}

ExactMatrix ExactMatrix::from_int_columns(const std::vector<IntVector>& columns, std::size_t rows) {
  ExactMatrix m(Ring::integers(), rows, columns.size());
  for (std::size_t c = 0; c < columns.size(); ++c) {
    if (columns[c].size() != rows) throw AlgebraError("ragged matrix columns");
    for (std::size_t r = 0; r < rows; ++r) m.data_[r * columns.size() + c] = mpq_class(columns[c][r]);
  }
  return m;
}

ExactMatrix ExactMatrix::identity(Ring ring, std::size_t n) {
  ExactMatrix m(ring, n, n);
  for (std::size_t i = 0; i < n; ++i) m.set(i, i, 1);
  return m;
}

Vector ExactMatrix::row(std::size_t r) const {
  return Vector(data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
                data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_));
}

IntVector ExactMatrix::int_row(std::size_t r) const {
  IntVector v(cols_);
  for (std::size_t c = 0; c < cols_; ++c) {
    const mpq_class& x = at(r, c);
    if (x.get_den() != 1) throw AlgebraError("matrix entry is not an integer");
    v[c] = x.get_num();
  }
  return v;
}

ExactMatrix ExactMatrix::transposed() const {
  ExactMatrix t(ring_, cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t.data_[c * rows_ + r] = at(r, c);
  return t;
}

ExactMatrix ExactMatrix::operator*(const ExactMatrix& other) const {
  if (cols_ != other.rows_ || !(ring_ == other.ring_)) throw AlgebraError("matrix product shape/ring mismatch");
  ExactMatrix m(ring_, rows_, other.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      const mpq_class& a = at(i, k);
      if (a == 0) continue;
      for (std::size_t j = 0; j < other.cols_; ++j) m.data_[i * other.cols_ + j] += a * other.at(k, j);
    }
  for (auto& x : m.data_) x = ring_.normalize(x);
  return m;
}

// ---------------------------------------------------------------------------
// Field elimination

std::int64_t mod_inverse(std::int64_t a, std::int64_t p) {
  std::int64_t t = 0, new_t = 1, r = p, new_r = ((a % p) + p) % p;
  while (new_r != 0) {
    std::int64_t q = r / new_r;
    std::tie(t, new_t) = std::make_pair(new_t, t - q * new_t);
    std::tie(r, new_r) = std::make_pair(new_r, r - q * new_r);
  }
  if (r != 1) throw AlgebraError("element not invertible mod p");
  return t < 0 ? t + p : t;
}

std::vector<std::int64_t> to_modp(const Vector& v, std::int64_t p) {
  Ring fp = Ring::modp(p);
  std::vector<std::int64_t> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = fp.normalize(v[i]).get_num().get_si();
  return out;
}

std::vector<std::int64_t> to_modp(const IntVector& v, std::int64_t p) {
  std::vector<std::int64_t> out(v.size());
  mpz_class P(static_cast<long>(p));
  for (std::size_t i = 0; i < v.size(); ++i) {
    mpz_class r = v[i] % P;
    if (r < 0) r += P;
    out[i] = r.get_si();
  }
  return out;
}

namespace {

struct Echelon {
  std::vector<Vector> rows;          // reduced row echelon form, nonzero rows
  std::vector<std::size_t> pivots;   // pivot column of each row
};

Echelon rref_modp(const ExactMatrix& m) {
  const std::int64_t p = m.ring().characteristic();
  ModpSpan span(p, m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r) span.insert(to_modp(m.row(r), p));
  Echelon e;
  for (auto& row : span.basis()) {
    Vector v(row.size());
    std::size_t pivot = row.size();
    for (std::size_t c = 0; c < row.size(); ++c) {
      v[c] = row[c];
      if (pivot == row.size() && row[c] != 0) pivot = c;
    }
    e.rows.push_back(std::move(v));
    e.pivots.push_back(pivot);
  }
  return e;
}

Echelon rref_rational(const ExactMatrix& m) {
  std::vector<Vector> a;
  a.reserve(m.rows());
  for (std::size_t r = 0; r < m.rows(); ++r) a.push_back(m.row(r));
  Echelon e;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols() && row < a.size(); ++col) {
    std::size_t piv = a.size();
    for (std::size_t r = row; r < a.size(); ++r)
      if (a[r][col] != 0) {
        piv = r;
        break;
      }
    if (piv == a.size()) continue;
    std::swap(a[row], a[piv]);
    mpq_class inv = 1 / a[row][col];
    for (auto& x : a[row]) x *= inv;
    for (std::size_t r = 0; r < a.size(); ++r) {
      if (r == row || a[r][col] == 0) continue;
      mpq_class f = a[r][col];
      for (std::size_t c = col; c < m.cols(); ++c) a[r][c] -= f * a[row][c];
    }
    e.pivots.push_back(col);
    ++row;
  }
  a.resize(row);
  e.rows = std::move(a);
  return e;
}

Echelon rref(const ExactMatrix& m) {
  if (m.ring().kind() == Ring::Kind::ModP) return rref_modp(m);
  return rref_rational(m);
}

Ring field_of(const ExactMatrix& m) {
  return m.ring().kind() == Ring::Kind::Integer ? Ring::rationals() : m.ring();
}

}  // namespace

std::size_t rank(const ExactMatrix& m) { return rref(m).rows.size(); }

std::vector<Vector> row_echelon_basis(const ExactMatrix& m) { return rref(m).rows; }

std::vector<Vector> kernel_basis(const ExactMatrix& m) {
  Echelon e = rref(m);
  Ring field = field_of(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto c : e.pivots) is_pivot[c] = true;
  std::vector<Vector> raw;
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    Vector v(m.cols(), 0);
    v[f] = 1;
    for (std::size_t i = 0; i < e.rows.size(); ++i) v[e.pivots[i]] = field.normalize(-e.rows[i][f]);
    raw.push_back(std::move(v));
  }
  if (raw.empty()) return raw;
  return rref(ExactMatrix::from_rows(field, raw, m.cols())).rows;
}

// ---------------------------------------------------------------------------
// Integer lattices

namespace {

// Echelon structure over Z restricted to the first `limit` coordinates.
class IntEchelon {
 public:
  explicit IntEchelon(std::size_t limit) : limit_(limit) {}

  // Reduces v against the stored rows; either stores it (returns nullopt) or
  // returns the residual whose first `limit` coordinates vanish.
  std::optional<IntVector> insert(IntVector v) {
    while (true) {
      std::size_t k = 0;
      while (k < limit_ && v[k] == 0) ++k;
      if (k == limit_) return v;
      auto it = rows_.find(k);
      if (it == rows_.end()) {
        if (v[k] < 0)
          for (auto& x : v) x = -x;
        rows_.emplace(k, std::move(v));
        return std::nullopt;
      }
      IntVector& r = it->second;
      if (mpz_divisible_p(v[k].get_mpz_t(), r[k].get_mpz_t())) {
        mpz_class q = v[k] / r[k];
        for (std::size_t i = k; i < v.size(); ++i) v[i] -= q * r[i];
        continue;
      }
      mpz_class g, s, t;
      mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), r[k].get_mpz_t(), v[k].get_mpz_t());
      mpz_class a = r[k] / g;
      mpz_class b = v[k] / g;
      IntVector new_r(v.size());
      for (std::size_t i = k; i < v.size(); ++i) {
        new_r[i] = s * r[i] + t * v[i];
        v[i] = a * v[i] - b * r[i];
      }
      for (std::size_t i = 0; i < k; ++i) new_r[i] = 0;
      r = std::move(new_r);
      if (r[k] < 0)
        for (auto& x : r) x = -x;
      reduce_above(k);
    }
  }

  // Reduces the entries of every stored row at pivot column k into [0, pivot).
  void reduce_above(std::size_t k) {
    const IntVector& pr = rows_.at(k);
    for (auto& [c, row] : rows_) {
      if (c >= k) break;
      if (row[k] == 0) continue;
      mpz_class q;
      mpz_fdiv_q(q.get_mpz_t(), row[k].get_mpz_t(), pr[k].get_mpz_t());
      if (q == 0) continue;
      for (std::size_t i = k; i < row.size(); ++i) row[i] -= q * pr[i];
    }
  }

  std::vector<IntVector> hermite() {
    for (auto& [c, row] : rows_) reduce_above(c);
    std::vector<IntVector> out;
    out.reserve(rows_.size());
    for (auto& [c, row] : rows_) out.push_back(row);
    return out;
  }

 private:
  std::size_t limit_;
  std::map<std::size_t, IntVector> rows_;
};

}  // namespace

std::vector<IntVector> hermite_basis(const std::vector<IntVector>& generators, std::size_t dim) {
  IntEchelon ech(dim);
  for (const auto& g : generators) {
    if (g.size() != dim) throw AlgebraError("lattice generator has wrong length");
    ech.insert(g);
  }
  return ech.hermite();
}

std::optional<IntVector> lattice_coordinates(const std::vector<IntVector>& hermite, const IntVector& v) {
  IntVector rest = v;
  IntVector coords(hermite.size(), 0);
  for (std::size_t i = 0; i < hermite.size(); ++i) {
    const IntVector& r = hermite[i];
    std::size_t k = 0;
    while (k < r.size() && r[k] == 0) ++k;
    if (k == r.size()) continue;
    for (std::size_t j = 0; j < k; ++j)
      if (rest[j] != 0) return std::nullopt;
    if (rest[k] == 0) continue;
    if (!mpz_divisible_p(rest[k].get_mpz_t(), r[k].get_mpz_t())) return std::nullopt;
    coords[i] = rest[k] / r[k];
    for (std::size_t j = k; j < r.size(); ++j) rest[j] -= coords[i] * r[j];
  }
  for (const auto& x : rest)
    if (x != 0) return std::nullopt;
  return coords;
}

namespace {

// Kernel by echelon reduction of [M^T | I]. Exact for any input but the
// transform entries can grow quickly; used when the denominators of the
// rational kernel cannot be factored.
std::vector<IntVector> integer_kernel_by_echelon(const ExactMatrix& m) {
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  IntEchelon ech(rows);
  std::vector<IntVector> kernel;
  for (std::size_t j = 0; j < cols; ++j) {
    IntVector v(rows + cols, 0);
    for (std::size_t i = 0; i < rows; ++i) v[i] = m.at(i, j).get_num();
    v[rows + j] = 1;
    if (auto residual = ech.insert(std::move(v)))
      kernel.emplace_back(residual->begin() + static_cast<std::ptrdiff_t>(rows), residual->end());
  }
  // The residual tails together with the echelon tails form a unimodular
  // transform of the identity, so the residual tails span the whole kernel.
  return hermite_basis(kernel, cols);
}

// Prime factors of n, or nullopt if a cofactor survives trial division and
// is not a probable prime.
std::optional<std::vector<mpz_class>> prime_factors(mpz_class n) {
  std::vector<mpz_class> out;
  for (unsigned long q = 2; q < 1000000 && n > 1; ++q) {
    if (q * q > n) break;
    if (mpz_divisible_ui_p(n.get_mpz_t(), q)) {
      out.emplace_back(q);
      while (mpz_divisible_ui_p(n.get_mpz_t(), q)) n /= q;
    }
  }
  if (n > 1) {
    if (mpz_probab_prime_p(n.get_mpz_t(), 40) == 0) return std::nullopt;
    out.push_back(n);
  }
  return out;
}

// Enlarges the lattice spanned by the rows of b until it is q-saturated in
// its rational span: while the rows are dependent mod q, a dependency a gives
// (a . b) / q, which replaces one row with a_i != 0.
void saturate_at(std::vector<IntVector>& b, const mpz_class& q) {
  if (!q.fits_slong_p() || q > 3037000499L) throw AlgebraError("saturation prime too large");
  const std::int64_t qq = q.get_si();
  const std::size_t dim = b.front().size();
  while (true) {
    ExactMatrix bt(Ring::modp(qq), dim, b.size());
    for (std::size_t i = 0; i < b.size(); ++i)
      for (std::size_t c = 0; c < dim; ++c)
        if (b[i][c] != 0) bt.set(c, i, mpq_class(b[i][c]));
    auto deps = kernel_basis(bt);
    if (deps.empty()) return;
    const Vector& a = deps.front();
    std::size_t lead = 0;
    while (a[lead] == 0) ++lead;  // kernel_basis normalizes this entry to 1
    IntVector sum(dim, 0);
    for (std::size_t i = 0; i < b.size(); ++i) {
      if (a[i] == 0) continue;
      mpz_class ai = a[i].get_num();
      for (std::size_t c = 0; c < dim; ++c) sum[c] += ai * b[i][c];
    }
    for (auto& x : sum) x /= q;  // exact: every coordinate is divisible by q
    b[lead] = std::move(sum);
  }
}

}  // namespace

std::vector<IntVector> integer_kernel(const ExactMatrix& m) {
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c)
      if (m.at(r, c).get_den() != 1) throw AlgebraError("integer_kernel needs an integer matrix");
  std::vector<Vector> rational = kernel_basis(ExactMatrix::from_rows(Ring::rationals(), [&] {
    std::vector<Vector> rows;
    for (std::size_t r = 0; r < m.rows(); ++r) rows.push_back(m.row(r));
    return rows;
  }(), m.cols()));
  if (rational.empty()) return {};

  // Primitive integer multiples of the rational basis span a sublattice of
  // the kernel whose index involves only primes dividing the denominators.
  std::vector<IntVector> b;
  mpz_class denominators = 1;
  for (const auto& v : rational) {
    mpz_class l = 1;
    for (const auto& x : v) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
    IntVector w(v.size());
    mpz_class g = 0;
    for (std::size_t c = 0; c < v.size(); ++c) {
      w[c] = mpq_class(v[c] * l).get_num();
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), w[c].get_mpz_t());
    }
    for (auto& x : w) x /= g;
    mpz_lcm(denominators.get_mpz_t(), denominators.get_mpz_t(), l.get_mpz_t());
    b.push_back(std::move(w));
  }
  auto primes = prime_factors(denominators);
  if (!primes) return integer_kernel_by_echelon(m);
  try {
    for (const auto& q : *primes) saturate_at(b, q);
  } catch (const AlgebraError&) {
    return integer_kernel_by_echelon(m);
  }
  return hermite_basis(b, m.cols());
}

// ---------------------------------------------------------------------------
// Smith normal form

namespace {

struct IntGrid {
  std::size_t rows, cols;
  std::vector<mpz_class> a;
  mpz_class& at(std::size_t r, std::size_t c) { return a[r * cols + c]; }
};

IntGrid to_grid(const ExactMatrix& m) {
  IntGrid g{m.rows(), m.cols(), std::vector<mpz_class>(m.rows() * m.cols())};
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) {
      const mpq_class& x = m.at(r, c);
      if (x.get_den() != 1) throw AlgebraError("Smith normal form needs an integer matrix");
      g.at(r, c) = x.get_num();
    }
  return g;
}

IntGrid identity_grid(std::size_t n) {
  IntGrid g{n, n, std::vector<mpz_class>(n * n, 0)};
  for (std::size_t i = 0; i < n; ++i) g.at(i, i) = 1;
  return g;
}

ExactMatrix from_grid(IntGrid& g) {
  ExactMatrix m(Ring::integers(), g.rows, g.cols);
  for (std::size_t r = 0; r < g.rows; ++r)
    for (std::size_t c = 0; c < g.cols; ++c) m.set(r, c, mpq_class(g.at(r, c)));
  return m;
}

class SmithRunner {
 public:
  SmithRunner(IntGrid a, bool track) : a_(std::move(a)), track_(track) {
    if (track_) {
      u_ = identity_grid(a_.rows);
      v_ = identity_grid(a_.cols);
    }
  }

  void run() {
    const std::size_t n = std::min(a_.rows, a_.cols);
    for (std::size_t t = 0; t < n; ++t) {
      if (!bring_min_to(t, t, t)) break;
      while (true) {
        bool clean = true;
        for (std::size_t i = t + 1; i < a_.rows; ++i) {
          if (a_.at(i, t) == 0) continue;
          mpz_class q = a_.at(i, t) / a_.at(t, t);
          add_row(i, t, -q);
          if (a_.at(i, t) != 0) clean = false;
        }
        for (std::size_t j = t + 1; j < a_.cols; ++j) {
          if (a_.at(t, j) == 0) continue;
          mpz_class q = a_.at(t, j) / a_.at(t, t);
          add_col(j, t, -q);
          if (a_.at(t, j) != 0) clean = false;
        }
        if (!clean) {
          bring_min_in_cross(t);
          continue;
        }
        // Row and column t are clear; enforce divisibility of the rest.
        std::size_t bad_row = a_.rows;
        for (std::size_t i = t + 1; i < a_.rows && bad_row == a_.rows; ++i)
          for (std::size_t j = t + 1; j < a_.cols; ++j)
            if (!mpz_divisible_p(a_.at(i, j).get_mpz_t(), a_.at(t, t).get_mpz_t())) {
              bad_row = i;
              break;
            }
        if (bad_row == a_.rows) break;
        add_row(t, bad_row, 1);
      }
      if (a_.at(t, t) < 0) negate_row(t);
    }
  }

  IntGrid a_, u_, v_;

 private:
  // Moves the first entry of minimal absolute value (row-major scan) in the
  // submatrix starting at (r0, c0) to position (t, t).
  bool bring_min_to(std::size_t t, std::size_t r0, std::size_t c0) {
    bool found = false;
    std::size_t br = 0, bc = 0;
    mpz_class best;
    for (std::size_t i = r0; i < a_.rows; ++i)
      for (std::size_t j = c0; j < a_.cols; ++j) {
        const mpz_class& x = a_.at(i, j);
        if (x == 0) continue;
        mpz_class ax = abs(x);
        if (!found || ax < best) {
          found = true;
          best = ax;
          br = i;
          bc = j;
        }
      }
    if (!found) return false;
    swap_rows(t, br);
    swap_cols(t, bc);
    return true;
  }

  void bring_min_in_cross(std::size_t t) {
    std::size_t br = t, bc = t;
    mpz_class best = abs(a_.at(t, t));
    for (std::size_t i = t + 1; i < a_.rows; ++i) {
      const mpz_class& x = a_.at(i, t);
      if (x != 0 && (best == 0 || abs(x) < best)) {
        best = abs(x);
        br = i;
        bc = t;
      }
    }
    for (std::size_t j = t + 1; j < a_.cols; ++j) {
      const mpz_class& x = a_.at(t, j);
      if (x != 0 && (best == 0 || abs(x) < best)) {
        best = abs(x);
        br = t;
        bc = j;
      }
    }
    swap_rows(t, br);
    swap_cols(t, bc);
  }

  void swap_rows(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t c = 0; c < a_.cols; ++c) std::swap(a_.at(i, c), a_.at(j, c));
    if (track_)
      for (std::size_t c = 0; c < u_.cols; ++c) std::swap(u_.at(i, c), u_.at(j, c));
  }
  void swap_cols(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t r = 0; r < a_.rows; ++r) std::swap(a_.at(r, i), a_.at(r, j));
    if (track_)
      for (std::size_t r = 0; r < v_.rows; ++r) std::swap(v_.at(r, i), v_.at(r, j));
  }
  // row_i += k * row_j
  void add_row(std::size_t i, std::size_t j, const mpz_class& k) {
    if (k == 0) return;
    for (std::size_t c = 0; c < a_.cols; ++c) a_.at(i, c) += k * a_.at(j, c);
    if (track_)
      for (std::size_t c = 0; c < u_.cols; ++c) u_.at(i, c) += k * u_.at(j, c);
  }
  // col_i += k * col_j
  void add_col(std::size_t i, std::size_t j, const mpz_class& k) {
    if (k == 0) return;
    for (std::size_t r = 0; r < a_.rows; ++r) a_.at(r, i) += k * a_.at(r, j);
    if (track_)
      for (std::size_t r = 0; r < v_.rows; ++r) v_.at(r, i) += k * v_.at(r, j);
  }
  void negate_row(std::size_t i) {
    for (std::size_t c = 0; c < a_.cols; ++c) a_.at(i, c) = -a_.at(i, c);
    if (track_)
      for (std::size_t c = 0; c < u_.cols; ++c) u_.at(i, c) = -u_.at(i, c);
  }

  bool track_;
};

}  // namespace

SmithForm smith_normal_form(const ExactMatrix& m) {
  SmithRunner runner(to_grid(m), true);
  runner.run();
  return SmithForm{from_grid(runner.u_), from_grid(runner.a_), from_grid(runner.v_)};
}

std::vector<mpz_class> smith_diagonal(const ExactMatrix& m) {
  SmithRunner runner(to_grid(m), false);
  runner.run();
  std::vector<mpz_class> d;
  for (std::size_t i = 0; i < std::min(m.rows(), m.cols()); ++i) d.push_back(runner.a_.at(i, i));
  return d;
}

std::string AbelianGroupType::to_string() const {
  if (is_zero()) return "0";
  std::string s;
  if (free_rank == 1) s = "Z";
  else if (free_rank > 1) s = "Z^" + std::to_string(free_rank);
  for (const auto& d : factors) {
    if (!s.empty()) s += "+";
    s += "Z/" + d.get_str();
  }
  return s;
}

AbelianGroupType AbelianGroupType::cokernel(const ExactMatrix& relations) {
  AbelianGroupType g;
  std::size_t nonzero = 0;
  for (const auto& d : smith_diagonal(relations)) {
    if (d == 0) continue;
    ++nonzero;
    if (d > 1) g.factors.push_back(d);
  }
  g.free_rank = relations.rows() - nonzero;
  return g;
}

AbelianGroupType subquotient_invariants(const ExactMatrix& ambient_relations,
                                        const std::vector<IntVector>& subgroup_generators) {
  const std::size_t n = ambient_relations.rows();
  const std::size_t m = subgroup_generators.size();
  const std::size_t k = ambient_relations.cols();
  if (m == 0) return {};
  // x in Z^m lies in the relation module iff (x, y) is in ker [G | -T].
  ExactMatrix aug(Ring::integers(), n, m + k);
  for (std::size_t j = 0; j < m; ++j) {
    if (subgroup_generators[j].size() != n) throw AlgebraError("generator has wrong length");
    for (std::size_t i = 0; i < n; ++i) aug.set(i, j, mpq_class(subgroup_generators[j][i]));
  }
  for (std::size_t j = 0; j < k; ++j)
    for (std::size_t i = 0; i < n; ++i) aug.set(i, m + j, -ambient_relations.at(i, j));
  std::vector<IntVector> projected;
  for (auto& v : integer_kernel(aug)) projected.emplace_back(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(m));
  projected = hermite_basis(projected, m);
  if (projected.empty()) {
    AbelianGroupType g;
    g.free_rank = m;
    return g;
  }
  return AbelianGroupType::cokernel(ExactMatrix::from_int_columns(projected, m));
}

// ---------------------------------------------------------------------------
// ModpSpan

std::vector<std::int64_t> ModpSpan::reduce(std::vector<std::int64_t> v) const {
  for (auto& x : v) x = ((x % p_) + p_) % p_;
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    std::int64_t f = v[pivots_[r]];
    if (f == 0) continue;
    const auto& row = rows_[r];
    for (std::size_t c = pivots_[r]; c < dim_; ++c)
      if (row[c]) v[c] = (v[c] - f * row[c]) % p_;
    for (std::size_t c = pivots_[r]; c < dim_; ++c)
      if (v[c] < 0) v[c] += p_;
  }
  return v;
}

bool ModpSpan::contains(std::vector<std::int64_t> v) const {
  auto r = reduce(std::move(v));
  return std::all_of(r.begin(), r.end(), [](std::int64_t x) { return x == 0; });
}

bool ModpSpan::insert(std::vector<std::int64_t> v) {
  if (v.size() != dim_) throw AlgebraError("vector has wrong length for span");
  v = reduce(std::move(v));
  std::size_t pivot = 0;
  while (pivot < dim_ && v[pivot] == 0) ++pivot;
  if (pivot == dim_) return false;
  std::int64_t inv = mod_inverse(v[pivot], p_);
  for (auto& x : v) x = (x * inv) % p_;
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    std::int64_t f = rows_[r][pivot];
    if (f == 0) continue;
    for (std::size_t c = pivot; c < dim_; ++c) {
      rows_[r][c] = (rows_[r][c] - f * v[c]) % p_;
      if (rows_[r][c] < 0) rows_[r][c] += p_;
    }
  }
  rows_.push_back(std::move(v));
  pivots_.push_back(pivot);
  return true;
}

std::vector<std::vector<std::int64_t>> ModpSpan::basis() const {
  std::vector<std::size_t> order(rows_.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return pivots_[a] < pivots_[b]; });
  std::vector<std::vector<std::int64_t>> out;
  out.reserve(rows_.size());
  for (auto i : order) out.push_back(rows_[i]);
  return out;
}

}  // namespace pucohom

namespace pucohom {

ExactMatrix unimodular_inverse(const ExactMatrix& m) {
  if (m.rows() != m.cols()) throw AlgebraError("inverse of a non-square matrix");
  const std::size_t n = m.rows();
  std::vector<Vector> a(n, Vector(2 * n, 0));
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) a[r][c] = m.at(r, c);
    a[r][n + r] = 1;
  }
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && a[piv][col] == 0) ++piv;
    if (piv == n) throw AlgebraError("matrix is singular");
    std::swap(a[col], a[piv]);
    mpq_class inv = 1 / a[col][col];
    for (auto& x : a[col]) x *= inv;
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || a[r][col] == 0) continue;
      mpq_class f = a[r][col];
      for (std::size_t c = 0; c < 2 * n; ++c) a[r][c] -= f * a[col][c];
    }
  }
  ExactMatrix out(Ring::integers(), n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) {
      if (a[r][n + c].get_den() != 1) throw AlgebraError("matrix is not unimodular");
      out.set(r, c, a[r][n + c]);
    }
  return out;
}

}  // namespace pucohom
