#include "pucohom/symmetric.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <mutex>

namespace pucohom {

namespace {

using Partition = std::vector<unsigned>;  // nonincreasing exponent vector of length n
using Dominant = std::map<Partition, mpq_class, std::greater<>>;

// A symmetric polynomial is determined by its coefficients on sorted exponent
// vectors; products with sigma_k can be computed on that data alone.
Dominant dominant_part(const Polynomial& f, int n) {
  Dominant d;
  for (const auto& [m, c] : f.terms()) {
    Partition e = m.exponents(static_cast<std::size_t>(n));
    if (std::is_sorted(e.begin(), e.end(), std::greater<>())) d.emplace(std::move(e), c);
  }
  return d;
}

Partition sorted_desc(Partition e) {
  std::sort(e.begin(), e.end(), std::greater<>());
  return e;
}

void for_each_subset(int n, int k, const std::function<void(const std::vector<int>&)>& fn) {
  std::vector<int> idx(static_cast<std::size_t>(k));
  std::function<void(int, int)> rec = [&](int start, int depth) {
    if (depth == k) {
      fn(idx);
      return;
    }
    for (int i = start; i <= n - (k - depth); ++i) {
      idx[static_cast<std::size_t>(depth)] = i;
      rec(i + 1, depth + 1);
    }
  };
  rec(0, 0);
}

// Dominant part of f * sigma_k from the dominant part of f.
Dominant times_sigma(const Dominant& f, int n, int k, const Ring& ring) {
  std::vector<Partition> candidates;
  for (const auto& [alpha, c] : f) {
    for_each_subset(n, k, [&](const std::vector<int>& s) {
      Partition e = alpha;
      for (int i : s) ++e[static_cast<std::size_t>(i)];
      candidates.push_back(sorted_desc(std::move(e)));
    });
  }
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
  Dominant out;
  for (const auto& lambda : candidates) {
    mpq_class sum = 0;
    for_each_subset(n, k, [&](const std::vector<int>& s) {
      Partition e = lambda;
      for (int i : s) {
        if (e[static_cast<std::size_t>(i)] == 0) return;
        --e[static_cast<std::size_t>(i)];
      }
      auto it = f.find(sorted_desc(std::move(e)));
      if (it != f.end()) sum += it->second;
    });
    sum = ring.normalize(sum);
    if (sum != 0) out.emplace(lambda, sum);
  }
  return out;
}

}  // namespace

SigmaContext::SigmaContext(int n) : n_(n) {
  if (n < 1) throw AlgebraError("number of variables must be positive");
  std::vector<Generator> t, s;
  for (int i = 1; i <= n; ++i) {
    t.push_back({"t" + std::to_string(i), 2, Parity::Even});
    s.push_back({"s" + std::to_string(i), 2 * i, Parity::Even});
  }
  t_table_ = GeneratorTable::make(std::move(t));
  sigma_table_ = GeneratorTable::make(std::move(s));
}

std::shared_ptr<const SigmaContext> SigmaContext::get(int n) {
  static std::mutex mu;
  static std::map<int, std::shared_ptr<const SigmaContext>> registry;
  std::lock_guard<std::mutex> lock(mu);
  auto it = registry.find(n);
  if (it != registry.end()) return it->second;
  auto ctx = std::make_shared<const SigmaContext>(n);
  registry.emplace(n, ctx);
  return ctx;
}

Polynomial SigmaContext::elementary_symmetric(int k, const Ring& ring) const {
  if (k < 0 || k > n_) throw AlgebraError("elementary symmetric index out of range");
  Polynomial f(t_table_, ring);
  for_each_subset(n_, k, [&](const std::vector<int>& s) {
    std::vector<unsigned> e(static_cast<std::size_t>(n_), 0);
    for (int i : s) e[static_cast<std::size_t>(i)] = 1;
    f.add_term(Monomial::from_exponents(*t_table_, e), 1);
  });
  return f;
}

Polynomial SigmaContext::sigma(int k, const Ring& ring) const {
  if (k < 0 || k > n_) throw AlgebraError("sigma index out of range");
  if (k == 0) return Polynomial::constant(sigma_table_, ring, 1);
  return Polynomial::generator(sigma_table_, ring, static_cast<std::size_t>(k - 1));
}

bool SigmaContext::is_symmetric(const Polynomial& f) const {
  if (!same_table(f.table(), t_table_)) throw TableMismatchError("expected a polynomial in t");
  if (n_ == 1) return true;
  // (1 2) and (1 2 ... n) generate the symmetric group.
  auto permuted = [&](bool cycle) {
    Polynomial g(t_table_, f.ring());
    for (const auto& [m, c] : f.terms()) {
      std::vector<unsigned> e = m.exponents(static_cast<std::size_t>(n_));
      if (cycle) std::rotate(e.rbegin(), e.rbegin() + 1, e.rend());
      else std::swap(e[0], e[1]);
      g.add_term(Monomial::from_exponents(*t_table_, e), c);
    }
    return g;
  };
  return permuted(false) == f && permuted(true) == f;
}

Polynomial SigmaContext::t_to_sigma(const Polynomial& f) const {
  if (!is_symmetric(f)) throw SymmetryError("polynomial is not symmetric in t1..t" + std::to_string(n_));
  const Ring& ring = f.ring();
  Dominant rest = dominant_part(f, n_);
  std::map<Partition, Dominant> sigma_powers;  // mu -> dominant part of sigma^mu
  Polynomial result(sigma_table_, ring);
  while (!rest.empty()) {
    // Leading term in lex order is a partition lambda; subtract
    // c * s1^{l1-l2} s2^{l2-l3} ... sn^{ln}.
    const Partition lambda = rest.begin()->first;
    const mpq_class c = rest.begin()->second;
    Partition mu(static_cast<std::size_t>(n_));
    for (int i = 0; i < n_; ++i)
      mu[static_cast<std::size_t>(i)] =
          lambda[static_cast<std::size_t>(i)] - (i + 1 < n_ ? lambda[static_cast<std::size_t>(i + 1)] : 0);
    auto it = sigma_powers.find(mu);
    if (it == sigma_powers.end()) {
      Dominant acc;
      acc.emplace(Partition(static_cast<std::size_t>(n_), 0), mpq_class(1));
      for (int k = 1; k <= n_; ++k)
        for (unsigned r = 0; r < mu[static_cast<std::size_t>(k - 1)]; ++r) acc = times_sigma(acc, n_, k, ring);
      it = sigma_powers.emplace(mu, std::move(acc)).first;
    }
    for (const auto& [alpha, v] : it->second) {
      auto [pos, inserted] = rest.try_emplace(alpha, 0);
      pos->second = ring.normalize(pos->second - c * v);
      if (pos->second == 0) rest.erase(pos);
    }
    std::vector<unsigned> e(mu.begin(), mu.end());
    result.add_term(Monomial::from_exponents(*sigma_table_, e), c);
  }
  return result;
}

Polynomial SigmaContext::sigma_to_t(const Polynomial& f) const {
  if (!same_table(f.table(), sigma_table_)) throw TableMismatchError("expected a polynomial in sigma");
  GeneratorMap images;
  for (int k = 1; k <= n_; ++k) images.emplace(static_cast<std::size_t>(k - 1), elementary_symmetric(k, f.ring()));
  return substitute(f, images, t_table_, f.ring());
}

Polynomial SigmaContext::nabla_sigma(const Polynomial& f) const {
  if (!same_table(f.table(), sigma_table_)) throw TableMismatchError("expected a polynomial in sigma");
  GeneratorMap d;
  for (int k = 1; k <= n_; ++k) d.emplace(static_cast<std::size_t>(k - 1), sigma(k - 1, f.ring()).scaled(n_ - k + 1));
  return apply_derivation(f, d, DerivationRule::Even);
}

Polynomial SigmaContext::nabla_t(const Polynomial& f) const {
  if (!same_table(f.table(), t_table_)) throw TableMismatchError("expected a polynomial in t");
  GeneratorMap d;
  for (int i = 0; i < n_; ++i)
    d.emplace(static_cast<std::size_t>(i), Polynomial::constant(t_table_, f.ring(), 1));
  return apply_derivation(f, d, DerivationRule::Even);
}

Polynomial SigmaContext::delta_in_t() const {
  Ring z = Ring::integers();
  Polynomial acc = Polynomial::constant(t_table_, z, 1);
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) {
      if (i == j) continue;
      Polynomial factor = Polynomial::generator(t_table_, z, static_cast<std::size_t>(i)) -
                          Polynomial::generator(t_table_, z, static_cast<std::size_t>(j));
      acc = acc * factor;
    }
  return acc;
}

const Polynomial& SigmaContext::delta_polynomial() const {
  if (n_ < 2) throw AlgebraError("delta needs at least two variables");
  std::call_once(delta_once_, [this] { delta_ = std::make_unique<Polynomial>(t_to_sigma(delta_in_t())); });
  return *delta_;
}

}  // namespace pucohom
