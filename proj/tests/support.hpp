#pragma once

// Hand-rolled generators for property tests. The seed comes from
// PUCOHOM_SEED when set and is always printed so a failure can be replayed.

#include "pucohom/ring.hpp"
#include "pucohom/slice.hpp"

#include <cstdint>
#include <cstdlib>
#include <iostream>
#include <random>

namespace pucohom::testing {

inline std::uint64_t test_seed() {
  static const std::uint64_t seed = [] {
    std::uint64_t s = 20241016;
    if (const char* env = std::getenv("PUCOHOM_SEED")) s = std::strtoull(env, nullptr, 10);
    std::cerr << "property seed: " << s << " (set PUCOHOM_SEED to replay)\n";
    return s;
  }();
  return seed;
}

inline std::mt19937_64& rng() {
  static std::mt19937_64 engine(test_seed());
  return engine;
}

inline mpq_class random_coeff(const Ring& ring, int bound = 9) {
  std::uniform_int_distribution<int> num(-bound, bound);
  if (ring.kind() == Ring::Kind::Rational) {
    std::uniform_int_distribution<int> den(1, 4);
    mpq_class q(num(rng()), den(rng()));
    q.canonicalize();
    return q;
  }
  return ring.normalize(num(rng()));
}

// Homogeneous polynomial of the given degree with up to `terms` terms.
inline Polynomial random_homogeneous(const TablePtr& table, const Ring& ring, int degree, int terms = 4) {
  Polynomial f(table, ring);
  DegreeSlice slice = DegreeSlice::enumerate(table, degree);
  if (slice.size() == 0) return f;
  std::uniform_int_distribution<std::size_t> pick(0, slice.size() - 1);
  for (int i = 0; i < terms; ++i) f.add_term(slice[pick(rng())], random_coeff(ring));
  return f;
}

// Arbitrary (generally inhomogeneous) polynomial of degree <= max_degree.
inline Polynomial random_polynomial(const TablePtr& table, const Ring& ring, int max_degree, int terms = 5) {
  Polynomial f(table, ring);
  std::uniform_int_distribution<int> deg(0, max_degree);
  for (int i = 0; i < terms; ++i) f += random_homogeneous(table, ring, deg(rng()), 1);
  return f;
}

}  // namespace pucohom::testing
