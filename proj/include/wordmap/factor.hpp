#pragma once

// Univariate factorization over finite fields (complete) and over Q
// (rational roots plus certified splits of degree <= 3 residuals).

#include <cstdint>
#include <vector>

#include "wordmap/poly.hpp"

namespace wordmap {

struct FactorTerm {
  Poly poly;  // monic
  unsigned multiplicity = 1;
};

struct Factorization {
  Element unit;
  std::vector<FactorTerm> factors;
  // Over Q: true when some factor of degree >= 4 could not be certified irreducible.
  bool irreducible_unverified = false;

  Poly expand() const;
};

/// Factors sorted by (degree, coefficient order). `seed` drives equal-degree splitting.
Factorization factor(const Poly& f, std::uint64_t seed = 0);

/// True iff every irreducible factor g satisfies gcd(g, g') = 1.
bool is_separable(const Poly& f);

/// Squarefree factorization f = unit * prod s_i^i (finite fields and characteristic 0).
std::vector<FactorTerm> squarefree_decomposition(const Poly& f);

/// Distinct roots in a finite field, in enumeration order.
std::vector<Element> roots(const Poly& f, std::uint64_t seed = 0);

/// Numerical roots over C (Aberth iteration); the field of f may be Q, R or C.
std::vector<std::complex<double>> approx_roots(const Poly& f);

}  // namespace wordmap
