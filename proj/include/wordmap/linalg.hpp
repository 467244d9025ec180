#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "wordmap/matrix.hpp"
#include "wordmap/poly.hpp"

namespace wordmap {

/// Weakly increasing list of positive block sizes.
using Partition = std::vector<std::size_t>;

std::string partition_string(const Partition& p);

/// Monic det(T*I - A), by Berkowitz's division-free recurrence.
Poly charpoly(const Matrix& a);
/// Monic minimal polynomial from the first linear dependency among vec(A^i).
Poly minpoly(const Matrix& a);

/// Invertible P with P*A*P^{-1} = B. Cyclic pairs use Krylov bases; otherwise
/// the solution space of P*A = B*P is sampled (fixed candidates, then seeded
/// random combinations, then exhaustive search of small spaces).
/// Throws NotSimilar.
Matrix solve_similarity(const Matrix& a, const Matrix& b, std::uint64_t seed = 0);

/// Jordan partition of a nilpotent matrix from ranks of its powers.
Partition nilpotent_partition(const Matrix& a);

/// Q with Q^{-1}*N*Q = direct sum of J_{0,s} for s in `order` (a permutation of
/// the partition of N). Chain columns run N^{s-1}g, ..., Ng, g.
Matrix nilpotent_chain_basis(const Matrix& n, const Partition& order);

struct JordanBlockSpec {
  Poly p;  // monic irreducible
  std::size_t l = 1;

  std::size_t degree() const { return static_cast<std::size_t>(p.degree()); }
  std::size_t size() const { return l * degree(); }
  Matrix realize() const { return Matrix::generalized_jordan_block(p, l); }
};

struct GeneralizedJordanForm {
  std::vector<JordanBlockSpec> blocks;
  Matrix conjugator;  // P with P*A*P^{-1} = realize()
  bool approximate = false;

  Matrix realize() const;
  /// Row/column offset of each block inside realize().
  std::vector<std::size_t> offsets() const;
};

/// Requires a separable characteristic polynomial. Approximate kinds factor
/// numerically (linear factors over C, linear or quadratic over R).
GeneralizedJordanForm generalized_jordan_form(const Matrix& a, std::uint64_t seed = 0);

/// Irreducible factors of charpoly(A) with multiplicities, numerically for R and C.
std::vector<std::pair<Poly, unsigned>> charpoly_factors(const Matrix& a, std::uint64_t seed = 0);

/// Entrywise image under the left-multiplication representation of K(alpha)
/// on the basis 1, alpha, ..., alpha^{d-1}. Also accepts a complex matrix and a
/// real quadratic p (alpha = root of p with positive imaginary part).
Matrix companion_lift(const Matrix& w, const Poly& p);

/// Entrywise embedding of a base-field matrix into an extension (or R into C).
Matrix embed_matrix(const FieldPtr& target, const Matrix& m);

/// Real parts of a complex matrix (used after solving real problems over C).
Matrix real_part(const FieldPtr& real_field, const Matrix& m);

}  // namespace wordmap
