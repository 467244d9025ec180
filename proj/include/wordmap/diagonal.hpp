#pragma once

// Diagonal words d_1 X_1^{k_1} + ... + d_m X_m^{k_m}: invertible Jordan blocks,
// junction matrices, nilpotent blocks via bordered matrices, and the per-field
// dispatch that ties them together.

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "wordmap/linalg.hpp"

namespace wordmap {

struct DiagonalTerm {
  Element delta;  // nonzero
  std::uint64_t k = 1;
};

struct DiagonalWordSpec {
  std::vector<DiagonalTerm> terms;

  /// sum delta_i x_i^{k_i}
  Matrix evaluate(const std::vector<Matrix>& xs) const;
  std::string to_string() const;
};

struct DiagonalWitness {
  std::vector<Matrix> matrices;
  std::vector<bool> diagonalizable;
  std::vector<Matrix> conjugators;
  std::vector<std::string> routes;  // which construction handled each block
};

struct ScalarPair {
  Element a, b;
};

/// Two solutions (a,b), (c,d) of x^{k1} + beta y^{k2} = alpha with
/// a^{k1} != c^{k1} and b^{k2} != d^{k2}. Throws NotFound.
std::pair<ScalarPair, ScalarPair> scalar_two_solutions(const Element& alpha, std::uint64_t k1, std::uint64_t k2,
                                                       const Element& beta);

/// The block-diagonal split J_{alpha,n} = G_n + H_n.
std::pair<Matrix, Matrix> invertible_jordan_split(const Element& alpha, std::size_t n, const ScalarPair& s1,
                                                  const ScalarPair& s2, std::uint64_t k1, std::uint64_t k2,
                                                  const Element& beta);

/// Diagonalizable (B, C) with B^{k1} + beta C^{k2} = J_{alpha,n}; alpha = 0 is allowed.
std::pair<Matrix, Matrix> invertible_jordan_decompose(const Element& alpha, std::size_t n, std::uint64_t k1,
                                                      std::uint64_t k2, const Element& beta);

/// Sum of e_{s,s+1} over the partial sums s of the partition (0-based: (s-1, s)).
Matrix junction_matrix(const FieldPtr& f, const Partition& parts);

/// Partition of J_{0,n}^k: k-m parts floor(n/k) and m parts ceil(n/k), m = n mod k
/// (zero parts dropped).
Partition nilpotent_power_partition(std::size_t n, std::uint64_t k);

/// B with beta * B^k equal to the junction matrix of `parts` (all parts >= 2).
/// Throws PartitionTooSmall when no nilpotent B fits.
Matrix junction_as_scaled_power(const FieldPtr& f, const Partition& parts, std::uint64_t k, const Element& beta);

/// X^{k1} + beta Y^{k2} = J_{0,n} for n >= 2 k1. Throws SizeTooSmall, PartitionTooSmall.
std::pair<Matrix, Matrix> large_nilpotent_decompose(const FieldPtr& f, std::size_t n, std::uint64_t k1,
                                                    std::uint64_t k2, const Element& beta);

/// M(eps, x, y, z) = [[eps J_{0,n-1}, x], [y, z]].
struct BorderedSpec {
  Element epsilon;
  Vec x;
  Vec y;
  Element z;

  Matrix realize() const;
};

enum class GivenSide { Y, X };

struct BorderedSolution {
  BorderedSpec spec;
  Matrix witness;  // W with scale * W^k = M
};

/// Completes the border so that charpoly(M) = prod (T - scale mu_i^k), with
/// z = scale * sum mu_i^k. `given` is y (y_1 != 0) or x (x_{n-1} != 0).
/// Throws ZeroLeadingCoordinate, CharPolyMismatch.
BorderedSolution bordered_solve(const Element& epsilon, const Vec& mu, std::uint64_t k, const Vec& given,
                                GivenSide side, const Element& scale);

/// X^{k1} + beta Y^{k2} = J_{0,n} for n >= 2 from regular solutions. Throws NotFound.
std::pair<Matrix, Matrix> small_nilpotent_decompose(const FieldPtr& f, std::size_t n, std::uint64_t k1,
                                                    std::uint64_t k2, const Element& beta);

/// X^2 + Y^2 = A for a real 2x2 A.
std::pair<Matrix, Matrix> real_two_by_two_squares(const Matrix& a);

/// Throws NotFound, Unsupported.
DiagonalWitness solve_diagonal_word(const Matrix& a, const DiagonalWordSpec& spec, std::uint64_t seed = 0);

}  // namespace wordmap
