#pragma once

// Products of commutators: every square matrix is a product of two trace-zero
// matrices, and every trace-zero matrix is a single commutator.

#include <cstdint>
#include <utility>
#include <vector>

#include "wordmap/matrix.hpp"
#include "wordmap/poly.hpp"

namespace wordmap {

struct TraceZeroPair {
  Matrix t1;
  Matrix t2;
};

struct CommutatorWitness {
  std::vector<std::pair<Matrix, Matrix>> pairs;

  /// [X1,X2][X3,X4]...
  Matrix evaluate() const;
};

/// A in one of diag(a,b), J_{a,2}, or companion [[0,b],[1,a]] with b != 0.
/// Throws UnhandledShape otherwise.
TraceZeroPair two_by_two_trace_zero(const Matrix& a);

/// Factors J_{alpha,n}, n >= 2.
TraceZeroPair jordan_block_trace_zero(const Element& alpha, std::size_t n, std::uint64_t seed = 0);

/// Factors diag(entries). A lone 1x1 entry must be zero.
TraceZeroPair diagonal_trace_zero(const FieldPtr& f, const Vec& entries);

/// Factors J_{alpha,n} (+) (beta), n >= 2.
TraceZeroPair jordan_plus_scalar_trace_zero(const Element& alpha, std::size_t n, const Element& beta,
                                            std::uint64_t seed = 0);

/// Factors the companion matrix of a monic p of degree >= 3.
TraceZeroPair companion_trace_zero(const Poly& p);

/// Factors an arbitrary square matrix (n >= 2, or the zero matrix).
TraceZeroPair factor_two_trace_zero(const Matrix& a, std::uint64_t seed = 0);

/// (X, Y) with XY - YX = T. Throws NonzeroTrace, WitnessNotFound.
std::pair<Matrix, Matrix> trace_zero_to_commutator(const Matrix& t, std::uint64_t seed = 0);

/// [X1,X2]...[X_{m-1},X_m] = A for even m >= 2.
CommutatorWitness solve_commutator_product(const Matrix& a, std::size_t m, std::uint64_t seed = 0);

}  // namespace wordmap
