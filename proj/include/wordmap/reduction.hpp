#pragma once

// Splits a matrix into generalized Jordan blocks J_{p,l}, presents each one as
// J_{alpha,l} over K(alpha), and glues block solutions back together.

#include <cstdint>
#include <functional>
#include <vector>

#include "wordmap/linalg.hpp"

namespace wordmap {

struct BlockPlan {
  JordanBlockSpec block;
  std::size_t offset = 0;  // position of the block in the Jordan form
  FieldPtr field;          // K itself for linear p, otherwise K(alpha) (C for real quadratics)
  Element alpha;           // root of p in `field`
  Matrix target;           // J_{alpha,l} over `field`
  bool lifted = false;     // solutions need companion_lift back to K
};

struct Plan {
  std::vector<BlockPlan> blocks;
  Matrix conjugator;  // P with P*A*P^{-1} = direct sum of the blocks
  Matrix source;      // A
};

/// Throws InseparableCharPoly when the characteristic polynomial is not separable.
Plan plan(const Matrix& a, std::uint64_t seed = 0);

/// One witness tuple per block, each matrix over the block's field.
using BlockSolution = std::vector<Matrix>;
/// Evaluates a word on a tuple of matrices.
using WordEvaluator = std::function<Matrix(const std::vector<Matrix>&)>;

/// Lifts each block tuple through companion_lift, forms direct sums per word
/// position, conjugates by P^{-1}, and checks the word against A.
/// Throws VerificationFailed.
std::vector<Matrix> assemble(const Plan& plan, const std::vector<BlockSolution>& solutions,
                             const WordEvaluator& word, double slack = 1e4);

}  // namespace wordmap
