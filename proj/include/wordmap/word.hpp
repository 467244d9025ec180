#pragma once

// Word specifications: "comm:m=4" for [X1,X2]...[X_{m-1},X_m] and
// "diag:d=1,k=2;d=3,k=5" for 1*X1^2 + 3*X2^5.

#include <cstdint>
#include <string>
#include <vector>

#include "wordmap/diagonal.hpp"
#include "wordmap/matrix.hpp"

namespace wordmap {

enum class WordKind { Commutator, Diagonal };

struct WordTerm {
  std::string delta;  // parsed against the field at use time
  std::uint64_t k = 1;
};

struct WordSpec {
  WordKind kind = WordKind::Commutator;
  std::size_t m = 2;             // commutator word length (even)
  std::vector<WordTerm> terms;   // diagonal terms

  std::size_t arity() const { return kind == WordKind::Commutator ? m : terms.size(); }
  DiagonalWordSpec diagonal(const FieldPtr& f) const;
  Matrix evaluate(const std::vector<Matrix>& xs) const;
  std::string to_string() const;
};

/// Throws ParseError.
WordSpec parse_word(const std::string& text);

}  // namespace wordmap
