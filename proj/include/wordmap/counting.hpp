#pragma once

// Exact solution counts for diagonal equations over F_q, the Lang-Weil bound,
// the k1^4 k2^4 threshold, and exhaustive word images for tiny cases.

#include <cstdint>
#include <string>
#include <vector>

#include "wordmap/word.hpp"

namespace wordmap {

inline constexpr std::uint64_t kDefaultEnumerationCap = 200'000'000;

struct CountReport {
  std::uint64_t q = 0;
  std::size_t m = 0;
  std::vector<std::uint64_t> k;
  std::vector<std::string> delta;
  std::string gamma;
  std::uint64_t solutions = 0;  // S
  double expected = 0;          // q^{m-1}
  double bound = 0;
  bool passes = false;  // |S - q^{m-1}| <= bound (+1e-9)
};

/// Lang-Weil right-hand side k_1...k_m q^{(m-1)/2} (1 - 1/q)^{-m/2}.
double lang_weil_bound(std::uint64_t q, const std::vector<std::uint64_t>& k);

/// Number of x in F_q^m with sum delta_i x_i^{k_i} = gamma. Throws TooLarge when q^m exceeds `cap`.
CountReport count_solutions(const std::vector<Element>& delta, const std::vector<std::uint64_t>& k,
                            const Element& gamma, std::uint64_t cap = kDefaultEnumerationCap);

std::string csv_header();
std::string to_csv(const CountReport& r);

struct ThresholdReport {
  std::uint64_t k1 = 0, k2 = 0;
  std::uint64_t threshold = 0;  // k1^4 k2^4
  std::string note;
};

ThresholdReport threshold(std::uint64_t k1, std::uint64_t k2);

struct ImageSummary {
  std::uint64_t size = 0;   // |image|
  std::uint64_t total = 0;  // q^{n^2}
  std::vector<Matrix> missing;           // up to 10, in index order
  std::vector<std::uint8_t> members;     // indicator over matrix_index
};

/// Position of a matrix in the enumeration of M_n(F_q) (row-major, base q digits).
std::uint64_t matrix_index(const Matrix& a);
Matrix matrix_at(const FieldPtr& f, std::size_t n, std::uint64_t index);

/// Exact image of the word on M_n(F_q)^m. Throws TooLarge when q^{n^2 m} exceeds `cap`.
ImageSummary image_enumerate(const WordSpec& word, std::size_t n, const FieldPtr& f,
                             std::uint64_t cap = kDefaultEnumerationCap);

}  // namespace wordmap
