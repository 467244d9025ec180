#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "wordmap/field.hpp"
#include "wordmap/poly.hpp"

namespace wordmap {

using Vec = std::vector<Element>;

/// Dense row-major matrix over a runtime field. Indices are 0-based.
class Matrix {
 public:
  Matrix() = default;
  Matrix(FieldPtr field, std::size_t rows, std::size_t cols);
  Matrix(FieldPtr field, const std::vector<Vec>& rows);

  static Matrix zero(const FieldPtr& f, std::size_t rows, std::size_t cols) { return Matrix(f, rows, cols); }
  static Matrix zero(const FieldPtr& f, std::size_t n) { return Matrix(f, n, n); }
  static Matrix identity(const FieldPtr& f, std::size_t n);
  static Matrix scalar(const Element& c, std::size_t n);
  /// e_{i,j}: 1 at (i,j), zero elsewhere.
  static Matrix unit(const FieldPtr& f, std::size_t n, std::size_t i, std::size_t j);
  static Matrix from_ints(const FieldPtr& f, const std::vector<std::vector<long long>>& rows);
  static Matrix diagonal(const FieldPtr& f, const Vec& entries);
  /// Companion matrix of a monic p: ones on the subdiagonal, last column -a_0..-a_{d-1}.
  static Matrix companion(const Poly& p);
  static Matrix direct_sum(const std::vector<Matrix>& blocks);
  /// J_{alpha,n}: alpha on the diagonal, ones on the superdiagonal.
  static Matrix jordan_block(const Element& alpha, std::size_t n);
  /// J_{p,l}: l copies of companion(p) on the diagonal, identity blocks above.
  static Matrix generalized_jordan_block(const Poly& p, std::size_t l);
  /// e_i -> e_{i+1 mod n}; trace zero and invertible for n >= 2.
  static Matrix cyclic_shift(const FieldPtr& f, std::size_t n);
  static Matrix column(const FieldPtr& f, const Vec& v);

  const FieldPtr& field() const noexcept { return field_; }
  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }

  Element& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Element& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  Vec row(std::size_t i) const;
  Vec col(std::size_t j) const;
  Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;
  void set_block(std::size_t r0, std::size_t c0, const Matrix& b);

  Matrix transpose() const;
  Element trace() const;
  bool is_zero() const;
  bool is_diagonal() const;
  bool is_upper_triangular() const;
  double max_abs() const;

  std::string to_string() const;

 private:
  FieldPtr field_;
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Element> data_;
};

Matrix operator+(const Matrix& a, const Matrix& b);
Matrix operator-(const Matrix& a, const Matrix& b);
Matrix operator-(const Matrix& a);
Matrix operator*(const Matrix& a, const Matrix& b);
Matrix operator*(const Element& c, const Matrix& a);
Vec operator*(const Matrix& a, const Vec& v);
/// Exact equality over exact fields; tolerance equality entrywise otherwise.
bool operator==(const Matrix& a, const Matrix& b);
inline bool operator!=(const Matrix& a, const Matrix& b) { return !(a == b); }

Matrix pow(const Matrix& a, std::uint64_t e);
Matrix commutator(const Matrix& x, const Matrix& y);
/// p(A) for a polynomial over the matrix field.
Matrix evaluate(const Poly& p, const Matrix& a);
/// Exact equality over exact fields; over approximate fields the entrywise
/// distance must stay below slack * tolerance * max(1, |a|, |b|).
bool agrees(const Matrix& a, const Matrix& b, double slack = 100.0);
/// Maximum entrywise distance (approximate kinds); 0/1 indicator for exact kinds.
double max_abs_diff(const Matrix& a, const Matrix& b);

struct RowEchelon {
  Matrix reduced;
  std::vector<std::size_t> pivots;
};

/// Reduced row echelon form. Approximate kinds use partial pivoting and treat
/// entries below tolerance * max(1, |A|) as zero.
RowEchelon rref(const Matrix& a);
std::size_t rank(const Matrix& a);
/// Basis of {v : A v = 0}, in the order of the free columns.
std::vector<Vec> nullspace(const Matrix& a);
Matrix inverse(const Matrix& a);
std::optional<Matrix> try_inverse(const Matrix& a);
Element det(const Matrix& a);
/// Some solution of A x = b, if one exists.
std::optional<Vec> solve(const Matrix& a, const Vec& b);
/// Matrix with the given vectors as columns.
Matrix from_columns(const FieldPtr& f, const std::vector<Vec>& cols);

}  // namespace wordmap
