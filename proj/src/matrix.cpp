#include "wordmap/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace wordmap {

namespace {

void require_shape(bool ok, const std::string& what) {
  if (!ok) fail(ErrorCode::InvalidArgument, what);
}

}  // namespace

Matrix::Matrix(FieldPtr field, std::size_t rows, std::size_t cols)
    : field_(std::move(field)), rows_(rows), cols_(cols), data_(rows * cols, wordmap::zero(field_)) {}

Matrix::Matrix(FieldPtr field, const std::vector<Vec>& rows) : field_(std::move(field)), rows_(rows.size()) {
  cols_ = rows.empty() ? 0 : rows[0].size();
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    require_shape(r.size() == cols_, "ragged matrix rows");
    for (const auto& e : r) {
      require_same_field(e.field(), field_);
      data_.push_back(e);
    }
  }
}

Matrix Matrix::identity(const FieldPtr& f, std::size_t n) { return scalar(one(f), n); }

Matrix Matrix::scalar(const Element& c, std::size_t n) {
  Matrix m(c.field(), n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = c;
  return m;
}

Matrix Matrix::unit(const FieldPtr& f, std::size_t n, std::size_t i, std::size_t j) {
  Matrix m(f, n, n);
  m(i, j) = one(f);
  return m;
}

Matrix Matrix::from_ints(const FieldPtr& f, const std::vector<std::vector<long long>>& rows) {
  std::vector<Vec> r;
  for (const auto& row : rows) {
    Vec v;
    for (auto x : row) v.push_back(from_int(f, x));
    r.push_back(std::move(v));
  }
  return Matrix(f, r);
}

Matrix Matrix::diagonal(const FieldPtr& f, const Vec& entries) {
  Matrix m(f, entries.size(), entries.size());
  for (std::size_t i = 0; i < entries.size(); ++i) m(i, i) = entries[i];
  return m;
}

Matrix Matrix::companion(const Poly& p) {
  if (p.degree() < 1 || !p.is_monic()) fail(ErrorCode::InvalidArgument, "companion needs a monic polynomial of degree >= 1");
  const auto d = static_cast<std::size_t>(p.degree());
  Matrix m(p.field(), d, d);
  for (std::size_t i = 1; i < d; ++i) m(i, i - 1) = one(p.field());
  for (std::size_t i = 0; i < d; ++i) m(i, d - 1) = -p.coeff(i);
  return m;
}

Matrix Matrix::direct_sum(const std::vector<Matrix>& blocks) {
  if (blocks.empty()) fail(ErrorCode::InvalidArgument, "direct sum of no blocks");
  std::size_t r = 0, c = 0;
  for (const auto& b : blocks) {
    require_same_field(b.field(), blocks[0].field());
    r += b.rows();
    c += b.cols();
  }
  Matrix m(blocks[0].field(), r, c);
  r = c = 0;
  for (const auto& b : blocks) {
    m.set_block(r, c, b);
    r += b.rows();
    c += b.cols();
  }
  return m;
}

Matrix Matrix::jordan_block(const Element& alpha, std::size_t n) {
  Matrix m = scalar(alpha, n);
  for (std::size_t i = 0; i + 1 < n; ++i) m(i, i + 1) = one(alpha.field());
  return m;
}

Matrix Matrix::generalized_jordan_block(const Poly& p, std::size_t l) {
  const Matrix c = companion(p);
  const std::size_t d = c.rows();
  Matrix m(p.field(), l * d, l * d);
  const Matrix id = identity(p.field(), d);
  for (std::size_t b = 0; b < l; ++b) {
    m.set_block(b * d, b * d, c);
    if (b + 1 < l) m.set_block(b * d, (b + 1) * d, id);
  }
  return m;
}

Matrix Matrix::cyclic_shift(const FieldPtr& f, std::size_t n) {
  Matrix m(f, n, n);
  for (std::size_t i = 0; i < n; ++i) m((i + 1) % n, i) = one(f);
  return m;
}

Matrix Matrix::column(const FieldPtr& f, const Vec& v) {
  Matrix m(f, v.size(), 1);
  for (std::size_t i = 0; i < v.size(); ++i) m(i, 0) = v[i];
  return m;
}

Vec Matrix::row(std::size_t i) const { return Vec(data_.begin() + static_cast<long>(i * cols_), data_.begin() + static_cast<long>((i + 1) * cols_)); }

Vec Matrix::col(std::size_t j) const {
  Vec v;
  v.reserve(rows_);
  for (std::size_t i = 0; i < rows_; ++i) v.push_back((*this)(i, j));
  return v;
}

Matrix Matrix::block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
  require_shape(r0 + nr <= rows_ && c0 + nc <= cols_, "block out of range");
  Matrix m(field_, nr, nc);
  for (std::size_t i = 0; i < nr; ++i) {
    for (std::size_t j = 0; j < nc; ++j) m(i, j) = (*this)(r0 + i, c0 + j);
  }
  return m;
}

void Matrix::set_block(std::size_t r0, std::size_t c0, const Matrix& b) {
  require_shape(r0 + b.rows() <= rows_ && c0 + b.cols() <= cols_, "block out of range");
  require_same_field(field_, b.field());
  for (std::size_t i = 0; i < b.rows(); ++i) {
    for (std::size_t j = 0; j < b.cols(); ++j) (*this)(r0 + i, c0 + j) = b(i, j);
  }
}

Matrix Matrix::transpose() const {
  Matrix m(field_, cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) m(j, i) = (*this)(i, j);
  }
  return m;
}

Element Matrix::trace() const {
  if (!is_square()) fail(ErrorCode::NonSquare, "trace of a non-square matrix");
  Element t = wordmap::zero(field_);
  for (std::size_t i = 0; i < rows_; ++i) t += (*this)(i, i);
  return t;
}

bool Matrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const Element& e) { return e.is_zero(); });
}

bool Matrix::is_diagonal() const {
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) {
      if (i != j && !(*this)(i, j).is_zero()) return false;
    }
  }
  return true;
}

bool Matrix::is_upper_triangular() const {
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < i && j < cols_; ++j) {
      if (!(*this)(i, j).is_zero()) return false;
    }
  }
  return true;
}

double Matrix::max_abs() const {
  double m = 0;
  for (const auto& e : data_) m = std::max(m, e.magnitude());
  return m;
}

std::string Matrix::to_string() const {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < rows_; ++i) {
    if (i) os << ",";
    os << "[";
    for (std::size_t j = 0; j < cols_; ++j) {
      if (j) os << ",";
      os << (*this)(i, j).to_string();
    }
    os << "]";
  }
  os << "]";
  return os.str();
}

Matrix operator+(const Matrix& a, const Matrix& b) {
  require_same_field(a.field(), b.field());
  require_shape(a.rows() == b.rows() && a.cols() == b.cols(), "shape mismatch in +");
  Matrix m(a.field(), a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) m(i, j) = a(i, j) + b(i, j);
  }
  return m;
}

Matrix operator-(const Matrix& a) {
  Matrix m(a.field(), a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) m(i, j) = -a(i, j);
  }
  return m;
}

Matrix operator-(const Matrix& a, const Matrix& b) {
  require_same_field(a.field(), b.field());
  require_shape(a.rows() == b.rows() && a.cols() == b.cols(), "shape mismatch in -");
  Matrix m(a.field(), a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) m(i, j) = a(i, j) - b(i, j);
  }
  return m;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  require_same_field(a.field(), b.field());
  require_shape(a.cols() == b.rows(), "shape mismatch in *");
  Matrix m(a.field(), a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Element& aik = a(i, k);
      if (aik.is_zero() && a.field()->is_exact()) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) m(i, j) += aik * b(k, j);
    }
  }
  return m;
}

Matrix operator*(const Element& c, const Matrix& a) {
  Matrix m(a.field(), a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) m(i, j) = c * a(i, j);
  }
  return m;
}

Vec operator*(const Matrix& a, const Vec& v) {
  require_shape(a.cols() == v.size(), "shape mismatch in matrix-vector product");
  Vec r(a.rows(), zero(a.field()));
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) r[i] += a(i, j) * v[j];
  }
  return r;
}

bool operator==(const Matrix& a, const Matrix& b) {
  if (!same_field(a.field(), b.field()) || a.rows() != b.rows() || a.cols() != b.cols()) return false;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (a(i, j) != b(i, j)) return false;
    }
  }
  return true;
}

Matrix pow(const Matrix& a, std::uint64_t e) {
  if (!a.is_square()) fail(ErrorCode::NonSquare, "power of a non-square matrix");
  Matrix r = Matrix::identity(a.field(), a.rows()), base = a;
  while (e) {
    if (e & 1) r = r * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return r;
}

Matrix commutator(const Matrix& x, const Matrix& y) { return x * y - y * x; }

Matrix evaluate(const Poly& p, const Matrix& a) {
  Matrix r = Matrix::zero(a.field(), a.rows());
  for (std::size_t i = p.coeffs().size(); i-- > 0;) r = r * a + Matrix::scalar(p.coeffs()[i], a.rows());
  return r;
}

double max_abs_diff(const Matrix& a, const Matrix& b) {
  require_shape(a.rows() == b.rows() && a.cols() == b.cols(), "shape mismatch");
  double m = 0;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) m = std::max(m, (a(i, j) - b(i, j)).magnitude());
  }
  return m;
}

bool agrees(const Matrix& a, const Matrix& b, double slack) {
  if (!same_field(a.field(), b.field()) || a.rows() != b.rows() || a.cols() != b.cols()) return false;
  if (a.field()->is_exact()) return a == b;
  const double scale = std::max({1.0, a.max_abs(), b.max_abs()});
  return max_abs_diff(a, b) <= slack * a.field()->tolerance() * scale;
}

RowEchelon rref(const Matrix& a_in) {
  Matrix a = a_in;
  const bool approx = a.field()->is_approx();
  const double threshold = approx ? a.field()->tolerance() * std::max(1.0, a.max_abs()) : 0.0;
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
    std::size_t best = a.rows();
    if (approx) {
      double mag = threshold;
      for (std::size_t i = r; i < a.rows(); ++i) {
        if (a(i, c).magnitude() > mag) {
          mag = a(i, c).magnitude();
          best = i;
        }
      }
    } else {
      for (std::size_t i = r; i < a.rows(); ++i) {
        if (!a(i, c).is_zero()) {
          best = i;
          break;
        }
      }
    }
    if (best == a.rows()) {
      if (approx) {
        for (std::size_t i = r; i < a.rows(); ++i) a(i, c) = zero(a.field());
      }
      continue;
    }
    if (best != r) {
      for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a(r, j), a(best, j));
    }
    const Element pinv = inv(a(r, c));
    for (std::size_t j = c; j < a.cols(); ++j) a(r, j) = a(r, j) * pinv;
    for (std::size_t i = 0; i < a.rows(); ++i) {
      if (i == r || a(i, c).is_zero()) continue;
      const Element factor = a(i, c);
      for (std::size_t j = c; j < a.cols(); ++j) a(i, j) -= factor * a(r, j);
      if (approx) a(i, c) = zero(a.field());
    }
    pivots.push_back(c);
    ++r;
  }
  return {std::move(a), std::move(pivots)};
}

std::size_t rank(const Matrix& a) { return rref(a).pivots.size(); }

std::vector<Vec> nullspace(const Matrix& a) {
  const RowEchelon e = rref(a);
  std::vector<bool> is_pivot(a.cols(), false);
  for (auto p : e.pivots) is_pivot[p] = true;
  std::vector<Vec> basis;
  for (std::size_t free = 0; free < a.cols(); ++free) {
    if (is_pivot[free]) continue;
    Vec v(a.cols(), zero(a.field()));
    v[free] = one(a.field());
    for (std::size_t r = 0; r < e.pivots.size(); ++r) v[e.pivots[r]] = -e.reduced(r, free);
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<Matrix> try_inverse(const Matrix& a) {
  if (!a.is_square()) fail(ErrorCode::NonSquare, "inverse of a non-square matrix");
  const std::size_t n = a.rows();
  Matrix aug(a.field(), n, 2 * n);
  aug.set_block(0, 0, a);
  aug.set_block(0, n, Matrix::identity(a.field(), n));
  const RowEchelon e = rref(aug);
  if (e.pivots.size() < n || e.pivots[n - 1] != n - 1) return std::nullopt;
  return e.reduced.block(0, n, n, n);
}

Matrix inverse(const Matrix& a) {
  auto r = try_inverse(a);
  if (!r) fail(ErrorCode::DivisionByZero, "matrix is singular");
  return *r;
}

Element det(const Matrix& a_in) {
  if (!a_in.is_square()) fail(ErrorCode::NonSquare, "determinant of a non-square matrix");
  Matrix a = a_in;
  const std::size_t n = a.rows();
  Element d = one(a.field());
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t best = n;
    double mag = 0;
    for (std::size_t i = c; i < n; ++i) {
      if (a(i, c).is_zero()) continue;
      if (!a.field()->is_approx()) {
        best = i;
        break;
      }
      if (a(i, c).magnitude() > mag) {
        mag = a(i, c).magnitude();
        best = i;
      }
    }
    if (best == n) return zero(a.field());
    if (best != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(c, j), a(best, j));
      d = -d;
    }
    d = d * a(c, c);
    const Element pinv = inv(a(c, c));
    for (std::size_t i = c + 1; i < n; ++i) {
      if (a(i, c).is_zero()) continue;
      const Element factor = a(i, c) * pinv;
      for (std::size_t j = c; j < n; ++j) a(i, j) -= factor * a(c, j);
    }
  }
  return d;
}

std::optional<Vec> solve(const Matrix& a, const Vec& b) {
  require_shape(a.rows() == b.size(), "right-hand side length mismatch");
  Matrix aug(a.field(), a.rows(), a.cols() + 1);
  aug.set_block(0, 0, a);
  for (std::size_t i = 0; i < b.size(); ++i) aug(i, a.cols()) = b[i];
  const RowEchelon e = rref(aug);
  if (!e.pivots.empty() && e.pivots.back() == a.cols()) return std::nullopt;
  Vec x(a.cols(), zero(a.field()));
  for (std::size_t r = 0; r < e.pivots.size(); ++r) x[e.pivots[r]] = e.reduced(r, a.cols());
  return x;
}

Matrix from_columns(const FieldPtr& f, const std::vector<Vec>& cols) {
  const std::size_t n = cols.empty() ? 0 : cols[0].size();
  Matrix m(f, n, cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j) {
    require_shape(cols[j].size() == n, "ragged columns");
    for (std::size_t i = 0; i < n; ++i) m(i, j) = cols[j][i];
  }
  return m;
}

}  // namespace wordmap
