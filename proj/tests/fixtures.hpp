#pragma once

// Explicit identity fixtures shared by the unit suites and the acceptance
// binary. Each check builds the explicit matrices by hand, multiplies them
// out, and compares with the library's construction where one exists.

#include <cmath>
#include <complex>
#include <random>

#include "oracles.hpp"
#include "wordmap/commutator.hpp"
#include "wordmap/diagonal.hpp"
#include "wordmap/field.hpp"
#include "wordmap/linalg.hpp"

namespace fixture {

using namespace wordmap;

inline bool trace_zero_pair_is(const TraceZeroPair& p, const Matrix& t1, const Matrix& t2, const Matrix& target) {
  return p.t1 == t1 && p.t2 == t2 && t1.trace().is_zero() && t2.trace().is_zero() && t1 * t2 == target;
}

/// 2x2 shapes diag(a,c), J_{a,2}, [[0,b],[1,a]] for `trials` random parameters over F_101.
inline bool two_by_two_identities(std::size_t trials, std::uint64_t seed) {
  const auto f = Field::prime(101);
  std::mt19937_64 rng(seed);
  const Element o = one(f), z = zero(f);
  for (std::size_t t = 0; t < trials; ++t) {
    const Element a = random_element(f, rng), c = random_element(f, rng);
    Element b = random_element(f, rng);
    if (b.is_zero()) b = o;
    const Matrix d(f, {{a, z}, {z, c}});
    if (!trace_zero_pair_is(two_by_two_trace_zero(d), Matrix(f, {{z, a}, {o, z}}), Matrix(f, {{z, c}, {o, z}}), d))
      return false;
    const Matrix j = Matrix::jordan_block(a, 2);
    if (!trace_zero_pair_is(two_by_two_trace_zero(j), Matrix(f, {{o, z}, {z, -o}}), Matrix(f, {{a, o}, {z, -a}}), j))
      return false;
    const Matrix comp(f, {{z, b}, {o, a}});
    if (!trace_zero_pair_is(two_by_two_trace_zero(comp), Matrix(f, {{a, -b}, {o + a * a / b, -a}}),
                            Matrix(f, {{o, z}, {a / b, -o}}), comp))
      return false;
  }
  return true;
}

/// Even n: diag(1,-1,...) times the signed bidiagonal equals J_{a,n}.
/// Odd n: cyclic shift times the explicit factor is the alternating-sign
/// bidiagonal, which is similar to J_{a,n}.
inline bool jordan_block_identities(const FieldPtr& f) {
  const Element a = from_int(f, 2);
  for (std::size_t n : {2, 4, 6}) {
    Matrix d(f, n, n), g(f, n, n);
    for (std::size_t i = 0; i < n; ++i) {
      const Element s = i % 2 ? -one(f) : one(f);
      d(i, i) = s;
      g(i, i) = s * a;
      if (i + 1 < n) g(i, i + 1) = s;
    }
    if (!trace_zero_pair_is(jordan_block_trace_zero(a, n), d, g, Matrix::jordan_block(a, n))) return false;
  }
  for (std::size_t n : {3, 5, 7}) {
    Matrix s(f, n, n), q(f, n, n);
    for (std::size_t i = 0; i < n; ++i) s(i, (i + 1) % n) = one(f);
    q(0, n - 1) = a;
    for (std::size_t i = 1; i < n; ++i) {
      q(i, i - 1) = a;
      q(i, i) = i % 2 ? one(f) : -one(f);
    }
    Matrix lhs = Matrix::jordan_block(a, n);
    for (std::size_t i = 0; i + 1 < n; ++i) lhs(i, i + 1) = i % 2 ? -one(f) : one(f);
    if (!(s * q == lhs) || !s.trace().is_zero() || !q.trace().is_zero()) return false;
    const Matrix p = solve_similarity(lhs, Matrix::jordan_block(a, n));
    if (!(p * lhs * inverse(p) == Matrix::jordan_block(a, n))) return false;
    const auto got = jordan_block_trace_zero(a, n);
    if (!(got.t1 * got.t2 == Matrix::jordan_block(a, n))) return false;
  }
  return true;
}

/// Two- and three-entry diagonal identities. The 2x2 product is taken in the
/// order swap * [[0,a2],[a1,0]] = diag(a1,a2).
inline bool diagonal_identities() {
  const auto f7 = Field::prime(7);
  const Element a1 = from_int(f7, 1), a2 = from_int(f7, 2), a3 = from_int(f7, 3), o = one(f7), z = zero(f7);
  const Matrix sw(f7, {{z, o}, {o, z}});
  const Matrix t2(f7, {{z, a2}, {a1, z}});
  if (!trace_zero_pair_is(diagonal_trace_zero(f7, {a1, a2}), sw, t2, Matrix::diagonal(f7, {a1, a2}))) return false;
  const Matrix x(f7, {{z, a3, z}, {-a1, a3, z}, {z, z, -a3}});
  const Matrix y(f7, {{o, -a2 / a1, z}, {a1 / a3, z, z}, {z, z, -o}});
  return trace_zero_pair_is(diagonal_trace_zero(f7, {a1, a2, a3}), x, y, Matrix::diagonal(f7, {a1, a2, a3}));
}

/// J_{a,n} (+) (b): the cyclic-shift identity has trace-zero factors for odd n,
/// the modified-shift identity for even n (and equals the target for n = 2).
inline bool jordan_plus_scalar_identities(const FieldPtr& f) {
  const Element a = one(f), b = from_int(f, 2);
  for (std::size_t n : {3, 5}) {
    const std::size_t N = n + 1;
    Matrix s(f, N, N), q(f, N, N);
    for (std::size_t i = 0; i < N; ++i) s(i, (i + 1) % N) = one(f);
    q(0, N - 1) = b;
    for (std::size_t i = 1; i < N; ++i) {
      q(i, i - 1) = a;
      if (i < n) q(i, i) = i % 2 ? one(f) : -one(f);
    }
    Matrix lhs = Matrix::direct_sum({Matrix::jordan_block(a, n), Matrix::scalar(b, 1)});
    for (std::size_t i = 0; i + 1 < n; ++i) lhs(i, i + 1) = i % 2 ? -one(f) : one(f);
    if (!q.trace().is_zero() || !s.trace().is_zero() || !(s * q == lhs)) return false;
  }
  for (std::size_t n : {2, 4, 6}) {
    const std::size_t N = n + 1;
    Matrix s(f, N, N), q(f, N, N);
    for (std::size_t i = 0; i + 2 < N; ++i) s(i, i + 1) = one(f);
    s(N - 2, 0) = one(f);
    s(N - 2, N - 1) = one(f);
    s(N - 1, 0) = b;
    q(0, N - 1) = one(f);
    for (std::size_t i = 1; i < N; ++i) {
      q(i, i - 1) = a;
      q(i, i) = i % 2 ? one(f) : -one(f);
    }
    if (!s.trace().is_zero() || !q.trace().is_zero()) return false;
    const Matrix target = Matrix::direct_sum({Matrix::jordan_block(a, n), Matrix::scalar(b, 1)});
    if (n == 2 && !(s * q == target)) return false;
    if (charpoly(s * q) != charpoly(target)) return false;
  }
  for (std::size_t n = 2; n <= 6; ++n) {
    const Matrix target = Matrix::direct_sum({Matrix::jordan_block(a, n), Matrix::scalar(b, 1)});
    const auto got = jordan_plus_scalar_trace_zero(a, n, b);
    if (!got.t1.trace().is_zero() || !got.t2.trace().is_zero() || !(got.t1 * got.t2 == target)) return false;
  }
  return true;
}

/// Companion matrix of a monic degree-n polynomial as a product of the two
/// explicit trace-zero factors.
inline bool companion_identity(const FieldPtr& f, std::size_t n, std::mt19937_64& rng) {
  Vec a;
  for (std::size_t i = 0; i < n; ++i) a.push_back(random_element(f, rng));
  Vec coeffs = a;
  coeffs.push_back(one(f));
  const Poly p(f, coeffs);
  Matrix l(f, n, n), r(f, n, n);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    l(i, n - 1) = a[i];
    if (i >= 1) l(i, i) = one(f);
  }
  l(n - 1, 0) = one(f);
  l(n - 1, 1) = -one(f);
  l(n - 1, n - 1) = -from_int(f, static_cast<long long>(n) - 2);
  r(0, 0) = one(f);
  r(0, n - 2) = r(0, n - 2) + one(f);
  r(0, n - 1) = -a[n - 1] - from_int(f, static_cast<long long>(n) - 2);
  for (std::size_t i = 1; i + 1 < n; ++i) r(i, i - 1) = one(f);
  r(n - 1, n - 1) = -one(f);
  return trace_zero_pair_is(companion_trace_zero(p), l, r, Matrix::companion(p));
}

/// J_{0,2} as a sum of two squares over F_5 (with i = 2) and over F_2.
inline bool nilpotent_square_identities() {
  const auto f5 = Field::prime(5);
  const Matrix a(f5, {{one(f5), inv(from_int(f5, 2))}, {zero(f5), one(f5)}});
  const Matrix b = Matrix::scalar(from_int(f5, 2), 2);
  if (!(a * a + b * b == Matrix::jordan_block(zero(f5), 2))) return false;
  const auto f2 = Field::prime(2);
  const Matrix c = Matrix::from_ints(f2, {{1, 0}, {0, 0}}), d = Matrix::from_ints(f2, {{1, 1}, {0, 0}});
  return c * c + d * d == Matrix::jordan_block(zero(f2), 2);
}

inline Matrix real_matrix(const FieldPtr& r, const std::vector<std::vector<double>>& rows) {
  std::vector<Vec> v;
  for (const auto& row : rows) {
    Vec out;
    for (double x : row) out.push_back(from_double(r, x));
    v.push_back(out);
  }
  return Matrix(r, v);
}

/// The 4x4 real block with charpoly (T^2+1)^2 as a sum of two real squares,
/// and its complex form J_{i,2} via the primitive eighth root of unity.
inline double real_block_identity_error() {
  const auto c = Field::complex(1e-12);
  const auto zeta = from_complex(c, std::polar(1.0, M_PI / 4));
  const Matrix x(c, {{zeta, inv(zeta)}, {zero(c), zero(c)}});
  const Matrix y(c, {{zero(c), zero(c)}, {zero(c), zeta}});
  const Matrix j(c, {{from_complex(c, {0, 1}), one(c)}, {zero(c), from_complex(c, {0, 1})}});
  const auto r = Field::real(1e-12);
  const double cs = std::cos(M_PI / 4), sn = std::sin(M_PI / 4);
  const Matrix a = real_matrix(r, {{0, -1, 1, 0}, {1, 0, 0, 1}, {0, 0, 0, -1}, {0, 0, 1, 0}});
  const Matrix xr = real_matrix(r, {{cs, -sn, cs, sn}, {sn, cs, -sn, cs}, {0, 0, 0, 0}, {0, 0, 0, 0}});
  const Matrix yr = real_matrix(r, {{0, 0, 0, 0}, {0, 0, 0, 0}, {0, 0, cs, -sn}, {0, 0, sn, cs}});
  return std::max(max_abs_diff(x * x + y * y, j), max_abs_diff(xr * xr + yr * yr, a));
}

/// 2x2 real sums of two squares: scalar, Jordan, and distinct-eigenvalue
/// shapes. The distinct-eigenvalue sums are diagonal.
inline double real_square_identities_error() {
  const auto r = Field::real(1e-12);
  double worst = 0;
  for (double alpha : {-2.0, -0.25, 0.0, 0.7, 3.0}) {
    const Matrix x = real_matrix(r, {{0, alpha / 2}, {1, 0}});
    worst = std::max(worst, max_abs_diff(x * x + x * x, real_matrix(r, {{alpha, 0}, {0, alpha}})));
    const Matrix x2 = real_matrix(r, {{0, -(4 * alpha + 1) / 4}, {1, 0}});
    const Matrix y2 = real_matrix(r, {{0.5, 1}, {0, 0.5}});
    worst = std::max(worst, max_abs_diff(x2 * x2 + y2 * y2, real_matrix(r, {{-alpha, 1}, {0, -alpha}})));
  }
  for (auto [a, b] : std::vector<std::pair<double, double>>{{2.0, 0.5}, {1.0, 1.0}, {0.3, 0.4}}) {
    const Matrix s = real_matrix(r, {{std::sqrt(a), 0}, {0, std::sqrt(b)}});
    worst = std::max(worst, max_abs_diff(s * s, real_matrix(r, {{a, 0}, {0, b}})));
    const Matrix x = real_matrix(r, {{0, -(4 * a + 1) / 4}, {1, 0}});
    const Matrix y = real_matrix(r, {{0.5, 0}, {0, std::sqrt(a - b + 0.25)}});
    worst = std::max(worst, max_abs_diff(x * x + y * y, real_matrix(r, {{-a, 0}, {0, -b}})));
    const Matrix x3 = real_matrix(r, {{0, -2 * b}, {1, 0}});
    const Matrix y3 = real_matrix(r, {{std::sqrt(a + 2 * b), 0}, {0, std::sqrt(b)}});
    worst = std::max(worst, max_abs_diff(x3 * x3 + y3 * y3, real_matrix(r, {{a, 0}, {0, -b}})));
  }
  return worst;
}

/// det(T I - M(eps, x, y, z)) with symbolic entries against the expansion
/// T^n - z T^{n-1} - sum_{j=2}^{n} eps^{j-2} (sum_{i=j-1}^{n-1} x_i y_{i-j+2}) T^{n-j}.
inline bool bordered_charpoly_expansion(std::size_t n) {
  using oracle::MPoly;
  const std::size_t nv = 2 * n + 1;  // T, eps, x_1..x_{n-1}, y_1..y_{n-1}, z
  const auto zero_p = MPoly::constant(nv, 0);
  const auto T = MPoly::var(nv, 0), eps = MPoly::var(nv, 1), z = MPoly::var(nv, 2 * n);
  auto x = [&](std::size_t i) { return MPoly::var(nv, 1 + i); };
  auto y = [&](std::size_t i) { return MPoly::var(nv, n + i); };
  std::vector<std::vector<MPoly>> m(n, std::vector<MPoly>(n, zero_p));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = T;
  for (std::size_t i = 0; i + 2 < n; ++i) m[i][i + 1] = zero_p - eps;
  for (std::size_t i = 1; i < n; ++i) {
    m[i - 1][n - 1] = zero_p - x(i);
    m[n - 1][i - 1] = zero_p - y(i);
  }
  m[n - 1][n - 1] = T - z;
  auto power = [&](const MPoly& v, std::size_t e) {
    MPoly r = MPoly::constant(nv, 1);
    for (std::size_t i = 0; i < e; ++i) r = r * v;
    return r;
  };
  MPoly expect = power(T, n) - z * power(T, n - 1);
  for (std::size_t j = 2; j <= n; ++j) {
    MPoly inner = zero_p;
    for (std::size_t i = j - 1; i <= n - 1; ++i) inner = inner + x(i) * y(i - j + 2);
    expect = expect - power(eps, j - 2) * inner * power(T, n - j);
  }
  return oracle::det_cofactor(m) == expect;
}

}  // namespace fixture
