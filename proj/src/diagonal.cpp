#include "wordmap/diagonal.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>
#include <random>

#include "wordmap/factor.hpp"
#include "wordmap/reduction.hpp"

namespace wordmap {

namespace {

bool is_negative_answer(const Error& e) { return e.is_negative_answer(); }

// Euler's criterion for k-th powers in a finite field.
bool is_kth_power(const Element& e, std::uint64_t k) {
  if (e.is_zero() || k == 1) return true;
  const std::uint64_t q1 = *e.field()->cardinality() - 1;
  const std::uint64_t g = std::gcd(k, q1);
  return pow(e, q1 / g).is_one();
}

Element first_not_in_zero_minus_one(const FieldPtr& f) {
  if (!f->is_finite()) return one(f);
  for (const Element e : enumerate(f)) {
    if (!e.is_zero() && !(e + one(f)).is_zero()) return e;
  }
  fail(ErrorCode::NotFound, "the field has no element outside {0, -1}");
}

// W with W^k = S diag(mu^k) S^{-1} = M, given M similar to diag(scale mu_i^k).
Matrix spectral_root(const Matrix& m, const Vec& mu, std::uint64_t k, const Element& scale) {
  const FieldPtr& f = m.field();
  Vec powers;
  for (const auto& v : mu) powers.push_back(scale * pow(v, k));
  const Matrix s = solve_similarity(Matrix::diagonal(f, powers), m);
  return s * Matrix::diagonal(f, mu) * inverse(s);
}

// Elementary symmetric values E_0..E_n of `s`.
Vec elementary_symmetric(const FieldPtr& f, const Vec& s) {
  const Poly p = Poly::from_roots(f, s);
  const std::size_t n = s.size();
  Vec e;
  for (std::size_t j = 0; j <= n; ++j) {
    Element c = p.coeff(n - j);
    e.push_back(j % 2 ? -c : c);
  }
  return e;
}

bool semisimple(const Matrix& m) {
  if (!m.field()->is_exact()) return true;
  const Poly mp = minpoly(m);
  return gcd(mp, mp.derivative()).degree() == 0;
}

// Regular pairs (x1, x2) with x1^k + x2^k = gamma, in enumeration order.
std::vector<Vec> regular_pairs(const FieldPtr& f, std::uint64_t k, const Element& gamma, std::size_t limit) {
  std::vector<Vec> out;
  if (!f->is_finite()) {
    try {
      out.push_back(regular_solution_search(f, k, 2, gamma, false));
    } catch (const Error& e) {
      if (!is_negative_answer(e)) throw;
    }
    return out;
  }
  for (const Element x1 : enumerate(f)) {
    const Element p1 = pow(x1, k);
    const Element rest = gamma - p1;
    if (!is_kth_power(rest, k)) continue;
    for (const auto& x2 : kth_roots(rest, k)) {
      if (pow(x2, k) == p1) continue;
      out.push_back({x1, x2});
      if (out.size() >= limit) return out;
    }
  }
  return out;
}

// Candidate first coordinates for scalar searches over Q.
std::vector<mpq_class> small_rationals() {
  std::vector<mpq_class> out{0};
  for (int h = 1; h <= 12; ++h) {
    for (int den = 1; den <= h; ++den) {
      const int num = h;
      if (std::gcd(num, den) != 1) continue;
      out.emplace_back(num, den);
      out.emplace_back(-num, den);
      if (num != den) {
        out.emplace_back(den, num);
        out.emplace_back(-den, num);
      }
    }
  }
  for (auto& v : out) v.canonicalize();
  return out;
}

std::pair<ScalarPair, ScalarPair> real_scalar_solutions(const Element& alpha, std::uint64_t k1, std::uint64_t k2,
                                                        const Element& beta) {
  const FieldPtr& f = alpha.field();
  const double a = alpha.real(), b = beta.real();
  auto root = [&](double v, std::uint64_t k) {
    const double r = std::pow(std::abs(v), 1.0 / static_cast<double>(k));
    return from_double(f, v < 0 ? -r : r);
  };
  if (k2 % 2 == 1) {
    return {{zero(f), root(a / b, k2)}, {one(f), root((a - 1) / b, k2)}};
  }
  if (k1 % 2 == 1) {
    return {{root(a, k1), zero(f)}, {root(a - b, k1), one(f)}};
  }
  if (b < 0) {
    const double p1 = std::abs(a) + 1, p2 = 2 * p1;
    return {{root(p1, k1), root((a - p1) / b, k2)}, {root(p2, k1), root((a - p2) / b, k2)}};
  }
  if (a > f->tolerance()) {
    return {{zero(f), root(a / b, k2)}, {root(a / 2, k1), root(a / (2 * b), k2)}};
  }
  fail(ErrorCode::NotFound, "x^k1 + beta y^k2 = alpha has no two suitable real solutions (even exponents, beta > 0, alpha <= 0)");
}

}  // namespace

Matrix DiagonalWordSpec::evaluate(const std::vector<Matrix>& xs) const {
  if (xs.size() != terms.size() || xs.empty()) fail(ErrorCode::InvalidArgument, "witness arity does not match the word");
  Matrix r(xs[0].field(), xs[0].rows(), xs[0].cols());
  for (std::size_t i = 0; i < terms.size(); ++i) r = r + terms[i].delta * pow(xs[i], terms[i].k);
  return r;
}

std::string DiagonalWordSpec::to_string() const {
  std::string s;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    if (i) s += " + ";
    s += terms[i].delta.to_string() + "*X" + std::to_string(i + 1) + "^" + std::to_string(terms[i].k);
  }
  return s;
}

std::pair<ScalarPair, ScalarPair> scalar_two_solutions(const Element& alpha, std::uint64_t k1, std::uint64_t k2,
                                                       const Element& beta) {
  const FieldPtr& f = alpha.field();
  require_same_field(f, beta.field());
  if (beta.is_zero()) fail(ErrorCode::InvalidArgument, "beta must be nonzero");
  if (k1 == 0 || k2 == 0) fail(ErrorCode::InvalidArgument, "exponents must be positive");

  if (f->kind() == FieldKind::Real) return real_scalar_solutions(alpha, k1, k2, beta);
  if (f->kind() == FieldKind::Complex) {
    const Element c = from_int(f, 2);
    const Element b = kth_roots((alpha - one(f)) / beta, k2)[0];
    const Element d = kth_roots((alpha - pow(c, k1)) / beta, k2)[0];
    return {{one(f), b}, {c, d}};
  }

  std::vector<ScalarPair> found;
  auto consider = [&](const Element& a) -> std::optional<std::pair<ScalarPair, ScalarPair>> {
    const Element rest = (alpha - pow(a, k1)) / beta;
    if (f->is_finite() && !is_kth_power(rest, k2)) return std::nullopt;
    std::vector<Element> bs;
    try {
      bs = kth_roots(rest, k2);
    } catch (const Error& e) {
      if (e.code() == ErrorCode::Unsupported || e.code() == ErrorCode::UnsupportedField) {
        fail(ErrorCode::NotFound, "no scalar root extraction over " + f->spec());
      }
      throw;
    }
    for (const auto& b : bs) {
      const ScalarPair s{a, b};
      for (const auto& prev : found) {
        if (pow(prev.a, k1) != pow(a, k1) && pow(prev.b, k2) != pow(b, k2)) return std::make_pair(prev, s);
      }
      if (found.size() < 64) found.push_back(s);
    }
    return std::nullopt;
  };

  if (f->is_finite()) {
    const std::uint64_t q = *f->cardinality();
    const std::uint64_t cap = std::min<std::uint64_t>(q, std::uint64_t{1} << 20);
    for (std::uint64_t i = 0; i < cap; ++i) {
      if (auto r = consider(element_at(f, i))) return *r;
    }
  } else if (f->kind() == FieldKind::Rationals) {
    for (const auto& v : small_rationals()) {
      if (auto r = consider(Element(f, v))) return *r;
    }
  } else {
    for (long long v = 0; v <= 24; ++v) {
      for (long long s : {1LL, -1LL}) {
        if (v == 0 && s < 0) continue;
        if (auto r = consider(from_int(f, s * v))) return *r;
      }
    }
  }
  fail(ErrorCode::NotFound, "no two solutions of x^" + std::to_string(k1) + " + beta y^" + std::to_string(k2) +
                                " = " + alpha.to_string() + " with distinct powers over " + f->spec());
}

std::pair<Matrix, Matrix> invertible_jordan_split(const Element& alpha, std::size_t n, const ScalarPair& s1,
                                                  const ScalarPair& s2, std::uint64_t k1, std::uint64_t k2,
                                                  const Element& beta) {
  const FieldPtr& f = alpha.field();
  const Element ga = pow(s1.a, k1), gc = pow(s2.a, k1);
  const Element hb = beta * pow(s1.b, k2), hd = beta * pow(s2.b, k2);
  Matrix g(f, n, n), h(f, n, n);
  for (std::size_t i = 0; i < n; ++i) g(i, i) = i % 2 ? gc : ga;
  for (std::size_t i = 0; i + 1 < n; i += 2) g(i, i + 1) = one(f);
  for (std::size_t i = 0; i < n; ++i) h(i, i) = i % 2 ? hd : hb;
  for (std::size_t i = 1; i + 1 < n; i += 2) h(i, i + 1) = one(f);
  return {g, h};
}

std::pair<Matrix, Matrix> invertible_jordan_decompose(const Element& alpha, std::size_t n, std::uint64_t k1,
                                                      std::uint64_t k2, const Element& beta) {
  if (n == 0) fail(ErrorCode::InvalidArgument, "block size must be positive");
  const FieldPtr& f = alpha.field();
  const auto [s1, s2] = scalar_two_solutions(alpha, k1, k2, beta);
  const auto [g, h] = invertible_jordan_split(alpha, n, s1, s2, k1, k2, beta);
  if (!agrees(g + h, Matrix::jordan_block(alpha, n))) fail(ErrorCode::VerificationFailed, "G + H != J");

  // Each 2x2 block [[u,1],[0,v]] has eigenvectors (1,0) for u and (1, v-u) for v.
  Matrix pg = Matrix::identity(f, n), ph = Matrix::identity(f, n);
  Vec dg(n), dh(n);
  for (std::size_t i = 0; i < n; ++i) {
    dg[i] = i % 2 ? s2.a : s1.a;
    dh[i] = i % 2 ? s2.b : s1.b;
  }
  for (std::size_t i = 0; i + 1 < n; i += 2) {
    pg(i, i + 1) = one(f);
    pg(i + 1, i + 1) = g(i + 1, i + 1) - g(i, i);
  }
  for (std::size_t i = 1; i + 1 < n; i += 2) {
    ph(i, i + 1) = one(f);
    ph(i + 1, i + 1) = h(i + 1, i + 1) - h(i, i);
  }
  Matrix b = pg * Matrix::diagonal(f, dg) * inverse(pg);
  Matrix c = ph * Matrix::diagonal(f, dh) * inverse(ph);
  if (!agrees(pow(b, k1) + beta * pow(c, k2), Matrix::jordan_block(alpha, n), 1e4)) {
    fail(ErrorCode::VerificationFailed, "invertible Jordan decomposition does not verify");
  }
  return {std::move(b), std::move(c)};
}

Matrix junction_matrix(const FieldPtr& f, const Partition& parts) {
  const std::size_t n = std::accumulate(parts.begin(), parts.end(), std::size_t{0});
  Matrix m(f, n, n);
  std::size_t s = 0;
  for (std::size_t i = 0; i + 1 < parts.size(); ++i) {
    if (parts[i] == 0) fail(ErrorCode::InvalidArgument, "partition parts must be positive");
    s += parts[i];
    m(s - 1, s) = one(f);
  }
  return m;
}

Partition nilpotent_power_partition(std::size_t n, std::uint64_t k) {
  if (n == 0 || k == 0) fail(ErrorCode::InvalidArgument, "n and k must be positive");
  const std::size_t lo = n / k, hi = (n + k - 1) / k, m = n % k;
  Partition out;
  if (lo > 0) out.insert(out.end(), static_cast<std::size_t>(k) - m, lo);
  out.insert(out.end(), m, hi);
  return out;
}

Matrix junction_as_scaled_power(const FieldPtr& f, const Partition& parts, std::uint64_t k, const Element& beta) {
  if (k == 0) fail(ErrorCode::InvalidArgument, "k must be positive");
  if (beta.is_zero()) fail(ErrorCode::InvalidArgument, "beta must be nonzero");
  for (auto p : parts) {
    if (p < 2) fail(ErrorCode::PartitionTooSmall, "junction partitions need parts >= 2");
  }
  const Matrix jm = junction_matrix(f, parts);
  const std::size_t n = jm.rows();
  if (k == 1) return inv(beta) * jm;
  const std::size_t r = parts.size() - 1;
  if (r == 0) return Matrix(f, n, n);

  // J_{0,k+c}^k has c blocks of size 2 and k-c of size 1, so c <= k junctions per block.
  std::vector<Matrix> blocks;
  std::size_t used = 0;
  for (std::size_t rem = r; rem > 0;) {
    const std::size_t c = std::min<std::size_t>(rem, k);
    blocks.push_back(Matrix::jordan_block(zero(f), static_cast<std::size_t>(k) + c));
    used += static_cast<std::size_t>(k) + c;
    rem -= c;
  }
  if (used > n) {
    fail(ErrorCode::PartitionTooSmall, "junction of " + std::to_string(r) + " joints in size " + std::to_string(n) +
                                           " is not beta*B^" + std::to_string(k) + " for nilpotent B");
  }
  for (; used < n; ++used) blocks.push_back(Matrix(f, 1, 1));
  const Matrix b0 = Matrix::direct_sum(blocks);
  const Matrix target = beta * pow(b0, k);
  Partition pj = nilpotent_partition(jm), pt = nilpotent_partition(target);
  std::sort(pj.begin(), pj.end());
  std::sort(pt.begin(), pt.end());
  if (pj != pt) fail(ErrorCode::VerificationFailed, "power partition does not match the junction partition");
  const Matrix q1 = nilpotent_chain_basis(jm, pj);
  const Matrix q2 = nilpotent_chain_basis(target, pj);
  const Matrix rm = q1 * inverse(q2);
  Matrix b = rm * b0 * inverse(rm);
  if (beta * pow(b, k) != jm) fail(ErrorCode::VerificationFailed, "junction is not beta*B^k");
  return b;
}

std::pair<Matrix, Matrix> large_nilpotent_decompose(const FieldPtr& f, std::size_t n, std::uint64_t k1,
                                                    std::uint64_t k2, const Element& beta) {
  if (k1 == 0 || k2 == 0) fail(ErrorCode::InvalidArgument, "exponents must be positive");
  if (n < 2 * k1) fail(ErrorCode::SizeTooSmall, "large nilpotent route needs n >= 2 k1");
  const Matrix j = Matrix::jordan_block(zero(f), n);
  if (k1 == 1) return {j, Matrix(f, n, n)};

  // Basis grouped by residue mod k1, short chains first: J^{k1} becomes a
  // block sum of Jordan blocks in weakly increasing order.
  const std::size_t m = n % k1;
  std::vector<std::size_t> order;
  for (std::size_t t = 0; t < k1; ++t) {
    const std::size_t r = (m + t) % k1;
    for (std::size_t i = r; i < n; i += k1) order.push_back(i);
  }
  Matrix perm(f, n, n);
  for (std::size_t pos = 0; pos < n; ++pos) perm(pos, order[pos]) = one(f);
  const Matrix x = perm * j * perm.transpose();
  const Matrix d = pow(x, k1);
  const Partition parts = nilpotent_power_partition(n, k1);
  if (j - d != junction_matrix(f, parts)) {
    fail(ErrorCode::VerificationFailed, "J - X^k1 is not the expected junction matrix");
  }
  Matrix y = junction_as_scaled_power(f, parts, k2, beta);
  if (pow(x, k1) + beta * pow(y, k2) != j) fail(ErrorCode::VerificationFailed, "large nilpotent witness does not verify");
  return {x, std::move(y)};
}

Matrix BorderedSpec::realize() const {
  const FieldPtr& f = epsilon.field();
  const std::size_t n = x.size() + 1;
  Matrix m(f, n, n);
  for (std::size_t i = 0; i + 2 < n; ++i) m(i, i + 1) = epsilon;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    m(i, n - 1) = x[i];
    m(n - 1, i) = y[i];
  }
  m(n - 1, n - 1) = z;
  return m;
}

BorderedSolution bordered_solve(const Element& epsilon, const Vec& mu, std::uint64_t k, const Vec& given,
                                GivenSide side, const Element& scale) {
  const FieldPtr& f = epsilon.field();
  const std::size_t n = mu.size();
  if (n < 3) fail(ErrorCode::InvalidArgument, "bordered matrices need n >= 3");
  if (given.size() != n - 1) fail(ErrorCode::InvalidArgument, "border vector must have length n-1");
  if (epsilon.is_zero()) fail(ErrorCode::InvalidArgument, "epsilon must be nonzero");
  Vec s;
  for (const auto& m : mu) s.push_back(scale * pow(m, k));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (s[i] == s[j]) fail(ErrorCode::InvalidArgument, "mu is not a regular solution");
    }
  }
  const Vec e = elementary_symmetric(f, s);
  // rhs[j] for j = 2..n: (-1)^{j+1} eps^{-(j-2)} E_j.
  Vec rhs(n + 1, zero(f));
  const Element eps_inv = inv(epsilon);
  for (std::size_t j = 2; j <= n; ++j) {
    Element v = pow(eps_inv, j - 2) * e[j];
    rhs[j] = (j + 1) % 2 ? -v : v;
  }
  // 1-based accessors.
  Vec x(n, zero(f)), y(n, zero(f));
  if (side == GivenSide::Y) {
    for (std::size_t i = 1; i < n; ++i) y[i] = given[i - 1];
    if (y[1].is_zero()) fail(ErrorCode::ZeroLeadingCoordinate, "y_1 must be nonzero");
    const Element y1inv = inv(y[1]);
    for (std::size_t j = n; j >= 2; --j) {
      Element acc = rhs[j];
      for (std::size_t i = j; i <= n - 1; ++i) acc -= x[i] * y[i - j + 2];
      x[j - 1] = acc * y1inv;
    }
  } else {
    for (std::size_t i = 1; i < n; ++i) x[i] = given[i - 1];
    if (x[n - 1].is_zero()) fail(ErrorCode::ZeroLeadingCoordinate, "x_{n-1} must be nonzero");
    const Element xinv = inv(x[n - 1]);
    for (std::size_t j = n; j >= 2; --j) {
      Element acc = rhs[j];
      for (std::size_t t = 1; t + j <= n; ++t) acc -= x[t + j - 2] * y[t];
      y[n - j + 1] = acc * xinv;
    }
  }
  BorderedSpec spec{epsilon, Vec(x.begin() + 1, x.end()), Vec(y.begin() + 1, y.end()), e[1]};
  const Matrix m = spec.realize();
  const Poly expected = Poly::from_roots(f, s);
  const Poly got = charpoly(m);
  bool match = f->is_exact() ? got == expected : true;
  if (!f->is_exact()) {
    for (std::size_t i = 0; i <= n; ++i) match = match && got.coeff(i) == expected.coeff(i);
  }
  if (!match) fail(ErrorCode::CharPolyMismatch, "bordered matrix has the wrong characteristic polynomial");
  Matrix w = spectral_root(m, mu, k, scale);
  return {std::move(spec), std::move(w)};
}

std::pair<Matrix, Matrix> small_nilpotent_decompose(const FieldPtr& f, std::size_t n, std::uint64_t k1,
                                                    std::uint64_t k2, const Element& beta) {
  if (n < 2) fail(ErrorCode::InvalidArgument, "small nilpotent route needs n >= 2");
  if (f->is_finite() && *f->cardinality() <= 2) fail(ErrorCode::NotFound, "the bordered construction needs |K| > 2");
  const Element o = one(f);
  const Element gamma2 = -inv(beta);
  const Matrix j = Matrix::jordan_block(zero(f), n);

  if (n == 2) {
    const auto mus = regular_pairs(f, k1, o, 64);
    const auto lams = regular_pairs(f, k2, gamma2, 64);
    const Element b2 = beta * beta;
    for (const auto& mu : mus) {
      const Element p1 = pow(mu[0], k1) * pow(mu[1], k1);
      for (const auto& lam : lams) {
        const Element p2 = pow(lam[0], k2) * pow(lam[1], k2);
        Element x, y;
        if (p1.is_zero()) {
          x = -o;
          y = b2 * p2;
        } else {
          y = b2 * p2 - p1;
          if (y.is_zero()) continue;
          x = -b2 * p2 / y;
        }
        const Matrix m1 = Matrix(f, {{zero(f), o + x}, {y, o}});
        const Matrix m2 = Matrix(f, {{zero(f), -x / beta}, {-y / beta, -inv(beta)}});
        const Matrix w1 = spectral_root(m1, mu, k1, o);
        const Matrix w2 = spectral_root(m2, lam, k2, o);
        if (agrees(pow(w1, k1) + beta * pow(w2, k2), j, 1e4)) return {w1, w2};
      }
    }
    fail(ErrorCode::NotFound, "no regular solution pair gives a 2x2 nilpotent decomposition");
  }

  const Element eps = first_not_in_zero_minus_one(f);
  const Vec lam = regular_solution_search(f, k1, n, o, true);
  Vec x1(n - 1, zero(f));
  x1[n - 2] = o + eps;
  const BorderedSolution first = bordered_solve(eps, lam, k1, x1, GivenSide::X, o);
  Vec mu = regular_solution_search(f, k2, n - 1, gamma2, true);
  mu.push_back(zero(f));
  Vec ny;
  for (const auto& v : first.spec.y) ny.push_back(-v);
  const BorderedSolution second = bordered_solve(o, mu, k2, ny, GivenSide::Y, beta);
  const Matrix sum = first.spec.realize() + second.spec.realize();
  const Matrix q = nilpotent_chain_basis(sum, {n});
  const Matrix qinv = inverse(q);
  Matrix x = qinv * first.witness * q;
  Matrix y = qinv * second.witness * q;
  if (!agrees(pow(x, k1) + beta * pow(y, k2), j, 1e4)) fail(ErrorCode::VerificationFailed, "small nilpotent witness does not verify");
  return {std::move(x), std::move(y)};
}

std::pair<Matrix, Matrix> real_two_by_two_squares(const Matrix& a) {
  const FieldPtr& f = a.field();
  if (f->kind() != FieldKind::Real || a.rows() != 2 || a.cols() != 2) {
    fail(ErrorCode::InvalidArgument, "expected a real 2x2 matrix");
  }
  const double a11 = a(0, 0).real(), a12 = a(0, 1).real(), a21 = a(1, 0).real(), a22 = a(1, 1).real();
  const double t = a11 + a22, det = a11 * a22 - a12 * a21;
  const double disc = t * t - 4 * det;
  const double scale = std::max({1.0, std::abs(a11), std::abs(a12), std::abs(a21), std::abs(a22)});
  const double tol = f->tolerance() * scale * scale * 1e3;
  auto d = [&](double v) { return from_double(f, v); };
  auto m = [&](double p, double q, double r, double s) { return Matrix(f, {{d(p), d(q)}, {d(r), d(s)}}); };

  if (disc < -tol) fail(ErrorCode::UnhandledShape, "complex eigenvalues: use the complex lift");
  if (std::abs(a12) <= f->tolerance() * scale && std::abs(a21) <= f->tolerance() * scale &&
      std::abs(a11 - a22) <= f->tolerance() * scale) {
    const Matrix x = m(0, a11 / 2, 1, 0);
    return {x, x};
  }
  Matrix q(f, 2, 2), x0, y0;
  if (std::abs(disc) <= tol) {
    const double lam = t / 2;
    // Basis (w, v) with w = (A - lam) v gives A = Q J_{lam,2} Q^{-1}.
    const std::size_t j = (std::abs(a12) + std::abs(a22 - lam) >= std::abs(a11 - lam) + std::abs(a21)) ? 1 : 0;
    const Matrix nmat = a - Matrix::scalar(d(lam), 2);
    q(0, 0) = nmat(0, j);
    q(1, 0) = nmat(1, j);
    q(j, 1) = one(f);
    x0 = m(0, lam - 0.25, 1, 0);
    y0 = m(0.5, 1, 0, 0.5);
  } else {
    const double r = std::sqrt(disc);
    const double l1 = (t - r) / 2, l2 = (t + r) / 2;
    for (int i = 0; i < 2; ++i) {
      const double lam = i == 0 ? l1 : l2;
      double v0 = a12, v1 = lam - a11;
      if (std::hypot(v0, v1) < std::hypot(lam - a22, a21)) {
        v0 = lam - a22;
        v1 = a21;
      }
      q(0, i) = d(v0);
      q(1, i) = d(v1);
    }
    if (l1 >= 0) {
      x0 = m(std::sqrt(l1), 0, 0, std::sqrt(l2));
      y0 = m(0, 0, 0, 0);
    } else {
      x0 = m(0, l1 - 0.25, 1, 0);
      y0 = m(0.5, 0, 0, std::sqrt(l2 - l1 + 0.25));
    }
  }
  const Matrix qinv = inverse(q);
  return {q * x0 * qinv, q * y0 * qinv};
}

namespace {

DiagonalWitness solve_power(const Matrix& a, std::uint64_t k, std::uint64_t seed);

struct BlockResult {
  Matrix x, y;
  std::string route;
  bool x_semisimple = true, y_semisimple = true;
};

// Seeded search over finite fields: X at random, then a semisimple k2-th root
// of (J - X^{k1}) / beta when its characteristic polynomial is squarefree.
std::optional<BlockResult> search_block(const Matrix& target, std::uint64_t k1, std::uint64_t k2, const Element& beta,
                                        std::uint64_t seed) {
  const FieldPtr& f = target.field();
  const std::size_t n = target.rows();
  std::mt19937_64 rng(seed ^ 0x5851f42d4c957f2dULL);
  const Element binv = inv(beta);
  for (int attempt = 0; attempt < 2048; ++attempt) {
    Matrix x(f, n, n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) x(i, j) = random_element(f, rng);
    }
    const Matrix z = binv * (target - pow(x, k1));
    const Poly cp = charpoly(z);
    if (gcd(cp, cp.derivative()).degree() != 0) continue;
    try {
      DiagonalWitness w = solve_power(z, k2, seed);
      if (pow(x, k1) + beta * pow(w.matrices[0], k2) == target) {
        const bool xs = semisimple(x);
        return BlockResult{std::move(x), std::move(w.matrices[0]), "search", xs, true};
      }
    } catch (const Error& e) {
      if (!is_negative_answer(e)) throw;
    }
  }
  return std::nullopt;
}

BlockResult solve_block(const Element& alpha, std::size_t l, std::uint64_t k1, std::uint64_t k2, const Element& beta,
                        std::uint64_t seed) {
  const FieldPtr& f = alpha.field();
  if (l == 1 && alpha.is_zero()) return {Matrix(f, 1, 1), Matrix(f, 1, 1), "zero-scalar"};
  auto split = [&]() -> BlockResult {
    auto [b, c] = invertible_jordan_decompose(alpha, l, k1, k2, beta);
    return {std::move(b), std::move(c), "jordan-split"};
  };
  if (f->is_approx()) return split();
  std::string tried;
  if (!alpha.is_zero()) {
    try {
      return split();
    } catch (const Error& e) {
      if (!is_negative_answer(e) || !f->is_finite()) throw;
      tried += std::string(" split: ") + e.what() + ";";
    }
    if (auto r = search_block(Matrix::jordan_block(alpha, l), k1, k2, beta, seed)) return *r;
    fail(ErrorCode::NotFound, "J_{" + alpha.to_string() + "," + std::to_string(l) + "} not reached over " + f->spec() +
                                  ":" + tried + " search exhausted");
  }

  if (l >= 2 * k1) {
    try {
      auto [x, y] = large_nilpotent_decompose(f, l, k1, k2, beta);
      return {std::move(x), std::move(y), "large-nilpotent", false, false};
    } catch (const Error& e) {
      if (e.code() != ErrorCode::PartitionTooSmall) throw;
      tried += std::string(" large: ") + e.what() + ";";
    }
  }
  try {
    auto [x, y] = small_nilpotent_decompose(f, l, k1, k2, beta);
    return {std::move(x), std::move(y), l == 2 ? "two-by-two-nilpotent" : "bordered"};
  } catch (const Error& e) {
    if (!is_negative_answer(e)) throw;
    tried += std::string(" bordered: ") + e.what() + ";";
  }
  try {
    return split();
  } catch (const Error& e) {
    if (!is_negative_answer(e)) throw;
    tried += std::string(" split: ") + e.what() + ";";
  }
  if (f->is_finite()) {
    if (auto r = search_block(Matrix::jordan_block(alpha, l), k1, k2, beta, seed)) return *r;
    tried += " search exhausted";
  }
  fail(ErrorCode::NotFound, "J_{0," + std::to_string(l) + "} not reached over " + f->spec() + ":" + tried);
}

Element to_block_field(const FieldPtr& target, const Element& x) {
  if (same_field(target, x.field())) return x;
  if (target->kind() == FieldKind::Complex && x.field()->kind() == FieldKind::Real) {
    return from_complex(target, {x.real(), 0.0});
  }
  return embed(target, x);
}

// X^{k1} + beta Y^{k2} = A with k1 >= k2.
DiagonalWitness solve_core(const Matrix& a, std::uint64_t k1, std::uint64_t k2, const Element& beta,
                           std::uint64_t seed) {
  const FieldPtr& f = a.field();
  const std::size_t n = a.rows();
  auto word = [&](const std::vector<Matrix>& xs) { return pow(xs[0], k1) + beta * pow(xs[1], k2); };
  const bool real_even = f->kind() == FieldKind::Real && k1 % 2 == 0 && k2 % 2 == 0;

  if (real_even && n == 2 && k1 == 2 && k2 == 2 && beta.real() > 0) {
    try {
      auto [x, y] = real_two_by_two_squares(a);
      const double sb = std::sqrt(beta.real());
      y = from_double(f, 1 / sb) * y;
      if (agrees(word({x, y}), a, 1e4)) {
        return {{x, y}, {false, false}, {Matrix::identity(f, n)}, {"real-2x2-squares"}};
      }
    } catch (const Error& e) {
      if (e.code() != ErrorCode::UnhandledShape) throw;
    }
  }

  const Plan pl = plan(a, seed);
  std::vector<BlockSolution> sols;
  DiagonalWitness w;
  bool xs = true, ys = true;
  for (const auto& bp : pl.blocks) {
    BlockResult r;
    try {
      r = solve_block(bp.alpha, bp.block.l, k1, k2, to_block_field(bp.field, beta), seed);
    } catch (const Error& e) {
      if (real_even && e.code() == ErrorCode::NotFound) {
        fail(ErrorCode::Unsupported, std::string("even exponents over R: ") + e.what());
      }
      throw;
    }
    xs = xs && r.x_semisimple;
    ys = ys && r.y_semisimple;
    w.routes.push_back(r.route);
    sols.push_back({std::move(r.x), std::move(r.y)});
  }
  w.matrices = assemble(pl, sols, word);
  if (f->is_exact()) {
    xs = semisimple(w.matrices[0]);
    ys = semisimple(w.matrices[1]);
  }
  w.diagonalizable = {xs, ys};
  w.conjugators = {pl.conjugator};
  return w;
}

// X^k = A for targets whose blocks are all 1x1 (or zero).
DiagonalWitness solve_power(const Matrix& a, std::uint64_t k, std::uint64_t seed) {
  const Plan pl = plan(a, seed);
  std::vector<BlockSolution> sols;
  DiagonalWitness w;
  for (const auto& bp : pl.blocks) {
    if (bp.block.l != 1) {
      if (bp.alpha.is_zero() && k == 1) {
        sols.push_back({bp.target});
        continue;
      }
      fail(ErrorCode::NotFound, "single-term words are attempted only for semisimple targets");
    }
    std::vector<Element> roots;
    try {
      roots = kth_roots(bp.alpha, k);
    } catch (const Error& e) {
      if (!is_negative_answer(e) && e.code() != ErrorCode::UnsupportedField) throw;
    }
    if (roots.empty()) fail(ErrorCode::NotFound, bp.alpha.to_string() + " has no k-th root");
    sols.push_back({Matrix::scalar(roots[0], 1)});
    w.routes.push_back("scalar-root");
  }
  w.matrices = assemble(pl, sols, [&](const std::vector<Matrix>& xs) { return pow(xs[0], k); });
  w.diagonalizable = {true};
  w.conjugators = {pl.conjugator};
  return w;
}

}  // namespace

DiagonalWitness solve_diagonal_word(const Matrix& a, const DiagonalWordSpec& spec, std::uint64_t seed) {
  if (spec.terms.empty()) fail(ErrorCode::InvalidArgument, "diagonal word needs at least one term");
  if (!a.is_square()) fail(ErrorCode::NonSquare, "target must be square");
  const FieldPtr& f = a.field();
  const std::size_t n = a.rows();
  for (const auto& t : spec.terms) {
    require_same_field(f, t.delta.field());
    if (t.delta.is_zero()) fail(ErrorCode::InvalidArgument, "coefficients must be nonzero");
    if (t.k == 0) fail(ErrorCode::InvalidArgument, "exponents must be positive");
  }
  const std::size_t m = spec.terms.size();
  DiagonalWitness out;
  out.matrices.assign(m, Matrix(f, n, n));
  out.diagonalizable.assign(m, true);

  auto finish = [&]() {
    if (!agrees(spec.evaluate(out.matrices), a, 1e4)) fail(ErrorCode::VerificationFailed, "diagonal witness does not verify");
    return out;
  };

  if (a.is_zero()) {
    out.routes = {"zero-target"};
    return finish();
  }
  for (std::size_t i = 0; i < m; ++i) {
    if (spec.terms[i].k == 1) {
      out.matrices[i] = inv(spec.terms[i].delta) * a;
      out.diagonalizable[i] = f->is_approx() || semisimple(out.matrices[i]);
      out.routes = {"linear-term"};
      return finish();
    }
  }
  if (m == 1) {
    const DiagonalWitness w = solve_power(inv(spec.terms[0].delta) * a, spec.terms[0].k, seed);
    out.matrices[0] = w.matrices[0];
    out.conjugators = w.conjugators;
    out.routes = w.routes;
    return finish();
  }
  // The first two terms form the core; over R a later odd exponent replaces the
  // second term when both of the first two are even.
  std::size_t second = 1;
  if (f->kind() == FieldKind::Real && spec.terms[0].k % 2 == 0 && spec.terms[1].k % 2 == 0) {
    for (std::size_t i = 2; i < m; ++i) {
      if (spec.terms[i].k % 2 == 1) {
        second = i;
        break;
      }
    }
  }
  const std::size_t p = spec.terms[second].k > spec.terms[0].k ? second : 0;
  const std::size_t q = p == 0 ? second : 0;
  const Element beta = spec.terms[q].delta / spec.terms[p].delta;
  const DiagonalWitness core = solve_core(inv(spec.terms[p].delta) * a, spec.terms[p].k, spec.terms[q].k, beta, seed);
  out.matrices[p] = core.matrices[0];
  out.matrices[q] = core.matrices[1];
  out.diagonalizable[p] = core.diagonalizable[0];
  out.diagonalizable[q] = core.diagonalizable[1];
  out.conjugators = core.conjugators;
  out.routes = core.routes;
  return finish();
}

}  // namespace wordmap
