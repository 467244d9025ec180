#include "wordmap/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>

#include "wordmap/factor.hpp"

namespace wordmap {

namespace {

void require_square(const Matrix& a, const char* what) {
  if (!a.is_square()) fail(ErrorCode::NonSquare, std::string(what) + " needs a square matrix");
}

// Approximate comparison threshold used when checking constructed conjugations.
bool close_enough(const Matrix& a, const Matrix& b, double scale) {
  if (a.field()->is_exact()) return a == b;
  return max_abs_diff(a, b) <= 1e4 * a.field()->tolerance() * std::max(1.0, scale);
}

std::size_t rank_of(const FieldPtr& f, const std::vector<Vec>& vs) {
  if (vs.empty()) return 0;
  return rank(from_columns(f, vs));
}

Vec random_vec(const FieldPtr& f, std::size_t n, std::mt19937_64& rng) {
  Vec v;
  for (std::size_t i = 0; i < n; ++i) v.push_back(random_element(f, rng));
  return v;
}

std::optional<Matrix> krylov(const Matrix& a, const Vec& v) {
  std::vector<Vec> cols{v};
  for (std::size_t i = 1; i < a.rows(); ++i) cols.push_back(a * cols.back());
  const Matrix k = from_columns(a.field(), cols);
  if (rank(k) < a.rows()) return std::nullopt;
  return k;
}

std::optional<Matrix> cyclic_basis(const Matrix& a, std::mt19937_64& rng) {
  const std::size_t n = a.rows();
  const FieldPtr& f = a.field();
  Vec sum(n, one(f));
  if (auto k = krylov(a, sum)) return k;
  for (std::size_t j = n; j-- > 0;) {
    Vec e(n, zero(f));
    e[j] = one(f);
    if (auto k = krylov(a, e)) return k;
  }
  for (int t = 0; t < 24; ++t) {
    if (auto k = krylov(a, random_vec(f, n, rng))) return k;
  }
  return std::nullopt;
}

Matrix vec_to_matrix(const FieldPtr& f, const Vec& v, std::size_t n) {
  Matrix m(f, n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) m(i, j) = v[i * n + j];
  }
  return m;
}

struct ChainData {
  // generators[s] = vectors generating chains of length s.
  std::map<std::size_t, std::vector<Vec>, std::greater<>> generators;
};

// Kernel-filtration chain selection inside the subspace spanned by `space`
// (columns). With a semisimple part S of minimal polynomial degree d on that
// subspace, generators are chosen modulo S-stable spans.
ChainData select_chains(const Matrix& nil, const Matrix& space, const Matrix* s, std::size_t d) {
  const FieldPtr& f = nil.field();
  const std::size_t dim = space.cols();
  std::vector<std::vector<Vec>> w{{}};  // w[j] = basis of ker N^j within the space
  Matrix nj = space;
  while (w.back().size() < dim) {
    if (w.size() > dim + 1) fail(ErrorCode::NotNilpotent, "matrix is not nilpotent on the subspace");
    nj = nil * nj;
    std::vector<Vec> basis;
    for (const auto& c : nullspace(nj)) basis.push_back(space * c);
    w.push_back(std::move(basis));
  }
  const std::size_t top = w.size() - 1;
  ChainData out;
  auto s_orbit = [&](const Vec& v) {
    std::vector<Vec> orbit{v};
    for (std::size_t r = 1; r < d; ++r) orbit.push_back((*s) * orbit.back());
    return orbit;
  };
  for (std::size_t level = top; level >= 1; --level) {
    std::vector<Vec> span = w[level - 1];
    for (const auto& [t, gens] : out.generators) {
      for (const auto& g : gens) {
        Vec v = g;
        for (std::size_t i = level; i < t; ++i) v = nil * v;
        for (auto& u : (d > 1 ? s_orbit(v) : std::vector<Vec>{v})) span.push_back(std::move(u));
      }
    }
    std::size_t current = rank_of(f, span);
    for (const auto& cand : w[level]) {
      if (current >= w[level].size()) break;
      span.push_back(cand);
      const std::size_t r = rank_of(f, span);
      span.pop_back();
      if (r == current) continue;
      out.generators[level].push_back(cand);
      if (d > 1) {
        for (auto& u : s_orbit(cand)) span.push_back(std::move(u));
      } else {
        span.push_back(cand);
      }
      current = rank_of(f, span);
    }
    if (current != w[level].size()) fail(ErrorCode::FactorizationUnavailable, "chain selection failed to span a kernel level");
  }
  return out;
}

// Clusters numerical roots; cluster means are accurate for multiple roots.
std::vector<std::pair<std::complex<double>, unsigned>> cluster_roots(std::vector<std::complex<double>> roots) {
  std::vector<std::pair<std::complex<double>, unsigned>> out;
  std::vector<bool> used(roots.size(), false);
  for (std::size_t i = 0; i < roots.size(); ++i) {
    if (used[i]) continue;
    std::complex<double> sum = roots[i];
    unsigned count = 1;
    used[i] = true;
    for (std::size_t j = i + 1; j < roots.size(); ++j) {
      if (!used[j] && std::abs(roots[j] - roots[i]) <= 1e-4 * std::max(1.0, std::abs(roots[i]))) {
        used[j] = true;
        sum += roots[j];
        ++count;
      }
    }
    out.emplace_back(sum / static_cast<double>(count), count);
  }
  return out;
}

// Newton on the (m-1)-th derivative, where an m-fold root is simple.
std::complex<double> polish_root(const Poly& p, std::complex<double> z, unsigned m) {
  std::vector<std::complex<double>> c;
  for (const auto& e : p.coeffs()) {
    c.push_back(e.field()->kind() == FieldKind::Complex ? e.complex() : std::complex<double>(e.real(), 0.0));
  }
  for (unsigned k = 1; k < m; ++k) {
    std::vector<std::complex<double>> d;
    for (std::size_t i = 1; i < c.size(); ++i) d.push_back(c[i] * static_cast<double>(i));
    c = std::move(d);
  }
  for (int it = 0; it < 8; ++it) {
    std::complex<double> v = 0.0, dv = 0.0;
    for (std::size_t i = c.size(); i-- > 0;) {
      dv = dv * z + v;
      v = v * z + c[i];
    }
    if (std::abs(dv) == 0.0) break;
    const auto step = v / dv;
    z -= step;
    if (std::abs(step) <= 1e-16 * std::max(1.0, std::abs(z))) break;
  }
  return z;
}

}  // namespace

std::string partition_string(const Partition& p) {
  std::string s = "(";
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(p[i]);
  }
  return s + ")";
}

Poly charpoly(const Matrix& a) {
  require_square(a, "charpoly");
  const FieldPtr& f = a.field();
  const std::size_t n = a.rows();
  // Coefficients highest degree first.
  std::vector<Element> c{one(f)};
  if (n == 0) return Poly::constant(one(f));
  c.push_back(-a(0, 0));
  for (std::size_t r = 1; r < n; ++r) {
    const Matrix m = a.block(0, 0, r, r);
    const Vec row = a.row(r);
    Vec col = a.block(0, r, r, 1).col(0);
    std::vector<Element> t{one(f), -a(r, r)};
    for (std::size_t k = 0; k < r; ++k) {
      Element dot = zero(f);
      for (std::size_t i = 0; i < r; ++i) dot += row[i] * col[i];
      t.push_back(-dot);
      col = m * col;
    }
    std::vector<Element> next(r + 2, zero(f));
    for (std::size_t i = 0; i < r + 2; ++i) {
      for (std::size_t j = 0; j <= std::min(i, r); ++j) next[i] += t[i - j] * c[j];
    }
    c = std::move(next);
  }
  std::reverse(c.begin(), c.end());
  return Poly(f, std::move(c));
}

Poly minpoly(const Matrix& a) {
  require_square(a, "minpoly");
  const FieldPtr& f = a.field();
  const std::size_t n = a.rows();
  std::vector<Vec> cols;
  Matrix power = Matrix::identity(f, n);
  for (std::size_t i = 0; i <= n; ++i) {
    Vec v;
    for (std::size_t r = 0; r < n; ++r) {
      for (std::size_t c = 0; c < n; ++c) v.push_back(power(r, c));
    }
    cols.push_back(std::move(v));
    const auto ns = nullspace(from_columns(f, cols));
    if (!ns.empty()) {
      const Vec& dep = ns[0];
      return Poly(f, dep).monic();
    }
    power = power * a;
  }
  fail(ErrorCode::VerificationFailed, "no Krylov dependency found");
}

Matrix solve_similarity(const Matrix& a, const Matrix& b, std::uint64_t seed) {
  require_square(a, "solve_similarity");
  require_square(b, "solve_similarity");
  require_same_field(a.field(), b.field());
  if (a.rows() != b.rows()) fail(ErrorCode::NotSimilar, "matrices of different sizes");
  const FieldPtr& f = a.field();
  const std::size_t n = a.rows();
  const double scale = std::max(a.max_abs(), b.max_abs());
  if (a == b) return Matrix::identity(f, n);
  if (charpoly(a) != charpoly(b)) fail(ErrorCode::NotSimilar, "characteristic polynomials differ");
  std::mt19937_64 rng(seed ^ 0x2545f4914f6cdd1dULL);
  auto accept = [&](const Matrix& p) -> std::optional<Matrix> {
    if (rank(p) < n) return std::nullopt;
    if (!close_enough(p * a, b * p, scale * std::max(1.0, p.max_abs()))) return std::nullopt;
    return p;
  };
  if (auto ka = cyclic_basis(a, rng)) {
    if (auto kb = cyclic_basis(b, rng)) {
      if (auto p = accept(*kb * inverse(*ka))) return *p;
    }
  }
  // P*A - B*P = 0 as a linear system in vec(P).
  const std::size_t nn = n * n;
  Matrix sys(f, nn, nn);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const std::size_t eq = i * n + j;
      for (std::size_t k = 0; k < n; ++k) {
        sys(eq, i * n + k) += a(k, j);
        sys(eq, k * n + j) -= b(i, k);
      }
    }
  }
  const auto basis = nullspace(sys);
  if (basis.empty()) fail(ErrorCode::NotSimilar, "no intertwining matrix");
  auto combine = [&](const std::vector<Element>& coeffs) {
    Vec v(nn, zero(f));
    for (std::size_t t = 0; t < basis.size(); ++t) {
      if (coeffs[t].is_zero()) continue;
      for (std::size_t i = 0; i < nn; ++i) v[i] += coeffs[t] * basis[t][i];
    }
    return vec_to_matrix(f, v, n);
  };
  {
    std::vector<Element> all(basis.size(), one(f));
    if (auto p = accept(combine(all))) return *p;
  }
  for (const auto& v : basis) {
    if (auto p = accept(vec_to_matrix(f, v, n))) return *p;
  }
  for (int t = 0; t < 32; ++t) {
    std::vector<Element> coeffs;
    for (std::size_t i = 0; i < basis.size(); ++i) coeffs.push_back(random_element(f, rng));
    if (auto p = accept(combine(coeffs))) return *p;
  }
  if (f->is_finite() && basis.size() <= 16) {
    const std::uint64_t q = *f->cardinality();
    std::uint64_t total = 1;
    bool small = true;
    for (std::size_t i = 0; i < basis.size() && small; ++i) {
      if (total > (std::uint64_t{1} << 20) / q) small = false;
      total *= q;
    }
    if (small) {
      for (std::uint64_t idx = 1; idx < total; ++idx) {
        std::vector<Element> coeffs;
        std::uint64_t t = idx;
        for (std::size_t i = 0; i < basis.size(); ++i) {
          coeffs.push_back(element_at(f, t % q));
          t /= q;
        }
        if (auto p = accept(combine(coeffs))) return *p;
      }
    }
  }
  fail(ErrorCode::NotSimilar, "no invertible intertwiner found");
}

Partition nilpotent_partition(const Matrix& a) {
  require_square(a, "nilpotent_partition");
  const std::size_t n = a.rows();
  std::vector<std::size_t> ranks{n};
  Matrix p = Matrix::identity(a.field(), n);
  for (std::size_t s = 1; s <= n + 1; ++s) {
    p = p * a;
    ranks.push_back(rank(p));
  }
  if (ranks[n] != 0) fail(ErrorCode::NotNilpotent, "matrix is not nilpotent");
  Partition parts;
  for (std::size_t s = 1; s <= n; ++s) {
    const long mult = static_cast<long>(ranks[s - 1]) - 2 * static_cast<long>(ranks[s]) + static_cast<long>(ranks[s + 1]);
    for (long i = 0; i < mult; ++i) parts.push_back(s);
  }
  return parts;
}

Matrix nilpotent_chain_basis(const Matrix& nil, const Partition& order) {
  require_square(nil, "nilpotent_chain_basis");
  const FieldPtr& f = nil.field();
  const std::size_t n = nil.rows();
  ChainData chains = select_chains(nil, Matrix::identity(f, n), nullptr, 1);
  std::map<std::size_t, std::size_t> next;
  std::vector<Vec> cols;
  for (std::size_t s : order) {
    auto it = chains.generators.find(s);
    if (it == chains.generators.end() || next[s] >= it->second.size()) {
      fail(ErrorCode::NotSimilar, "requested block order does not match the nilpotent partition");
    }
    const Vec g = it->second[next[s]++];
    std::vector<Vec> chain{g};
    for (std::size_t i = 1; i < s; ++i) chain.push_back(nil * chain.back());
    for (std::size_t i = s; i-- > 0;) cols.push_back(chain[i]);
  }
  if (cols.size() != n) fail(ErrorCode::NotSimilar, "requested block order does not cover the space");
  return from_columns(f, cols);
}

Matrix GeneralizedJordanForm::realize() const {
  std::vector<Matrix> parts;
  for (const auto& b : blocks) parts.push_back(b.realize());
  return Matrix::direct_sum(parts);
}

std::vector<std::size_t> GeneralizedJordanForm::offsets() const {
  std::vector<std::size_t> out;
  std::size_t o = 0;
  for (const auto& b : blocks) {
    out.push_back(o);
    o += b.size();
  }
  return out;
}

std::vector<std::pair<Poly, unsigned>> charpoly_factors(const Matrix& a, std::uint64_t seed) {
  const FieldPtr& f = a.field();
  const Poly cp = charpoly(a);
  std::vector<std::pair<Poly, unsigned>> out;
  if (f->is_approx()) {
    const bool real = f->kind() == FieldKind::Real;
    for (auto [root, mult] : cluster_roots(approx_roots(cp))) {
      root = polish_root(cp, root, mult);
      const double im_tol = 1e-6 * std::max(1.0, std::abs(root));
      if (!real) {
        out.emplace_back(Poly(f, {from_complex(f, -root), one(f)}), mult);
      } else if (std::abs(root.imag()) <= im_tol) {
        out.emplace_back(Poly(f, {from_double(f, -root.real()), one(f)}), mult);
      } else if (root.imag() > 0) {
        out.emplace_back(Poly(f, {from_double(f, std::norm(root)), from_double(f, -2.0 * root.real()), one(f)}), mult);
      }
    }
    return out;
  }
  if (!(f->is_finite() || f->kind() == FieldKind::Rationals)) {
    fail(ErrorCode::FactorizationUnavailable, "no factorization over " + f->spec());
  }
  for (const auto& t : factor(cp, seed).factors) out.emplace_back(t.poly, t.multiplicity);
  return out;
}

GeneralizedJordanForm generalized_jordan_form(const Matrix& a, std::uint64_t seed) {
  require_square(a, "generalized_jordan_form");
  const FieldPtr& f = a.field();
  const std::size_t n = a.rows();
  const double scale = std::max(1.0, a.max_abs());
  const auto factors = charpoly_factors(a, seed);
  Poly sqfree = Poly::constant(one(f));
  for (const auto& [p, mult] : factors) {
    if (f->is_exact() && gcd(p, p.derivative()).degree() > 0) {
      fail(ErrorCode::InseparableCharPoly, "irreducible factor " + p.to_string() + " is inseparable");
    }
    sqfree = sqfree * p;
  }
  // Semisimple part by Newton iteration on the squarefree part.
  Matrix s = a;
  const Poly dsq = sqfree.derivative();
  for (int iter = 0; iter < 64; ++iter) {
    const Matrix ps = evaluate(sqfree, s);
    if (ps.is_zero()) break;
    if (f->is_approx() && ps.max_abs() <= 1e-14 * std::pow(scale, static_cast<double>(sqfree.degree()))) break;
    const auto dinv = try_inverse(evaluate(dsq, s));
    if (!dinv) fail(ErrorCode::FactorizationUnavailable, "Newton step for the semisimple part is singular");
    s = s - ps * *dinv;
  }
  const Matrix nil = a - s;

  GeneralizedJordanForm out;
  out.approximate = f->is_approx();
  std::vector<Vec> cols;
  for (const auto& [p, mult] : factors) {
    const std::size_t d = static_cast<std::size_t>(p.degree());
    const Matrix pa = pow(evaluate(p, a), mult);
    const auto kb = nullspace(pa);
    if (kb.size() != d * mult) {
      fail(ErrorCode::FactorizationUnavailable, "primary component of " + p.to_string() + " has unexpected dimension");
    }
    const Matrix space = from_columns(f, kb);
    const ChainData chains = select_chains(nil, space, &s, d);
    for (const auto& [level, gens] : chains.generators) {
      for (const auto& w : gens) {
        out.blocks.push_back({p, level});
        std::vector<Vec> orbit{w};
        for (std::size_t r = 1; r < d; ++r) orbit.push_back(s * orbit.back());
        for (std::size_t i = 1; i <= level; ++i) {
          for (std::size_t r = 0; r < d; ++r) {
            Vec v = orbit[r];
            for (std::size_t t = 0; t < level - i; ++t) v = nil * v;
            cols.push_back(std::move(v));
          }
        }
      }
    }
  }
  if (cols.size() != n) fail(ErrorCode::FactorizationUnavailable, "Jordan basis has the wrong size");
  const Matrix q = from_columns(f, cols);
  const auto qinv = try_inverse(q);
  if (!qinv) fail(ErrorCode::FactorizationUnavailable, "Jordan basis is singular");
  out.conjugator = *qinv;
  if (!close_enough(out.conjugator * a * q, out.realize(), scale * std::max(1.0, q.max_abs() * qinv->max_abs()))) {
    fail(ErrorCode::FactorizationUnavailable, "generalized Jordan conjugation does not verify");
  }
  return out;
}

Matrix companion_lift(const Matrix& w, const Poly& p) {
  const FieldPtr& wf = w.field();
  const FieldPtr& kf = p.field();
  const auto d = static_cast<std::size_t>(p.degree());
  if (wf->kind() == FieldKind::Complex && kf->kind() == FieldKind::Real) {
    Matrix out(kf, w.rows() * d, w.cols() * d);
    if (d == 1) {
      for (std::size_t i = 0; i < w.rows(); ++i) {
        for (std::size_t j = 0; j < w.cols(); ++j) out(i, j) = from_double(kf, w(i, j).complex().real());
      }
      return out;
    }
    if (d != 2) fail(ErrorCode::DescriptorMismatch, "complex lift needs a real quadratic");
    const double a1 = p.coeff(1).real(), a0 = p.coeff(0).real();
    const double disc = 4 * a0 - a1 * a1;
    if (disc <= 0) fail(ErrorCode::DescriptorMismatch, "quadratic has real roots");
    const std::complex<double> lambda(-a1 / 2, std::sqrt(disc) / 2);
    for (std::size_t i = 0; i < w.rows(); ++i) {
      for (std::size_t j = 0; j < w.cols(); ++j) {
        const auto c = w(i, j).complex();
        const double v = c.imag() / lambda.imag();
        const double u = c.real() - v * lambda.real();
        out(2 * i, 2 * j) = from_double(kf, u);
        out(2 * i, 2 * j + 1) = from_double(kf, -v * a0);
        out(2 * i + 1, 2 * j) = from_double(kf, v);
        out(2 * i + 1, 2 * j + 1) = from_double(kf, u - v * a1);
      }
    }
    return out;
  }
  if (same_field(wf, kf) && d == 1) {
    return w;
  }
  if (wf->kind() != FieldKind::Extension || !same_field(wf->base(), kf) || wf->modulus().size() != p.coeffs().size()) {
    fail(ErrorCode::DescriptorMismatch, "matrix field is not K[x]/(p)");
  }
  for (std::size_t i = 0; i < p.coeffs().size(); ++i) {
    if (wf->modulus()[i] != p.coeffs()[i]) fail(ErrorCode::DescriptorMismatch, "extension modulus differs from p");
  }
  const Matrix c = Matrix::companion(p);
  std::vector<Matrix> powers{Matrix::identity(kf, d)};
  for (std::size_t i = 1; i < d; ++i) powers.push_back(powers.back() * c);
  Matrix out(kf, w.rows() * d, w.cols() * d);
  for (std::size_t i = 0; i < w.rows(); ++i) {
    for (std::size_t j = 0; j < w.cols(); ++j) {
      Matrix blk(kf, d, d);
      const auto& co = w(i, j).coeffs();
      for (std::size_t t = 0; t < d; ++t) {
        if (!co[t].is_zero()) blk = blk + co[t] * powers[t];
      }
      out.set_block(i * d, j * d, blk);
    }
  }
  return out;
}

Matrix embed_matrix(const FieldPtr& target, const Matrix& m) {
  if (same_field(target, m.field())) return m;
  Matrix out(target, m.rows(), m.cols());
  const bool real_to_complex = target->kind() == FieldKind::Complex && m.field()->kind() == FieldKind::Real;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      out(i, j) = real_to_complex ? from_complex(target, {m(i, j).real(), 0.0}) : embed(target, m(i, j));
    }
  }
  return out;
}

Matrix real_part(const FieldPtr& real_field, const Matrix& m) {
  Matrix out(real_field, m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = from_double(real_field, m(i, j).complex().real());
  }
  return out;
}

}  // namespace wordmap
