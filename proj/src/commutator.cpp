#include "wordmap/commutator.hpp"

#include <algorithm>
#include <random>

#include "wordmap/linalg.hpp"

namespace wordmap {

namespace {

void check_pair(const TraceZeroPair& pr, const Matrix& target, const char* where) {
  const bool traces = pr.t1.trace().is_zero() && pr.t2.trace().is_zero();
  if (!traces || !agrees(pr.t1 * pr.t2, target)) {
    fail(ErrorCode::VerificationFailed, std::string(where) + ": trace-zero factorization does not verify");
  }
}

TraceZeroPair conjugate(const TraceZeroPair& pr, const Matrix& g, const Matrix& ginv) {
  return {g * pr.t1 * ginv, g * pr.t2 * ginv};
}

// Moves a pair for `built` (the explicit product) onto `target` via a
// similarity.
TraceZeroPair move_to(const TraceZeroPair& pr, const Matrix& built, const Matrix& target, std::uint64_t seed) {
  if (agrees(built, target)) return pr;
  const Matrix g = solve_similarity(built, target, seed);
  return conjugate(pr, g, inverse(g));
}

Element jordan_eigenvalue(const Poly& p) { return -p.coeff(0); }

// Root of a real irreducible quadratic with positive imaginary part, in C.
Element complex_root(const FieldPtr& cf, const Poly& p) {
  const double a1 = p.coeff(1).real(), a0 = p.coeff(0).real();
  return from_complex(cf, {-a1 / 2, std::sqrt(std::max(0.0, 4 * a0 - a1 * a1)) / 2});
}

// Upper-triangular M with zero subdiagonal and zero top-right corner, size >= 2:
// M = S^{-1} * (S M) with S the superdiagonal cyclic shift; both factors have trace zero.
TraceZeroPair shift_factorization(const Matrix& m) {
  const std::size_t n = m.rows();
  Matrix s(m.field(), n, n);
  for (std::size_t i = 0; i < n; ++i) s(i, (i + 1) % n) = one(m.field());
  return {s.transpose(), s * m};
}

}  // namespace

Matrix CommutatorWitness::evaluate() const {
  if (pairs.empty()) fail(ErrorCode::InvalidArgument, "empty commutator witness");
  Matrix r = commutator(pairs[0].first, pairs[0].second);
  for (std::size_t i = 1; i < pairs.size(); ++i) r = r * commutator(pairs[i].first, pairs[i].second);
  return r;
}

TraceZeroPair two_by_two_trace_zero(const Matrix& a) {
  if (a.rows() != 2 || a.cols() != 2) fail(ErrorCode::UnhandledShape, "expected a 2x2 matrix");
  const FieldPtr& f = a.field();
  const Element o = one(f), z = zero(f);
  TraceZeroPair out;
  if (a.is_diagonal()) {
    out = {Matrix(f, {{z, a(0, 0)}, {o, z}}), Matrix(f, {{z, a(1, 1)}, {o, z}})};
  } else if (a(1, 0).is_zero() && a(0, 0) == a(1, 1) && a(0, 1).is_one()) {
    const Element& al = a(0, 0);
    out = {Matrix(f, {{o, z}, {z, -o}}), Matrix(f, {{al, o}, {z, -al}})};
  } else if (a(0, 0).is_zero() && a(1, 0).is_one() && !a(0, 1).is_zero()) {
    const Element& b = a(0, 1);
    const Element& c = a(1, 1);
    out = {Matrix(f, {{c, -b}, {o + c * c / b, -c}}), Matrix(f, {{o, z}, {c / b, -o}})};
  } else {
    fail(ErrorCode::UnhandledShape, "2x2 matrix is not diagonal, J_{a,2} or a companion with b != 0");
  }
  check_pair(out, a, "two_by_two_trace_zero");
  return out;
}

TraceZeroPair jordan_block_trace_zero(const Element& alpha, std::size_t n, std::uint64_t seed) {
  const FieldPtr& f = alpha.field();
  const Matrix target = Matrix::jordan_block(alpha, n);
  if (n < 2) fail(ErrorCode::InvalidArgument, "jordan_block_trace_zero needs n >= 2");
  if (n == 2) return two_by_two_trace_zero(target);
  TraceZeroPair out;
  if (n % 2 == 0) {
    Matrix d(f, n, n), g(f, n, n);
    for (std::size_t i = 0; i < n; ++i) {
      const Element sign = i % 2 == 0 ? one(f) : -one(f);
      d(i, i) = sign;
      g(i, i) = sign * alpha;
      if (i + 1 < n) g(i, i + 1) = sign;
    }
    out = {d, g};
  } else {
    Matrix p(f, n, n), q(f, n, n);
    for (std::size_t i = 0; i < n; ++i) p(i, (i + 1) % n) = one(f);
    q(0, n - 1) = alpha;
    for (std::size_t i = 1; i < n; ++i) {
      q(i, i - 1) = alpha;
      q(i, i) = i % 2 == 1 ? one(f) : -one(f);
    }
    out = move_to({p, q}, p * q, target, seed);
  }
  check_pair(out, target, "jordan_block_trace_zero");
  return out;
}

TraceZeroPair diagonal_trace_zero(const FieldPtr& f, const Vec& entries) {
  const std::size_t n = entries.size();
  if (n == 0) fail(ErrorCode::InvalidArgument, "empty diagonal");
  const Matrix target = Matrix::diagonal(f, entries);
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  std::vector<TraceZeroPair> parts;
  std::size_t start = 0;
  if (n % 2 == 1) {
    const auto zero_at = std::find_if(entries.begin(), entries.end(), [](const Element& e) { return e.is_zero(); });
    if (zero_at != entries.end()) {
      const auto z = static_cast<std::size_t>(zero_at - entries.begin());
      std::rotate(order.begin(), order.begin() + static_cast<long>(z), order.begin() + static_cast<long>(z) + 1);
      parts.push_back({Matrix(f, 1, 1), Matrix(f, 1, 1)});
      start = 1;
    } else if (n == 1) {
      fail(ErrorCode::UnhandledShape, "a nonzero 1x1 matrix is not a product of trace-zero matrices");
    } else {
      const Element &a1 = entries[0], &a2 = entries[1], &a3 = entries[2];
      const Element o = one(f), z = zero(f);
      parts.push_back({Matrix(f, {{z, a3, z}, {-a1, a3, z}, {z, z, -a3}}),
                       Matrix(f, {{o, -a2 / a1, z}, {a1 / a3, z, z}, {z, z, -o}})});
      start = 3;
    }
  }
  for (std::size_t i = start; i + 1 < n; i += 2) {
    const Element& a1 = entries[order[i]];
    const Element& a2 = entries[order[i + 1]];
    const Element o = one(f), z = zero(f);
    parts.push_back({Matrix(f, {{z, o}, {o, z}}), Matrix(f, {{z, a2}, {a1, z}})});
  }
  std::vector<Matrix> x, y;
  for (const auto& p : parts) {
    x.push_back(p.t1);
    y.push_back(p.t2);
  }
  // Undo the reordering that moved a zero entry to the front.
  Matrix perm(f, n, n);
  for (std::size_t i = 0; i < n; ++i) perm(order[i], i) = one(f);
  TraceZeroPair out = conjugate({Matrix::direct_sum(x), Matrix::direct_sum(y)}, perm, perm.transpose());
  check_pair(out, target, "diagonal_trace_zero");
  return out;
}

TraceZeroPair jordan_plus_scalar_trace_zero(const Element& alpha, std::size_t n, const Element& beta,
                                            std::uint64_t seed) {
  if (n < 2) fail(ErrorCode::InvalidArgument, "jordan_plus_scalar_trace_zero needs n >= 2");
  const FieldPtr& f = alpha.field();
  const Matrix target = Matrix::direct_sum({Matrix::jordan_block(alpha, n), Matrix::scalar(beta, 1)});
  const std::size_t size = n + 1;
  TraceZeroPair out;
  if (n % 2 == 1) {
    Matrix p(f, size, size), q(f, size, size);
    for (std::size_t i = 0; i < size; ++i) p(i, (i + 1) % size) = one(f);
    q(0, size - 1) = beta;
    for (std::size_t i = 1; i < size; ++i) {
      q(i, i - 1) = alpha;
      if (i < n) q(i, i) = i % 2 == 1 ? one(f) : -one(f);
    }
    out = move_to({p, q}, p * q, target, seed);
  } else {
    out = shift_factorization(target);
  }
  check_pair(out, target, "jordan_plus_scalar_trace_zero");
  return out;
}

TraceZeroPair companion_trace_zero(const Poly& p) {
  const long deg = p.degree();
  if (deg < 3 || !p.is_monic()) fail(ErrorCode::InvalidArgument, "companion_trace_zero needs a monic polynomial of degree >= 3");
  const FieldPtr& f = p.field();
  const auto n = static_cast<std::size_t>(deg);
  const Element nm2 = from_int(f, deg - 2);
  Matrix l(f, n, n), r(f, n, n);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    l(i, n - 1) = p.coeff(i);
    if (i >= 1) l(i, i) = one(f);
  }
  l(n - 1, 0) = one(f);
  l(n - 1, 1) = -one(f);
  l(n - 1, n - 1) = -nm2;
  r(0, 0) = one(f);
  r(0, n - 2) = r(0, n - 2) + one(f);
  r(0, n - 1) = -p.coeff(n - 1) - nm2;
  for (std::size_t i = 1; i + 1 < n; ++i) r(i, i - 1) = one(f);
  r(n - 1, n - 1) = -one(f);
  TraceZeroPair out{l, r};
  check_pair(out, Matrix::companion(p), "companion_trace_zero");
  return out;
}

TraceZeroPair factor_two_trace_zero(const Matrix& a, std::uint64_t seed) {
  if (!a.is_square()) fail(ErrorCode::NonSquare, "factor_two_trace_zero needs a square matrix");
  const FieldPtr& f = a.field();
  const std::size_t n = a.rows();
  if (a.is_zero()) return {Matrix(f, n, n), Matrix(f, n, n)};
  if (n < 2) fail(ErrorCode::NotFound, "a nonzero 1x1 matrix is not a product of trace-zero matrices");

  const GeneralizedJordanForm gjf = generalized_jordan_form(a, seed);
  const auto offsets = gjf.offsets();
  const Matrix& p = gjf.conjugator;
  const Matrix pinv = inverse(p);
  const Matrix realized = gjf.realize();

  if (n == 2) {
    const TraceZeroPair local = two_by_two_trace_zero(realized);
    TraceZeroPair out = conjugate(local, pinv, p);
    check_pair(out, a, "factor_two_trace_zero");
    return out;
  }

  struct Group {
    std::vector<std::size_t> blocks;  // indices into gjf.blocks, in group order
    TraceZeroPair pair;
  };
  std::vector<Group> groups;
  std::vector<std::size_t> scalars;
  std::vector<bool> used(gjf.blocks.size(), false);

  auto block_target = [&](const std::vector<std::size_t>& ids) {
    std::vector<Matrix> parts;
    for (auto id : ids) parts.push_back(gjf.blocks[id].realize());
    return Matrix::direct_sum(parts);
  };

  for (std::size_t b = 0; b < gjf.blocks.size(); ++b) {
    const auto& blk = gjf.blocks[b];
    if (blk.l == 1 && blk.degree() == 1) scalars.push_back(b);
  }
  // A lone scalar is merged with another block.
  std::optional<std::size_t> partner;
  if (scalars.size() == 1 && !jordan_eigenvalue(gjf.blocks[scalars[0]].p).is_zero()) {
    for (std::size_t b = 0; b < gjf.blocks.size() && !partner; ++b) {
      if (gjf.blocks[b].degree() == 1 && gjf.blocks[b].l >= 2) partner = b;
    }
    for (std::size_t b = 0; b < gjf.blocks.size() && !partner; ++b) {
      if (gjf.blocks[b].degree() >= 2) partner = b;
    }
    if (!partner) fail(ErrorCode::UnhandledShape, "no block to merge a lone scalar with");
    const auto& blk = gjf.blocks[*partner];
    const Element beta = jordan_eigenvalue(gjf.blocks[scalars[0]].p);
    const std::vector<std::size_t> ids{*partner, scalars[0]};
    const Matrix target = block_target(ids);
    TraceZeroPair pr;
    if (blk.degree() == 1) {
      pr = jordan_plus_scalar_trace_zero(jordan_eigenvalue(blk.p), blk.l, beta, seed);
    } else {
      // J_{p,l} (+) (beta) is cyclic with characteristic polynomial p^l (T - beta).
      const Poly q = pow(blk.p, blk.l) * Poly(f, {-beta, one(f)});
      const Matrix comp = Matrix::companion(q);
      const TraceZeroPair cp = q.degree() >= 3 ? companion_trace_zero(q) : two_by_two_trace_zero(comp);
      pr = move_to(cp, comp, target, seed);
    }
    groups.push_back({ids, pr});
    used[*partner] = used[scalars[0]] = true;
  } else if (!scalars.empty()) {
    Vec entries;
    for (auto s : scalars) {
      entries.push_back(jordan_eigenvalue(gjf.blocks[s].p));
      used[s] = true;
    }
    groups.push_back({scalars, diagonal_trace_zero(f, entries)});
  }

  for (std::size_t b = 0; b < gjf.blocks.size(); ++b) {
    if (used[b]) continue;
    const auto& blk = gjf.blocks[b];
    const std::size_t d = blk.degree();
    TraceZeroPair pr;
    if (d == 1) {
      pr = jordan_block_trace_zero(jordan_eigenvalue(blk.p), blk.l, seed);
    } else if (blk.l == 1) {
      const Matrix comp = Matrix::companion(blk.p);
      pr = d >= 3 ? companion_trace_zero(blk.p) : two_by_two_trace_zero(comp);
    } else if (f->kind() == FieldKind::Real) {
      const FieldPtr cf = Field::complex(f->tolerance());
      const TraceZeroPair lp = jordan_block_trace_zero(complex_root(cf, blk.p), blk.l, seed);
      pr = {companion_lift(lp.t1, blk.p), companion_lift(lp.t2, blk.p)};
    } else {
      const Extension ext = extend(f, blk.p);
      const TraceZeroPair lp = jordan_block_trace_zero(ext.generator, blk.l, seed);
      pr = {companion_lift(lp.t1, blk.p), companion_lift(lp.t2, blk.p)};
    }
    groups.push_back({{b}, pr});
  }

  // Reorder the Jordan basis so each group occupies a contiguous range.
  std::vector<std::size_t> order;
  std::vector<Matrix> xs, ys;
  for (const auto& g : groups) {
    for (auto id : g.blocks) {
      for (std::size_t i = 0; i < gjf.blocks[id].size(); ++i) order.push_back(offsets[id] + i);
    }
    xs.push_back(g.pair.t1);
    ys.push_back(g.pair.t2);
  }
  Matrix perm(f, n, n);
  for (std::size_t i = 0; i < n; ++i) perm(order[i], i) = one(f);
  const Matrix g = pinv * perm;
  const Matrix ginv = perm.transpose() * p;
  TraceZeroPair out = conjugate({Matrix::direct_sum(xs), Matrix::direct_sum(ys)}, g, ginv);
  check_pair(out, a, "factor_two_trace_zero");
  return out;
}

namespace {

// Conjugates T (trace zero, not a nonzero scalar) to a zero-diagonal matrix.
// Returns P with P*T*P^{-1} zero on the diagonal.
std::optional<Matrix> zero_diagonal_conjugator(const Matrix& t, std::mt19937_64& rng, bool random_first) {
  const FieldPtr& f = t.field();
  const std::size_t n = t.rows();
  Matrix m = t;
  Matrix p = Matrix::identity(f, n);
  auto is_nonzero_scalar = [](const Matrix& b) {
    if (!b.is_diagonal()) return false;
    for (std::size_t i = 1; i < b.rows(); ++i) {
      if (b(i, i) != b(0, 0)) return false;
    }
    return !b(0, 0).is_zero();
  };
  for (std::size_t k = 0; k + 1 < n; ++k) {
    const std::size_t size = n - k;
    const Matrix b = m.block(k, k, size, size);
    bool diag_zero = true;
    for (std::size_t i = 0; i < size; ++i) diag_zero = diag_zero && b(i, i).is_zero();
    if (diag_zero) break;
    if (is_nonzero_scalar(b)) return std::nullopt;
    std::vector<Vec> candidates;
    if (random_first) {
      for (int r = 0; r < 8; ++r) {
        Vec e;
        for (std::size_t i = 0; i < size; ++i) e.push_back(random_element(f, rng));
        candidates.push_back(e);
      }
    }
    for (std::size_t j = 0; j < size; ++j) {
      Vec e(size, zero(f));
      e[j] = one(f);
      candidates.push_back(e);
    }
    for (std::size_t j = 0; j < size; ++j) {
      for (std::size_t l = j + 1; l < size; ++l) {
        Vec e(size, zero(f));
        e[j] = e[l] = one(f);
        candidates.push_back(e);
      }
    }
    for (int r = 0; r < 32; ++r) {
      Vec e;
      for (std::size_t i = 0; i < size; ++i) e.push_back(random_element(f, rng));
      candidates.push_back(e);
    }
    bool advanced = false;
    for (const auto& v : candidates) {
      const Vec bv = b * v;
      std::vector<Vec> cols{v, bv};
      if (rank(from_columns(f, cols)) < 2) continue;
      for (std::size_t j = 0; j < size && cols.size() < size; ++j) {
        Vec e(size, zero(f));
        e[j] = one(f);
        cols.push_back(e);
        if (rank(from_columns(f, cols)) < cols.size()) cols.pop_back();
      }
      const Matrix q = from_columns(f, cols);
      const Matrix qinv = inverse(q);
      const Matrix nb = qinv * b * q;
      if (size > 2 && is_nonzero_scalar(nb.block(1, 1, size - 1, size - 1))) continue;
      Matrix big = Matrix::identity(f, n), biginv = Matrix::identity(f, n);
      big.set_block(k, k, qinv);
      biginv.set_block(k, k, q);
      m = big * m * biginv;
      p = big * p;
      advanced = true;
      break;
    }
    if (!advanced) return std::nullopt;
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!m(i, i).is_zero()) return std::nullopt;
  }
  return p;
}

std::optional<Matrix> solve_ad(const Matrix& x, const Matrix& t) {
  const FieldPtr& f = t.field();
  const std::size_t n = t.rows();
  // (XY - YX)_{ij} = sum_k X_ik Y_kj - Y_ik X_kj, unknowns vec(Y).
  Matrix sys(f, n * n, n * n);
  Vec rhs;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const std::size_t eq = i * n + j;
      for (std::size_t k = 0; k < n; ++k) {
        sys(eq, k * n + j) += x(i, k);
        sys(eq, i * n + k) -= x(k, j);
      }
      rhs.push_back(t(i, j));
    }
  }
  const auto sol = solve(sys, rhs);
  if (!sol) return std::nullopt;
  Matrix y(f, n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) y(i, j) = (*sol)[i * n + j];
  }
  if (!agrees(commutator(x, y), t)) return std::nullopt;
  return y;
}

}  // namespace

std::pair<Matrix, Matrix> trace_zero_to_commutator(const Matrix& t, std::uint64_t seed) {
  if (!t.is_square()) fail(ErrorCode::NonSquare, "trace_zero_to_commutator needs a square matrix");
  if (!t.trace().is_zero()) fail(ErrorCode::NonzeroTrace, "target has nonzero trace");
  const FieldPtr& f = t.field();
  const std::size_t n = t.rows();
  if (t.is_zero()) return {Matrix(f, n, n), Matrix(f, n, n)};
  std::mt19937_64 rng(seed ^ 0x94d049bb133111ebULL);

  const bool enough_elements = !f->is_finite() || *f->cardinality() >= n;
  if (enough_elements) {
    // Approximate kinds retry with random bases and keep the best residual.
    const int attempts = f->is_approx() ? 8 : 1;
    std::optional<std::pair<Matrix, Matrix>> best;
    double best_err = 0;
    for (int attempt = 0; attempt < attempts; ++attempt) {
      const auto p = zero_diagonal_conjugator(t, rng, attempt > 0);
      if (!p) continue;
      const Matrix pinv = inverse(*p);
      const Matrix z = *p * t * pinv;
      Vec d;
      if (f->is_finite()) {
        for (std::uint64_t i = 0; i < n; ++i) d.push_back(element_at(f, i));
      } else {
        for (std::size_t i = 0; i < n; ++i) d.push_back(from_int(f, static_cast<long long>(i)));
      }
      Matrix b(f, n, n);
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
          if (i != j) b(i, j) = z(i, j) / (d[i] - d[j]);
        }
      }
      Matrix x = pinv * Matrix::diagonal(f, d) * *p;
      Matrix y = pinv * b * *p;
      if (!f->is_approx()) {
        if (commutator(x, y) == t) return {x, y};
        continue;
      }
      const double err = max_abs_diff(commutator(x, y), t) * (1 + x.max_abs()) * (1 + y.max_abs());
      if (!best || err < best_err) {
        best_err = err;
        best.emplace(std::move(x), std::move(y));
      }
      if (agrees(commutator(best->first, best->second), t, 1.0)) break;
    }
    if (best && agrees(commutator(best->first, best->second), t)) return *best;
  }
  // ad_X is onto {T : tr(T X^k) = 0 for all k} when X is cyclic, so random X
  // are screened on those traces before the linear solve.
  auto screened = [&](const Matrix& x) {
    Matrix w = t;
    for (std::size_t k = 1; k < n; ++k) {
      w = w * x;
      if (!w.trace().is_zero()) return false;
    }
    return true;
  };
  std::vector<Matrix> xs{Matrix::cyclic_shift(f, n), Matrix::jordan_block(zero(f), n)};
  for (const auto& x : xs) {
    if (auto y = solve_ad(x, t)) return {x, *y};
  }
  const std::size_t n4 = n * n * n * n;
  const std::size_t budget = std::max<std::size_t>(64, std::size_t{100000000} / std::max<std::size_t>(n4, 1));
  std::size_t solves = 0;
  for (std::size_t r = 0; r < budget && solves < 256; ++r) {
    Matrix x(f, n, n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) x(i, j) = random_element(f, rng);
    }
    if (f->is_exact() && !screened(x)) continue;
    ++solves;
    if (auto y = solve_ad(x, t)) return {x, *y};
  }
  if (f->is_finite()) {
    const std::uint64_t q = *f->cardinality();
    std::uint64_t total = 1;
    bool small = true;
    for (std::size_t i = 0; i < n * n && small; ++i) {
      if (total > (std::uint64_t{1} << 16) / q) small = false;
      total *= q;
    }
    if (small) {
      for (std::uint64_t idx = 0; idx < total; ++idx) {
        Matrix x(f, n, n);
        std::uint64_t v = idx;
        for (std::size_t i = 0; i < n; ++i) {
          for (std::size_t j = 0; j < n; ++j) {
            x(i, j) = element_at(f, v % q);
            v /= q;
          }
        }
        if (auto y = solve_ad(x, t)) return {x, *y};
      }
    }
  }
  fail(ErrorCode::WitnessNotFound, "no commutator witness found for the trace-zero target");
}

CommutatorWitness solve_commutator_product(const Matrix& a, std::size_t m, std::uint64_t seed) {
  if (m < 2 || m % 2 != 0) fail(ErrorCode::InvalidArgument, "commutator word length must be even and >= 2");
  if (!a.is_square()) fail(ErrorCode::NonSquare, "target must be square");
  const FieldPtr& f = a.field();
  const std::size_t n = a.rows();
  CommutatorWitness w;
  if (m == 2) {
    auto [x, y] = trace_zero_to_commutator(a, seed);
    w.pairs.emplace_back(std::move(x), std::move(y));
  } else {
    if (n == 1 && !a.is_zero()) fail(ErrorCode::NotFound, "1x1 commutators vanish; nonzero target unreachable");
    Matrix rest = a;
    if (m > 4 && n >= 2) {
      const std::size_t t = (m - 4) / 2;
      const Matrix c = Matrix::cyclic_shift(f, n);
      const auto cpair = trace_zero_to_commutator(c, seed);
      for (std::size_t i = 0; i < t; ++i) w.pairs.push_back(cpair);
      rest = pow(inverse(c), t) * a;
    } else if (m > 4) {
      for (std::size_t i = 0; i < (m - 4) / 2; ++i) w.pairs.emplace_back(Matrix(f, 1, 1), Matrix(f, 1, 1));
    }
    const TraceZeroPair tz = factor_two_trace_zero(rest, seed);
    w.pairs.push_back(trace_zero_to_commutator(tz.t1, seed));
    w.pairs.push_back(trace_zero_to_commutator(tz.t2, seed));
  }
  if (!agrees(w.evaluate(), a)) fail(ErrorCode::VerificationFailed, "commutator witness does not verify");
  return w;
}

}  // namespace wordmap
