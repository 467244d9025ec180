#include "wordmap/factor.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <random>

namespace wordmap {

namespace {

using cd = std::complex<double>;

Poly one_poly(const FieldPtr& f) { return Poly::constant(one(f)); }

bool coeff_less(const Element& a, const Element& b) {
  const FieldPtr& f = a.field();
  if (f->is_finite()) return index_of(a) < index_of(b);
  if (f->kind() == FieldKind::Rationals) return a.rational() < b.rational();
  return a.to_string() < b.to_string();
}

bool poly_less(const Poly& a, const Poly& b) {
  if (a.degree() != b.degree()) return a.degree() < b.degree();
  for (std::size_t i = 0; i < a.coeffs().size(); ++i) {
    if (a.coeffs()[i] == b.coeffs()[i]) continue;
    return coeff_less(a.coeffs()[i], b.coeffs()[i]);
  }
  return false;
}

void sort_terms(std::vector<FactorTerm>& terms) {
  std::sort(terms.begin(), terms.end(), [](const FactorTerm& x, const FactorTerm& y) {
    if (x.poly == y.poly) return x.multiplicity < y.multiplicity;
    return poly_less(x.poly, y.poly);
  });
}

// Merges equal factors, adding multiplicities.
std::vector<FactorTerm> merge_terms(std::vector<FactorTerm> terms) {
  sort_terms(terms);
  std::vector<FactorTerm> out;
  for (auto& t : terms) {
    if (!out.empty() && out.back().poly == t.poly) {
      out.back().multiplicity += t.multiplicity;
    } else {
      out.push_back(std::move(t));
    }
  }
  return out;
}

// p-th root of a polynomial whose exponents are all multiples of p (finite fields).
Poly pth_root(const Poly& c) {
  const FieldPtr& f = c.field();
  const auto p = static_cast<std::size_t>(f->characteristic());
  const std::uint64_t exponent = *f->cardinality() / static_cast<std::uint64_t>(p);
  std::vector<Element> out;
  for (std::size_t i = 0; i < c.coeffs().size(); i += p) out.push_back(pow(c.coeffs()[i], exponent));
  return Poly(f, std::move(out));
}

std::vector<FactorTerm> squarefree_finite(const Poly& f_in) {
  std::vector<FactorTerm> out;
  const Poly f = f_in.monic();
  if (f.degree() <= 0) return out;
  const Poly d = f.derivative();
  if (d.is_zero()) {
    for (auto t : squarefree_finite(pth_root(f))) {
      t.multiplicity *= static_cast<unsigned>(f.field()->characteristic());
      out.push_back(std::move(t));
    }
    return out;
  }
  Poly c = gcd(f, d);
  Poly w = f / c;
  unsigned i = 1;
  while (w.degree() > 0) {
    const Poly y = gcd(w, c);
    const Poly fac = w / y;
    if (fac.degree() > 0) out.push_back({fac.monic(), i});
    w = y;
    c = c / y;
    ++i;
  }
  if (c.degree() > 0) {
    for (auto t : squarefree_finite(pth_root(c.monic()))) {
      t.multiplicity *= static_cast<unsigned>(f.field()->characteristic());
      out.push_back(std::move(t));
    }
  }
  return out;
}

// Yun's algorithm (characteristic zero).
std::vector<FactorTerm> squarefree_char0(const Poly& f_in) {
  std::vector<FactorTerm> out;
  const Poly f = f_in.monic();
  if (f.degree() <= 0) return out;
  const Poly fd = f.derivative();
  Poly a = gcd(f, fd);
  Poly b = f / a;
  Poly c = fd / a;
  Poly d = c - b.derivative();
  unsigned i = 1;
  while (b.degree() > 0) {
    a = gcd(b, d);
    if (a.degree() > 0) out.push_back({a.monic(), i});
    b = b / a;
    c = d / a;
    d = c - b.derivative();
    ++i;
  }
  return out;
}

Poly random_poly_below(const FieldPtr& f, long deg, std::mt19937_64& rng) {
  std::vector<Element> c;
  for (long i = 0; i < deg; ++i) c.push_back(random_element(f, rng));
  return Poly(f, std::move(c));
}

// Distinct-degree factorization of a squarefree monic polynomial.
std::vector<std::pair<Poly, long>> distinct_degree(Poly f) {
  std::vector<std::pair<Poly, long>> out;
  const std::uint64_t q = *f.field()->cardinality();
  const Poly x = Poly::x(f.field());
  Poly h = x % f;
  for (long i = 1; f.degree() >= 2 * i; ++i) {
    h = pow_mod(h, q, f);
    const Poly g = gcd(h - x, f);
    if (g.degree() > 0) {
      out.emplace_back(g, i);
      f = f / g;
      h = h % f;
    }
  }
  if (f.degree() > 0) out.emplace_back(f.monic(), f.degree());
  return out;
}

// Equal-degree splitting (Cantor-Zassenhaus; trace map in characteristic 2).
void equal_degree(const Poly& g, long d, std::mt19937_64& rng, std::vector<Poly>& out) {
  if (g.degree() == d) {
    out.push_back(g.monic());
    return;
  }
  const FieldPtr& f = g.field();
  const std::uint64_t q = *f->cardinality();
  const bool char2 = f->characteristic() == 2;
  const std::size_t bits = f->absolute_degree() * static_cast<std::size_t>(d);
  const Poly unit = one_poly(f);
  for (int attempt = 0; attempt < 10000; ++attempt) {
    const Poly a = random_poly_below(f, g.degree(), rng);
    if (a.degree() <= 0) continue;
    Poly b;
    if (char2) {
      Poly t = a % g, acc = t;
      for (std::size_t i = 1; i < bits; ++i) {
        t = (t * t) % g;
        acc = acc + t;
      }
      b = acc;
    } else {
      Poly ai = a % g, norm = ai;
      for (long i = 1; i < d; ++i) {
        ai = pow_mod(ai, q, g);
        norm = (norm * ai) % g;
      }
      b = pow_mod(norm, (q - 1) / 2, g) - unit;
    }
    const Poly s = gcd(b, g);
    if (s.degree() > 0 && s.degree() < g.degree()) {
      equal_degree(s, d, rng, out);
      equal_degree(g / s, d, rng, out);
      return;
    }
  }
  fail(ErrorCode::FactorizationUnavailable, "equal-degree splitting did not converge");
}

std::vector<Poly> split_squarefree_finite(const Poly& s, std::mt19937_64& rng) {
  std::vector<Poly> out;
  for (const auto& [g, d] : distinct_degree(s.monic())) equal_degree(g, d, rng, out);
  return out;
}

// ---------------------------------------------------------------- over Q

std::vector<mpq_class> rational_candidates(double r) {
  std::vector<mpq_class> out;
  if (!std::isfinite(r) || std::abs(r) > 1e15) return out;
  // Continued-fraction convergents.
  mpz_class h0 = 1, h1 = 0, k0 = 0, k1 = 1;
  double x = r;
  for (int i = 0; i < 40; ++i) {
    const double a = std::floor(x);
    const mpz_class ai(a);
    mpz_class h2 = ai * h0 + h1, k2 = ai * k0 + k1;
    h1 = h0;
    h0 = h2;
    k1 = k0;
    k0 = k2;
    mpq_class c(h0, k0);
    c.canonicalize();
    out.push_back(c);
    const double frac = x - a;
    if (std::abs(frac) < 1e-14 || abs(k0) > mpz_class("1000000000000")) break;
    x = 1.0 / frac;
  }
  return out;
}

Poly to_rational_poly(const FieldPtr& q, const std::vector<cd>& coeffs) {
  std::vector<Element> c;
  for (const auto& v : coeffs) {
    const auto cands = rational_candidates(v.real());
    if (cands.empty()) return Poly::zero(q);
    mpq_class best = cands.back();
    for (const auto& cand : cands) {
      if (std::abs(cand.get_d() - v.real()) <= 1e-9 * std::max(1.0, std::abs(v.real()))) {
        best = cand;
        break;
      }
    }
    c.push_back(Element(q, best));
  }
  return Poly(q, std::move(c));
}

std::vector<cd> expand_roots(const std::vector<cd>& rs) {
  std::vector<cd> c{cd(1.0)};
  for (const auto& r : rs) {
    std::vector<cd> n(c.size() + 1, cd(0.0));
    for (std::size_t i = 0; i < c.size(); ++i) {
      n[i + 1] += c[i];
      n[i] -= r * c[i];
    }
    c = std::move(n);
  }
  return c;
}

// Splits a squarefree monic rational polynomial as far as the supported methods allow.
void factor_rational_squarefree(const Poly& s, unsigned mult, Factorization& out) {
  const FieldPtr& q = s.field();
  Poly rest = s;
  // Rational roots.
  if (rest.degree() >= 1) {
    std::vector<Element> found;
    if (rest.coeff(0).is_zero()) found.push_back(zero(q));
    for (const auto& r : approx_roots(rest)) {
      if (std::abs(r.imag()) > 1e-6 * std::max(1.0, std::abs(r))) continue;
      for (const auto& cand : rational_candidates(r.real())) {
        const Element e(q, cand);
        if (rest(e).is_zero() && std::find(found.begin(), found.end(), e) == found.end()) {
          found.push_back(e);
          break;
        }
      }
    }
    for (const auto& e : found) {
      const Poly lin(q, {-e, one(q)});
      if (!(rest % lin).is_zero()) continue;
      out.factors.push_back({lin, mult});
      rest = rest / lin;
    }
  }
  if (rest.degree() <= 0) return;
  if (rest.degree() <= 3) {
    out.factors.push_back({rest.monic(), mult});
    return;
  }
  // Degree >= 4: look for factors among products of numerical root subsets.
  bool progress = true;
  while (progress && rest.degree() >= 4) {
    progress = false;
    const auto rs = approx_roots(rest);
    const std::size_t n = rs.size();
    if (n > 16) break;
    for (std::size_t size = 2; size <= n / 2 && !progress; ++size) {
      std::vector<bool> mask(n, false);
      std::fill(mask.begin(), mask.begin() + static_cast<long>(size), true);
      do {
        std::vector<cd> subset;
        for (std::size_t i = 0; i < n; ++i) {
          if (mask[i]) subset.push_back(rs[i]);
        }
        const auto coeffs = expand_roots(subset);
        bool real = true;
        for (const auto& c : coeffs) real = real && std::abs(c.imag()) <= 1e-6 * std::max(1.0, std::abs(c));
        if (!real) continue;
        const Poly cand = to_rational_poly(q, coeffs);
        if (cand.degree() != static_cast<long>(size)) continue;
        if ((rest % cand).is_zero()) {
          rest = rest / cand;
          if (cand.degree() <= 3) {
            out.factors.push_back({cand, mult});
          } else {
            Factorization sub;
            factor_rational_squarefree(cand, mult, sub);
            for (auto& t : sub.factors) out.factors.push_back(t);
            out.irreducible_unverified = out.irreducible_unverified || sub.irreducible_unverified;
          }
          progress = true;
          break;
        }
      } while (std::prev_permutation(mask.begin(), mask.end()));
    }
  }
  if (rest.degree() > 0) {
    out.factors.push_back({rest.monic(), mult});
    if (rest.degree() >= 4) out.irreducible_unverified = true;
  }
}

}  // namespace

Poly Factorization::expand() const {
  Poly r = Poly::constant(unit);
  for (const auto& t : factors) r = r * pow(t.poly, t.multiplicity);
  return r;
}

std::vector<FactorTerm> squarefree_decomposition(const Poly& f) {
  if (f.is_zero()) fail(ErrorCode::ZeroPolynomial, "squarefree decomposition of zero");
  if (f.field()->is_finite()) return squarefree_finite(f);
  if (f.field()->characteristic() == 0) return squarefree_char0(f);
  fail(ErrorCode::UnsupportedField, "squarefree decomposition over " + f.field()->spec());
}

Factorization factor(const Poly& f, std::uint64_t seed) {
  if (f.is_zero()) fail(ErrorCode::ZeroPolynomial, "cannot factor the zero polynomial");
  const FieldPtr& field = f.field();
  Factorization out;
  out.unit = f.lead();
  if (field->is_finite()) {
    std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
    for (const auto& sq : squarefree_finite(f)) {
      for (auto& g : split_squarefree_finite(sq.poly, rng)) out.factors.push_back({std::move(g), sq.multiplicity});
    }
  } else if (field->kind() == FieldKind::Rationals) {
    for (const auto& sq : squarefree_char0(f)) factor_rational_squarefree(sq.poly, sq.multiplicity, out);
  } else {
    fail(ErrorCode::UnsupportedField, "factorization is not available over " + field->spec());
  }
  out.factors = merge_terms(std::move(out.factors));
  return out;
}

bool is_separable(const Poly& f) {
  if (f.is_zero()) fail(ErrorCode::ZeroPolynomial, "separability of the zero polynomial");
  if (f.field()->is_approx() || !(f.field()->is_finite() || f.field()->kind() == FieldKind::Rationals)) return true;
  for (const auto& t : factor(f).factors) {
    if (gcd(t.poly, t.poly.derivative()).degree() > 0) return false;
  }
  return true;
}

std::vector<Element> roots(const Poly& f_in, std::uint64_t seed) {
  if (f_in.is_zero()) fail(ErrorCode::ZeroPolynomial, "roots of the zero polynomial");
  const FieldPtr& field = f_in.field();
  if (!field->is_finite()) fail(ErrorCode::InfiniteField, "roots() needs a finite field");
  if (f_in.degree() <= 0) return {};
  const Poly f = f_in.monic();
  const Poly x = Poly::x(field);
  const Poly g = gcd(pow_mod(x, *field->cardinality(), f) - x, f);
  std::vector<Element> out;
  if (g.degree() <= 0) return out;
  std::mt19937_64 rng(seed ^ 0x51ed270b27f5a2c3ULL);
  std::vector<Poly> lin;
  equal_degree(g, 1, rng, lin);
  for (const auto& l : lin) out.push_back(-l.coeff(0));
  std::sort(out.begin(), out.end(), [](const Element& a, const Element& b) { return index_of(a) < index_of(b); });
  return out;
}

std::vector<std::complex<double>> approx_roots(const Poly& f) {
  if (f.is_zero()) fail(ErrorCode::ZeroPolynomial, "roots of the zero polynomial");
  std::vector<cd> c;
  for (const auto& e : f.coeffs()) {
    switch (e.field()->kind()) {
      case FieldKind::Rationals: c.emplace_back(e.rational().get_d(), 0.0); break;
      case FieldKind::Real: c.emplace_back(e.real(), 0.0); break;
      case FieldKind::Complex: c.push_back(e.complex()); break;
      default: fail(ErrorCode::UnsupportedField, "numerical roots need Q, R or C");
    }
  }
  const std::size_t n = c.size() - 1;
  if (n == 0) return {};
  const cd lead = c.back();
  for (auto& v : c) v /= lead;
  auto eval = [&](cd z, cd& dz) {
    cd p = c[n], d = 0.0;
    for (std::size_t i = n; i-- > 0;) {
      d = d * z + p;
      p = p * z + c[i];
    }
    dz = d;
    return p;
  };
  double radius = 0;
  for (std::size_t i = 0; i < n; ++i) radius = std::max(radius, std::pow(std::abs(c[i]), 1.0 / static_cast<double>(n - i)));
  radius = std::max(radius, 1e-3);
  std::vector<cd> z(n);
  for (std::size_t i = 0; i < n; ++i) {
    z[i] = std::polar(radius, 2.0 * M_PI * static_cast<double>(i) / static_cast<double>(n) + 0.4);
  }
  for (int iter = 0; iter < 2000; ++iter) {
    double change = 0;
    for (std::size_t i = 0; i < n; ++i) {
      cd dp;
      const cd p = eval(z[i], dp);
      if (p == cd(0.0)) continue;
      const cd ratio = p / dp;
      cd sum = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        if (j != i) sum += 1.0 / (z[i] - z[j]);
      }
      const cd w = ratio / (1.0 - ratio * sum);
      if (std::isfinite(w.real()) && std::isfinite(w.imag())) {
        z[i] -= w;
        change = std::max(change, std::abs(w) / std::max(1.0, std::abs(z[i])));
      }
    }
    if (change < 1e-15) break;
  }
  std::sort(z.begin(), z.end(), [](cd a, cd b) { return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag(); });
  return z;
}

}  // namespace wordmap
