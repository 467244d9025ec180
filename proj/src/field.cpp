#include "wordmap/field.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "wordmap/factor.hpp"
#include "wordmap/poly.hpp"

namespace wordmap {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::DivisionByZero: return "DivisionByZero";
    case ErrorCode::DescriptorMismatch: return "DescriptorMismatch";
    case ErrorCode::InfiniteField: return "InfiniteField";
    case ErrorCode::ReduciblePolynomial: return "ReduciblePolynomial";
    case ErrorCode::UnsupportedBase: return "UnsupportedBase";
    case ErrorCode::UnsupportedField: return "UnsupportedField";
    case ErrorCode::ZeroPolynomial: return "ZeroPolynomial";
    case ErrorCode::NonSquare: return "NonSquare";
    case ErrorCode::NotSimilar: return "NotSimilar";
    case ErrorCode::NotNilpotent: return "NotNilpotent";
    case ErrorCode::InseparableCharPoly: return "InseparableCharPoly";
    case ErrorCode::FactorizationUnavailable: return "FactorizationUnavailable";
    case ErrorCode::UnhandledShape: return "UnhandledShape";
    case ErrorCode::NonzeroTrace: return "NonzeroTrace";
    case ErrorCode::WitnessNotFound: return "WitnessNotFound";
    case ErrorCode::PartitionTooSmall: return "PartitionTooSmall";
    case ErrorCode::SizeTooSmall: return "SizeTooSmall";
    case ErrorCode::ZeroLeadingCoordinate: return "ZeroLeadingCoordinate";
    case ErrorCode::CharPolyMismatch: return "CharPolyMismatch";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::VerificationFailed: return "VerificationFailed";
    case ErrorCode::NotFound: return "NotFound";
    case ErrorCode::Unsupported: return "Unsupported";
  }
  return "Unknown";
}

namespace {

constexpr std::uint64_t kMaxCardinality = std::uint64_t{1} << 62;
constexpr std::uint64_t kScanRootLimit = 4096;

std::int64_t mod_mul(std::int64_t a, std::int64_t b, std::int64_t p) {
  return static_cast<std::int64_t>((static_cast<__int128>(a) * b) % p);
}

std::int64_t mod_pow(std::int64_t a, std::uint64_t e, std::int64_t p) {
  std::int64_t r = 1 % p;
  a %= p;
  if (a < 0) a += p;
  while (e) {
    if (e & 1) r = mod_mul(r, a, p);
    a = mod_mul(a, a, p);
    e >>= 1;
  }
  return r;
}

bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t small : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (n % small == 0) return n == small;
  }
  std::int64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::int64_t a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    std::int64_t x = mod_pow(a, static_cast<std::uint64_t>(d), n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mod_mul(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

std::int64_t mod_inv(std::int64_t a, std::int64_t p) {
  if (a % p == 0) fail(ErrorCode::DivisionByZero, "inverse of zero in F_" + std::to_string(p));
  return mod_pow(a, static_cast<std::uint64_t>(p - 2), p);
}

std::int64_t reduce_int(long long v, std::int64_t p) {
  std::int64_t r = static_cast<std::int64_t>(v % p);
  return r < 0 ? r + p : r;
}

// ---- polynomial helpers over a base field, used for extension arithmetic ----

using Coeffs = std::vector<Element>;

void trim(Coeffs& c) {
  while (!c.empty() && c.back().is_zero()) c.pop_back();
}

Coeffs coeff_mul(const Coeffs& a, const Coeffs& b, const FieldPtr& base) {
  if (a.empty() || b.empty()) return {};
  Coeffs r(a.size() + b.size() - 1, zero(base));
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  }
  return r;
}

// Remainder of `a` modulo a monic `m`.
void reduce_monic(Coeffs& a, const Coeffs& m) {
  const std::size_t d = m.size() - 1;
  for (std::size_t top = a.size(); top-- > d;) {
    if (a[top].is_zero()) continue;
    const Element c = a[top];
    for (std::size_t i = 0; i <= d; ++i) a[top - d + i] -= c * m[i];
  }
  if (a.size() > d) a.resize(d);
}

std::pair<Coeffs, Coeffs> coeff_divmod(Coeffs a, const Coeffs& b) {
  trim(a);
  const std::size_t db = b.size() - 1;
  if (a.size() < b.size()) return {{}, a};
  const FieldPtr& base = b.back().field();
  Coeffs q(a.size() - db, zero(base));
  const Element lead_inv = inv(b.back());
  for (std::size_t top = a.size(); top-- > db;) {
    if (a[top].is_zero()) continue;
    const Element c = a[top] * lead_inv;
    q[top - db] = c;
    for (std::size_t i = 0; i <= db; ++i) a[top - db + i] -= c * b[i];
  }
  a.resize(db);
  trim(a);
  trim(q);
  return {q, a};
}

// Inverse of `a` modulo `m` by the extended Euclidean algorithm.
Coeffs coeff_inverse(const Coeffs& a_in, const Coeffs& m, const FieldPtr& base) {
  Coeffs r0 = m, r1 = a_in;
  trim(r1);
  if (r1.empty()) fail(ErrorCode::DivisionByZero, "inverse of zero extension element");
  Coeffs s0, s1{one(base)};
  while (!r1.empty()) {
    auto [q, r] = coeff_divmod(r0, r1);
    Coeffs qs = coeff_mul(q, s1, base);
    Coeffs s2 = s0;
    if (s2.size() < qs.size()) s2.resize(qs.size(), zero(base));
    for (std::size_t i = 0; i < qs.size(); ++i) s2[i] -= qs[i];
    trim(s2);
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s2);
  }
  if (r0.size() != 1) fail(ErrorCode::DivisionByZero, "element is a zero divisor modulo the extension modulus");
  const Element c = inv(r0[0]);
  for (auto& x : s0) x = x * c;
  return s0;
}

std::string format_double(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

void check_pair(const Element& a, const Element& b) {
  if (!a.valid() || !b.valid()) fail(ErrorCode::InvalidArgument, "uninitialized field element");
  require_same_field(a.field(), b.field());
}

double approx_scale(double a, double b) { return std::max({1.0, std::abs(a), std::abs(b)}); }

}  // namespace

// ---------------------------------------------------------------- Element

Element::Element(FieldPtr field, Rep rep) : field_(std::move(field)), rep_(std::move(rep)) {}

bool Element::is_zero() const {
  switch (field_->kind()) {
    case FieldKind::Prime: return residue() == 0;
    case FieldKind::Extension:
      return std::all_of(coeffs().begin(), coeffs().end(), [](const Element& c) { return c.is_zero(); });
    case FieldKind::Rationals: return sgn(rational()) == 0;
    case FieldKind::Real: return std::abs(real()) <= field_->tolerance();
    case FieldKind::Complex: return std::abs(complex()) <= field_->tolerance();
  }
  return false;
}

bool Element::is_one() const { return *this == one(field_); }

double Element::magnitude() const {
  switch (field_->kind()) {
    case FieldKind::Real: return std::abs(real());
    case FieldKind::Complex: return std::abs(complex());
    default: return is_zero() ? 0.0 : 1.0;
  }
}

std::string Element::to_string() const {
  if (!valid()) return "<null>";
  switch (field_->kind()) {
    case FieldKind::Prime: return std::to_string(residue());
    case FieldKind::Extension: {
      std::string s = "[";
      for (std::size_t i = 0; i < coeffs().size(); ++i) {
        if (i) s += ",";
        s += coeffs()[i].to_string();
      }
      return s + "]";
    }
    case FieldKind::Rationals: return rational().get_str();
    case FieldKind::Real: return format_double(real());
    case FieldKind::Complex:
      return "[" + format_double(complex().real()) + "," + format_double(complex().imag()) + "]";
  }
  return "?";
}

// ---------------------------------------------------------------- Field

FieldPtr Field::prime(std::int64_t p) {
  if (p < 2 || static_cast<std::uint64_t>(p) >= kMaxCardinality || !is_prime(p)) {
    fail(ErrorCode::InvalidArgument, "F_p requires a prime p < 2^62, got " + std::to_string(p));
  }
  auto f = std::shared_ptr<Field>(new Field());
  f->kind_ = FieldKind::Prime;
  f->characteristic_ = p;
  f->cardinality_ = static_cast<std::uint64_t>(p);
  return f;
}

FieldPtr Field::prime_power(std::int64_t p, std::size_t d, const std::vector<std::int64_t>& modulus) {
  FieldPtr fp = prime(p);
  if (d == 0 || modulus.size() != d + 1) {
    fail(ErrorCode::InvalidArgument, "F_q modulus must have d+1 coefficients");
  }
  std::vector<Element> c;
  c.reserve(modulus.size());
  for (auto v : modulus) c.push_back(from_int(fp, v));
  return extend(fp, Poly(fp, c)).field;
}

FieldPtr Field::rationals() {
  auto f = std::shared_ptr<Field>(new Field());
  f->kind_ = FieldKind::Rationals;
  return f;
}

FieldPtr Field::real(double tolerance) {
  if (!(tolerance > 0)) fail(ErrorCode::InvalidArgument, "tolerance must be positive");
  auto f = std::shared_ptr<Field>(new Field());
  f->kind_ = FieldKind::Real;
  f->tolerance_ = tolerance;
  return f;
}

FieldPtr Field::complex(double tolerance) {
  if (!(tolerance > 0)) fail(ErrorCode::InvalidArgument, "tolerance must be positive");
  auto f = std::shared_ptr<Field>(new Field());
  f->kind_ = FieldKind::Complex;
  f->tolerance_ = tolerance;
  return f;
}

FieldPtr Field::quotient(FieldPtr base, std::vector<Element> monic_modulus) {
  if (!base) fail(ErrorCode::InvalidArgument, "null base field");
  if (base->is_approx()) fail(ErrorCode::UnsupportedBase, "cannot extend an approximate field");
  if (monic_modulus.size() < 2 || !monic_modulus.back().is_one()) {
    fail(ErrorCode::InvalidArgument, "extension modulus must be monic of degree >= 1");
  }
  auto f = std::shared_ptr<Field>(new Field());
  f->kind_ = FieldKind::Extension;
  f->characteristic_ = base->characteristic();
  if (base->cardinality()) {
    const std::uint64_t q = *base->cardinality();
    std::uint64_t card = 1;
    for (std::size_t i = 0; i + 1 < monic_modulus.size(); ++i) {
      if (card > kMaxCardinality / q) fail(ErrorCode::Unsupported, "finite field too large (>= 2^62 elements)");
      card *= q;
    }
    f->cardinality_ = card;
  }
  f->base_ = std::move(base);
  f->modulus_ = std::move(monic_modulus);
  return f;
}

std::size_t Field::absolute_degree() const noexcept {
  if (kind_ == FieldKind::Extension) return degree() * base_->absolute_degree();
  return 1;
}

bool Field::over_rationals() const noexcept {
  if (kind_ == FieldKind::Rationals) return true;
  if (kind_ == FieldKind::Extension) return base_->over_rationals();
  return false;
}

std::string Field::spec() const {
  switch (kind_) {
    case FieldKind::Prime: return "Fp:" + std::to_string(characteristic_);
    case FieldKind::Extension: {
      std::string mod = "[";
      for (std::size_t i = 0; i < modulus_.size(); ++i) {
        if (i) mod += ",";
        mod += modulus_[i].to_string();
      }
      mod += "]";
      if (base_->kind() == FieldKind::Prime) {
        return "Fq:p=" + std::to_string(characteristic_) + ",d=" + std::to_string(degree()) + ",mod=" + mod;
      }
      return "Ext(" + base_->spec() + ";mod=" + mod + ")";
    }
    case FieldKind::Rationals: return "Q";
    case FieldKind::Real: return "R:tol=" + format_double(tolerance_);
    case FieldKind::Complex: return "C:tol=" + format_double(tolerance_);
  }
  return "?";
}

bool Field::same_as(const Field& o) const noexcept {
  if (this == &o) return true;
  if (kind_ != o.kind_ || characteristic_ != o.characteristic_) return false;
  switch (kind_) {
    case FieldKind::Prime:
    case FieldKind::Rationals: return true;
    case FieldKind::Real:
    case FieldKind::Complex: return tolerance_ == o.tolerance_;
    case FieldKind::Extension: {
      if (!base_->same_as(*o.base_) || modulus_.size() != o.modulus_.size()) return false;
      for (std::size_t i = 0; i < modulus_.size(); ++i) {
        if (!(modulus_[i] == o.modulus_[i])) return false;
      }
      return true;
    }
  }
  return false;
}

bool same_field(const FieldPtr& a, const FieldPtr& b) noexcept {
  if (a == b) return true;
  if (!a || !b) return false;
  return a->same_as(*b);
}

void require_same_field(const FieldPtr& a, const FieldPtr& b) {
  if (!same_field(a, b)) {
    fail(ErrorCode::DescriptorMismatch,
         "field mismatch: " + (a ? a->spec() : "<null>") + " vs " + (b ? b->spec() : "<null>"));
  }
}

// ---------------------------------------------------------------- constructors

Element zero(const FieldPtr& f) { return from_int(f, 0); }
Element one(const FieldPtr& f) { return from_int(f, 1); }

Element from_int(const FieldPtr& f, long long v) {
  switch (f->kind()) {
    case FieldKind::Prime: return Element(f, reduce_int(v, f->characteristic()));
    case FieldKind::Extension: {
      std::vector<Element> c(f->degree(), zero(f->base()));
      c[0] = from_int(f->base(), v);
      return Element(f, std::move(c));
    }
    case FieldKind::Rationals: return Element(f, mpq_class(static_cast<long>(v)));
    case FieldKind::Real: return Element(f, static_cast<double>(v));
    case FieldKind::Complex: return Element(f, std::complex<double>(static_cast<double>(v), 0.0));
  }
  return {};
}

Element from_rational(const FieldPtr& f, const mpq_class& v) {
  switch (f->kind()) {
    case FieldKind::Rationals: {
      mpq_class c = v;
      c.canonicalize();
      return Element(f, c);
    }
    case FieldKind::Real: return Element(f, v.get_d());
    case FieldKind::Complex: return Element(f, std::complex<double>(v.get_d(), 0.0));
    default: {
      const mpz_class num = v.get_num(), den = v.get_den();
      if (f->kind() == FieldKind::Prime) {
        const mpz_class p(std::to_string(f->characteristic()));
        mpz_class n = num % p, d = den % p;
        if (n < 0) n += p;
        if (d == 0) fail(ErrorCode::DivisionByZero, "denominator vanishes in F_p");
        return Element(f, static_cast<std::int64_t>(n.get_si())) / Element(f, static_cast<std::int64_t>(d.get_si()));
      }
      std::vector<Element> c(f->degree(), zero(f->base()));
      c[0] = from_rational(f->base(), v);
      return Element(f, std::move(c));
    }
  }
}

Element from_double(const FieldPtr& f, double v) {
  if (f->kind() == FieldKind::Real) return Element(f, v);
  if (f->kind() == FieldKind::Complex) return Element(f, std::complex<double>(v, 0.0));
  fail(ErrorCode::DescriptorMismatch, "floating value in exact field " + f->spec());
}

Element from_complex(const FieldPtr& f, std::complex<double> v) {
  if (f->kind() == FieldKind::Complex) return Element(f, v);
  fail(ErrorCode::DescriptorMismatch, "complex value outside C");
}

Element from_coeffs(const FieldPtr& f, std::vector<Element> coeffs) {
  if (f->kind() != FieldKind::Extension) fail(ErrorCode::DescriptorMismatch, "coefficient vector needs an extension field");
  for (auto& c : coeffs) require_same_field(c.field(), f->base());
  if (coeffs.size() > f->degree()) reduce_monic(coeffs, f->modulus());
  coeffs.resize(f->degree(), zero(f->base()));
  return Element(f, std::move(coeffs));
}

// ---------------------------------------------------------------- arithmetic

Element operator+(const Element& a, const Element& b) {
  check_pair(a, b);
  const FieldPtr& f = a.field();
  switch (f->kind()) {
    case FieldKind::Prime: {
      std::int64_t r = a.residue() + b.residue();
      if (r >= f->characteristic()) r -= f->characteristic();
      return Element(f, r);
    }
    case FieldKind::Extension: {
      std::vector<Element> c(a.coeffs().size());
      for (std::size_t i = 0; i < c.size(); ++i) c[i] = a.coeffs()[i] + b.coeffs()[i];
      return Element(f, std::move(c));
    }
    case FieldKind::Rationals: return Element(f, mpq_class(a.rational() + b.rational()));
    case FieldKind::Real: return Element(f, a.real() + b.real());
    case FieldKind::Complex: return Element(f, a.complex() + b.complex());
  }
  return {};
}

Element operator-(const Element& a) {
  const FieldPtr& f = a.field();
  switch (f->kind()) {
    case FieldKind::Prime: return Element(f, a.residue() == 0 ? 0 : f->characteristic() - a.residue());
    case FieldKind::Extension: {
      std::vector<Element> c(a.coeffs().size());
      for (std::size_t i = 0; i < c.size(); ++i) c[i] = -a.coeffs()[i];
      return Element(f, std::move(c));
    }
    case FieldKind::Rationals: return Element(f, mpq_class(-a.rational()));
    case FieldKind::Real: return Element(f, -a.real());
    case FieldKind::Complex: return Element(f, -a.complex());
  }
  return {};
}

Element operator-(const Element& a, const Element& b) {
  check_pair(a, b);
  if (a.field()->kind() == FieldKind::Prime) {
    std::int64_t r = a.residue() - b.residue();
    if (r < 0) r += a.field()->characteristic();
    return Element(a.field(), r);
  }
  return a + (-b);
}

Element operator*(const Element& a, const Element& b) {
  check_pair(a, b);
  const FieldPtr& f = a.field();
  switch (f->kind()) {
    case FieldKind::Prime: return Element(f, mod_mul(a.residue(), b.residue(), f->characteristic()));
    case FieldKind::Extension: {
      Coeffs prod = coeff_mul(a.coeffs(), b.coeffs(), f->base());
      reduce_monic(prod, f->modulus());
      prod.resize(f->degree(), zero(f->base()));
      return Element(f, std::move(prod));
    }
    case FieldKind::Rationals: return Element(f, mpq_class(a.rational() * b.rational()));
    case FieldKind::Real: return Element(f, a.real() * b.real());
    case FieldKind::Complex: return Element(f, a.complex() * b.complex());
  }
  return {};
}

Element inv(const Element& a) {
  const FieldPtr& f = a.field();
  switch (f->kind()) {
    case FieldKind::Prime: return Element(f, mod_inv(a.residue(), f->characteristic()));
    case FieldKind::Extension: {
      Coeffs r = coeff_inverse(a.coeffs(), f->modulus(), f->base());
      r.resize(f->degree(), zero(f->base()));
      return Element(f, std::move(r));
    }
    case FieldKind::Rationals:
      if (sgn(a.rational()) == 0) fail(ErrorCode::DivisionByZero, "division by zero in Q");
      return Element(f, mpq_class(1 / a.rational()));
    case FieldKind::Real:
      if (a.real() == 0.0) fail(ErrorCode::DivisionByZero, "division by zero in R");
      return Element(f, 1.0 / a.real());
    case FieldKind::Complex:
      if (a.complex() == std::complex<double>(0.0, 0.0)) fail(ErrorCode::DivisionByZero, "division by zero in C");
      return Element(f, 1.0 / a.complex());
  }
  return {};
}

Element operator/(const Element& a, const Element& b) {
  check_pair(a, b);
  return a * inv(b);
}

Element& operator+=(Element& a, const Element& b) { return a = a + b; }
Element& operator-=(Element& a, const Element& b) { return a = a - b; }
Element& operator*=(Element& a, const Element& b) { return a = a * b; }

Element pow(const Element& a, std::uint64_t e) {
  const FieldPtr& f = a.field();
  if (f->kind() == FieldKind::Prime) return Element(f, mod_pow(a.residue(), e, f->characteristic()));
  Element r = one(f), base = a;
  while (e) {
    if (e & 1) r = r * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return r;
}

Element pow_signed(const Element& a, long long e) {
  if (e >= 0) return pow(a, static_cast<std::uint64_t>(e));
  return pow(inv(a), static_cast<std::uint64_t>(-e));
}

bool operator==(const Element& a, const Element& b) {
  if (!a.valid() || !b.valid()) return a.valid() == b.valid();
  if (!same_field(a.field(), b.field())) return false;
  switch (a.field()->kind()) {
    case FieldKind::Prime: return a.residue() == b.residue();
    case FieldKind::Extension: return a.coeffs() == b.coeffs();
    case FieldKind::Rationals: return a.rational() == b.rational();
    case FieldKind::Real:
      return std::abs(a.real() - b.real()) <= a.field()->tolerance() * approx_scale(a.real(), b.real());
    case FieldKind::Complex:
      return std::abs(a.complex() - b.complex()) <=
             a.field()->tolerance() * approx_scale(std::abs(a.complex()), std::abs(b.complex()));
  }
  return false;
}

// ---------------------------------------------------------------- enumeration

std::uint64_t index_of(const Element& e) {
  const FieldPtr& f = e.field();
  if (!f->is_finite()) fail(ErrorCode::InfiniteField, "index_of on infinite field " + f->spec());
  if (f->kind() == FieldKind::Prime) return static_cast<std::uint64_t>(e.residue());
  const std::uint64_t q = *f->base()->cardinality();
  std::uint64_t idx = 0;
  for (std::size_t i = e.coeffs().size(); i-- > 0;) idx = idx * q + index_of(e.coeffs()[i]);
  return idx;
}

Element element_at(const FieldPtr& f, std::uint64_t index) {
  if (!f->is_finite()) fail(ErrorCode::InfiniteField, "element_at on infinite field " + f->spec());
  if (index >= *f->cardinality()) fail(ErrorCode::InvalidArgument, "element index out of range");
  if (f->kind() == FieldKind::Prime) return Element(f, static_cast<std::int64_t>(index));
  const std::uint64_t q = *f->base()->cardinality();
  std::vector<Element> c;
  c.reserve(f->degree());
  for (std::size_t i = 0; i < f->degree(); ++i) {
    c.push_back(element_at(f->base(), index % q));
    index /= q;
  }
  return Element(f, std::move(c));
}

ElementStream::ElementStream(FieldPtr f) : field_(std::move(f)), size_(0) {
  if (!field_->is_finite()) fail(ErrorCode::InfiniteField, "cannot enumerate " + field_->spec());
  size_ = *field_->cardinality();
}

ElementStream enumerate(const FieldPtr& f) { return ElementStream(f); }

// ---------------------------------------------------------------- k-th roots

namespace {

std::vector<Element> sorted_by_index(std::vector<Element> v) {
  std::sort(v.begin(), v.end(), [](const Element& a, const Element& b) { return index_of(a) < index_of(b); });
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

std::optional<mpz_class> exact_root(const mpz_class& n, unsigned long k) {
  mpz_class r;
  if (mpz_root(r.get_mpz_t(), n.get_mpz_t(), k) != 0) return r;
  return std::nullopt;
}

}  // namespace

std::vector<Element> kth_roots(const Element& e, std::uint64_t k, bool all_complex) {
  if (k == 0) fail(ErrorCode::InvalidArgument, "kth_roots requires k >= 1");
  const FieldPtr& f = e.field();
  if (k == 1) return {e};
  if (f->is_finite()) {
    if (e.is_zero()) return {zero(f)};
    const std::uint64_t q = *f->cardinality();
    if (q <= kScanRootLimit) {
      std::vector<Element> out;
      for (const Element x : enumerate(f)) {
        if (pow(x, k) == e) out.push_back(x);
      }
      return out;
    }
    // Nonzero roots only depend on k modulo q-1.
    std::uint64_t kr = k % (q - 1);
    if (kr == 0) kr = q - 1;
    const Poly target = Poly::monomial(one(f), kr) - Poly::constant(e);
    return sorted_by_index(roots(target));
  }
  switch (f->kind()) {
    case FieldKind::Rationals: {
      const mpq_class& v = e.rational();
      if (sgn(v) == 0) return {e};
      if (k > std::numeric_limits<unsigned long>::max()) return {};
      const bool negative = sgn(v) < 0;
      if (negative && k % 2 == 0) return {};
      mpz_class num = abs(v.get_num());
      auto rn = exact_root(num, static_cast<unsigned long>(k));
      auto rd = exact_root(v.get_den(), static_cast<unsigned long>(k));
      if (!rn || !rd) return {};
      mpq_class r(*rn, *rd);
      r.canonicalize();
      if (negative) r = -r;
      if (k % 2 == 0) return {Element(f, mpq_class(-r)), Element(f, r)};
      return {Element(f, r)};
    }
    case FieldKind::Real: {
      const double v = e.real();
      if (std::abs(v) <= f->tolerance()) return {from_double(f, 0.0)};
      const double r = std::pow(std::abs(v), 1.0 / static_cast<double>(k));
      if (k % 2 == 1) return {from_double(f, v < 0 ? -r : r)};
      if (v < 0) return {};
      return {from_double(f, -r), from_double(f, r)};
    }
    case FieldKind::Complex: {
      const auto v = e.complex();
      if (std::abs(v) == 0.0) return {e};
      const double mod = std::pow(std::abs(v), 1.0 / static_cast<double>(k));
      const double arg = std::arg(v) / static_cast<double>(k);
      std::vector<Element> out;
      const std::uint64_t count = all_complex ? k : 1;
      for (std::uint64_t j = 0; j < count; ++j) {
        const double theta = arg + 2.0 * M_PI * static_cast<double>(j) / static_cast<double>(k);
        out.push_back(from_complex(f, std::polar(mod, theta)));
      }
      return out;
    }
    default: fail(ErrorCode::Unsupported, "k-th roots are not available over " + f->spec());
  }
}

// ---------------------------------------------------------------- extensions

Extension extend(const FieldPtr& base, const Poly& p) {
  if (base->is_approx()) fail(ErrorCode::UnsupportedBase, "cannot extend approximate field " + base->spec());
  require_same_field(base, p.field());
  if (p.degree() < 1) fail(ErrorCode::InvalidArgument, "extension polynomial must have degree >= 1");
  if (!p.is_monic()) fail(ErrorCode::InvalidArgument, "extension polynomial must be monic");
  if (p.degree() > 1) {
    const bool checkable = base->is_finite() || base->kind() == FieldKind::Rationals;
    if (checkable) {
      const Factorization fz = factor(p);
      if (fz.factors.size() != 1 || fz.factors[0].multiplicity != 1 || fz.factors[0].poly.degree() != p.degree()) {
        fail(ErrorCode::ReduciblePolynomial, p.to_string() + " is reducible over " + base->spec());
      }
    }
  }
  FieldPtr L = Field::quotient(base, p.coeffs());
  std::vector<Element> gen(L->degree(), zero(base));
  if (L->degree() > 1) {
    gen[1] = one(base);
  } else {
    gen[0] = -p.coeff(0);
  }
  Element generator(L, std::move(gen));
  return Extension{L, generator, [L](const Element& x) { return embed(L, x); }};
}

Element embed(const FieldPtr& target, const Element& x) {
  if (same_field(target, x.field())) return x;
  if (target->kind() != FieldKind::Extension) {
    fail(ErrorCode::DescriptorMismatch, "cannot embed " + x.field()->spec() + " into " + target->spec());
  }
  std::vector<Element> c(target->degree(), zero(target->base()));
  c[0] = embed(target->base(), x);
  return Element(target, std::move(c));
}

std::vector<std::int64_t> find_irreducible(std::int64_t p, std::size_t d) {
  FieldPtr fp = Field::prime(p);
  if (d == 0) fail(ErrorCode::InvalidArgument, "degree must be positive");
  if (d == 1) return {0, 1};
  std::uint64_t count = 1;
  for (std::size_t i = 0; i < d; ++i) {
    if (count > kMaxCardinality / static_cast<std::uint64_t>(p)) fail(ErrorCode::Unsupported, "field too large");
    count *= static_cast<std::uint64_t>(p);
  }
  for (std::uint64_t idx = 0; idx < count; ++idx) {
    std::vector<Element> c;
    std::uint64_t t = idx;
    for (std::size_t i = 0; i < d; ++i) {
      c.push_back(Element(fp, static_cast<std::int64_t>(t % static_cast<std::uint64_t>(p))));
      t /= static_cast<std::uint64_t>(p);
    }
    if (c[0].is_zero()) continue;
    c.push_back(one(fp));
    Poly cand(fp, c);
    const Factorization fz = factor(cand);
    if (fz.factors.size() == 1 && fz.factors[0].multiplicity == 1) {
      std::vector<std::int64_t> out;
      for (const auto& e : cand.coeffs()) out.push_back(e.residue());
      return out;
    }
  }
  fail(ErrorCode::NotFound, "no irreducible polynomial found");
}

Element random_element(const FieldPtr& f, std::mt19937_64& rng) {
  switch (f->kind()) {
    case FieldKind::Prime:
    case FieldKind::Extension: {
      if (f->is_finite()) return element_at(f, rng() % *f->cardinality());
      std::vector<Element> c;
      for (std::size_t i = 0; i < f->degree(); ++i) c.push_back(random_element(f->base(), rng));
      return from_coeffs(f, std::move(c));
    }
    case FieldKind::Rationals: {
      const long num = static_cast<long>(rng() % 19) - 9;
      const long den = static_cast<long>(rng() % 5) + 1;
      mpq_class v(num, den);
      v.canonicalize();
      return Element(f, v);
    }
    case FieldKind::Real: return from_double(f, std::uniform_real_distribution<double>(-1.0, 1.0)(rng));
    case FieldKind::Complex: {
      std::uniform_real_distribution<double> u(-1.0, 1.0);
      const double re = u(rng);
      return from_complex(f, {re, u(rng)});
    }
  }
  return {};
}

// ---------------------------------------------------------------- regular solutions

namespace {

constexpr std::uint64_t kSearchNodeCap = 4'000'000;

struct PowerKey {
  // Powers are compared through their canonical string for non-finite kinds
  // and through the enumeration index for finite fields.
  static bool contains(const std::vector<Element>& used, const Element& v) {
    return std::any_of(used.begin(), used.end(), [&](const Element& u) { return u == v; });
  }
};

class FiniteRegularSearch {
 public:
  FiniteRegularSearch(const FieldPtr& f, std::uint64_t k, std::size_t n, const Element& gamma, bool nonzero)
      : f_(f), k_(k), n_(n), gamma_(gamma), nonzero_(nonzero), q_(*f->cardinality()) {
    if (q_ <= (std::uint64_t{1} << 16)) {
      powers_.reserve(q_);
      roots_by_power_.assign(q_, {});
      for (std::uint64_t i = 0; i < q_; ++i) {
        const Element x = element_at(f, i);
        const std::uint64_t pi = index_of(pow(x, k));
        powers_.push_back(pi);
        roots_by_power_[pi].push_back(i);
      }
      tabulated_ = true;
    }
  }

  std::optional<std::vector<Element>> run() {
    chosen_.clear();
    used_.clear();
    if (dfs(zero(f_))) return chosen_;
    return std::nullopt;
  }

 private:
  std::uint64_t power_index(std::uint64_t i) { return tabulated_ ? powers_[i] : index_of(pow(element_at(f_, i), k_)); }

  std::vector<std::uint64_t> roots_of(const Element& t) {
    if (tabulated_) return roots_by_power_[index_of(t)];
    std::vector<std::uint64_t> out;
    for (const auto& r : kth_roots(t, k_)) out.push_back(index_of(r));
    return out;
  }

  bool dfs(const Element& partial) {
    if (++nodes_ > kSearchNodeCap) return false;
    if (chosen_.size() + 1 == n_) {
      const Element t = gamma_ - partial;
      const std::uint64_t ti = index_of(t);
      if (std::find(used_.begin(), used_.end(), ti) != used_.end()) return false;
      for (std::uint64_t r : roots_of(t)) {
        if (nonzero_ && r == 0) continue;
        chosen_.push_back(element_at(f_, r));
        return true;
      }
      return false;
    }
    for (std::uint64_t i = 0; i < q_; ++i) {
      if (nonzero_ && i == 0) continue;
      const std::uint64_t pi = power_index(i);
      if (std::find(used_.begin(), used_.end(), pi) != used_.end()) continue;
      const Element x = element_at(f_, i);
      chosen_.push_back(x);
      used_.push_back(pi);
      if (dfs(partial + element_at(f_, pi))) return true;
      chosen_.pop_back();
      used_.pop_back();
      if (nodes_ > kSearchNodeCap) return false;
    }
    return false;
  }

  FieldPtr f_;
  std::uint64_t k_;
  std::size_t n_;
  Element gamma_;
  bool nonzero_;
  std::uint64_t q_;
  bool tabulated_ = false;
  std::vector<std::uint64_t> powers_;
  std::vector<std::vector<std::uint64_t>> roots_by_power_;
  std::vector<Element> chosen_;
  std::vector<std::uint64_t> used_;
  std::uint64_t nodes_ = 0;
};

bool powers_regular(const std::vector<Element>& xs, std::uint64_t k, bool nonzero) {
  std::vector<Element> pw;
  for (const auto& x : xs) {
    if (nonzero && x.is_zero()) return false;
    const Element p = pow(x, k);
    if (PowerKey::contains(pw, p)) return false;
    pw.push_back(p);
  }
  return true;
}

// Direct construction over R or C: n-1 fixed distinct values, last by a root.
std::optional<std::vector<Element>> approx_regular(const FieldPtr& f, std::uint64_t k, std::size_t n,
                                                   const Element& gamma, bool nonzero) {
  const bool is_real = f->kind() == FieldKind::Real;
  const double kd = static_cast<double>(k);
  for (int shift = 0; shift < 8; ++shift) {
    std::vector<Element> xs;
    Element partial = zero(f);
    if (is_real && k % 2 == 0) {
      const double g = gamma.real();
      if (g <= f->tolerance()) {
        if (n == 1 && std::abs(g) <= f->tolerance() && !nonzero) return std::vector<Element>{zero(f)};
        return std::nullopt;
      }
      double denom = 0;
      for (std::size_t i = 1; i < n; ++i) denom += std::pow(static_cast<double>(i + shift), kd);
      const double c = n > 1 ? std::pow(g / (3.0 * denom), 1.0 / kd) : 0.0;
      for (std::size_t i = 1; i < n; ++i) {
        xs.push_back(from_double(f, c * static_cast<double>(i + shift)));
        partial += pow(xs.back(), k);
      }
    } else {
      for (std::size_t i = 1; i < n; ++i) {
        xs.push_back(from_int(f, static_cast<long long>(i + shift)));
        partial += pow(xs.back(), k);
      }
    }
    const auto roots = kth_roots(gamma - partial, k);
    if (roots.empty()) continue;
    xs.push_back(roots.back());
    if (powers_regular(xs, k, nonzero)) return xs;
  }
  return std::nullopt;
}

std::optional<std::vector<Element>> rational_regular(const FieldPtr& f, std::uint64_t k, std::size_t n,
                                                     const Element& gamma, bool nonzero) {
  std::vector<Element> cands{zero(f)};
  for (long h = 1; h <= 6; ++h) {
    for (long den = 1; den <= h; ++den) {
      for (long num : {h, -h}) {
        mpq_class v(num, den);
        v.canonicalize();
        if (v.get_den() != den) continue;
        cands.push_back(Element(f, v));
      }
    }
  }
  std::vector<Element> chosen;
  std::uint64_t nodes = 0;
  std::function<bool(const Element&)> dfs = [&](const Element& partial) -> bool {
    if (++nodes > 200000) return false;
    if (chosen.size() + 1 == n) {
      for (const auto& r : kth_roots(gamma - partial, k)) {
        chosen.push_back(r);
        if (powers_regular(chosen, k, nonzero)) return true;
        chosen.pop_back();
      }
      return false;
    }
    for (const auto& c : cands) {
      chosen.push_back(c);
      if (powers_regular(chosen, k, nonzero) && dfs(partial + pow(c, k))) return true;
      chosen.pop_back();
    }
    return false;
  };
  if (dfs(zero(f))) return chosen;
  return std::nullopt;
}

}  // namespace

std::vector<Element> regular_solution_search(const FieldPtr& f, std::uint64_t k, std::size_t n,
                                             const Element& gamma, bool require_nonzero) {
  if (n == 0 || k == 0) fail(ErrorCode::InvalidArgument, "regular_solution_search needs n, k >= 1");
  require_same_field(f, gamma.field());
  std::optional<std::vector<Element>> found;
  if (f->is_finite()) {
    found = FiniteRegularSearch(f, k, n, gamma, require_nonzero).run();
  } else if (f->is_approx()) {
    found = approx_regular(f, k, n, gamma, require_nonzero);
  } else if (f->kind() == FieldKind::Rationals) {
    found = rational_regular(f, k, n, gamma, require_nonzero);
  }
  if (!found) {
    fail(ErrorCode::NotFound, "no " + std::string(require_nonzero ? "non-zero " : "") + "regular solution of x_1^" +
                                  std::to_string(k) + "+...+x_" + std::to_string(n) + "^" + std::to_string(k) +
                                  " = " + gamma.to_string() + " over " + f->spec());
  }
  return *found;
}

std::vector<Element> random_regular_solution(const FieldPtr& f, std::uint64_t k, std::size_t n,
                                             const Element& gamma, bool require_nonzero, std::mt19937_64& rng,
                                             std::size_t max_tries) {
  if (!f->is_finite()) fail(ErrorCode::InfiniteField, "random_regular_solution needs a finite field");
  for (std::size_t attempt = 0; attempt < max_tries; ++attempt) {
    std::vector<Element> xs;
    Element partial = zero(f);
    for (std::size_t i = 0; i + 1 < n; ++i) {
      xs.push_back(random_element(f, rng));
      partial += pow(xs.back(), k);
    }
    const auto roots = kth_roots(gamma - partial, k);
    if (roots.empty()) continue;
    xs.push_back(roots[rng() % roots.size()]);
    if (powers_regular(xs, k, require_nonzero)) return xs;
  }
  fail(ErrorCode::NotFound, "random regular solution search exhausted");
}

// ---------------------------------------------------------------- parsing

namespace {

std::string strip(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\n");
  return s.substr(b, e - b + 1);
}

// Splits on commas that are not nested inside brackets.
std::vector<std::string> split_top(const std::string& s, char sep) {
  std::vector<std::string> out;
  int depth = 0;
  std::string cur;
  for (char c : s) {
    if (c == '[') ++depth;
    if (c == ']') --depth;
    if (c == sep && depth == 0) {
      out.push_back(strip(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!strip(cur).empty() || !out.empty()) out.push_back(strip(cur));
  return out;
}

mpq_class parse_rational_text(const std::string& t) {
  try {
    const auto dot = t.find('.');
    if (dot != std::string::npos && t.find('/') == std::string::npos && t.find_first_of("eE") == std::string::npos) {
      std::string digits = t.substr(0, dot) + t.substr(dot + 1);
      mpz_class den = 1;
      for (std::size_t i = dot + 1; i < t.size(); ++i) den *= 10;
      mpq_class v(mpz_class(digits.empty() || digits == "-" ? "0" : digits), den);
      v.canonicalize();
      return v;
    }
    mpq_class v(t);
    v.canonicalize();
    return v;
  } catch (const std::exception&) {
    fail(ErrorCode::ParseError, "bad rational literal '" + t + "'");
  }
}

double parse_double_text(const std::string& t) {
  try {
    std::size_t used = 0;
    const double v = std::stod(t, &used);
    if (used != t.size()) throw std::invalid_argument(t);
    return v;
  } catch (const std::exception&) {
    fail(ErrorCode::ParseError, "bad floating literal '" + t + "'");
  }
}

long long parse_ll(const std::string& t) {
  try {
    std::size_t used = 0;
    const long long v = std::stoll(t, &used);
    if (used != t.size()) throw std::invalid_argument(t);
    return v;
  } catch (const std::exception&) {
    fail(ErrorCode::ParseError, "bad integer literal '" + t + "'");
  }
}

}  // namespace

FieldPtr parse_field(const std::string& spec_in) {
  const std::string spec = strip(spec_in);
  const auto colon = spec.find(':');
  const std::string head = spec.substr(0, colon);
  const std::string rest = colon == std::string::npos ? "" : spec.substr(colon + 1);
  auto key_values = [&](const std::string& body) {
    std::vector<std::pair<std::string, std::string>> kv;
    if (body.empty()) return kv;
    for (const auto& part : split_top(body, ',')) {
      const auto eq = part.find('=');
      if (eq == std::string::npos) fail(ErrorCode::ParseError, "expected key=value in field spec '" + spec + "'");
      kv.emplace_back(strip(part.substr(0, eq)), strip(part.substr(eq + 1)));
    }
    return kv;
  };
  if (head == "Fp") return Field::prime(parse_ll(strip(rest)));
  if (head == "Q") {
    if (!rest.empty()) fail(ErrorCode::ParseError, "Q takes no parameters");
    return Field::rationals();
  }
  if (head == "R" || head == "C") {
    double tol = 1e-9;
    for (const auto& [k, v] : key_values(rest)) {
      if (k != "tol") fail(ErrorCode::ParseError, "unknown key '" + k + "' in " + spec);
      tol = parse_double_text(v);
    }
    return head == "R" ? Field::real(tol) : Field::complex(tol);
  }
  if (head == "Fq") {
    long long p = 0, d = 0;
    std::optional<std::vector<std::int64_t>> mod;
    for (const auto& [k, v] : key_values(rest)) {
      if (k == "p") {
        p = parse_ll(v);
      } else if (k == "d") {
        d = parse_ll(v);
      } else if (k == "mod") {
        if (v.size() < 2 || v.front() != '[' || v.back() != ']') fail(ErrorCode::ParseError, "mod must be [c0,...,cd]");
        std::vector<std::int64_t> coeffs;
        for (const auto& c : split_top(v.substr(1, v.size() - 2), ',')) coeffs.push_back(parse_ll(c));
        mod = coeffs;
      } else {
        fail(ErrorCode::ParseError, "unknown key '" + k + "' in " + spec);
      }
    }
    if (p < 2 || d < 1) fail(ErrorCode::ParseError, "Fq needs p and d");
    const auto modulus = mod ? *mod : find_irreducible(p, static_cast<std::size_t>(d));
    if (d == 1 && !mod) return Field::prime(p);
    return Field::prime_power(p, static_cast<std::size_t>(d), modulus);
  }
  fail(ErrorCode::ParseError, "unknown field spec '" + spec + "'");
}

Element parse_element(const FieldPtr& f, const std::string& text_in) {
  const std::string text = strip(text_in);
  switch (f->kind()) {
    case FieldKind::Prime: {
      if (text.find('/') != std::string::npos) return from_rational(f, parse_rational_text(text));
      return from_int(f, parse_ll(text));
    }
    case FieldKind::Extension: {
      if (!text.empty() && text.front() == '[') {
        if (text.back() != ']') fail(ErrorCode::ParseError, "unbalanced coefficient list '" + text + "'");
        std::vector<Element> c;
        for (const auto& part : split_top(text.substr(1, text.size() - 2), ',')) c.push_back(parse_element(f->base(), part));
        return from_coeffs(f, std::move(c));
      }
      return embed(f, parse_element(f->base(), text));
    }
    case FieldKind::Rationals: return from_rational(f, parse_rational_text(text));
    case FieldKind::Real: return from_double(f, parse_double_text(text));
    case FieldKind::Complex: {
      if (!text.empty() && text.front() == '[') {
        const auto parts = split_top(text.substr(1, text.size() - 2), ',');
        if (parts.size() != 2) fail(ErrorCode::ParseError, "complex literal must be [re,im]");
        return from_complex(f, {parse_double_text(parts[0]), parse_double_text(parts[1])});
      }
      return from_double(f, parse_double_text(text));
    }
  }
  fail(ErrorCode::ParseError, "cannot parse element");
}

}  // namespace wordmap
