#include "wordmap/poly.hpp"

#include <algorithm>

namespace wordmap {

Poly::Poly(FieldPtr field, std::vector<Element> coeffs) : field_(std::move(field)), coeffs_(std::move(coeffs)) {
  for (const auto& c : coeffs_) require_same_field(c.field(), field_);
  trim();
}

void Poly::trim() {
  while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
}

Poly Poly::constant(const Element& c) { return Poly(c.field(), {c}); }

Poly Poly::monomial(const Element& c, std::size_t deg) {
  std::vector<Element> v(deg + 1, wordmap::zero(c.field()));
  v[deg] = c;
  return Poly(c.field(), std::move(v));
}

Poly Poly::x(const FieldPtr& f) { return monomial(one(f), 1); }

Poly Poly::from_roots(const FieldPtr& f, const std::vector<Element>& roots) {
  Poly r = constant(one(f));
  for (const auto& a : roots) r = r * Poly(f, {-a, one(f)});
  return r;
}

Poly Poly::from_ints(const FieldPtr& f, const std::vector<long long>& coeffs) {
  std::vector<Element> v;
  v.reserve(coeffs.size());
  for (auto c : coeffs) v.push_back(from_int(f, c));
  return Poly(f, std::move(v));
}

Element Poly::coeff(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : wordmap::zero(field_); }

Element Poly::lead() const {
  if (coeffs_.empty()) return wordmap::zero(field_);
  return coeffs_.back();
}

bool Poly::is_monic() const { return !coeffs_.empty() && coeffs_.back().is_one(); }

bool Poly::is_one() const { return coeffs_.size() == 1 && coeffs_[0].is_one(); }

Poly Poly::monic() const {
  if (coeffs_.empty()) fail(ErrorCode::ZeroPolynomial, "cannot normalize the zero polynomial");
  const Element li = inv(coeffs_.back());
  std::vector<Element> v;
  v.reserve(coeffs_.size());
  for (const auto& c : coeffs_) v.push_back(c * li);
  v.back() = one(field_);
  return Poly(field_, std::move(v));
}

Element Poly::operator()(const Element& x) const {
  Element r = wordmap::zero(field_);
  for (std::size_t i = coeffs_.size(); i-- > 0;) r = r * x + coeffs_[i];
  return r;
}

Poly Poly::derivative() const {
  if (coeffs_.size() <= 1) return zero(field_);
  std::vector<Element> v;
  for (std::size_t i = 1; i < coeffs_.size(); ++i) v.push_back(from_int(field_, static_cast<long long>(i)) * coeffs_[i]);
  return Poly(field_, std::move(v));
}

std::string Poly::to_string(const std::string& var) const {
  if (coeffs_.empty()) return "0";
  std::string s;
  for (std::size_t i = coeffs_.size(); i-- > 0;) {
    if (coeffs_[i].is_zero()) continue;
    if (!s.empty()) s += " + ";
    const bool unit = coeffs_[i].is_one();
    if (i == 0 || !unit) s += (i > 0 && coeffs_[i].to_string().find_first_of("+-/ ") != std::string::npos)
                                  ? "(" + coeffs_[i].to_string() + ")"
                                  : coeffs_[i].to_string();
    if (i > 0) {
      if (!unit) s += "*";
      s += var;
      if (i > 1) s += "^" + std::to_string(i);
    }
  }
  return s;
}

Poly operator+(const Poly& a, const Poly& b) {
  require_same_field(a.field(), b.field());
  std::vector<Element> v(std::max(a.coeffs().size(), b.coeffs().size()), zero(a.field()));
  for (std::size_t i = 0; i < a.coeffs().size(); ++i) v[i] = a.coeffs()[i];
  for (std::size_t i = 0; i < b.coeffs().size(); ++i) v[i] += b.coeffs()[i];
  return Poly(a.field(), std::move(v));
}

Poly operator-(const Poly& a) {
  std::vector<Element> v;
  for (const auto& c : a.coeffs()) v.push_back(-c);
  return Poly(a.field(), std::move(v));
}

Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }

Poly operator*(const Poly& a, const Poly& b) {
  require_same_field(a.field(), b.field());
  if (a.is_zero() || b.is_zero()) return Poly::zero(a.field());
  std::vector<Element> v(a.coeffs().size() + b.coeffs().size() - 1, zero(a.field()));
  for (std::size_t i = 0; i < a.coeffs().size(); ++i) {
    if (a.coeffs()[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.coeffs().size(); ++j) v[i + j] += a.coeffs()[i] * b.coeffs()[j];
  }
  return Poly(a.field(), std::move(v));
}

Poly operator*(const Element& c, const Poly& a) {
  std::vector<Element> v;
  for (const auto& x : a.coeffs()) v.push_back(c * x);
  return Poly(a.field(), std::move(v));
}

bool operator==(const Poly& a, const Poly& b) {
  if (!same_field(a.field(), b.field())) return false;
  if (a.degree() != b.degree()) return false;
  for (std::size_t i = 0; i < a.coeffs().size(); ++i) {
    if (a.coeffs()[i] != b.coeffs()[i]) return false;
  }
  return true;
}

std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) {
  require_same_field(a.field(), b.field());
  if (b.is_zero()) fail(ErrorCode::DivisionByZero, "polynomial division by zero");
  const FieldPtr& f = a.field();
  if (a.degree() < b.degree()) return {Poly::zero(f), a};
  std::vector<Element> r = a.coeffs();
  const std::size_t db = static_cast<std::size_t>(b.degree());
  std::vector<Element> q(r.size() - db, zero(f));
  const Element li = inv(b.lead());
  const bool exact = f->is_exact();
  for (std::size_t top = r.size(); top-- > db;) {
    if (exact && r[top].is_zero()) continue;
    const Element c = r[top] * li;
    q[top - db] = c;
    for (std::size_t i = 0; i < db; ++i) r[top - db + i] -= c * b.coeffs()[i];
    r[top] = zero(f);
  }
  r.resize(db);
  return {Poly(f, std::move(q)), Poly(f, std::move(r))};
}

Poly operator/(const Poly& a, const Poly& b) { return divmod(a, b).first; }
Poly operator%(const Poly& a, const Poly& b) { return divmod(a, b).second; }

Poly gcd(const Poly& a_in, const Poly& b_in) {
  Poly a = a_in, b = b_in;
  while (!b.is_zero()) {
    Poly r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  return a.is_zero() ? a : a.monic();
}

Poly pow(const Poly& a, std::uint64_t e) {
  Poly r = Poly::constant(one(a.field())), base = a;
  while (e) {
    if (e & 1) r = r * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return r;
}

Poly pow_mod(const Poly& a, std::uint64_t e, const Poly& mod) {
  Poly r = Poly::constant(one(a.field())) % mod, base = a % mod;
  while (e) {
    if (e & 1) r = (r * base) % mod;
    e >>= 1;
    if (e) base = (base * base) % mod;
  }
  return r;
}

}  // namespace wordmap
