#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "wordmap/field.hpp"

namespace wordmap {

/// Univariate polynomial over a field, coefficients low-to-high. The leading
/// coefficient is nonzero unless the polynomial is zero (empty).
class Poly {
 public:
  Poly() = default;
  Poly(FieldPtr field, std::vector<Element> coeffs);

  static Poly zero(const FieldPtr& f) { return Poly(f, {}); }
  static Poly constant(const Element& c);
  /// The monomial c * T^deg.
  static Poly monomial(const Element& c, std::size_t deg);
  static Poly x(const FieldPtr& f);
  /// (T - r_1)...(T - r_n).
  static Poly from_roots(const FieldPtr& f, const std::vector<Element>& roots);
  static Poly from_ints(const FieldPtr& f, const std::vector<long long>& coeffs);

  const FieldPtr& field() const noexcept { return field_; }
  const std::vector<Element>& coeffs() const noexcept { return coeffs_; }
  bool is_zero() const noexcept { return coeffs_.empty(); }
  /// -1 for the zero polynomial.
  long degree() const noexcept { return static_cast<long>(coeffs_.size()) - 1; }
  Element coeff(std::size_t i) const;
  Element lead() const;
  bool is_monic() const;
  bool is_one() const;
  Poly monic() const;

  Element operator()(const Element& x) const;

  Poly derivative() const;

  std::string to_string(const std::string& var = "T") const;

 private:
  void trim();

  FieldPtr field_;
  std::vector<Element> coeffs_;
};

Poly operator+(const Poly& a, const Poly& b);
Poly operator-(const Poly& a, const Poly& b);
Poly operator-(const Poly& a);
Poly operator*(const Poly& a, const Poly& b);
Poly operator*(const Element& c, const Poly& a);
bool operator==(const Poly& a, const Poly& b);
inline bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

/// Quotient and remainder; throws DivisionByZero for a zero divisor.
std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b);
Poly operator/(const Poly& a, const Poly& b);
Poly operator%(const Poly& a, const Poly& b);

/// Monic gcd (zero only when both inputs are zero).
Poly gcd(const Poly& a, const Poly& b);
Poly pow(const Poly& a, std::uint64_t e);
Poly pow_mod(const Poly& a, std::uint64_t e, const Poly& mod);

}  // namespace wordmap
