#pragma once

// Coefficient fields and their elements.
//
// A field is described at runtime by an immutable `Field` object shared
// through `FieldPtr`. Supported kinds:
//
//   - prime fields F_p,
//   - simple extensions K[x]/(f) of an exact field K (F_{p^d} is the
//     extension of F_p by a degree-d irreducible),
//   - the rationals Q (GMP rationals),
//   - demonstration-grade real and complex fields in double precision that
//     carry a comparison tolerance.
//
// Elements are small values holding their field and a canonical
// representative, so exact equality is representative equality.

#include <complex>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <variant>
#include <vector>

#include <gmpxx.h>

#include "wordmap/error.hpp"

namespace wordmap {

class Field;
class Element;
class Poly;
using FieldPtr = std::shared_ptr<const Field>;

enum class FieldKind { Prime, Extension, Rationals, Real, Complex };

class Element {
 public:
  using Rep = std::variant<std::int64_t, std::vector<Element>, mpq_class, double, std::complex<double>>;

  Element() = default;
  Element(FieldPtr field, Rep rep);

  const FieldPtr& field() const noexcept { return field_; }
  const Rep& rep() const noexcept { return rep_; }
  bool valid() const noexcept { return field_ != nullptr; }

  bool is_zero() const;
  bool is_one() const;

  std::int64_t residue() const { return std::get<std::int64_t>(rep_); }
  const std::vector<Element>& coeffs() const { return std::get<std::vector<Element>>(rep_); }
  const mpq_class& rational() const { return std::get<mpq_class>(rep_); }
  double real() const { return std::get<double>(rep_); }
  std::complex<double> complex() const { return std::get<std::complex<double>>(rep_); }

  /// Magnitude used for pivoting over approximate fields; 0/1 indicator otherwise.
  double magnitude() const;

  std::string to_string() const;

 private:
  FieldPtr field_;
  Rep rep_;
};

class Field {
 public:
  static FieldPtr prime(std::int64_t p);
  /// F_{p^d} as F_p[x]/(modulus); `modulus` low-to-high, monic, irreducible.
  static FieldPtr prime_power(std::int64_t p, std::size_t d, const std::vector<std::int64_t>& modulus);
  static FieldPtr rationals();
  static FieldPtr real(double tolerance = 1e-9);
  static FieldPtr complex(double tolerance = 1e-9);

  /// Raw quotient constructor; callers are responsible for irreducibility.
  /// Prefer `extend`, which checks it.
  static FieldPtr quotient(FieldPtr base, std::vector<Element> monic_modulus);

  FieldKind kind() const noexcept { return kind_; }
  std::int64_t characteristic() const noexcept { return characteristic_; }
  std::optional<std::uint64_t> cardinality() const noexcept { return cardinality_; }
  /// Degree over the immediate base (1 for non-extensions).
  std::size_t degree() const noexcept { return modulus_.empty() ? 1 : modulus_.size() - 1; }
  /// Degree over the prime field (finite kinds only).
  std::size_t absolute_degree() const noexcept;
  const FieldPtr& base() const noexcept { return base_; }
  const std::vector<Element>& modulus() const noexcept { return modulus_; }
  double tolerance() const noexcept { return tolerance_; }

  bool is_finite() const noexcept { return cardinality_.has_value(); }
  bool is_approx() const noexcept { return kind_ == FieldKind::Real || kind_ == FieldKind::Complex; }
  bool is_exact() const noexcept { return !is_approx(); }
  /// True when every element lives in the rationals or an extension of them.
  bool over_rationals() const noexcept;

  /// Canonical field-spec string ("Fp:7", "Fq:p=2,d=2,mod=[1,1,1]", "Q", ...).
  std::string spec() const;

  bool same_as(const Field& other) const noexcept;

 private:
  Field() = default;

  FieldKind kind_ = FieldKind::Prime;
  std::int64_t characteristic_ = 0;
  std::optional<std::uint64_t> cardinality_;
  FieldPtr base_;
  std::vector<Element> modulus_;
  double tolerance_ = 0.0;
};

bool same_field(const FieldPtr& a, const FieldPtr& b) noexcept;
void require_same_field(const FieldPtr& a, const FieldPtr& b);

Element zero(const FieldPtr& f);
Element one(const FieldPtr& f);
Element from_int(const FieldPtr& f, long long v);
Element from_rational(const FieldPtr& f, const mpq_class& v);
Element from_double(const FieldPtr& f, double v);
Element from_complex(const FieldPtr& f, std::complex<double> v);
/// Extension element from its coefficients over the base (low-to-high).
Element from_coeffs(const FieldPtr& f, std::vector<Element> coeffs);

Element operator+(const Element& a, const Element& b);
Element operator-(const Element& a, const Element& b);
Element operator*(const Element& a, const Element& b);
Element operator/(const Element& a, const Element& b);
Element operator-(const Element& a);
Element& operator+=(Element& a, const Element& b);
Element& operator-=(Element& a, const Element& b);
Element& operator*=(Element& a, const Element& b);
Element inv(const Element& a);
Element pow(const Element& a, std::uint64_t e);
/// Integer power allowing negative exponents (requires a nonzero base).
Element pow_signed(const Element& a, long long e);

/// Canonical equality for exact kinds, tolerance equality for approximate kinds.
bool operator==(const Element& a, const Element& b);
inline bool operator!=(const Element& a, const Element& b) { return !(a == b); }

/// Position of an element in the deterministic enumeration order of a finite field.
std::uint64_t index_of(const Element& e);
Element element_at(const FieldPtr& f, std::uint64_t index);

/// Lazy, deterministic enumeration of a finite field.
class ElementStream {
 public:
  class iterator {
   public:
    using value_type = Element;
    using difference_type = std::ptrdiff_t;
    iterator() = default;
    iterator(const FieldPtr* f, std::uint64_t i) : field_(f), index_(i) {}
    Element operator*() const { return element_at(*field_, index_); }
    iterator& operator++() {
      ++index_;
      return *this;
    }
    iterator operator++(int) {
      auto copy = *this;
      ++index_;
      return copy;
    }
    bool operator==(const iterator& o) const { return index_ == o.index_; }

   private:
    const FieldPtr* field_ = nullptr;
    std::uint64_t index_ = 0;
  };

  explicit ElementStream(FieldPtr f);
  iterator begin() const { return {&field_, 0}; }
  iterator end() const { return {&field_, size_}; }
  std::uint64_t size() const noexcept { return size_; }

 private:
  FieldPtr field_;
  std::uint64_t size_;
};

/// All elements of a finite field in enumeration order; throws InfiniteField.
ElementStream enumerate(const FieldPtr& f);

/// All x with x^k = e (finite fields, Q); real roots over R; over C the
/// principal root, or all k roots when `all_complex` is set.
std::vector<Element> kth_roots(const Element& e, std::uint64_t k, bool all_complex = false);

/// Quotient field L = K[x]/(p) together with the class of x and the embedding K -> L.
struct Extension {
  FieldPtr field;
  Element generator;
  std::function<Element(const Element&)> embed;
};

/// Builds K(alpha) for a monic irreducible p over K.
Extension extend(const FieldPtr& base, const Poly& p);

/// Maps a base-field element into an extension (identity when the fields agree).
Element embed(const FieldPtr& target, const Element& x);

/// First monic irreducible of degree d over F_p in enumeration order.
std::vector<std::int64_t> find_irreducible(std::int64_t p, std::size_t d);

/// Deterministic random element (uniform over finite fields, small
/// integers / fractions / doubles otherwise).
Element random_element(const FieldPtr& f, std::mt19937_64& rng);

/// Searches for (l_1..l_n) with sum l_i^k = gamma and the k-th powers pairwise
/// distinct ("regular"); with `require_nonzero` no coordinate may vanish.
/// Finite fields: lexicographic DFS over enumeration order. R/C: direct
/// construction. Q: bounded search over small-height rationals.
/// Throws NotFound when no such tuple is found.
std::vector<Element> regular_solution_search(const FieldPtr& f, std::uint64_t k, std::size_t n,
                                             const Element& gamma, bool require_nonzero);

/// Random regular solution over a finite field (used by property suites).
std::vector<Element> random_regular_solution(const FieldPtr& f, std::uint64_t k, std::size_t n,
                                             const Element& gamma, bool require_nonzero,
                                             std::mt19937_64& rng, std::size_t max_tries = 10000);

/// Parses the field-spec grammar: "Fp:7", "Fq:p=2,d=2,mod=[1,1,1]", "Q",
/// "R:tol=1e-9", "C:tol=1e-9".
FieldPtr parse_field(const std::string& spec);

/// Parses one scalar of `f` from text ("3", "-1/2", "0.25", "[1,0,1]", "[re,im]").
Element parse_element(const FieldPtr& f, const std::string& text);

}  // namespace wordmap
