#include <gtest/gtest.h>

#include <numeric>
#include <random>
#include <set>

#include "wordmap/field.hpp"
#include "wordmap/poly.hpp"

using namespace wordmap;

namespace {

FieldPtr f4() { return Field::prime_power(2, 2, {1, 1, 1}); }

std::set<std::string> as_strings(const std::vector<Element>& xs) {
  std::set<std::string> s;
  for (const auto& x : xs) s.insert(x.to_string());
  return s;
}

}  // namespace

TEST(FieldArith, PrimeInverse) {
  const auto f = Field::prime(7);
  EXPECT_EQ(inv(from_int(f, 3)), from_int(f, 5));
  for (long long a = 1; a < 7; ++a) EXPECT_TRUE((from_int(f, a) * inv(from_int(f, a))).is_one());
}

TEST(FieldArith, RationalAddition) {
  const auto q = Field::rationals();
  EXPECT_EQ(from_rational(q, mpq_class(1, 2)) + from_rational(q, mpq_class(1, 3)), from_rational(q, mpq_class(5, 6)));
}

TEST(FieldArith, F4GeneratorSquared) {
  const auto f = f4();
  const Element t = parse_element(f, "[0,1]");
  EXPECT_EQ(t * t, parse_element(f, "[1,1]"));
}

TEST(FieldArith, Errors) {
  const auto f = Field::prime(5);
  try {
    (void)inv(zero(f));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DivisionByZero);
  }
  try {
    (void)(one(f) + one(Field::prime(7)));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DescriptorMismatch);
  }
}

TEST(FieldArith, CongruenceOverF4) {
  const auto f = f4();
  std::vector<Element> all;
  for (const Element e : enumerate(f)) all.push_back(e);
  for (const auto& a : all) {
    for (const auto& b : all) {
      const Element a2 = parse_element(f, a.to_string());
      const Element b2 = parse_element(f, b.to_string());
      EXPECT_EQ(a + b, a2 + b2);
      EXPECT_EQ(a * b, a2 * b2);
      EXPECT_EQ(a - b, a2 - b2);
      if (!b.is_zero()) EXPECT_EQ(a / b, a2 / b2);
    }
  }
}

TEST(FieldArith, FieldAxiomsOverF25) {
  const auto f = Field::prime_power(5, 2, {2, 0, 1});
  std::mt19937_64 rng(1);
  for (int i = 0; i < 200; ++i) {
    const Element a = random_element(f, rng), b = random_element(f, rng), c = random_element(f, rng);
    EXPECT_EQ(a * (b + c), a * b + a * c);
    EXPECT_EQ((a * b) * c, a * (b * c));
    if (!a.is_zero()) EXPECT_TRUE((a * inv(a)).is_one());
  }
}

TEST(KthRoots, Examples) {
  const auto f5 = Field::prime(5);
  EXPECT_EQ(as_strings(kth_roots(from_int(f5, 4), 2)), (std::set<std::string>{"2", "3"}));
  EXPECT_TRUE(kth_roots(from_int(f5, 2), 2).empty());
  const auto q = Field::rationals();
  EXPECT_EQ(as_strings(kth_roots(from_int(q, 8), 3)), (std::set<std::string>{"2"}));
}

TEST(KthRoots, CountMatchesGcdOverFiniteFields) {
  for (const FieldPtr& f : {Field::prime(7), Field::prime(13), f4(), Field::prime_power(3, 2, {1, 0, 1})}) {
    const std::uint64_t q = *f->cardinality();
    for (std::uint64_t k = 1; k <= 6; ++k) {
      for (const Element e : enumerate(f)) {
        const auto roots = kth_roots(e, k);
        for (const auto& r : roots) EXPECT_EQ(pow(r, k), e);
        // Oracle: direct scan.
        std::size_t expected = 0;
        for (const Element x : enumerate(f)) expected += pow(x, k) == e;
        EXPECT_EQ(roots.size(), expected);
        if (!e.is_zero() && expected > 0) EXPECT_EQ(roots.size(), std::gcd(k, q - 1));
      }
    }
  }
}

TEST(KthRoots, Approximate) {
  const auto r = Field::real(1e-9);
  const auto roots = kth_roots(from_double(r, 16.0), 4);
  ASSERT_EQ(roots.size(), 2u);
  for (const auto& x : roots) EXPECT_NEAR(std::abs(x.real()), 2.0, 1e-12);
  EXPECT_TRUE(kth_roots(from_double(r, -1.0), 2).empty());
  EXPECT_EQ(kth_roots(from_double(r, -8.0), 3).size(), 1u);
  const auto c = Field::complex(1e-9);
  const auto z = kth_roots(from_complex(c, {0, 1}), 2);
  ASSERT_EQ(z.size(), 1u);
  EXPECT_NEAR(std::abs(z[0].complex() * z[0].complex() - std::complex<double>(0, 1)), 0.0, 1e-12);
  EXPECT_EQ(kth_roots(from_complex(c, {0, 1}), 5, true).size(), 5u);
}

TEST(Enumerate, Sizes) {
  std::vector<std::string> f3;
  for (const Element e : enumerate(Field::prime(3))) f3.push_back(e.to_string());
  EXPECT_EQ(f3, (std::vector<std::string>{"0", "1", "2"}));
  std::set<std::string> seen;
  for (const Element e : enumerate(f4())) seen.insert(e.to_string());
  EXPECT_EQ(seen.size(), 4u);
  try {
    (void)enumerate(Field::rationals());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InfiniteField);
  }
}

TEST(Enumerate, IndexRoundTrip) {
  const auto f = Field::prime_power(3, 3, find_irreducible(3, 3));
  for (std::uint64_t i = 0; i < 27; ++i) EXPECT_EQ(index_of(element_at(f, i)), i);
}

TEST(Extend, F4FromF2) {
  const auto f2 = Field::prime(2);
  const auto ext = extend(f2, Poly::from_ints(f2, {1, 1, 1}));
  const Element a = ext.generator;
  EXPECT_TRUE((a * a + a + one(ext.field)).is_zero());
  EXPECT_EQ(*ext.field->cardinality(), 4u);
}

TEST(Extend, F25GeneratorSquare) {
  const auto f5 = Field::prime(5);
  const auto ext = extend(f5, Poly::from_ints(f5, {2, 0, 1}));
  EXPECT_EQ(ext.generator * ext.generator, ext.embed(from_int(f5, 3)));
}

TEST(Extend, GaussianRationals) {
  const auto q = Field::rationals();
  const auto ext = extend(q, Poly::from_ints(q, {1, 0, 1}));
  EXPECT_EQ(ext.embed(from_rational(q, mpq_class(1, 2))).to_string(), "[1/2,0]");
  EXPECT_TRUE((ext.generator * ext.generator + one(ext.field)).is_zero());
}

TEST(Extend, Errors) {
  const auto f5 = Field::prime(5);
  try {
    (void)extend(f5, Poly::from_ints(f5, {4, 0, 1}));  // T^2 - 1
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ReduciblePolynomial);
  }
  const auto r = Field::real();
  try {
    (void)extend(r, Poly::from_ints(r, {1, 0, 1}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::UnsupportedBase);
  }
}

TEST(Extend, EmbedIsRingHomomorphism) {
  const auto f7 = Field::prime(7);
  const auto ext = extend(f7, Poly::from_ints(f7, {1, 1, 0, 1}));  // T^3 + T + 1
  std::mt19937_64 rng(3);
  for (int i = 0; i < 100; ++i) {
    const Element a = random_element(f7, rng), b = random_element(f7, rng);
    EXPECT_EQ(ext.embed(a + b), ext.embed(a) + ext.embed(b));
    EXPECT_EQ(ext.embed(a * b), ext.embed(a) * ext.embed(b));
  }
}

TEST(RegularSolutions, Examples) {
  const auto f7 = Field::prime(7);
  const auto s = regular_solution_search(f7, 2, 3, zero(f7), false);
  EXPECT_EQ(as_strings(s), (std::set<std::string>{"1", "2", "3"}));
  EXPECT_EQ(s[0].to_string() + s[1].to_string() + s[2].to_string(), "123");
  const auto f5 = Field::prime(5);
  const auto t = regular_solution_search(f5, 2, 2, one(f5), false);
  EXPECT_EQ(t[0].to_string() + "," + t[1].to_string(), "0,1");
  const auto q = Field::rationals();
  const Element g = from_rational(q, mpq_class(7, 3));
  const auto u = regular_solution_search(q, 1, 2, g, false);
  EXPECT_TRUE(u[0].is_zero());
  EXPECT_EQ(u[1], g);
}

TEST(RegularSolutions, DefiningEquationsHold) {
  for (const FieldPtr& f : {Field::prime(11), Field::prime(13), Field::prime_power(3, 2, {1, 0, 1})}) {
    for (std::uint64_t k = 2; k <= 3; ++k) {
      for (std::size_t n = 2; n <= 4; ++n) {
        for (const Element gamma : enumerate(f)) {
          for (bool nz : {false, true}) {
            std::vector<Element> s;
            try {
              s = regular_solution_search(f, k, n, gamma, nz);
            } catch (const Error& e) {
              EXPECT_EQ(e.code(), ErrorCode::NotFound);
              continue;
            }
            ASSERT_EQ(s.size(), n);
            Element sum = zero(f);
            std::set<std::string> powers;
            for (const auto& x : s) {
              sum += pow(x, k);
              powers.insert(pow(x, k).to_string());
              if (nz) EXPECT_FALSE(x.is_zero());
            }
            EXPECT_EQ(sum, gamma);
            EXPECT_EQ(powers.size(), n);
          }
        }
      }
    }
  }
}

TEST(RegularSolutions, NotFoundIsExhaustive) {
  // Over F_7 the nonzero squares {1,2,4} sum to 0, so no three distinct nonzero squares sum to 1.
  const auto f7 = Field::prime(7);
  try {
    (void)regular_solution_search(f7, 2, 3, one(f7), true);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotFound);
  }
}

TEST(RegularSolutions, RealConstruction) {
  const auto r = Field::real();
  const auto s = regular_solution_search(r, 3, 4, from_double(r, -2.5), true);
  double sum = 0;
  for (const auto& x : s) sum += std::pow(x.real(), 3);
  EXPECT_NEAR(sum, -2.5, 1e-9);
}

TEST(ParseField, Grammar) {
  EXPECT_EQ(parse_field("Fp:7")->spec(), "Fp:7");
  const auto f = parse_field("Fq:p=2,d=2,mod=[1,1,1]");
  EXPECT_EQ(*f->cardinality(), 4u);
  EXPECT_EQ(f->spec(), "Fq:p=2,d=2,mod=[1,1,1]");
  EXPECT_EQ(parse_field("Q")->kind(), FieldKind::Rationals);
  EXPECT_DOUBLE_EQ(parse_field("R:tol=1e-6")->tolerance(), 1e-6);
  EXPECT_EQ(parse_field("C:tol=1e-9")->kind(), FieldKind::Complex);
  for (const char* bad : {"Fp:8", "Fq:p=2,d=2,mod=[1,0,1]", "X", "R:tol=-1"}) {
    EXPECT_THROW((void)parse_field(bad), Error) << bad;
  }
}
