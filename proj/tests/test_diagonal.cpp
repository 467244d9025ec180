#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <random>
#include <set>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "wordmap/diagonal.hpp"
#include "wordmap/factor.hpp"
#include "wordmap/field.hpp"
#include "wordmap/linalg.hpp"

using namespace wordmap;

namespace {

DiagonalWordSpec word_over(const FieldPtr& f, std::vector<std::pair<long long, std::uint64_t>> terms) {
  DiagonalWordSpec s;
  for (auto [d, k] : terms) s.terms.push_back({from_int(f, d), k});
  return s;
}

Matrix real_matrix(const FieldPtr& r, const std::vector<std::vector<double>>& rows) {
  std::vector<Vec> v;
  for (const auto& row : rows) {
    Vec out;
    for (double x : row) out.push_back(from_double(r, x));
    v.push_back(out);
  }
  return Matrix(r, v);
}

Matrix random_matrix(const FieldPtr& f, std::size_t n, std::mt19937_64& rng) {
  Matrix m(f, n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = random_element(f, rng);
  return m;
}

Element random_nonzero(const FieldPtr& f, std::mt19937_64& rng) {
  for (;;) {
    Element e = random_element(f, rng);
    if (!e.is_zero()) return e;
  }
}

bool split_squarefree(const Matrix& m) {
  const Poly mp = minpoly(m);
  return static_cast<long>(roots(mp).size()) == mp.degree();
}

Matrix unit(const FieldPtr& f, std::size_t n, std::size_t i, std::size_t j) { return Matrix::unit(f, n, i, j); }

}  // namespace

// ---- scalar solutions and invertible Jordan blocks ----

TEST(ScalarTwoSolutions, F7Example) {
  const auto f7 = Field::prime(7);
  const auto [s1, s2] = scalar_two_solutions(from_int(f7, 5), 2, 2, one(f7));
  EXPECT_EQ(s1.a.residue(), 1);
  EXPECT_EQ(s1.b.residue(), 2);
  EXPECT_EQ(s2.a.residue(), 2);
  EXPECT_EQ(s2.b.residue(), 1);
}

TEST(ScalarTwoSolutions, PropertiesOverSeveralFields) {
  std::mt19937_64 rng(3);
  std::vector<FieldPtr> fields{Field::prime(101), Field::prime(13), Field::complex(1e-9), Field::real(1e-9)};
  for (const auto& f : fields) {
    for (int t = 0; t < 20; ++t) {
      const std::uint64_t k1 = 2 + t % 3;
      const std::uint64_t k2 = f->kind() == FieldKind::Real ? 3 : 2 + (t / 3) % 3;
      const Element alpha = random_element(f, rng), beta = random_nonzero(f, rng);
      std::pair<ScalarPair, ScalarPair> sols;
      try {
        sols = scalar_two_solutions(alpha, k1, k2, beta);
      } catch (const Error& e) {
        // Only legitimate when exhaustive search confirms no such pair exists.
        ASSERT_EQ(e.code(), ErrorCode::NotFound);
        ASSERT_TRUE(f->is_finite());
        const auto all = enumerate(f);
        bool two = false;
        for (const auto& a : all)
          for (const auto& b : all)
            for (const auto& c : all)
              for (const auto& d : all)
                two = two || (pow(a, k1) + beta * pow(b, k2) == alpha && pow(c, k1) + beta * pow(d, k2) == alpha &&
                              pow(a, k1) != pow(c, k1) && pow(b, k2) != pow(d, k2));
        EXPECT_FALSE(two);
        continue;
      }
      const auto& [s1, s2] = sols;
      const double tol = f->is_approx() ? 1e-7 : 0;
      auto close = [&](const Element& x, const Element& y) {
        return tol == 0 ? x == y : (x - y).magnitude() <= tol * (1 + y.magnitude());
      };
      EXPECT_TRUE(close(pow(s1.a, k1) + beta * pow(s1.b, k2), alpha));
      EXPECT_TRUE(close(pow(s2.a, k1) + beta * pow(s2.b, k2), alpha));
      EXPECT_FALSE(close(pow(s1.a, k1), pow(s2.a, k1)));
      EXPECT_FALSE(close(pow(s1.b, k2), pow(s2.b, k2)));
    }
  }
}

TEST(InvertibleJordan, F7SplitExample) {
  const auto f7 = Field::prime(7);
  const Element alpha = from_int(f7, 5), b = one(f7);
  const auto [s1, s2] = scalar_two_solutions(alpha, 2, 2, b);
  const auto [g, h] = invertible_jordan_split(alpha, 2, s1, s2, 2, 2, b);
  EXPECT_EQ(g, Matrix::from_ints(f7, {{1, 1}, {0, 4}}));
  EXPECT_EQ(h, Matrix::from_ints(f7, {{4, 0}, {0, 1}}));
  EXPECT_EQ(g + h, Matrix::jordan_block(alpha, 2));
}

TEST(InvertibleJordan, SingleEntryIsTheScalarSolution) {
  const auto f7 = Field::prime(7);
  const auto [bm, cm] = invertible_jordan_decompose(from_int(f7, 5), 1, 2, 2, one(f7));
  EXPECT_EQ(bm * bm + cm * cm, Matrix::scalar(from_int(f7, 5), 1));
}

TEST(InvertibleJordan, SplitAndDecomposeOverF101) {
  std::mt19937_64 rng(4);
  const auto f = Field::prime(101);
  for (int t = 0; t < 50; ++t) {
    const Element alpha = t == 0 ? zero(f) : random_element(f, rng);
    const Element beta = random_nonzero(f, rng);
    const std::uint64_t k1 = 2 + t % 3, k2 = 2 + (t / 3) % 2;
    const auto [s1, s2] = scalar_two_solutions(alpha, k1, k2, beta);
    for (std::size_t n = 1; n <= 12; ++n) {
      const auto [g, h] = invertible_jordan_split(alpha, n, s1, s2, k1, k2, beta);
      EXPECT_EQ(g + h, Matrix::jordan_block(alpha, n));
    }
    const std::size_t n = 1 + t % 6;
    const auto [bm, cm] = invertible_jordan_decompose(alpha, n, k1, k2, beta);
    EXPECT_EQ(pow(bm, k1) + Matrix::scalar(beta, n) * pow(cm, k2), Matrix::jordan_block(alpha, n));
    EXPECT_TRUE(split_squarefree(bm));
    EXPECT_TRUE(split_squarefree(cm));
  }
}

// ---- junction matrices and power partitions ----

TEST(Junction, Examples) {
  const auto q = Field::rationals();
  EXPECT_TRUE(junction_matrix(q, {5}).is_zero());
  EXPECT_EQ(junction_matrix(q, {2, 2}), unit(q, 4, 1, 2));
  EXPECT_EQ(junction_matrix(q, {2, 2, 3}), unit(q, 7, 1, 2) + unit(q, 7, 3, 4));
}

TEST(PowerPartition, Examples) {
  EXPECT_EQ(nilpotent_power_partition(7, 2), (Partition{3, 4}));
  EXPECT_EQ(nilpotent_power_partition(6, 2), (Partition{3, 3}));
  EXPECT_EQ(nilpotent_power_partition(5, 1), (Partition{5}));
}

TEST(PowerPartition, AgreesWithRankOracle) {
  const auto f = Field::prime(2);
  for (std::size_t n = 1; n <= 20; ++n) {
    for (std::uint64_t k = 1; k <= 5; ++k) {
      const Matrix jk = pow(Matrix::jordan_block(zero(f), n), k);
      auto expect = oracle::nilpotent_partition_by_rank(oracle::to_int(jk), 2);
      auto got = nilpotent_power_partition(n, k);
      EXPECT_EQ(Partition(expect.begin(), expect.end()), got) << "n=" << n << " k=" << k;
    }
  }
}

TEST(JunctionScaledPower, Examples) {
  const auto f5 = Field::prime(5);
  const Matrix b = junction_as_scaled_power(f5, {2, 2}, 2, one(f5));
  EXPECT_EQ(b * b, unit(f5, 4, 1, 2));
  EXPECT_EQ(nilpotent_partition(b * b), (Partition{1, 1, 2}));

  const auto f7 = Field::prime(7);
  const Matrix b2 = junction_as_scaled_power(f7, {3, 4}, 2, from_int(f7, 3));
  EXPECT_EQ(Matrix::scalar(from_int(f7, 3), 7) * b2 * b2, junction_matrix(f7, {3, 4}));

  const Matrix b1 = junction_as_scaled_power(f7, {2, 3}, 1, from_int(f7, 3));
  EXPECT_EQ(b1, Matrix::scalar(inv(from_int(f7, 3)), 5) * junction_matrix(f7, {2, 3}));
}

TEST(JunctionScaledPower, RandomOverF7) {
  std::mt19937_64 rng(5);
  const auto f7 = Field::prime(7);
  for (int t = 0; t < 50; ++t) {
    const std::uint64_t k = 1 + rng() % 4;
    Partition parts;
    std::size_t n = 0;
    const std::size_t count = 1 + rng() % 4;
    for (std::size_t i = 0; i < count; ++i) {
      parts.push_back(2 + rng() % 4);
      n += parts.back();
    }
    while (n < 2 * k) {
      parts.push_back(2);
      n += 2;
    }
    std::sort(parts.begin(), parts.end());
    const Element beta = random_nonzero(f7, rng);
    const Matrix b = junction_as_scaled_power(f7, parts, k, beta);
    EXPECT_EQ(Matrix::scalar(beta, n) * pow(b, k), junction_matrix(f7, parts));
  }
}

TEST(LargeNilpotent, Examples) {
  auto check = [](const FieldPtr& f, std::size_t n, std::uint64_t k1, std::uint64_t k2, long long beta) {
    const auto [x, y] = large_nilpotent_decompose(f, n, k1, k2, from_int(f, beta));
    EXPECT_EQ(pow(x, k1) + Matrix::scalar(from_int(f, beta), n) * pow(y, k2), Matrix::jordan_block(zero(f), n));
    EXPECT_EQ(nilpotent_partition(pow(x, k1)), nilpotent_power_partition(n, k1));
  };
  check(Field::prime(5), 4, 2, 2, 1);
  check(Field::prime(7), 6, 3, 2, 2);
  check(Field::rationals(), 4, 2, 2, 1);
  for (std::size_t n = 6; n <= 12; ++n) check(Field::prime(11), n, 3, 3, 4);
  EXPECT_THROW((void)large_nilpotent_decompose(Field::prime(5), 3, 2, 2, one(Field::prime(5))), Error);
}

// ---- bordered matrices ----

TEST(Bordered, F7ExampleGivenY) {
  const auto f7 = Field::prime(7);
  const Vec mu{from_int(f7, 1), from_int(f7, 2), from_int(f7, 3)};
  const auto sol = bordered_solve(one(f7), mu, 2, {one(f7), zero(f7)}, GivenSide::Y, one(f7));
  EXPECT_EQ(sol.spec.x, (Vec{zero(f7), one(f7)}));
  EXPECT_TRUE(sol.spec.z.is_zero());
  EXPECT_EQ(sol.spec.realize(), Matrix::from_ints(f7, {{0, 1, 0}, {0, 0, 1}, {1, 0, 0}}));
  EXPECT_EQ(sol.witness * sol.witness, sol.spec.realize());
}

TEST(Bordered, F7ExampleGivenX) {
  const auto f7 = Field::prime(7);
  const Vec mu{from_int(f7, 1), from_int(f7, 2), from_int(f7, 3)};
  const auto sol = bordered_solve(one(f7), mu, 2, {zero(f7), one(f7)}, GivenSide::X, one(f7));
  EXPECT_EQ(sol.spec.y, (Vec{one(f7), zero(f7)}));
}

TEST(Bordered, ZeroLeadingCoordinateRejected) {
  const auto f7 = Field::prime(7);
  const Vec mu{from_int(f7, 1), from_int(f7, 2), from_int(f7, 3)};
  try {
    (void)bordered_solve(one(f7), mu, 2, {zero(f7), one(f7)}, GivenSide::Y, one(f7));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ZeroLeadingCoordinate);
  }
}

TEST(Bordered, CharpolyMatchesPrescribedSpectrum) {
  std::mt19937_64 rng(6);
  const auto f = Field::prime(101);
  for (std::size_t n = 3; n <= 5; ++n) {
    for (int t = 0; t < 50; ++t) {
      const std::uint64_t k = 2 + t % 3;
      const Element scale = t % 2 ? one(f) : random_nonzero(f, rng);
      const Vec mu = random_regular_solution(f, k, n, random_element(f, rng), false, rng);
      Vec given;
      for (std::size_t i = 0; i + 1 < n; ++i) given.push_back(random_element(f, rng));
      const GivenSide side = t % 4 < 2 ? GivenSide::Y : GivenSide::X;
      if (side == GivenSide::Y) given.front() = random_nonzero(f, rng);
      else given.back() = random_nonzero(f, rng);
      const Element eps = random_nonzero(f, rng);
      const auto sol = bordered_solve(eps, mu, k, given, side, scale);
      Vec eig;
      for (const auto& m : mu) eig.push_back(scale * pow(m, k));
      EXPECT_EQ(charpoly(sol.spec.realize()), Poly::from_roots(f, eig));
      EXPECT_EQ(Matrix::scalar(scale, n) * pow(sol.witness, k), sol.spec.realize());
    }
  }
}

TEST(Bordered, SymbolicCharpolyExpansion) {
  EXPECT_TRUE(fixture::bordered_charpoly_expansion(3));
  EXPECT_TRUE(fixture::bordered_charpoly_expansion(4));
}

// ---- small nilpotent blocks ----

TEST(SmallNilpotent, F5TwoByTwo) {
  const auto f5 = Field::prime(5);
  const auto [x, y] = small_nilpotent_decompose(f5, 2, 2, 2, one(f5));
  EXPECT_EQ(x * x + y * y, Matrix::jordan_block(zero(f5), 2));
  EXPECT_EQ(x * x, Matrix::from_ints(f5, {{0, 0}, {0, 1}}));
  EXPECT_EQ(y * y, Matrix::from_ints(f5, {{0, 1}, {0, 4}}));
}

TEST(SmallNilpotent, ThreeByThree) {
  const auto f11 = Field::prime(11);
  const auto [x, y] = small_nilpotent_decompose(f11, 3, 2, 2, one(f11));
  EXPECT_EQ(x * x + y * y, Matrix::jordan_block(zero(f11), 3));
  const auto f101 = Field::prime(101);
  for (std::size_t n = 2; n <= 4; ++n) {
    const Element beta = from_int(f101, 7);
    const auto [x2, y2] = small_nilpotent_decompose(f101, n, 3, 2, beta);
    EXPECT_EQ(pow(x2, 3) + Matrix::scalar(beta, n) * y2 * y2, Matrix::jordan_block(zero(f101), n));
  }
}

TEST(SmallNilpotent, F7ThreeByThreeNeedsFallback) {
  // The nonzero squares of F_7 are {1,2,4}, which sum to 0, so no bordered
  // route exists; the dispatcher still finds a witness.
  const auto f7 = Field::prime(7);
  try {
    (void)small_nilpotent_decompose(f7, 3, 2, 2, one(f7));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotFound);
  }
  const Matrix j = Matrix::jordan_block(zero(f7), 3);
  const auto w = solve_diagonal_word(j, word_over(f7, {{1, 2}, {1, 2}}));
  EXPECT_EQ(w.matrices[0] * w.matrices[0] + w.matrices[1] * w.matrices[1], j);
}

TEST(SmallNilpotent, TinyFieldNotFound) {
  const auto f2 = Field::prime(2);
  try {
    (void)small_nilpotent_decompose(f2, 2, 2, 2, one(f2));
    FAIL();
  } catch (const Error& e) {
    EXPECT_TRUE(e.is_negative_answer());
  }
}

TEST(SmallNilpotent, SquaresIdentities) {
  const auto f5 = Field::prime(5);
  const Element half = inv(from_int(f5, 2)), i = from_int(f5, 2);
  const Matrix a(f5, {{one(f5), half}, {zero(f5), one(f5)}});
  const Matrix b = Matrix::scalar(i, 2);
  EXPECT_EQ(a * a + b * b, Matrix::jordan_block(zero(f5), 2));

  const auto f2 = Field::prime(2);
  const Matrix c = Matrix::from_ints(f2, {{1, 0}, {0, 0}}), d = Matrix::from_ints(f2, {{1, 1}, {0, 0}});
  EXPECT_EQ(c * c + d * d, Matrix::jordan_block(zero(f2), 2));
}

// ---- real 2x2 sums of squares ----

TEST(RealSquares, CaseIdentities) {
  const auto r = Field::real(1e-9);
  for (double alpha : {-2.0, -0.25, 0.0, 0.7, 3.0}) {
    const Matrix x = real_matrix(r, {{0, alpha / 2}, {1, 0}});
    EXPECT_LT(max_abs_diff(x * x + x * x, real_matrix(r, {{alpha, 0}, {0, alpha}})), 1e-9);
    const Matrix x2 = real_matrix(r, {{0, -(4 * alpha + 1) / 4}, {1, 0}});
    const Matrix y2 = real_matrix(r, {{0.5, 1}, {0, 0.5}});
    EXPECT_LT(max_abs_diff(x2 * x2 + y2 * y2, real_matrix(r, {{-alpha, 1}, {0, -alpha}})), 1e-9);
  }
  const double a = 2.0, b = 0.5;
  const Matrix s = real_matrix(r, {{std::sqrt(a), 0}, {0, std::sqrt(b)}});
  EXPECT_LT(max_abs_diff(s * s, real_matrix(r, {{a, 0}, {0, b}})), 1e-9);
}

TEST(RealSquares, DistinctEigenvalueSumsAreDiagonal) {
  // These sums are diagonal; a superdiagonal 1 on the target is not reached.
  const auto r = Field::real(1e-9);
  const double a = 2.0, b = 0.5;
  const Matrix x = real_matrix(r, {{0, -(4 * a + 1) / 4}, {1, 0}});
  const Matrix y = real_matrix(r, {{0.5, 0}, {0, std::sqrt(a - b + 0.25)}});
  EXPECT_LT(max_abs_diff(x * x + y * y, real_matrix(r, {{-a, 0}, {0, -b}})), 1e-9);
  EXPECT_GT(max_abs_diff(x * x + y * y, real_matrix(r, {{-a, 1}, {0, -b}})), 0.5);
  const Matrix x2 = real_matrix(r, {{0, -2 * b}, {1, 0}});
  const Matrix y2 = real_matrix(r, {{std::sqrt(a + 2 * b), 0}, {0, std::sqrt(b)}});
  EXPECT_LT(max_abs_diff(x2 * x2 + y2 * y2, real_matrix(r, {{a, 0}, {0, -b}})), 1e-9);
}

TEST(RealSquares, SolverCoversAllShapes) {
  const auto r = Field::real(1e-9);
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(-3, 3);
  std::vector<Matrix> targets{real_matrix(r, {{0, 1}, {0, 0}}), real_matrix(r, {{-1, 0}, {0, -1}}),
                              real_matrix(r, {{2, 1}, {0, 2}}), real_matrix(r, {{-3, 0}, {0, 1}}),
                              real_matrix(r, {{-2, 1}, {0, 1}})};
  for (const auto& a : targets) {
    const auto [x, y] = real_two_by_two_squares(a);
    EXPECT_LT(max_abs_diff(x * x + y * y, a), 1e-9) << a.to_string();
  }
  // Random targets, including complex-eigenvalue ones, through the dispatcher.
  const auto spec = word_over(r, {{1, 2}, {1, 2}});
  for (int t = 0; t < 50; ++t) {
    const Matrix a = real_matrix(r, {{u(rng), u(rng)}, {u(rng), u(rng)}});
    const auto w = solve_diagonal_word(a, spec, t);
    EXPECT_LT(max_abs_diff(spec.evaluate(w.matrices), a), 1e-7) << a.to_string();
  }
}

// ---- dispatcher ----

TEST(SolveDiagonalWord, RealExamples) {
  const auto r = Field::real(1e-9);
  const auto spec = word_over(r, {{1, 2}, {1, 2}});
  for (const auto& a : {real_matrix(r, {{0, 1}, {0, 0}}), real_matrix(r, {{2, 0}, {0, 3}})}) {
    const auto w = solve_diagonal_word(a, spec);
    EXPECT_LT(max_abs_diff(spec.evaluate(w.matrices), a), 1e-9);
  }
  const auto cubic = word_over(r, {{1, 2}, {2, 3}});
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(-2, 2);
  for (int t = 0; t < 20; ++t) {
    const std::size_t n = 1 + t % 4;
    Matrix a(r, n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) a(i, j) = from_double(r, u(rng));
    const auto w = solve_diagonal_word(a, cubic, t);
    EXPECT_LT(max_abs_diff(cubic.evaluate(w.matrices), a), 1e-7);
  }
}

TEST(SolveDiagonalWord, RealEvenEvenBeyondTwoIsUnsupported) {
  const auto r = Field::real(1e-9);
  try {
    (void)solve_diagonal_word(real_matrix(r, {{-1, 1, 0}, {0, -1, 0}, {0, 0, 2}}), word_over(r, {{1, 2}, {1, 4}}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::Unsupported);
  }
}

TEST(SolveDiagonalWord, ComplexLiftOfTheRealBlock) {
  const auto c = Field::complex(1e-9);
  const auto zeta = from_complex(c, std::polar(1.0, M_PI / 4));
  const Matrix x(c, {{zeta, inv(zeta)}, {zero(c), zero(c)}});
  const Matrix y(c, {{zero(c), zero(c)}, {zero(c), zeta}});
  const Matrix target(c, {{from_complex(c, {0, 1}), one(c)}, {zero(c), from_complex(c, {0, 1})}});
  EXPECT_LT(max_abs_diff(x * x + y * y, target), 1e-9);

  const auto r = Field::real(1e-9);
  const double cs = std::cos(M_PI / 4), sn = std::sin(M_PI / 4);
  const Matrix a = real_matrix(r, {{0, -1, 1, 0}, {1, 0, 0, 1}, {0, 0, 0, -1}, {0, 0, 1, 0}});
  const Matrix xr = real_matrix(r, {{cs, -sn, cs, sn}, {sn, cs, -sn, cs}, {0, 0, 0, 0}, {0, 0, 0, 0}});
  const Matrix yr = real_matrix(r, {{0, 0, 0, 0}, {0, 0, 0, 0}, {0, 0, cs, -sn}, {0, 0, sn, cs}});
  EXPECT_LT(max_abs_diff(xr * xr + yr * yr, a), 1e-9);
}

TEST(SolveDiagonalWord, ThreeTermsPadWithZero) {
  std::mt19937_64 rng(10);
  const auto f = Field::prime(101);
  const auto spec = word_over(f, {{1, 2}, {1, 2}, {1, 5}});
  for (int t = 0; t < 10; ++t) {
    const Matrix a = random_matrix(f, 1 + t % 4, rng);
    const auto w = solve_diagonal_word(a, spec, t);
    ASSERT_EQ(w.matrices.size(), 3u);
    EXPECT_TRUE(w.matrices[2].is_zero());
    EXPECT_EQ(spec.evaluate(w.matrices), a);
  }
}

TEST(SolveDiagonalWord, LinearTermAbsorbsTarget) {
  const auto f = Field::prime(101);
  std::mt19937_64 rng(11);
  const Matrix a = random_matrix(f, 4, rng);
  const auto spec = word_over(f, {{3, 4}, {5, 1}});
  const auto w = solve_diagonal_word(a, spec);
  EXPECT_EQ(spec.evaluate(w.matrices), a);
}

TEST(SolveDiagonalWord, ScalingCovariance) {
  std::mt19937_64 rng(12);
  const auto f = Field::prime(101);
  for (int t = 0; t < 20; ++t) {
    const std::size_t n = 1 + t % 4;
    const Matrix a = random_matrix(f, n, rng);
    const auto spec = word_over(f, {{1 + t, 2}, {2 + t, 3}});
    const auto w = solve_diagonal_word(a, spec, t);
    const Element c = random_nonzero(f, rng);
    DiagonalWordSpec scaled = spec;
    for (auto& term : scaled.terms) term.delta = c * term.delta;
    EXPECT_EQ(scaled.evaluate(w.matrices), Matrix::scalar(c, n) * a);
  }
}

TEST(SolveDiagonalWord, SmallFieldsViaDispatcher) {
  for (long long p : {5, 7, 11}) {
    const auto f = Field::prime(p);
    const auto spec = word_over(f, {{1, 2}, {1, 2}});
    std::mt19937_64 rng(p);
    for (int t = 0; t < 20; ++t) {
      const Matrix a = random_matrix(f, 1 + t % 4, rng);
      const auto w = solve_diagonal_word(a, spec, t);
      EXPECT_EQ(spec.evaluate(w.matrices), a);
    }
  }
}
