#include "monalg/snf.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>

using namespace monalg;

namespace {

IntMatrix incidence_of_cycle(int n) {
  // columns are edges {i, i+1}
  IntMatrix a(n, n);
  for (int j = 0; j < n; ++j) {
    a(j, j) = 1;
    a((j + 1) % n, j) = 1;
  }
  return a;
}

IntMatrix diag_matrix(const LatticeNormalForm &nf, std::size_t m, std::size_t n) {
  IntMatrix d(m, n);
  for (std::size_t i = 0; i < nf.diagonal.size(); ++i) d(i, i) = nf.diagonal[i];
  return d;
}

IntMatrix random_matrix(std::mt19937 &rng, std::size_t m, std::size_t n, int lo, int hi) {
  std::uniform_int_distribution<int> e(lo, hi);
  IntMatrix a(m, n);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j) a(i, j) = e(rng);
  return a;
}

} // namespace

TEST(CheckedInt, OverflowThrows) {
  CheckedInt big(INT64_MAX);
  EXPECT_THROW(big + CheckedInt(1), IntegerOverflow);
  EXPECT_THROW(big * CheckedInt(2), IntegerOverflow);
  EXPECT_THROW(-CheckedInt(INT64_MIN), IntegerOverflow);
  EXPECT_EQ((CheckedInt(7) / CheckedInt(-2)).value(), -3);
}

TEST(CheckedInt, FallbackRerunsWithBigIntegers) {
  auto r = with_overflow_fallback([]<class T>() {
    T x = from_integer<T>(Integer(1) << 40);
    return to_integer(x * x);
  });
  EXPECT_EQ(r, Integer(1) << 80);
}

TEST(Rational, FloorCeil) {
  EXPECT_EQ(floor_of(Rational(-3, 2)), -2);
  EXPECT_EQ(ceil_of(Rational(-3, 2)), -1);
  EXPECT_EQ(ceil_of(Rational(7, 2)), 4);
  EXPECT_EQ(floor_div(CheckedInt(-7), CheckedInt(2)).value(), -4);
  EXPECT_EQ(parse_rational("-6/4"), Rational(-3, 2));
  EXPECT_THROW(parse_rational("1/0"), DomainError);
}

TEST(Vectors, PrimitiveInteger) {
  RatVector v{Rational(1, 2), Rational(-3, 4), 0};
  EXPECT_EQ(primitive_integer(v), (IntVector{2, -3, 0}));
}

TEST(Matrix, DeterminantAndScaledInverse) {
  IntMatrix g = IntMatrix::from_rows({{2, 1, 0}, {0, 0, 3}, {1, 1, 1}});
  EXPECT_EQ(determinant(g), Integer(-3));
  auto inv = scaled_inverse(g);
  ASSERT_TRUE(inv);
  IntMatrix prod = g * inv->second;
  IntMatrix expect(3, 3);
  for (int i = 0; i < 3; ++i) expect(i, i) = inv->first;
  EXPECT_EQ(prod, expect);
  EXPECT_EQ(abs_value(inv->first), 3);
  EXPECT_FALSE(scaled_inverse(IntMatrix::from_rows({{1, 2}, {2, 4}})));
}

TEST(Matrix, RankAndKernel) {
  std::vector<IntVector> rows{{1, 2, 3}, {2, 4, 6}, {1, 0, 1}};
  EXPECT_EQ(rank_of(rows), 2u);
  auto k = integer_kernel(rows, 3);
  ASSERT_EQ(k.size(), 1u);
  for (const auto &r : rows) EXPECT_EQ(dot(r, k[0]), 0);
}

TEST(Snf, Identity) {
  auto nf = smith_normal_form(IntMatrix::identity(2));
  EXPECT_EQ(nf.diagonal, (IntVector{1, 1}));
}

TEST(Snf, TriangleAndSquare) {
  EXPECT_EQ(smith_normal_form(incidence_of_cycle(3)).diagonal, (IntVector{1, 1, 2}));
  EXPECT_EQ(smith_normal_form(incidence_of_cycle(4)).diagonal, (IntVector{1, 1, 1, 0}));
}

TEST(Snf, RationalInputMustBeIntegral) {
  RatMatrix m(1, 1);
  m(0, 0) = Rational(1, 2);
  EXPECT_THROW(smith_normal_form(m), DomainError);
}

TEST(Torsion, CycleValues) {
  EXPECT_EQ(torsion_of_quotient(incidence_of_cycle(3)), (IntVector{2}));
  EXPECT_TRUE(torsion_of_quotient(incidence_of_cycle(4)).empty());
  EXPECT_EQ(torsion_of_quotient(incidence_of_cycle(5)), (IntVector{2}));
  EXPECT_EQ(torsion_of_quotient(incidence_of_cycle(7)), (IntVector{2}));
}

TEST(SnfProperty, CertificatesReconstructAndChainDivides) {
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> dim(1, 5);
  for (int trial = 0; trial < 200; ++trial) {
    std::size_t m = dim(rng), n = dim(rng);
    IntMatrix a = random_matrix(rng, m, n, -5, 5);
    auto nf = smith_normal_form(a);
    EXPECT_EQ(nf.left * a * nf.right, diag_matrix(nf, m, n));
    EXPECT_EQ(nf.left * nf.left_inverse, IntMatrix::identity(m));
    EXPECT_EQ(abs_value(determinant(nf.left)), 1);
    EXPECT_EQ(abs_value(determinant(nf.right)), 1);
    EXPECT_EQ(nf.rank, rank_of(a));
    for (std::size_t i = 0; i < nf.rank; ++i) {
      EXPECT_GT(nf.diagonal[i], 0);
      if (i + 1 < nf.rank) {
        EXPECT_EQ(nf.diagonal[i + 1] % nf.diagonal[i], 0);
      }
    }
  }
}

TEST(SnfProperty, InvariantUnderRowAndColumnPermutation) {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    IntMatrix a = random_matrix(rng, 4, 3, -4, 4);
    std::vector<std::size_t> pr(4), pc(3);
    std::iota(pr.begin(), pr.end(), 0);
    std::iota(pc.begin(), pc.end(), 0);
    std::shuffle(pr.begin(), pr.end(), rng);
    std::shuffle(pc.begin(), pc.end(), rng);
    IntMatrix b(4, 3);
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 3; ++j) b(i, j) = a(pr[i], pc[j]);
    EXPECT_EQ(smith_normal_form(a).diagonal, smith_normal_form(b).diagonal);
  }
}

TEST(Sublattice, CoordinatesRoundTrip) {
  // 2Z x Z inside Z^2, and its saturation
  std::vector<IntVector> gens{{2, 0}, {2, 1}};
  auto l = Sublattice::spanned_by(gens, 2, false);
  EXPECT_EQ(l.rank(), 2u);
  EXPECT_EQ(l.index_in_saturation(), 2);
  EXPECT_FALSE(l.coordinates({1, 0}));
  auto c = l.coordinates({4, 3});
  ASSERT_TRUE(c);
  EXPECT_EQ(l.embed(*c), (IntVector{4, 3}));
  auto s = Sublattice::spanned_by({{2, 2, 0}}, 3, true);
  EXPECT_EQ(s.rank(), 1u);
  EXPECT_TRUE(s.coordinates({1, 1, 0}));
  EXPECT_FALSE(s.in_span({1, 0, 0}));
}
