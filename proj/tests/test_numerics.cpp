#include <cmath>
#include <complex>

#include <gtest/gtest.h>

#include "propid/errors.hpp"
#include "propid/numerics.hpp"
#include "support.hpp"

using namespace propid;
using namespace propid::testing;

namespace {

Mat e(std::size_t dim, std::size_t i) { return Mat::unit(dim, i); }

// Moduli of the roots of x^2 - t x + d by the quadratic formula.
double quadratic_radius(double t, double d) {
  const std::complex<double> disc = std::sqrt(std::complex<double>(t * t - 4 * d));
  return std::max(std::abs((t + disc) / 2.0), std::abs((t - disc) / 2.0));
}

}  // namespace

TEST(Rational, ParsesExactly) {
  EXPECT_EQ(parse_rational("0.5"), q(1, 2));
  EXPECT_EQ(parse_rational("-0.25"), q(-1, 4));
  EXPECT_EQ(parse_rational("6/4"), q(3, 2));
  EXPECT_EQ(parse_rational("-7"), q(-7));
  EXPECT_EQ(parse_rational(".125"), q(1, 8));
  EXPECT_THROW(parse_rational("1/0"), ParseError);
  EXPECT_THROW(parse_rational("abc"), ParseError);
  EXPECT_THROW(parse_rational(""), ParseError);
}

TEST(Rational, LowestTerms) {
  const Rational r = q(6, 4) + q(1, 4);
  EXPECT_EQ(r.get_num(), 7);
  EXPECT_EQ(r.get_den(), 4);
  const Rational s = q(3, -9);
  EXPECT_EQ(s.get_den(), 3);
  EXPECT_EQ(s.get_num(), -1);
}

TEST(Mat, LiteralRoundTrip) {
  const Mat m = mat("1, 1/2; -3, 0.75");
  EXPECT_EQ(m.rows(), 2u);
  EXPECT_EQ(m(1, 1), q(3, 4));
  EXPECT_EQ(parse_matrix(format_matrix(m)), m);
  EXPECT_EQ(parse_matrix("").rows(), 0u);
  EXPECT_THROW(parse_matrix("1,2;3"), ParseError);
}

TEST(Rank, Examples) {
  EXPECT_EQ(rank(Mat::identity(3)), 3u);
  EXPECT_EQ(rank(mat("1,0.5;0,1;-1,-1")), 2u);
  EXPECT_EQ(rank(Mat(4, 4)), 0u);
  EXPECT_EQ(rank(Mat(0, 3)), 0u);
}

TEST(Rank, TransposeInvariantAndMatchesEchelon) {
  Rng rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t r = rng.index(1, 5), c = rng.index(1, 5);
    Mat m = rng.matrix(r, c);
    if (rng.coin() && r > 1) {  // force dependence
      for (std::size_t j = 0; j < c; ++j) m(r - 1, j) = m(0, j) * 3 - m(1 % r, j);
    }
    EXPECT_EQ(rank(m), rank(m.transpose()));
    EXPECT_EQ(rank(m), reduced_row_echelon(m).pivots.size());
  }
}

TEST(Image, Examples) {
  EXPECT_EQ(image(Mat::identity(2)), Subspace::full(2));
  const Subspace ones = image(mat("1,1;1,1"));
  EXPECT_EQ(ones.dim(), 1u);
  EXPECT_EQ(ones, Subspace::span(mat("1;1")));
  // leftmost pivot columns are the basis
  EXPECT_EQ(image(mat("0,2,1;0,4,2")).basis(), mat("2;4"));
}

TEST(Contains, Examples) {
  EXPECT_TRUE(contains(Subspace::full(3), Subspace::span(e(3, 0))));
  EXPECT_FALSE(contains(Subspace::span(hstack(e(3, 0), e(3, 1))), Subspace::span(e(3, 2))));
  const Subspace ex1 = image(gain_section().stacked());
  EXPECT_EQ(ex1.dim(), 2u);
  EXPECT_FALSE(contains(ex1, Subspace::full(3)));
  EXPECT_THROW(contains(Subspace::full(2), Subspace::full(3)), DimensionMismatch);
}

TEST(Contains, ImageOfProductInsideImage) {
  Rng rng(12);
  for (int trial = 0; trial < 100; ++trial) {
    const Mat m = rng.matrix(rng.index(1, 4), rng.index(1, 4));
    const Mat p = rng.matrix(m.cols(), rng.index(1, 4));
    EXPECT_TRUE(contains(image(m), image(m * p)));
  }
}

TEST(Intersect, Examples) {
  EXPECT_EQ(intersect(Subspace::full(3), Subspace::span(e(3, 0))), Subspace::span(e(3, 0)));
  EXPECT_EQ(intersect(Subspace::span(hstack(e(3, 0), e(3, 1))), Subspace::span(hstack(e(3, 1), e(3, 2)))),
            Subspace::span(e(3, 1)));
  EXPECT_EQ(intersect(Subspace::span(mat("1;1")), Subspace::span(mat("1;0"))).dim(), 0u);
}

TEST(Intersect, CommutativeIdempotentAndDimensionFormula) {
  Rng rng(13);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t amb = rng.index(1, 5);
    const Subspace a = image(rng.matrix(amb, rng.index(1, amb), 1, 1));
    const Subspace b = image(rng.matrix(amb, rng.index(1, amb), 1, 1));
    const Subspace ab = intersect(a, b);
    EXPECT_EQ(ab, intersect(b, a));
    EXPECT_EQ(intersect(a, a), a);
    const std::size_t sum_dim = rank(hstack(a.basis(), b.basis()));
    EXPECT_EQ(a.dim() + b.dim(), sum_dim + ab.dim());
    EXPECT_TRUE(contains(a, ab));
    EXPECT_TRUE(contains(b, ab));
  }
}

TEST(SolveRight, Examples) {
  EXPECT_EQ(*solve_right(Mat::identity(2), Mat::identity(2)), Mat::identity(2));
  const Mat e13 = hstack(e(3, 0), e(3, 2));
  EXPECT_EQ(*solve_right(e13, e13), Mat::identity(2));
  EXPECT_FALSE(solve_right(mat("1,0;0,0"), mat("0;1")).has_value());
}

TEST(SolveRight, ExactOnRandomConsistentSystems) {
  Rng rng(14);
  for (int trial = 0; trial < 200; ++trial) {
    const Mat a = rng.matrix(rng.index(1, 4), rng.index(1, 4));
    const Mat b = a * rng.matrix(a.cols(), rng.index(1, 3));
    const auto x = solve_right(a, b);
    ASSERT_TRUE(x.has_value());
    EXPECT_EQ(a * *x, b);
  }
}

TEST(Kernel, RankNullity) {
  Rng rng(15);
  for (int trial = 0; trial < 100; ++trial) {
    const Mat a = rng.matrix(rng.index(1, 4), rng.index(1, 5), 2, 1);
    const Mat k = kernel(a);
    EXPECT_EQ(k.cols() + rank(a), a.cols());
    EXPECT_TRUE((a * k).is_zero());
    EXPECT_EQ(rank(k), k.cols());
  }
}

TEST(Inverse, RoundTrip) {
  Rng rng(16);
  const Mat a = rng.invertible(3);
  EXPECT_EQ(a * *inverse(a), Mat::identity(3));
  EXPECT_FALSE(inverse(mat("1,2;2,4")).has_value());
}

TEST(Projection, ResidualIsOrthogonal) {
  Rng rng(17);
  for (int trial = 0; trial < 50; ++trial) {
    const Subspace s = image(rng.matrix(4, rng.index(1, 3)));
    const Mat w = rng.matrix(4, 1);
    const Mat h = w - project(s, w);
    EXPECT_TRUE((s.basis().transpose() * h).is_zero());
    EXPECT_TRUE(contains(s, project(s, w)));
  }
  const Subspace perp = orthogonal_complement(Subspace::span(mat("1;1;0")));
  EXPECT_EQ(perp.dim(), 2u);
}

TEST(Spectral, Examples) {
  EXPECT_NEAR(spectral_radius(Mat::identity(2)).value, 1.0, 1e-12);
  EXPECT_NEAR(spectral_radius(mat("0.5,-0.5;1,0.5")).value, std::sqrt(0.75), 1e-12);
  const SpectralRadius r = spectral_radius(mat("0.5,-0.25;1,1.5"));
  EXPECT_NEAR(r.value, 1.0, 1e-9);
  EXPECT_TRUE(r.marginal);
  EXPECT_THROW(spectral_radius(Mat(2, 3)), DimensionMismatch);
}

TEST(Spectral, CharacteristicPolynomial) {
  // lambda^2 - lambda + 0.75
  EXPECT_EQ(characteristic_polynomial(mat("0.5,-0.5;1,0.5")),
            (std::vector<Rational>{q(3, 4), q(-1), q(1)}));
  EXPECT_EQ(characteristic_polynomial(mat("0.5,-0.25;1,1.5")),
            (std::vector<Rational>{q(1), q(-2), q(1)}));
}

TEST(Spectral, AgreesWithQuadraticFormulaOnTwoByTwo) {
  Rng rng(18);
  for (int trial = 0; trial < 300; ++trial) {
    const Mat a = rng.matrix(2, 2, 3, 4);
    const double t = to_double(trace(a));
    const double d = to_double(a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0));
    EXPECT_NEAR(spectral_radius(a).value, quadratic_radius(t, d), 1e-9) << format_matrix(a);
  }
  // repeated roots: (x - r)^2 with rational r
  for (int num = -8; num <= 8; ++num) {
    const Rational r = ratio(num, 4);
    const Mat a{{r, 1}, {0, r}};
    EXPECT_NEAR(spectral_radius(a).value, std::abs(to_double(r)), 1e-9);
  }
}

TEST(Spectral, DistinctEigenvaluesOfDefectiveMatrix) {
  const auto ev = distinct_eigenvalues(mat("0.5,-0.25;1,1.5"));
  ASSERT_EQ(ev.size(), 1u);
  EXPECT_NEAR(ev[0].real(), 1.0, 1e-12);
  EXPECT_NEAR(ev[0].imag(), 0.0, 1e-12);
}

TEST(Spectral, PbhRank) {
  // (A, B) = (diag(1,2), e1): mode 2 unreachable
  const Mat a = mat("1,0;0,2");
  EXPECT_EQ(numeric_pbh_rank(a, mat("1;0"), 1.0), 2u);
  EXPECT_EQ(numeric_pbh_rank(a, mat("1;0"), 2.0), 1u);
  EXPECT_EQ(numeric_pbh_rank(a, mat("1;1"), 2.0), 2u);
}
