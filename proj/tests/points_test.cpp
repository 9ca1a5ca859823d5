#include "test_support.hpp"

#include <gtest/gtest.h>

namespace dquot {
namespace {

RationalMatrix mat2(long a, long b, long c, long d) {
  RationalMatrix m(2, 2);
  m(0, 0) = a;
  m(0, 1) = b;
  m(1, 0) = c;
  m(1, 1) = d;
  return m;
}

TEST(ClassicalPoint, FermatRankOne) {
  auto c = matricize(testing::fermat_free(), 1);
  EXPECT_TRUE(is_classical_point(testing::scalar_point({-1, 0, 0, 0}), *c).classical);
  auto off = is_classical_point(testing::scalar_point({0, 0, 0, 0}), *c);
  EXPECT_FALSE(off.classical);
  EXPECT_EQ(off.witness_generator, "s_1[1,1]");
}

TEST(ClassicalPoint, NonCommutingPairHasCommutatorWitness) {
  auto c = matricize(testing::resolve(testing::corpus()[1]), 2);
  MatrixPoint pt{{mat2(0, 1, 0, 0), mat2(0, 0, 1, 0)}, {1, 0}};
  auto check = is_classical_point(pt, *c);
  EXPECT_FALSE(check.classical);
  ASSERT_TRUE(check.witness_generator);
  EXPECT_EQ(check.witness_generator->rfind("a_x_y[", 0), 0u);
}

TEST(ClassicalPoint, DimensionMismatchIsAnError) {
  auto c = matricize(testing::resolve(testing::corpus()[1]), 2);
  EXPECT_THROW(is_classical_point(testing::scalar_point({1, 2}), *c), structural_error);
}

TEST(ClassicalPoint, DiagonalPointsOfEveryCorpusAlgebra) {
  Sampler s(8);
  for (const auto& e : testing::corpus()) {
    auto free = testing::resolve(e);
    auto c = matricize(free, 3);
    MatrixPoint pt = diag_point(free->input, testing::rational_points(e, 3, s));
    EXPECT_TRUE(is_classical_point(pt, *c).classical) << e.label;
  }
}

TEST(Stability, Examples) {
  EXPECT_TRUE(is_stable(testing::scalar_point({5, 7})));
  MatrixPoint zero{{mat2(0, 0, 0, 0), mat2(0, 0, 0, 0)}, {1, 0}};
  EXPECT_FALSE(is_stable(zero));
  MatrixPoint diag{{mat2(1, 0, 0, 2)}, {1, 1}};
  EXPECT_TRUE(is_stable(diag));
  EXPECT_EQ(krylov_dimensions(diag), (std::vector<std::size_t>{1, 2}));
}

TEST(DiagPoint, FermatRankOne) {
  auto pt = diag_point(fermat_input(), {{-1, 0, 0, 0}});
  EXPECT_EQ(pt, testing::scalar_point({-1, 0, 0, 0}));
}

TEST(DiagPoint, ViolatedRelationIsAnError) {
  EXPECT_THROW(diag_point(fermat_input(), {{0, 0, 0, 0}}), structural_error);
}

TEST(DiagPoint, DistinctPointsStableRepeatedUnstable) {
  auto in = fermat_input();
  auto c = matricize(testing::fermat_free(), 2);
  std::vector<Scalar> p1{-1, 0, 0, 0}, p2{0, -1, 0, 0};
  auto good = diag_point(in, {p1, p2});
  EXPECT_TRUE(is_classical_point(good, *c).classical);
  EXPECT_TRUE(is_stable(good));
  auto twice = diag_point(in, {p1, p1});
  EXPECT_TRUE(is_classical_point(twice, *c).classical);
  EXPECT_FALSE(is_stable(twice));
}

TEST(DiagPoint, StabilityAcrossCorpus) {
  Sampler s(21);
  for (const auto& e : testing::corpus()) {
    auto in = testing::resolve(e)->input;
    for (std::size_t n : {2u, 3u}) {
      auto pts = testing::rational_points(e, n, s);
      EXPECT_TRUE(is_stable(diag_point(in, pts))) << e.label;
      pts.back() = pts.front();
      EXPECT_FALSE(is_stable(diag_point(in, pts))) << e.label;
    }
  }
}

TEST(GlAction, IdentityIsTrivial) {
  auto pt = diag_point(fermat_input(), {{-1, 0, 0, 0}, {0, 0, -1, 0}});
  EXPECT_EQ(gl_action(RationalMatrix::identity(2), pt), pt);
}

TEST(GlAction, SingularElementIsAnError) {
  auto pt = diag_point(fermat_input(), {{-1, 0, 0, 0}, {0, 0, -1, 0}});
  EXPECT_THROW(gl_action(mat2(1, 1, 1, 1), pt), structural_error);
}

TEST(GlAction, PreservesClassicalAndStableLoci) {
  Sampler s(99);
  for (const auto& e : testing::corpus()) {
    auto free = testing::resolve(e);
    auto c = matricize(free, 2);
    for (int k = 0; k < 100; ++k) {
      MatrixPoint pt = testing::sample_tuple(e, free->input, 2, s, k);
      if (k % 3 == 0) pt.framing = {s.scalar(), s.scalar()};
      MatrixPoint moved = gl_action(s.invertible_matrix(2), pt);
      ASSERT_EQ(is_classical_point(moved, *c).classical, is_classical_point(pt, *c).classical) << e.label;
      ASSERT_EQ(is_stable(moved), is_stable(pt)) << e.label;
    }
  }
}

TEST(Krylov, DimensionsAreMonotoneAndSettle) {
  Sampler s(4);
  for (int k = 0; k < 200; ++k) {
    std::size_t n = 1 + s.index(4), m = 1 + s.index(3);
    MatrixPoint pt;
    for (std::size_t i = 0; i < m; ++i) {
      RationalMatrix x = s.matrix(n);
      // Sparse matrices make short chains likely.
      for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
          if (s.integer(0, 2)) x(a, b) = 0;
      pt.matrices.push_back(x);
    }
    for (std::size_t i = 0; i < n; ++i) pt.framing.push_back(s.integer(0, 1) ? s.scalar() : Scalar(0));
    auto dims = krylov_dimensions(pt);
    ASSERT_FALSE(dims.empty());
    EXPECT_LE(dims.size(), std::max<std::size_t>(n, 1));
    EXPECT_TRUE(std::is_sorted(dims.begin(), dims.end()));
    EXPECT_LE(dims.back(), n);
    // One more round never grows the span.
    std::vector<std::vector<Scalar>> span{pt.framing};
    for (std::size_t r = 0; r < n; ++r) {
      auto current = span;
      for (const auto& v : current)
        for (const auto& x : pt.matrices) span.push_back(x.apply(v));
    }
    EXPECT_EQ(rank_of_vectors(span, n), dims.back());
  }
}

}  // namespace
}  // namespace dquot
