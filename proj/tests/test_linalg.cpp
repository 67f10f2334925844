#include <gtest/gtest.h>

#include "orbitquad/linalg.hpp"
#include "orbitquad/rng.hpp"
#include "support.hpp"

using namespace orbitquad;
using support::vec;

namespace {

Mat random_mat(Rng& rng, std::size_t r, std::size_t c, std::int64_t bound = 3) {
  Mat m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = Scalar(static_cast<long>(rng.integer(-bound, bound)));
  return m;
}

// Rank by elimination from the last column leftwards, a different pivot order.
std::size_t rank_right_to_left(Mat m) {
  std::size_t rank = 0;
  std::vector<bool> used(m.rows(), false);
  for (std::size_t c = m.cols(); c-- > 0;) {
    std::size_t p = m.rows();
    for (std::size_t i = 0; i < m.rows(); ++i)
      if (!used[i] && !is_zero(m(i, c))) {
        p = i;
        break;
      }
    if (p == m.rows()) continue;
    used[p] = true;
    ++rank;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == p || is_zero(m(i, c))) continue;
      Scalar f = m(i, c) / m(p, c);
      for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) -= f * m(p, j);
    }
  }
  return rank;
}

}  // namespace

TEST(Scalar, ParsesIntegersAndFractions) {
  EXPECT_EQ(parse_scalar("3/2"), Scalar(3, 2));
  EXPECT_EQ(parse_scalar("-7"), Scalar(-7));
  EXPECT_EQ(parse_scalar("4/6"), Scalar(2, 3));
  EXPECT_EQ(to_string(Scalar(-6, 4)), "-3/2");
  EXPECT_EQ(to_string(Scalar(5)), "5");
}

TEST(Scalar, RejectsMalformedLiterals) {
  for (const char* bad : {"", "x", "1/0", "1/", "/2", "1.5", "2/-3", "--1", "1 2"})
    EXPECT_THROW(parse_scalar(bad), Error) << bad;
}

TEST(Scalar, ParsesVectors) {
  Vec v = parse_vector("1,0,3/2");
  ASSERT_EQ(v.size(), 3u);
  EXPECT_EQ(v[2], Scalar(3, 2));
  EXPECT_THROW(parse_vector("1,,2"), Error);
}

TEST(Rref, IdentityHasFullRank) {
  auto r = rref(Mat::identity(2));
  EXPECT_EQ(r.rank, 2u);
  EXPECT_EQ(r.kernel_basis.rows(), 0u);
}

TEST(Rref, ZeroMatrix) {
  auto r = rref(Mat(3, 3));
  EXPECT_EQ(r.rank, 0u);
  EXPECT_EQ(r.kernel_basis.rows(), 3u);
}

TEST(Rref, RankOneKernel) {
  Mat m{{1, 2}, {2, 4}};
  auto r = rref(m);
  EXPECT_EQ(r.rank, 1u);
  EXPECT_EQ(rank_right_to_left(m), 1u);
  Subspace k = kernel(m);
  ASSERT_EQ(k.dim(), 1u);
  EXPECT_EQ(k.basis().row_vec(0), vec("1,-1/2"));
  EXPECT_TRUE(k.contains(vec("-2,1")));
}

TEST(Rref, IsIdempotent) {
  Rng rng(11);
  for (int t = 0; t < 20; ++t) {
    Mat m = random_mat(rng, 4, 5);
    auto once = rref(m);
    auto twice = rref(once.reduced);
    EXPECT_EQ(once.reduced, twice.reduced);
  }
}

TEST(Rref, RankMatchesTransposeAndSecondElimination) {
  Rng rng(12);
  for (int t = 0; t < 30; ++t) {
    Mat m = random_mat(rng, 1 + t % 5, 1 + (t / 5) % 6, 1);
    EXPECT_EQ(rank(m), rank(m.transpose()));
    EXPECT_EQ(rank(m), rank_right_to_left(m));
  }
}

TEST(Rref, KernelVectorsAreAnnihilated) {
  Rng rng(13);
  for (int t = 0; t < 20; ++t) {
    Mat m = random_mat(rng, 3, 6);
    Subspace k = kernel(m);
    EXPECT_EQ(k.dim() + rank(m), 6u);
    for (const auto& v : k.basis_vectors()) EXPECT_TRUE(is_zero(m.apply(v)));
  }
}

TEST(Combine, CoordinateAxes) {
  Subspace a = Subspace::span({vec("1,0")}, 2), b = Subspace::span({vec("0,1")}, 2);
  EXPECT_EQ(subspace_combine(a, b, CombineMode::sum).dim(), 2u);
  EXPECT_EQ(subspace_combine(a, b, CombineMode::intersect).dim(), 0u);
}

TEST(Combine, Idempotent) {
  Subspace a = Subspace::span({vec("1,2,3"), vec("0,1,1")}, 3);
  EXPECT_EQ(subspace_combine(a, a, CombineMode::sum), a);
  EXPECT_EQ(subspace_combine(a, a, CombineMode::intersect), a);
}

TEST(Combine, HandSolvedIntersection) {
  Subspace a = Subspace::span({vec("1,1,0"), vec("0,0,1")}, 3);
  Subspace b = Subspace::span({vec("1,0,0"), vec("0,1,0")}, 3);
  Subspace i = subspace_combine(a, b, CombineMode::intersect);
  EXPECT_EQ(i, Subspace::span({vec("1,1,0")}, 3));
}

TEST(Combine, DimensionFormula) {
  Rng rng(14);
  for (int t = 0; t < 20; ++t) {
    Subspace a = row_space(random_mat(rng, 2, 5, 1));
    Subspace b = row_space(random_mat(rng, 3, 5, 1));
    auto s = subspace_combine(a, b, CombineMode::sum);
    auto i = subspace_combine(a, b, CombineMode::intersect);
    EXPECT_EQ(s.dim() + i.dim(), a.dim() + b.dim());
    EXPECT_TRUE(a.contains(i));
    EXPECT_TRUE(b.contains(i));
    EXPECT_TRUE(s.contains(a));
  }
}

TEST(Annihilator, FullAndZero) {
  EXPECT_EQ(annihilator(Subspace::full(3)).dim(), 0u);
  EXPECT_EQ(annihilator(Subspace(4)).dim(), 4u);
}

TEST(Annihilator, OfALine) {
  Subspace ann = annihilator(Subspace::span({vec("1,1,0")}, 3));
  EXPECT_EQ(ann.dim(), 2u);
  EXPECT_TRUE(ann.contains(vec("1,-1,0")));
  EXPECT_TRUE(ann.contains(vec("0,0,1")));
}

TEST(Annihilator, IsAnInvolution) {
  Rng rng(15);
  for (int t = 0; t < 20; ++t) {
    Subspace s = row_space(random_mat(rng, 1 + t % 4, 5, 2));
    Subspace ann = annihilator(s);
    EXPECT_EQ(s.dim() + ann.dim(), 5u);
    EXPECT_EQ(annihilator(ann), s);
    for (const auto& f : ann.basis_vectors())
      for (const auto& v : s.basis_vectors()) EXPECT_TRUE(is_zero(dot(f, v)));
  }
}

TEST(Solve, Identity) {
  auto x = solve(Mat::identity(2), vec("3/2,-1"));
  ASSERT_TRUE(x);
  EXPECT_EQ(*x, vec("3/2,-1"));
}

TEST(Solve, FreeVariablesAreZero) {
  auto x = solve(Mat{{1, 1}}, vec("5"));
  ASSERT_TRUE(x);
  EXPECT_EQ(*x, vec("5,0"));
}

TEST(Solve, Inconsistent) { EXPECT_FALSE(solve(Mat{{1}, {0}}, vec("0,1"))); }

TEST(Solve, ResidualIsExactlyZero) {
  Rng rng(16);
  for (int t = 0; t < 30; ++t) {
    Mat m = random_mat(rng, 3, 4);
    Vec rhs = m.apply(rng.integer_vector(4, 5));
    auto x = solve(m, rhs);
    ASSERT_TRUE(x);
    EXPECT_EQ(m.apply(*x), rhs);
  }
}

TEST(Solve, PreparedSolveMatchesSolve) {
  Rng rng(17);
  for (int t = 0; t < 20; ++t) {
    Mat m = random_mat(rng, 4, 7, 1);
    PreparedSolve ps(m);
    Vec consistent = m.apply(rng.integer_vector(7, 3));
    Vec any = rng.integer_vector(4, 3);
    EXPECT_EQ(ps.solve(consistent), solve(m, consistent));
    EXPECT_EQ(ps.solve(any), solve(m, any));
  }
}

TEST(Solve, ShapeMismatchThrows) { EXPECT_THROW(solve(Mat::identity(2), vec("1")), ShapeError); }

TEST(Subspace, CanonicalFormGivesEquality) {
  Subspace a = Subspace::span({vec("1,2,0"), vec("0,1,1")}, 3);
  Subspace b = Subspace::span({vec("1,3,1"), vec("2,5,1")}, 3);
  EXPECT_EQ(a, b);
  auto c = a.coordinates(vec("3,7,1"));
  ASSERT_TRUE(c);
  Vec back = zero_vec(3);
  for (std::size_t i = 0; i < a.dim(); ++i) axpy((*c)[i], a.basis().row(i), back);
  EXPECT_EQ(back, vec("3,7,1"));
  EXPECT_FALSE(a.coordinates(vec("0,0,1")));
}

TEST(Echelon, InsertReportsGrowth) {
  EchelonBuilder b(3);
  EXPECT_TRUE(b.insert(vec("1,1,0")));
  EXPECT_FALSE(b.insert(vec("2,2,0")));
  EXPECT_TRUE(b.insert(vec("0,1,0")));
  EXPECT_TRUE(b.contains(vec("5,-1,0")));
  EXPECT_EQ(b.subspace(), Subspace::span({vec("1,0,0"), vec("0,1,0")}, 3));
}
