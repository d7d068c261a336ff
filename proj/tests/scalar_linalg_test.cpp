#include <gtest/gtest.h>

#include "leibniz/matrix.hpp"
#include "leibniz/random.hpp"
#include "leibniz/scalar.hpp"

using namespace leibniz;

namespace {

Matrix mat(std::initializer_list<std::initializer_list<int>> rows) {
  std::vector<Vector> rs;
  size_t cols = 0;
  for (auto r : rows) {
    Vector v;
    for (int x : r) v.push_back(x);
    cols = v.size();
    rs.push_back(v);
  }
  return Matrix::from_rows(rs, cols);
}

Matrix jordan_sum(const std::vector<size_t>& sizes) {
  size_t n = 0;
  for (auto s : sizes) n += s;
  Matrix m(n, n);
  size_t off = 0;
  for (auto s : sizes) {
    for (size_t k = 0; k + 1 < s; ++k) m(off + k, off + k + 1) = 1;
    off += s;
  }
  return m;
}

}  // namespace

TEST(Scalar, CanonicalText) {
  EXPECT_EQ(Scalar::parse("-3/2+1/4i").str(), "-3/2+1/4i");
  EXPECT_EQ(Scalar::parse("4/2").str(), "2");
  EXPECT_EQ(Scalar::parse("-i").str(), "-i");
  EXPECT_EQ(Scalar::parse("i").str(), "i");
  EXPECT_EQ(Scalar::parse("0+2i").str(), "2i");
  EXPECT_EQ(Scalar::parse("1/2-i").str(), "1/2-i");
  EXPECT_EQ(Scalar::parse("0").str(), "0");
}

TEST(Scalar, RejectsMalformed) {
  EXPECT_THROW(Scalar::parse(""), InputError);
  EXPECT_THROW(Scalar::parse("1/0"), InputError);
  EXPECT_THROW(Scalar::parse("abc"), InputError);
  EXPECT_THROW(Scalar::parse("1.5"), InputError);
  EXPECT_THROW(Scalar(1) / Scalar(0), DomainError);
}

TEST(Scalar, FieldAxiomsOnSamples) {
  Sampler s(7);
  for (int k = 0; k < 300; ++k) {
    Scalar a = s.nonzero() + Scalar::i() * s.sparse();
    Scalar b = s.sparse() + Scalar::i() * s.sparse();
    Scalar c = s.sparse();
    EXPECT_EQ(a * (b + c), a * b + a * c);
    EXPECT_EQ((a * b) * c, a * (b * c));
    EXPECT_EQ(a / a, Scalar(1));
    EXPECT_EQ((b / a) * a, b);
    EXPECT_EQ(Scalar::parse(b.str()), b);
  }
  EXPECT_EQ(Scalar::i() * Scalar::i(), Scalar(-1));
}

TEST(Rref, Examples) {
  auto r = rref(mat({{1, 2}, {2, 4}}));
  EXPECT_EQ(r.rank, 1u);
  EXPECT_EQ(r.pivots, std::vector<size_t>{0});
  EXPECT_EQ(rref(Matrix::identity(3)).form, Matrix::identity(3));
  EXPECT_EQ(rref(Matrix(2, 2)).rank, 0u);
}

TEST(Rref, Idempotent) {
  Sampler s(11);
  for (int k = 0; k < 50; ++k) {
    Matrix m(4, 6);
    for (size_t r = 0; r < 4; ++r)
      for (size_t c = 0; c < 6; ++c) m(r, c) = s.sparse();
    auto once = rref(m);
    EXPECT_EQ(rref(once.form).form, once.form);
    EXPECT_EQ(once.rank, rank(m.transpose()));
  }
}

TEST(Kernel, Examples) {
  EXPECT_EQ(kernel(Matrix(2, 2)).dim(), 2u);
  EXPECT_EQ(kernel(Matrix::identity(4)).dim(), 0u);
  auto k = kernel(mat({{1, 1}}));
  ASSERT_EQ(k.dim(), 1u);
  EXPECT_TRUE(k.contains(Vector{1, -1}));
}

TEST(Kernel, DimensionFormulaAndResubstitution) {
  Sampler s(12);
  for (int k = 0; k < 50; ++k) {
    Matrix m(3, 7);
    for (size_t r = 0; r < 3; ++r)
      for (size_t c = 0; c < 7; ++c) m(r, c) = s.sparse();
    auto ker = kernel(m);
    EXPECT_EQ(ker.dim(), 7 - rank(m));
    for (const auto& v : ker.vectors()) EXPECT_TRUE(is_zero(m * v));
  }
}

TEST(SubspaceLattice, Examples) {
  auto e1 = Subspace::span(3, {Vector{1, 0, 0}});
  auto e2 = Subspace::span(3, {Vector{0, 1, 0}});
  EXPECT_EQ(subspace_sum(e1, e2).dim(), 2u);
  EXPECT_EQ(subspace_intersect(e1, e1), e1);
  auto d = Subspace::span(2, {Vector{1, 1}});
  auto f = Subspace::span(2, {Vector{1, 0}});
  EXPECT_EQ(subspace_intersect(d, f).dim(), 0u);
  EXPECT_THROW(subspace_sum(e1, d), InputError);
}

TEST(SubspaceLattice, GrassmannFormula) {
  Sampler s(13);
  for (int k = 0; k < 60; ++k) {
    std::vector<Vector> a, b;
    for (size_t j = 0, na = 1 + s.index(4); j < na; ++j) a.push_back(s.vector(6));
    for (size_t j = 0, nb = 1 + s.index(4); j < nb; ++j) b.push_back(s.vector(6));
    auto A = Subspace::span(6, a), B = Subspace::span(6, b);
    auto sum = subspace_sum(A, B), cap = subspace_intersect(A, B);
    EXPECT_EQ(A.dim() + B.dim(), sum.dim() + cap.dim());
    EXPECT_TRUE(subspace_contains(A, cap));
    EXPECT_TRUE(subspace_contains(B, cap));
    EXPECT_TRUE(subspace_contains(sum, A));
  }
}

TEST(Inverse, RoundTripAndSingular) {
  Sampler s(14);
  for (int k = 0; k < 20; ++k) {
    Matrix p = s.invertible(6);
    Matrix q = inverse(p);
    EXPECT_EQ(p * q, Matrix::identity(6));
    EXPECT_EQ(q * p, Matrix::identity(6));
  }
  EXPECT_THROW(inverse(mat({{1, 2}, {2, 4}})), InputError);
}

TEST(Nilpotent, Examples) {
  Matrix u(4, 4);
  for (size_t r = 0; r < 4; ++r)
    for (size_t c = r + 1; c < 4; ++c) u(r, c) = static_cast<int>(r + c + 1);
  EXPECT_TRUE(is_nilpotent_matrix(u));
  EXPECT_FALSE(is_nilpotent_matrix(Matrix::identity(3)));
  EXPECT_THROW(is_nilpotent_matrix(Matrix(2, 3)), InputError);
}

TEST(Jordan, Examples) {
  EXPECT_EQ(jordan_block_sizes(jordan_sum({3, 2})), (std::vector<size_t>{3, 2}));
  EXPECT_EQ(jordan_block_sizes(Matrix(5, 5)), (std::vector<size_t>{1, 1, 1, 1, 1}));
  EXPECT_THROW(jordan_block_sizes(Matrix::identity(2)), DomainError);
}

// Conjugating a known Jordan form hides the blocks; rank data must recover them.
TEST(Jordan, ConjugatedBlocksAndRankMonotonicity) {
  Sampler s(15);
  for (int k = 0; k < 100; ++k) {
    size_t n = 2 + s.index(11);
    std::vector<size_t> sizes;
    for (size_t left = n; left > 0;) {
      size_t b = 1 + s.index(left);
      sizes.push_back(b);
      left -= b;
    }
    std::sort(sizes.rbegin(), sizes.rend());
    Matrix j = jordan_sum(sizes);
    Matrix p = s.invertible(n, 2);
    Matrix m = p * j * inverse(p);
    EXPECT_EQ(jordan_block_sizes(m), sizes);
    size_t prev = n + 1;
    for (unsigned e = 0; e <= n; ++e) {
      size_t r = rank(power(m, e));
      EXPECT_LE(r, prev);
      prev = r;
    }
  }
}

TEST(Jordan, RandomUpperTriangularSumsToDim) {
  Sampler s(16);
  for (int k = 0; k < 100; ++k) {
    size_t n = 1 + s.index(12);
    Matrix m(n, n);
    for (size_t r = 0; r < n; ++r)
      for (size_t c = r + 1; c < n; ++c) m(r, c) = s.sparse();
    auto sizes = jordan_block_sizes(m);
    size_t total = 0;
    for (auto b : sizes) total += b;
    EXPECT_EQ(total, n);
    EXPECT_TRUE(std::is_sorted(sizes.rbegin(), sizes.rend()));
    // number of blocks = nullity
    EXPECT_EQ(sizes.size(), n - rank(m));
  }
}
