#include <gtest/gtest.h>

#include <random>
#include <vector>

#include "anhom/error.hpp"
#include "anhom/gf2.hpp"

using namespace anhom;

namespace {

// Naive cubic product used as an oracle for the word-parallel one.
Gf2Matrix naive_mul(const Gf2Matrix& a, const Gf2Matrix& b) {
  Gf2Matrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < b.cols(); ++j) {
      bool s = false;
      for (std::size_t k = 0; k < a.cols(); ++k) s ^= a.get(i, k) && b.get(k, j);
      out.set(i, j, s);
    }
  }
  return out;
}

Gf2Matrix random_matrix(std::mt19937_64& rng, std::size_t r, std::size_t c) {
  Gf2Matrix m(r, c);
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < c; ++j) m.set(i, j, rng() & 1);
  }
  return m;
}

// Rank by counting distinct row-space vectors (2^rank of them).
std::size_t rank_by_span(const Gf2Matrix& m) {
  std::vector<Gf2Vector> span{Gf2Vector(m.cols())};
  for (std::size_t r = 0; r < m.rows(); ++r) {
    std::vector<Gf2Vector> next = span;
    for (const auto& v : span) next.push_back(v + m.row(r));
    std::sort(next.begin(), next.end());
    next.erase(std::unique(next.begin(), next.end()), next.end());
    span = std::move(next);
  }
  std::size_t k = 0;
  while ((std::size_t{1} << k) < span.size()) ++k;
  return k;
}

}  // namespace

TEST(Gf2Vector, StringRoundTrip) {
  const auto v = Gf2Vector::from_string("1011001");
  EXPECT_EQ(v.size(), 7u);
  EXPECT_TRUE(v.get(0));
  EXPECT_FALSE(v.get(1));
  EXPECT_EQ(v.popcount(), 4u);
  EXPECT_EQ(v.to_string(), "1011001");
  EXPECT_EQ(v.first_set(), 0u);
  EXPECT_FALSE(Gf2Vector(5).first_set().has_value());
}

TEST(Gf2Vector, RejectsBadDigits) {
  EXPECT_THROW(Gf2Vector::from_string("10a"), Error);
}

TEST(Gf2Vector, AdditionIsXorAcrossWordBoundary) {
  Gf2Vector a(130), b(130);
  a.set(1, true);
  a.set(129, true);
  b.set(129, true);
  b.set(64, true);
  const Gf2Vector s = a + b;
  EXPECT_TRUE(s.get(1));
  EXPECT_TRUE(s.get(64));
  EXPECT_FALSE(s.get(129));
  EXPECT_TRUE((s + s).is_zero());
  EXPECT_EQ(a.dot(b), true);
}

TEST(Gf2Vector, SizeMismatchThrows) {
  Gf2Vector a(3), b(4);
  EXPECT_THROW(a ^= b, ShapeError);
  EXPECT_THROW((void)a.dot(b), ShapeError);
}

TEST(Gf2Matrix, ParseAndFormat) {
  const auto m = Gf2Matrix::parse("100\n000\n011\n");
  EXPECT_EQ(m.rows(), 3u);
  EXPECT_EQ(m.cols(), 3u);
  EXPECT_EQ(m.to_string(), "100\n000\n011");
  EXPECT_TRUE(m.get(2, 1));
  EXPECT_EQ(Gf2Matrix::parse("1 0, 1\n\n0 1 1"), Gf2Matrix::parse("101\n011"));
}

TEST(Gf2Matrix, RaggedRowsRejected) {
  EXPECT_THROW(Gf2Matrix::parse("10\n1"), Error);
}

TEST(Gf2Matrix, ProductMatchesNaive) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t r = 1 + rng() % 9, k = 1 + rng() % 70, c = 1 + rng() % 70;
    const auto a = random_matrix(rng, r, k);
    const auto b = random_matrix(rng, k, c);
    EXPECT_EQ(a * b, naive_mul(a, b));
  }
}

TEST(Gf2Matrix, ProductShapeMismatchThrows) {
  EXPECT_THROW(Gf2Matrix(2, 3) * Gf2Matrix(2, 3), ShapeError);
}

TEST(Gf2Matrix, IdentityIsNeutral) {
  std::mt19937_64 rng(11);
  const auto a = random_matrix(rng, 6, 6);
  EXPECT_EQ(a * Gf2Matrix::identity(6), a);
  EXPECT_EQ(Gf2Matrix::identity(6) * a, a);
}

TEST(Gf2Matrix, ApplyIsMatrixTimesColumn) {
  const auto m = Gf2Matrix::parse("110\n011");
  EXPECT_EQ(m.apply(Gf2Vector::from_string("101")).to_string(), "11");
  EXPECT_THROW((void)m.apply(Gf2Vector(2)), ShapeError);
}

TEST(Gf2Matrix, TransposeInvolution) {
  std::mt19937_64 rng(3);
  const auto a = random_matrix(rng, 5, 9);
  EXPECT_EQ(a.transposed().transposed(), a);
  EXPECT_EQ(a.transposed().get(7, 2), a.get(2, 7));
}

TEST(RowReduce, RankAgreesWithSpanCount) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 60; ++trial) {
    const auto a = random_matrix(rng, 1 + rng() % 6, 1 + rng() % 8);
    EXPECT_EQ(rank(a), rank_by_span(a));
  }
}

TEST(RowReduce, ReducedForm) {
  const auto rr = row_reduce(Gf2Matrix::parse("011\n110\n101"));
  EXPECT_EQ(rr.rank, 2u);
  EXPECT_EQ(rr.pivot_columns, (std::vector<std::size_t>{0, 1}));
  EXPECT_EQ(rr.reduced.to_string(), "101\n011\n000");
}

TEST(NullSpace, BasisIsKernelWithRightDimension) {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 60; ++trial) {
    const auto a = random_matrix(rng, 1 + rng() % 6, 1 + rng() % 10);
    const auto basis = null_space_basis(a);
    EXPECT_EQ(basis.size() + rank(a), a.cols());
    for (const auto& v : basis) EXPECT_TRUE(a.apply(v).is_zero());
    if (!basis.empty()) {
      EXPECT_EQ(rank(Gf2Matrix::from_rows(basis, a.cols())), basis.size());
    }
  }
}

TEST(CanonicalBasis, EqualSpansGiveEqualBases) {
  const std::vector<Gf2Vector> a{Gf2Vector::from_string("1100"), Gf2Vector::from_string("0110")};
  const std::vector<Gf2Vector> b{Gf2Vector::from_string("1010"), Gf2Vector::from_string("1100"),
                                 Gf2Vector::from_string("0110")};
  EXPECT_EQ(canonical_basis(a, 4), canonical_basis(b, 4));
  EXPECT_EQ(canonical_basis(a, 4).size(), 2u);
}

TEST(ColumnSpace, MatchesTransposeRowSpace) {
  const auto m = Gf2Matrix::parse("100\n000\n011");
  const auto cols = column_space_basis(m);
  ASSERT_EQ(cols.size(), 2u);
  EXPECT_EQ(cols[0].to_string(), "100");
  EXPECT_EQ(cols[1].to_string(), "001");
}
