#include <gtest/gtest.h>

#include "hopfcyclic/linalg.hpp"

using namespace hopfcyclic;

namespace {

std::vector<Scalar> row(std::initializer_list<long long> xs) {
    std::vector<Scalar> r;
    for (auto x : xs) r.emplace_back(x);
    return r;
}

}  // namespace

TEST(Scalar, RationalArithmeticNormalizes) {
    Scalar a = Scalar::rational(2, 4);
    EXPECT_EQ(a, Scalar::rational(1, 2));
    EXPECT_EQ(a + a, Scalar(1));
    EXPECT_EQ((a * Scalar(-6)).str(), "-3");
    EXPECT_EQ(Scalar::rational(3, -9).str(), "-1/3");
}

TEST(Scalar, OverflowSpillsToBigAndBack) {
    Scalar big(1LL << 62);
    Scalar sq = big * big;
    EXPECT_FALSE(sq.is_zero());
    EXPECT_EQ(sq.to_mpq(), mpq_class(mpz_class(1) << 124));
    Scalar back = sq / big;
    EXPECT_EQ(back, big);
    EXPECT_EQ(sq - sq, Scalar());
}

TEST(Scalar, ResiduesCoerceRationals) {
    Scalar x = Scalar::residue(2, 3);
    EXPECT_EQ(x * x, Scalar::residue(1, 3));
    EXPECT_EQ(x + Scalar(1), Scalar::residue(0, 3));
    EXPECT_EQ(x.inverse(), Scalar::residue(2, 3));
    EXPECT_EQ(Scalar::parse("1/2", 3), Scalar::residue(2, 3));
    EXPECT_THROW(x + Scalar::residue(1, 5), std::domain_error);
    EXPECT_THROW(Scalar::parse("1/3", 3), std::domain_error);
}

TEST(Rref, SpecExample) {
    Matrix m = Matrix::from_rows(2, {row({2, 4}), row({1, 2})});
    RrefResult r = rref(m);
    EXPECT_EQ(r.rank, 1u);
    EXPECT_EQ(r.echelon, Matrix::from_rows(2, {row({1, 2}), row({0, 0})}));
    EXPECT_EQ(r.pivots, std::vector<std::size_t>{0});
}

TEST(Rref, UniqueAcrossGeneratorOrder) {
    std::vector<Vec> g1 = {dense_to_vec(row({1, 1, 0})), dense_to_vec(row({0, 1, 1}))};
    std::vector<Vec> g2 = {dense_to_vec(row({1, 2, 1})), dense_to_vec(row({1, 0, -1}))};
    EXPECT_EQ(Subspace::span(3, g1), Subspace::span(3, g2));
    EXPECT_EQ(Subspace::span(3, g1).basis()[0], dense_to_vec(row({1, 0, -1})));
}

TEST(Quotient, SpecExample) {
    QuotientSpace q(4, Subspace::span(4, {dense_to_vec(row({1, -1, 0, 0}))}));
    EXPECT_EQ(q.dim(), 3u);
    EXPECT_EQ(q.project(unit_vec(0)), q.project(unit_vec(1)));
    for (Idx j = 0; j < 3; ++j) EXPECT_EQ(q.project(q.lift(unit_vec(j))), unit_vec(j));
}

TEST(KernelImage, RankNullity) {
    Matrix m = Matrix::from_rows(4, {row({1, 2, 3, 4}), row({2, 4, 6, 8}), row({0, 1, 0, 1})});
    KernelImage ki = kernel_image(m);
    EXPECT_EQ(ki.image.dim(), 2u);
    EXPECT_EQ(ki.kernel.dim(), 2u);
    for (const auto& v : ki.kernel.basis()) EXPECT_TRUE(vec_is_zero(m.apply(v)));
}

TEST(Solve, ConsistentAndInconsistent) {
    Matrix m = Matrix::from_rows(2, {row({1, 1}), row({1, -1})});
    auto x = solve(m, dense_to_vec(row({3, 1})));
    ASSERT_TRUE(x.has_value());
    EXPECT_EQ(m.apply(*x), dense_to_vec(row({3, 1})));
    Matrix s = Matrix::from_rows(2, {row({1, 1}), row({2, 2})});
    EXPECT_FALSE(solve(s, dense_to_vec(row({1, 0}))).has_value());
    auto inv = inverse(m);
    ASSERT_TRUE(inv.has_value());
    EXPECT_EQ(compose(m, *inv), Matrix::identity(2));
}

TEST(Subspace, IntersectAndSum) {
    Subspace a = Subspace::span(3, {unit_vec(0), unit_vec(1)});
    Subspace b = Subspace::span(3, {unit_vec(1), unit_vec(2)});
    EXPECT_EQ(intersect(a, b), Subspace::span(3, {unit_vec(1)}));
    EXPECT_EQ(sum(a, b).dim(), 3u);
}

TEST(Scalar, FieldPrimeTwo) {
    Matrix m = Matrix::from_rows(2, {{Scalar::residue(1, 2), Scalar::residue(1, 2)}, {Scalar::residue(1, 2), Scalar::residue(1, 2)}});
    EXPECT_EQ(rank(m), 1u);
}
