#include <gtest/gtest.h>

#include "hopfcyclic/homcore.hpp"
#include "hopfcyclic/instance.hpp"

using namespace hopfcyclic;

namespace {

using Dims = std::vector<std::size_t>;

AlgebraData z2_algebra(std::uint32_t p) { return group_algebra({{0, 1}, {1, 0}}, p, {"1", "g"}); }

AlgebraData dual_numbers() {
    std::vector<Vec> t{unit_vec(0), unit_vec(1), unit_vec(1), {}};
    return make_algebra(2, t, unit_vec(0), {"1", "x"});
}

Dims hc(const MixedComplexData& m, int upto) { return betti(totalize(m, Variant::BC, upto + 1).complex, 0, upto); }

// X = span(a, c) <- span(e) with d e = c, retracting onto Y = span(a).
SDRData toy_sdr() {
    SDRData s;
    s.X.dims = {2, 1, 0};
    s.X.d = {Matrix(0, 2), Matrix(2, 1), Matrix(1, 0)};
    s.X.d[1].col[0] = unit_vec(1);
    s.Y.dims = {1, 0, 0};
    s.Y.d = {Matrix(0, 1), Matrix(1, 0), Matrix(0, 0)};
    s.i = {Matrix(2, 1), Matrix(1, 0), Matrix(0, 0)};
    s.i[0].col[0] = unit_vec(0);
    s.p = {Matrix(1, 2), Matrix(0, 1), Matrix(0, 0)};
    s.p[0].col[0] = unit_vec(0);
    s.h = {Matrix(1, 2), Matrix(0, 1)};
    s.h[0].col[1] = unit_vec(0, Scalar(-1));
    return s;
}

}  // namespace

TEST(Canonical, GroupAlgebraZ2) {
    AlgebraData c = z2_algebra(0);
    CanonicalComplex cc = canonical_mixed(c, scalars(c), 6);
    EXPECT_TRUE(verify_mixed(cc.mixed).ok());
    EXPECT_EQ(betti(cc.mixed.hochschild(), 0, 4), (Dims{2, 0, 0, 0, 0}));
    EXPECT_EQ(hc(cc.mixed, 4), (Dims{2, 0, 2, 0, 2}));
}

TEST(Canonical, GroupAlgebraZ2CharTwo) {
    AlgebraData c = z2_algebra(2);
    CanonicalComplex cc = canonical_mixed(c, scalars(c), 5);
    EXPECT_TRUE(verify_mixed(cc.mixed).ok());
    EXPECT_EQ(betti(cc.mixed.hochschild(), 0, 4), (Dims{2, 2, 2, 2, 2}));
}

TEST(Canonical, DualNumbers) {
    AlgebraData c = dual_numbers();
    CanonicalComplex cc = canonical_mixed(c, scalars(c), 6);
    EXPECT_TRUE(verify_mixed(cc.mixed).ok());
    EXPECT_EQ(betti(cc.mixed.hochschild(), 0, 4), (Dims{2, 1, 1, 1, 1}));
    EXPECT_EQ(hc(cc.mixed, 4), (Dims{2, 0, 2, 0, 2}));
}

TEST(Canonical, RelativeToWholeAlgebra) {
    AlgebraData c = matrix_algebra(2, 0);
    SubalgebraData k = make_subalgebra(c, {unit_vec(0), unit_vec(1), unit_vec(2), unit_vec(3)});
    CanonicalComplex cc = canonical_mixed(c, k, 3);
    EXPECT_EQ(cc.mixed.dims, (Dims{1, 0, 0, 0}));
}

TEST(Canonical, MutatedDifferentialIsCaught) {
    AlgebraData c = z2_algebra(0);
    CanonicalComplex cc = canonical_mixed(c, scalars(c), 4);
    MixedComplexData m = cc.mixed;
    m.B[1].col[0] = add(m.B[1].col[0], unit_vec(0));
    Report r = verify_mixed(m);
    ASSERT_FALSE(r.ok());
    EXPECT_FALSE(r.failures[0].vector.empty());
}

TEST(Periodic, Z2StabilizesByWindowThree) {
    AlgebraData c = z2_algebra(0);
    CanonicalComplex cc = canonical_mixed(c, scalars(c), 11);
    StabilizationReport hp = windowed_homology(cc.mixed, Variant::BP, 4, 3);
    EXPECT_TRUE(hp.stable());
    EXPECT_EQ(hp.current, (Dims{2, 0, 2, 0, 2}));
    StabilizationReport hn = windowed_homology(cc.mixed, Variant::BN, 2, 2);
    EXPECT_EQ(hn.current[0], 2u);
    EXPECT_THROW(totalize(cc.mixed, Variant::BN, 2), std::invalid_argument);
}

TEST(Homology, RepresentativesAreIndependentModBoundaries) {
    AlgebraData c = z2_algebra(0);
    CanonicalComplex cc = canonical_mixed(c, scalars(c), 4);
    TotalComplex t = totalize(cc.mixed, Variant::BC, 3);
    Homology h = homology(t.complex, 2);
    EXPECT_EQ(h.dim, 2u);
    for (const auto& v : h.representatives) EXPECT_TRUE(t.complex.diff(2).apply(v).empty());
}

TEST(Perturbation, ToySdrVerifies) {
    SDRData s = toy_sdr();
    EXPECT_TRUE(verify_sdr(s).ok());
    SDRData bad = s;
    bad.h[0].col[1] = unit_vec(0);
    EXPECT_FALSE(verify_sdr(bad).deformation.ok());
}

TEST(Perturbation, ZeroDeltaIsIdentity) {
    SDRData s = toy_sdr();
    std::vector<Matrix> delta;
    for (int n = 0; n <= s.top(); ++n) delta.push_back(Matrix(s.X.dim(n - 1), s.X.dim(n)));
    PerturbResult r = perturb(s, delta);
    ASSERT_EQ(r.sdr.top(), 1);
    for (int n = 0; n <= 1; ++n) {
        EXPECT_EQ(r.sdr.i[n], s.i[n]);
        EXPECT_EQ(r.sdr.p[n], s.p[n]);
        EXPECT_EQ(r.sdr.X.diff(n), s.X.diff(n));
        EXPECT_EQ(r.sdr.Y.diff(n), s.Y.diff(n));
    }
    EXPECT_EQ(r.sdr.h[0], s.h[0]);
}

TEST(Perturbation, SmallDeltaGivesValidSdr) {
    SDRData s = toy_sdr();
    std::vector<Matrix> delta{Matrix(0, 2), Matrix(2, 1), Matrix(1, 0)};
    delta[1].col[0] = unit_vec(0);  // d e = a + c
    PerturbResult r = perturb(s, delta);
    SDRReport rep = verify_sdr(r.sdr);
    EXPECT_TRUE(rep.ok()) << rep.deformation.summary() << " / " << rep.special.summary();
    EXPECT_EQ(r.sdr.p[0].col[1], unit_vec(0, Scalar(-1)));
}
