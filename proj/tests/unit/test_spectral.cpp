#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "hopfcyclic/spectral.hpp"

using namespace hopfcyclic;
using testing_support::fixture;
using testing_support::kAllFixtures;

namespace {

// x -> y in degrees 1 -> 0, with an empty degree 2 so that degree 1 is reliable.
ChainComplex arrow() {
    ChainComplex c;
    c.lo = 0;
    c.dims = {1, 1, 0};
    c.d = {Matrix(0, 1), Matrix::from_rows(1, {{Scalar(1)}}), Matrix(1, 0)};
    return c;
}

std::string failing(const SpectralReport& rep) {
    std::string out;
    for (const auto& c : rep.checks)
        if (!c.ok) out += c.name + " (" + c.detail + "); ";
    return out;
}

HopfData z2(std::uint32_t p) { return group_hopf({{0, 1}, {1, 0}}, p, {"1", "g"}); }

HModuleData z2_module(int g_sign) {
    HModuleData m;
    m.dim = 1;
    m.action = {Matrix::identity(1), Scalar(g_sign) * Matrix::identity(1)};
    return m;
}

std::vector<std::size_t> dims(const std::vector<Homology>& hs) {
    std::vector<std::size_t> out;
    for (const auto& h : hs) out.push_back(h.dim);
    return out;
}

int bound_for(const std::string& name) { return name == "klein_twisted" ? 3 : 4; }

}  // namespace

TEST(Subquotient, CoordinatesOfClasses) {
    Subspace z = Subspace::span(3, {unit_vec(0), unit_vec(1)});
    Subspace b = Subspace::span(3, {unit_vec(0)});
    Subquotient q(z, b);
    EXPECT_EQ(q.dim(), 1u);
    EXPECT_EQ(q.coordinates(unit_vec(0)), Vec{});
    EXPECT_EQ(q.coordinates(add(unit_vec(0), unit_vec(1))), unit_vec(0));
}

TEST(Subquotient, InducedMapRejectsCyclesLeavingCycles) {
    Subquotient src(Subspace::full(1), Subspace(1));
    Subquotient dst(Subspace(2), Subspace(2));
    Matrix f = Matrix::from_rows(1, {{Scalar(1)}, {Scalar(0)}});
    EXPECT_FALSE(induced_map(src, dst, f).has_value());
}

TEST(SpectralEngine, TrivialFiltrationCollapsesToHomology) {
    FilteredComplex fc = coordinate_filtration(arrow(), {{0}, {0}, {}});
    auto ps = pages(fc, 2);
    EXPECT_TRUE(verify_pages(fc, ps).ok());
    EXPECT_EQ(ps[0].dim(0, 0), 1u);
    EXPECT_EQ(ps[1].dim(0, 0), 0u);
    EXPECT_EQ(ps[1].dim(0, 1), 0u);
}

TEST(SpectralEngine, DifferentialAppearsOnThePageOfTheJump) {
    for (int jump = 1; jump <= 3; ++jump) {
        FilteredComplex fc = coordinate_filtration(arrow(), {{0}, {jump}, {}});
        auto ps = pages(fc, jump + 1);
        EXPECT_TRUE(verify_pages(fc, ps).ok());
        for (int r = 0; r <= jump; ++r) {
            EXPECT_EQ(ps[r].dim(0, 0), 1u) << "jump " << jump << " r " << r;
            EXPECT_EQ(ps[r].dim(jump, 1), 1u) << "jump " << jump << " r " << r;
        }
        EXPECT_FALSE(ps[jump].d.at({jump, 1}).is_zero());
        EXPECT_EQ(ps[jump + 1].dim(0, 0), 0u);
        EXPECT_EQ(ps[jump + 1].dim(jump, 1), 0u);
        for (const auto& [key, d] : graded_homology(fc)) EXPECT_EQ(d, 0u);
    }
}

TEST(SpectralEngine, RejectsFiltrationsNotPreservedByTheDifferential) {
    FilteredComplex fc = coordinate_filtration(arrow(), {{1}, {0}, {}});
    EXPECT_FALSE(validate_filtration(fc).ok());
    EXPECT_THROW(pages(fc, 1), std::invalid_argument);
}

TEST(GroupHomology, RationalGroupAlgebraIsSeparable) {
    EXPECT_EQ(dims(h_homology(z2(0), z2_module(1), 3)), (std::vector<std::size_t>{1, 0, 0, 0}));
    EXPECT_EQ(dims(h_homology(z2(0), z2_module(-1), 3)), (std::vector<std::size_t>{0, 0, 0, 0}));
}

TEST(GroupHomology, CyclicGroupInItsOwnCharacteristic) {
    EXPECT_EQ(dims(h_homology(z2(2), z2_module(1), 3)), (std::vector<std::size_t>{1, 1, 1, 1}));
}

TEST(GroupHomology, ModuleValidation) {
    EXPECT_TRUE(validate_module(z2(0), z2_module(-1)).ok());
    HModuleData bad = z2_module(1);
    bad.action[1] = Scalar(2) * Matrix::identity(1);
    EXPECT_FALSE(validate_module(z2(0), bad).ok());
}

TEST(ThetaAction, UnitActsAsIdentity) {
    Resolution res(fixture("z2_smash"), 5);
    Simplified sx(res);
    const CrossedData& c = sx.crossed();
    for (int r = 0; r <= 2; ++r) {
        Matrix one = theta_action(sx, r, c.H.unit());
        EXPECT_EQ(one, Matrix::identity(sx.space(r, 0).dim())) << r;
        for (Idx h = 0; h < c.dH(); ++h) EXPECT_TRUE(theta_action_well_defined(sx, r, h));
    }
}

class SpectralPerFixture : public ::testing::TestWithParam<std::string> {};

TEST_P(SpectralPerFixture, FirstSpectralSequence) {
    const int b = bound_for(GetParam());
    Resolution res(fixture(GetParam()), b + 3);
    Simplified sx(res);
    SpectralReport rep = first_ss(sx, b);
    EXPECT_TRUE(rep.ok()) << failing(rep);
    EXPECT_EQ(rep.e2, rep.e2_little);
    std::vector<std::size_t> hc(rep.hc.begin(), rep.hc.begin() + b + 1);
    EXPECT_EQ(rep.abutment, hc);
}

TEST_P(SpectralPerFixture, SecondSpectralSequenceOrRefusal) {
    const int b = bound_for(GetParam());
    Resolution res(fixture(GetParam()), b + 3);
    Simplified sx(res);
    if (GetParam() == "dual_cocycle") {
        EXPECT_THROW(second_ss(sx, b), Refusal);
        return;
    }
    SpectralReport rep = second_ss(sx, b);
    EXPECT_TRUE(rep.ok()) << failing(rep);
    EXPECT_EQ(rep.e2, rep.e2_little);
}

TEST_P(SpectralPerFixture, SeparableCase) {
    const int b = bound_for(GetParam());
    Resolution res(fixture(GetParam()), b + 3);
    Simplified sx(res);
    SpectralReport rep = separable_d2(sx, b);
    EXPECT_TRUE(rep.ok()) << failing(rep);
    for (const auto& [key, d] : rep.e2)
        if (key.first % 2 == 1) EXPECT_EQ(d, 0u);
}

TEST_P(SpectralPerFixture, DecompositionSumsToTotal) {
    const int b = bound_for(GetParam());
    Resolution res(fixture(GetParam()), b + 3);
    Simplified sx(res);
    const CrossedData& c = fixture(GetParam());
    InstanceFile f = parse_instance(data_dir() + "/" + GetParam() + ".json");
    DecompositionReport rep = decomposition(sx, instance_components(f, c), b);
    std::string bad;
    for (const auto& chk : rep.checks)
        if (!chk.ok) bad += chk.name + "; ";
    EXPECT_TRUE(rep.ok()) << bad;
    for (const auto& cx : rep.complexes) {
        for (std::size_t n = 0; n < cx.hh_total.size(); ++n) {
            std::size_t hh = 0, hc = 0;
            for (std::size_t i = 0; i < cx.hh.size(); ++i) {
                hh += cx.hh[i][n];
                hc += cx.hc[i][n];
            }
            EXPECT_EQ(hh, cx.hh_total[n]) << cx.complex << " n=" << n;
            EXPECT_EQ(hc, cx.hc_total[n]) << cx.complex << " n=" << n;
        }
    }
}

INSTANTIATE_TEST_SUITE_P(Fixtures, SpectralPerFixture, ::testing::ValuesIn(kAllFixtures),
                         [](const auto& info) { return info.param; });

TEST(SpectralRefusals, NonSeparableHopfAlgebra) {
    Resolution res(fixture("sweedler_smash"), 4);
    Simplified sx(res);
    EXPECT_THROW(separable_d2(sx, 2), Refusal);
}

TEST(SpectralRefusals, ComponentsMustDecompose) {
    Resolution res(fixture("z2_group"), 5);
    Simplified sx(res);
    const std::size_t d = hcheck(sx.crossed().H).coalg.dim;
    Subspace all = Subspace::full(d);
    EXPECT_THROW(decomposition(sx, {all, all}, 2), Refusal);
}

TEST(Decomposition, GroupAlgebraOfOrderTwo) {
    Resolution res(fixture("z2_group"), 7);
    Simplified sx(res);
    InstanceFile f = parse_instance(data_dir() + "/z2_group.json");
    DecompositionReport rep = decomposition(sx, instance_components(f, sx.crossed()), 4);
    ASSERT_EQ(rep.components, 2u);
    for (const auto& cx : rep.complexes) {
        ASSERT_EQ(cx.hh.size(), 2u);
        for (const auto& comp : cx.hh) EXPECT_EQ(comp, (std::vector<std::size_t>{1, 0, 0, 0, 0})) << cx.complex;
        EXPECT_EQ(cx.hh_total, (std::vector<std::size_t>{2, 0, 0, 0, 0})) << cx.complex;
        EXPECT_EQ(cx.hc_total, (std::vector<std::size_t>{2, 0, 2, 0, 2})) << cx.complex;
    }
}
