#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "fixtures.hpp"
#include "hopfcyclic/simplified.hpp"

using namespace hopfcyclic;
using testing_support::fixture;
using testing_support::kAllFixtures;

namespace {

// Degree bound per fixture, kept low for the 8-dimensional E.
int bound_for(const std::string& name) { return name == "sweedler_smash" ? 2 : 3; }

std::vector<std::string> with_sweedler() {
    std::vector<std::string> all = kAllFixtures;
    all.push_back("sweedler_smash");
    return all;
}

std::string failing(const CongruenceReport& rep) {
    std::string out;
    for (const auto& c : rep.checks)
        if (c.binding && c.failures) out += c.name + " n=" + std::to_string(c.degree) + "; ";
    return out;
}

}  // namespace

class BarPerFixture : public ::testing::TestWithParam<std::string> {};

TEST_P(BarPerFixture, ThetaIsAnIsomorphism) {
    const int b = bound_for(GetParam());
    Resolution res(fixture(GetParam()), b + 1);
    Simplified sx(res);
    for (int n = 0; n <= b + 1; ++n)
        for (int s = 0; s <= n; ++s) {
            const int r = n - s;
            EXPECT_EQ(sx.space(r, s).dim(), res.xhat_space(r, s).dim());
            EXPECT_TRUE(sx.theta_well_defined(r, s)) << r << "," << s;
            Matrix t = sx.theta(r, s), ti = sx.theta_inverse(r, s);
            EXPECT_EQ(compose(t, ti), Matrix::identity(t.rows)) << r << "," << s;
            EXPECT_EQ(compose(ti, t), Matrix::identity(t.cols)) << r << "," << s;
            if (s == 0) {
                EXPECT_EQ(t, Matrix::identity(t.rows)) << "theta on s = 0";
            }
        }
}

TEST_P(BarPerFixture, ClosedDifferentialsMatchConjugation) {
    const int b = bound_for(GetParam());
    Resolution res(fixture(GetParam()), b + 1);
    Simplified sx(res);
    for (const auto& chk : compare_bar_closed_forms(sx, b))
        EXPECT_EQ(chk.mismatches, 0u) << chk.name << " r=" << chk.r << " s=" << chk.s;
}

TEST_P(BarPerFixture, MixedComplexComputesTheHomology) {
    const int b = bound_for(GetParam());
    Resolution res(fixture(GetParam()), b + 2);
    Simplified sx(res);
    MixedComplexData m = sx.mixed();
    Report rep = verify_mixed(m);
    EXPECT_TRUE(rep.ok()) << rep.summary();
    const MixedComplexData& can = res.canonical().mixed;
    EXPECT_EQ(betti(m.hochschild(), 0, b), betti(can.hochschild(), 0, b));
    EXPECT_EQ(betti(totalize(m, Variant::BC, b + 1).complex, 0, b),
              betti(totalize(can, Variant::BC, b + 1).complex, 0, b));
    // theta intertwines both operators
    MixedComplexData hat = res.hat_mixed();
    for (int n = 0; n < sx.top(); ++n) {
        EXPECT_EQ(compose(sx.D(n), sx.theta_total(n)), compose(sx.theta_total(n + 1), hat.B[n]));
        if (n >= 1) EXPECT_EQ(compose(sx.d_total(n), sx.theta_total(n)), compose(sx.theta_total(n - 1), res.dhat_matrix(n)));
    }
}

TEST_P(BarPerFixture, UIsCoinvariantAndFactorizes) {
    Resolution res(fixture(GetParam()), 1);
    Simplified sx(res);
    for (int i = 0; i <= 2; ++i) {
        UTData u = ut_maps(sx, i);
        EXPECT_TRUE(u.zeta_ok);
        EXPECT_EQ(u.coinvariant, u.tuples) << "arity " << i;
        EXPECT_EQ(u.factorizes, u.tuples) << "arity " << i;
    }
    const CrossedData& c = sx.crossed();
    for (Idx h = 0; h < c.dH(); ++h) EXPECT_EQ(u_map(sx, {h}), scaled(c.A.unit, c.H.eps(h)));
}

TEST_P(BarPerFixture, AuxiliaryMapsAreWellDefined) {
    Resolution res(fixture(GetParam()), bound_for(GetParam()) + 1);
    Simplified sx(res);
    EXPECT_TRUE(bar_aux_maps_well_defined(sx, bound_for(GetParam())));
}

TEST_P(BarPerFixture, ConnesOperatorCongruence) {
    const int b = bound_for(GetParam());
    Resolution res(fixture(GetParam()), b + 1);
    Simplified sx(res);
    CongruenceReport rep = bar_congruence_check(sx, b, Sampling{});
    EXPECT_TRUE(rep.ok()) << failing(rep);
    for (const auto& chk : rep.checks) EXPECT_EQ(chk.checked, chk.population);
}

INSTANTIATE_TEST_SUITE_P(Fixtures, BarPerFixture, ::testing::ValuesIn(with_sweedler()),
                         [](const auto& info) { return info.param; });

TEST(Simplified, CocycleInKKillsHigherDifferentials) {
    for (const std::string name : {"z2_smash", "klein_twisted", "z2_smash_f3"}) {
        Resolution res(fixture(name), 4);
        Simplified sx(res);
        for (int s = 2; s <= 4; ++s)
            for (int r = 0; r + s <= 4; ++r)
                for (int l = 2; l <= s; ++l) EXPECT_TRUE(sx.d(l, r, s).is_zero()) << name << " l=" << l;
    }
}

TEST(Simplified, HigherDifferentialIsNonzeroForACocycleOutsideK) {
    Resolution res(fixture("dual_cocycle"), 3);
    Simplified sx(res);
    EXPECT_FALSE(sx.d(2, 0, 2).is_zero());
}

TEST(Simplified, ThetaOnAGrouplike) {
    const CrossedData& c = fixture("z2_group");
    Resolution res(c, 2);
    Simplified sx(res);
    const Idx g = 1, q = 0;  // the only Hbar basis vector is the class of g
    ASSERT_EQ(res.hbar().lift_index(q), g);
    for (Idx e = 0; e < c.dE(); ++e) {
        Vec got = sx.theta_lifted(0, 1, e * res.hbar().dim() + q);
        Vec want = kron(c.E.mul(unit_vec(e), c.gamma_basis(g)), unit_vec(q), res.hbar().dim());
        EXPECT_EQ(got, want);
    }
}

TEST(Simplified, TrivialHopfAlgebraGivesTheConnesOperatorOfA) {
    Resolution res(fixture("trivial_hopf"), 4);
    Simplified sx(res);
    for (int n = 0; n < 4; ++n) EXPECT_EQ(sx.D(n), res.canonical().mixed.B[n]);
}

TEST(Simplified, UIsOneOnGrouplikesWithTrivialCocycle) {
    const CrossedData& c = fixture("z2_smash");
    Resolution res(c, 1);
    Simplified sx(res);
    for (Idx a = 0; a < 2; ++a)
        for (Idx b = 0; b < 2; ++b) EXPECT_EQ(u_map(sx, {a, b}), c.A.unit);
}

TEST(Simplified, RefusesANonInvertibleCocycle) {
    std::ifstream in(data_dir() + "/dual_cocycle.json");
    std::stringstream ss;
    ss << in.rdbuf();
    std::string text = ss.str();
    const std::string from = R"({"h": 1, "l": 1, "value": [[0, "1"], [1, "1"]]})";
    const std::string to = R"({"h": 1, "l": 1, "value": [[1, "1"]]})";
    ASSERT_NE(text.find(from), std::string::npos);
    text.replace(text.find(from), from.size(), to);
    BuildResult b = build_instance(parse_instance_text(text));
    ASSERT_TRUE(b.data.has_value());
    EXPECT_FALSE(b.data->f_invertible);
    Resolution res(*b.data, 2);
    try {
        Simplified sx(res);
        FAIL() << "expected a refusal";
    } catch (const Refusal& e) {
        EXPECT_NE(std::string(e.what()).find("Assume that the cocycle f is invertible"), std::string::npos);
    }
}
