#include <gtest/gtest.h>

#include "hopfcyclic/crossed.hpp"
#include "hopfcyclic/instance.hpp"

using namespace hopfcyclic;

namespace {

CrossedData load(const std::string& name) {
    InstanceFile f = parse_instance(data_dir() + "/" + name + ".json");
    BuildResult b = build_instance(f);
    for (const auto& s : b.report.issues) ADD_FAILURE() << s;
    return *b.data;
}

}  // namespace

TEST(Fixtures, AllBuild) {
    for (const auto& path : bundled_fixtures()) {
        InstanceFile f = parse_instance(path);
        BuildResult b = build_instance(f);
        EXPECT_TRUE(b.report.ok()) << path << ": " << (b.report.ok() ? "" : b.report.issues[0]);
        ASSERT_TRUE(b.data.has_value()) << path;
        EXPECT_TRUE(b.data->f_invertible) << path;
        if (f.id != "dual_cocycle") EXPECT_TRUE(b.data->f_in_K) << path;
    }
}

TEST(Crossed, TrivialHopfCollapsesToA) {
    CrossedData c = load("trivial_hopf");
    EXPECT_EQ(c.dE(), 2u);
    for (Idx i = 0; i < 2; ++i)
        for (Idx j = 0; j < 2; ++j) EXPECT_EQ(c.E.prod(i, j), c.A.prod(i, j));
}

TEST(Crossed, SmashMultiplication) {
    CrossedData c = load("z2_smash");
    Vec g = c.gamma_basis(1);
    Vec x = c.embed_a(unit_vec(1));
    // (1#g)(x#1) = x^g # g = -x#g
    EXPECT_EQ(c.multiply(g, x), unit_vec(c.e_index(1, 1), Scalar(-1)));
    EXPECT_EQ(c.multiply(c.E.unit, x), x);
}

TEST(Crossed, GammaInverseClosedFormMatchesSolver) {
    for (const char* name : {"z2_smash", "klein_twisted", "z2_smash_f3", "swap_relative"}) {
        CrossedData c = load(name);
        auto solved = gamma_inverse_solver(c);
        ASSERT_TRUE(solved.has_value()) << name;
        for (Idx h = 0; h < c.dH(); ++h) EXPECT_EQ(c.gamma_inverse(unit_vec(h, c.one())), solved->col[h]) << name;
    }
}

TEST(Crossed, GammaMultiplicativeUpToCocycle) {
    CrossedData c = load("klein_twisted");
    for (Idx h = 0; h < 4; ++h)
        for (Idx l = 0; l < 4; ++l) {
            Vec lhs = c.multiply(c.gamma_basis(h), c.gamma_basis(l));
            Vec rhs = c.multiply(c.embed_a(c.f(h, l)), c.gamma(c.H.alg.prod(h, l)));
            EXPECT_EQ(lhs, rhs);
        }
}

TEST(Crossed, BrokenCocycleRejectedByBothValidators) {
    InstanceFile f = parse_instance(data_dir() + "/klein_twisted.json");
    f.cocycle[1 * 4 + 2] = unit_vec(0, Scalar(-1));  // f(i,j) = -1 breaks the cocycle identity
    BuildResult b = build_instance(f);
    EXPECT_FALSE(b.report.ok());
    bool saw_ii = false, saw_assoc = false, disagree = false;
    for (const auto& s : b.report.issues) {
        if (s.find("condition (ii)") != std::string::npos) saw_ii = true;
        if (s.find("associativity") != std::string::npos) saw_assoc = true;
        if (s.find("disagree") != std::string::npos) disagree = true;
    }
    EXPECT_TRUE(saw_ii);
    EXPECT_TRUE(saw_assoc);
    EXPECT_FALSE(disagree);
}

TEST(Crossed, ActIteratedSignAction) {
    CrossedData c = load("z2_smash");
    Vec g = unit_vec(1);
    EXPECT_EQ(act_iterated(c, unit_vec(1), {g, g}), unit_vec(1));
    EXPECT_EQ(act_iterated(c, unit_vec(1), {g}), unit_vec(1, Scalar(-1)));
    Vec t = act_tuple(c, {unit_vec(1), unit_vec(1)}, g);
    EXPECT_EQ(t, unit_vec(3));  // (-x) (x) (-x)
    EXPECT_EQ(act_tuple(c, {}, g), unit_vec(0));
}

TEST(Parse, IndexOutOfRangeNamesLocation) {
    std::string text = R"({"A": {"basis": ["1"], "unit": [[0, "1"]], "mult": [{"i": 0, "j": 3, "value": []}]},
                          "H": {"group": {"cayley": [[0]]}}, "action": "trivial", "cocycle": "trivial"})";
    try {
        parse_instance_text(text);
        FAIL() << "expected a parse error";
    } catch (const ParseError& e) {
        EXPECT_EQ(e.where, "A.mult[0].j");
    }
}
