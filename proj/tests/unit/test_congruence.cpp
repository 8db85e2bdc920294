#include <gtest/gtest.h>

#include <set>

#include "fixtures.hpp"
#include "hopfcyclic/closed_forms.hpp"
#include "hopfcyclic/congruence.hpp"
#include "hopfcyclic/families.hpp"
#include "hopfcyclic/hat_sdr.hpp"

using namespace hopfcyclic;
using testing_support::fixture;
using testing_support::kAllFixtures;

namespace {

std::string describe(const CongruenceReport& rep) {
    std::string out;
    for (const auto& c : rep.checks)
        if (c.binding && c.failures) out += c.name + " n=" + std::to_string(c.degree) + "; ";
    return out;
}

}  // namespace

TEST(Families, HopfSubalgebraOfNothingIsTheGroundField) {
    const CrossedData& c = fixture("klein_twisted");
    Subspace s = hopf_subalgebra(c.H, {});
    EXPECT_EQ(s.dim(), 1u);
    EXPECT_TRUE(s.contains(c.H.unit()));
}

TEST(Families, HopfSubalgebraIsClosed) {
    for (const auto& name : kAllFixtures) {
        const CrossedData& c = fixture(name);
        for (Idx h = 0; h < c.dH(); ++h) {
            Subspace s = hopf_subalgebra(c.H, {unit_vec(h)});
            EXPECT_TRUE(s.contains(unit_vec(h))) << name;
            for (const auto& x : s.basis()) {
                EXPECT_TRUE(s.contains(c.H.antipode.apply(x))) << name;
                for (const auto& y : s.basis()) EXPECT_TRUE(s.contains(c.H.alg.mul(x, y))) << name;
            }
        }
    }
}

TEST(Families, CocycleSpanSeesANonTrivialCocycle) {
    const CrossedData& c = fixture("dual_cocycle");
    EXPECT_EQ(cocycle_span(c, {}).dim(), 1u);
    Subspace all = cocycle_span(c, {unit_vec(1)});
    EXPECT_EQ(all.dim(), 2u);
    EXPECT_TRUE(all.contains(c.f(1, 1)));
}

TEST(Families, ClosureContainsSpanAndIsStable) {
    for (const auto& name : kAllFixtures) {
        const CrossedData& c = fixture(name);
        Subspace full = Subspace::full(c.dH());
        for (Idx h = 0; h < c.dH(); ++h) {
            Subspace span = cocycle_span(c, {unit_vec(h)});
            Subspace local = cocycle_closure(c, {unit_vec(h)}, hopf_subalgebra(c.H, {unit_vec(h)}));
            Subspace global = cocycle_closure(c, {unit_vec(h)}, full);
            for (const auto& v : span.basis()) EXPECT_TRUE(local.contains(v)) << name;
            for (const auto& v : local.basis()) EXPECT_TRUE(global.contains(v)) << name;
            for (const auto& v : global.basis())
                for (Idx l = 0; l < c.dH(); ++l) EXPECT_TRUE(global.contains(c.act(l, v))) << name;
        }
    }
}

TEST(Families, AdaptedBasisInvertsAndCategorizes) {
    Subspace a = Subspace::span(3, {Vec{{0, Scalar(1)}, {1, Scalar(1)}}});
    Subspace b = Subspace::span(3, {Vec{{1, Scalar(1)}}, Vec{{0, Scalar(1)}}});
    SlotBasis sb = adapted_basis(3, {a, b});
    EXPECT_FALSE(sb.direct);
    EXPECT_EQ(compose(sb.inverse, sb.basis), Matrix::identity(3));
    EXPECT_EQ(sb.category, (std::vector<int>{0, 1, 2}));
    EXPECT_TRUE(single_category(4).direct);
}

TEST(Families, FamilyMembershipInAQuotient) {
    // C^3 modulo e0 - e2; the family spans e0 only, and e2 = e0 in the quotient.
    QuotientSpace q(3, Subspace::span(3, {Vec{{0, Scalar(1)}, {2, Scalar(-1)}}}));
    auto slot = std::make_shared<const SlotBasis>(single_category(3));
    MonomialFamily everything(q, {slot}, [](const Categories&) { return true; });
    for (Idx j = 0; j < q.dim(); ++j) EXPECT_TRUE(everything.contains(unit_vec(j)));
    SlotBasis split = adapted_basis(3, {Subspace::span(3, {unit_vec(0)})});
    MonomialFamily first(q, {std::make_shared<const SlotBasis>(split)}, [](const Categories& c) { return c[0] == 0; });
    EXPECT_TRUE(first.contains(q.project(unit_vec(0))));
    EXPECT_TRUE(first.contains(q.project(unit_vec(2))));
    EXPECT_FALSE(first.contains(q.project(unit_vec(1))));
}

TEST(Families, SamplingIsExhaustiveOrSeeded) {
    Sampling s;
    EXPECT_EQ(s.pick(10, 0).size(), 10u);
    auto a = s.pick(5000, 3), b = s.pick(5000, 3), other = s.pick(5000, 4);
    EXPECT_EQ(a.size(), 200u);
    EXPECT_EQ(a, b);
    EXPECT_NE(a, other);
    EXPECT_TRUE(std::is_sorted(a.begin(), a.end()));
    EXPECT_EQ(std::set<std::size_t>(a.begin(), a.end()).size(), a.size());
    Sampling t;
    t.seed = 99;
    EXPECT_NE(t.pick(5000, 3), a);
}

TEST(StarProduct, BaseCases) {
    const CrossedData& c = fixture("z2_smash");
    Resolution res(c, 3);
    const QuotientSpace& eb = res.ebar();
    EXPECT_EQ(star_product(res, {}, {}), unit_vec(0));
    Vec h = star_product(res, {1}, {});
    EXPECT_EQ(h, eb.project(c.gamma_basis(1)));
    for (Idx a = 0; a < c.dA(); ++a) {
        Vec got = star_product(res, {1}, {unit_vec(a)});
        Accum want;
        want.add(kron(eb.project(c.gamma_basis(1)), eb.project(c.embed_a(unit_vec(a))), eb.dim()));
        for (const auto& t : c.H.sweedler_basis(1, 2))
            want.add(kron(eb.project(c.embed_a(c.act(t.factors[0], unit_vec(a)))), eb.project(c.gamma_basis(t.factors[1])),
                          eb.dim()),
                     -t.coeff);
        EXPECT_EQ(got, want.take()) << "a=" << a;
    }
}

class HatPerFixture : public ::testing::TestWithParam<std::string> {};

TEST_P(HatPerFixture, ClosedFormsMatchRecursion) {
    Resolution res(fixture(GetParam()), 5);
    for (const auto& chk : compare_closed_forms(res, 4))
        EXPECT_EQ(chk.mismatches, 0u) << chk.name << " r=" << chk.r << " s=" << chk.s;
}

TEST_P(HatPerFixture, PerturbedSdrMatchesClosedForms) {
    Resolution res(fixture(GetParam()), 4);
    HatSdrReport rep = perturbed_hat_sdr(res, 1);
    EXPECT_TRUE(rep.zero_delta_identity);
    EXPECT_TRUE(rep.mismatches.empty()) << rep.mismatches.front();
    EXPECT_TRUE(rep.engine.ok()) << rep.engine.deformation.summary() << rep.engine.special.summary();
    EXPECT_TRUE(rep.closed.ok());
    EXPECT_TRUE(rep.psi_phi_identity);
    for (bool z : rep.connes_zero) EXPECT_TRUE(z);
}

TEST_P(HatPerFixture, AuxiliaryMapsAreWellDefined) {
    Resolution res(fixture(GetParam()), 5);
    EXPECT_TRUE(aux_maps_well_defined(res, 3));
}

TEST_P(HatPerFixture, CongruencesHold) {
    Resolution res(fixture(GetParam()), 5);
    Sampling sampling;
    CongruenceReport hat = hat_congruences(res, 3, sampling);
    EXPECT_TRUE(hat.ok()) << describe(hat);
    EXPECT_EQ(hat.seed, sampling.seed);
    CongruenceReport ranges = higher_differential_ranges(res, 4, sampling);
    EXPECT_TRUE(ranges.ok()) << describe(ranges);
    for (const auto& chk : hat.checks) EXPECT_LE(chk.checked, chk.population);
}

INSTANTIATE_TEST_SUITE_P(Fixtures, HatPerFixture, ::testing::ValuesIn(kAllFixtures),
                         [](const auto& info) { return info.param; });
