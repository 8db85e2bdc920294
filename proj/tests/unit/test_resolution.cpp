#include <gtest/gtest.h>

#include <memory>

#include "fixtures.hpp"
#include "hopfcyclic/resolution.hpp"

using namespace hopfcyclic;
using testing_support::fixture;
using testing_support::kAllFixtures;

namespace {

Matrix identity_like(const Matrix& m) { return Matrix::identity(m.cols); }

}  // namespace

class PerFixture : public ::testing::TestWithParam<std::string> {};

TEST_P(PerFixture, RowsAreContractible) {
    Resolution res(fixture(GetParam()), 3);
    for (int s = 0; s <= 2; ++s) {
        const QuotientSpace& y_id = QuotientSpace::trivial(res.y_outer(s).total());
        for (Idx j = 0; j < y_id.dim(); ++j) {
            Vec y = unit_vec(j);
            EXPECT_EQ(res.mu(s, res.sigma0_y(s, y)), y) << "mu sigma0 on Y_" << s;
        }
        for (int r = 0; r + s <= 3; ++r) {
            const QuotientSpace& q = res.x_space(r, s);
            for (Idx j = 0; j < q.dim(); ++j) {
                Vec x = unit_vec(q.lift_index(j));
                Accum acc;
                acc.add(res.d0(r + 1, s, res.sigma0(r, s, x)));
                if (r >= 1)
                    acc.add(res.sigma0(r - 1, s, res.d0(r, s, x)));
                else
                    acc.add(res.sigma0_y(s, res.mu(s, x)));
                EXPECT_EQ(q.project(acc.take()), unit_vec(j)) << "row " << s << " at r=" << r;
            }
        }
    }
}

TEST_P(PerFixture, AugmentedBarOfAIsContractible) {
    Resolution res(fixture(GetParam()), 3);
    const CrossedData& c = fixture(GetParam());
    for (Idx e = 0; e < c.dE(); ++e)
        EXPECT_EQ(scaled(res.mu_tilde(res.sigma_minus(0, unit_vec(e))), Scalar(-1)), unit_vec(e));
    for (int s = 0; s <= 2; ++s) {
        for (Idx j = 0; j < res.y_outer(s).total(); ++j) {
            Vec y = unit_vec(j);
            Accum acc;
            acc.add(res.partial(s + 1, res.sigma_minus(s + 1, y)), Scalar(-1));
            if (s >= 1)
                acc.add(res.sigma_minus(s, res.partial(s, y)), Scalar(-1));
            else
                acc.add(res.sigma_minus(0, res.mu_tilde(y)), Scalar(-1));
            EXPECT_EQ(acc.take(), y) << "Y_" << s;
        }
    }
}

TEST_P(PerFixture, ResolutionAndHomotopy) {
    Resolution res(fixture(GetParam()), 4);
    const CrossedData& c = fixture(GetParam());
    for (int n = 2; n <= 4; ++n) EXPECT_TRUE(compose(res.d_matrix(n - 1), res.d_matrix(n)).is_zero()) << n;
    // mu o d_1 = 0 and the contracting homotopy
    Matrix d1 = res.d_matrix(1);
    for (std::size_t j = 0; j < d1.cols; ++j)
        EXPECT_TRUE(res.mu_total(lift_graded(res, 0, d1.col[j])).empty());
    for (Idx e = 0; e < c.dE(); ++e) {
        Graded x0 = res.sigma_bar0(unit_vec(e));
        EXPECT_EQ(scaled(res.mu_total(x0), Scalar(-1)), unit_vec(e));
    }
    for (int n = 0; n <= 3; ++n) {
        Matrix lhs = compose(res.d_matrix(n + 1), res.sigma_bar_matrix(n + 1));
        if (n >= 1) {
            lhs = lhs + compose(res.sigma_bar_matrix(n), res.d_matrix(n));
        } else {
            Matrix s0mu(lhs.rows, lhs.cols);
            for (std::size_t j = 0; j < lhs.cols; ++j)
                s0mu.col[j] = project_graded(res, 0, res.sigma_bar0(scaled(res.mu_total(lift_graded(res, 0, unit_vec(j))), Scalar(-1))));
            lhs = lhs + s0mu;
        }
        EXPECT_EQ(lhs, identity_like(lhs)) << "contracting homotopy in degree " << n;
        EXPECT_EQ(res.sigma_bar_matrix(n + 1), res.sigma_bar_matrix(n + 1, true)) << "short form in degree " << n + 1;
        if (n >= 1) EXPECT_TRUE(compose(res.sigma_bar_matrix(n + 1), res.sigma_bar_matrix(n)).is_zero());
    }
}

TEST_P(PerFixture, ComparisonMaps) {
    Resolution res(fixture(GetParam()), 4);
    for (int n = 0; n <= 3; ++n) {
        Matrix pp = compose(res.psi_matrix(n), res.phi_matrix(n));
        EXPECT_EQ(pp, identity_like(pp)) << "psi phi in degree " << n;
        if (n >= 1) {
            EXPECT_EQ(compose(res.bprime_matrix(n), res.phi_matrix(n)), compose(res.phi_matrix(n - 1), res.d_matrix(n)));
            EXPECT_EQ(compose(res.psi_matrix(n - 1), res.bprime_matrix(n)), compose(res.d_matrix(n), res.psi_matrix(n)));
        }
        Matrix lhs = compose(res.bprime_matrix(n + 1), res.omega_matrix(n));
        if (n >= 1) lhs = lhs + compose(res.omega_matrix(n - 1), res.bprime_matrix(n));
        Matrix rhs = compose(res.phi_matrix(n), res.psi_matrix(n)) - identity_like(lhs);
        EXPECT_EQ(lhs, rhs) << "homotopy in degree " << n;
    }
}

TEST_P(PerFixture, HatComplexMatchesCanonical) {
    Resolution res(fixture(GetParam()), 5);
    MixedComplexData hat = res.hat_mixed();
    Report r = verify_mixed(hat);
    EXPECT_TRUE(r.ok()) << r.summary();
    const MixedComplexData& can = res.canonical().mixed;
    EXPECT_EQ(betti(hat.hochschild(), 0, 3), betti(can.hochschild(), 0, 3));
    EXPECT_EQ(betti(totalize(hat, Variant::BC, 4).complex, 0, 3), betti(totalize(can, Variant::BC, 4).complex, 0, 3));
}

INSTANTIATE_TEST_SUITE_P(Fixtures, PerFixture, ::testing::ValuesIn(kAllFixtures),
                         [](const auto& info) { return info.param; });
