#include <cmath>

#include <gtest/gtest.h>

#include "ncl/ncl.hpp"

using namespace ncl;

TEST(HermiteOracle, DiagonalMatrixGivesProductOfHermiteNumbers)
{
    // exp(-w^2/2) per coordinate: H_2 = -1, H_4 = 3, odd orders vanish.
    const HermiteOracle h(Eigen::Matrix4cd::Identity());
    EXPECT_NEAR(std::abs(h({2, 0, 0, 0}) - cplx{-1.0}), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(h({4, 0, 0, 0}) - cplx{3.0}), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(h({2, 2, 0, 0}) - cplx{1.0}), 0.0, 1e-15);
    EXPECT_EQ(h({1, 0, 0, 0}), cplx{0.0});
    EXPECT_EQ(h({0, 0, 0, 0}), cplx{1.0});
}

TEST(HermiteOracle, OffDiagonalCoupling)
{
    Eigen::Matrix4cd a = Eigen::Matrix4cd::Zero();
    a(0, 1) = a(1, 0) = cplx{0.3, 0.2};
    const HermiteOracle h(a);
    // second derivative of exp(-A01 w0 w1) at 0 is -A01
    EXPECT_NEAR(std::abs(h({1, 1, 0, 0}) + a(0, 1)), 0.0, 1e-15);
    // d^2/dw0^2 d^2/dw1^2: 2! 2! coefficient of w0^2 w1^2 = 2 A01^2
    EXPECT_NEAR(std::abs(h({2, 2, 0, 0}) - 2.0 * a(0, 1) * a(0, 1)), 0.0, 1e-15);
}

TEST(HermiteOracle, RejectsNonSymmetric)
{
    Eigen::Matrix4cd a = Eigen::Matrix4cd::Identity();
    a(0, 1) = 1.0;
    EXPECT_THROW(HermiteOracle{a}, NumericError);
}

TEST(HermiteOracle, AssMatrixIsSymmetric)
{
    const auto a = HermiteOracle::ass_matrix(ass_params(2, 1.4));
    EXPECT_LE((a - a.transpose()).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(HermiteOracle, NormalizationEntry)
{
    // k = l = 0 gives <psi|psi> = 1
    for (int m = 0; m <= 4; ++m)
        for (double lambda : {0.5, 1.2, 2.0})
            EXPECT_NEAR(std::abs(ass_moment_analytic(ass_params(m, lambda), 0, 0) - 1.0), 0.0, 1e-12);
}

class AnalyticVsFock : public ::testing::TestWithParam<std::tuple<int, double>> { };

TEST_P(AnalyticVsFock, MomentsAgree)
{
    const auto [m, lambda] = GetParam();
    const auto [psi, p] = make_ass_state(m, lambda, 96);
    for (int k = 0; k <= 4; ++k)
        for (int l = 0; l <= 4; ++l) {
            const cplx fock = moment_aa(psi, k, l);
            const cplx analytic = ass_moment_analytic(p, k, l);
            EXPECT_LE(std::abs(fock - analytic), 1e-6 * std::max(1.0, std::abs(analytic)))
                << "m=" << m << " lambda=" << lambda << " k=" << k << " l=" << l;
        }
}

INSTANTIATE_TEST_SUITE_P(Grid, AnalyticVsFock,
                         ::testing::Combine(::testing::Values(0, 1, 2, 3), ::testing::Values(0.5, 1.2, 2.0)));

TEST(HermiteOracle, NegativePowerRejected)
{
    EXPECT_THROW(ass_moment_analytic(ass_params(0, 2.0), -1, 0), OrderError);
}
