#include <cmath>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "ncl/ncl.hpp"
#include "oracles.hpp"

using namespace ncl;

TEST(MomentTable, ConjugationSymmetryAndUnknowns)
{
    MomentTable t(3);
    EXPECT_EQ(t(0, 0), cplx{1.0});
    t.set(2, 1, {0.5, -0.25});
    EXPECT_EQ(t(1, 2), std::conj(t(2, 1)));
    t.set(1, 1, {2.0, 0.3});
    EXPECT_EQ(t(1, 1).imag(), 0.0);
    EXPECT_FALSE(t.has(3, 0));
    EXPECT_THROW(t(3, 0), OrderError);
    EXPECT_THROW(t(4, 0), OrderError);
    EXPECT_THROW(t.set(4, 0, 1.0), OrderError);
    EXPECT_THROW(MomentTable(-1), OrderError);
}

TEST(MomentTable, RotationAppliesPhase)
{
    const auto t = moment_table(make_coherent({0.3, 0.4}, 40), 3);
    const auto r = t.rotated(0.7);
    EXPECT_NEAR(std::abs(r(3, 1) - std::polar(1.0, 1.4) * t(3, 1)), 0.0, 1e-15);
}

TEST(MomentAA, CoherentFactorizes)
{
    const cplx alpha{0.6, -0.3};
    const auto psi = make_coherent(alpha, 48);
    for (int k = 0; k <= 4; ++k)
        for (int l = 0; l <= 4; ++l)
            EXPECT_NEAR(std::abs(moment_aa(psi, k, l) - std::pow(std::conj(alpha), k) * std::pow(alpha, l)),
                        0.0, 1e-12);
}

TEST(MomentAA, FockOne)
{
    const auto psi = make_fock(1, 16);
    EXPECT_NEAR(moment_aa(psi, 1, 1).real(), 1.0, 1e-15);
    EXPECT_EQ(moment_aa(psi, 2, 2), cplx{0.0});
    EXPECT_EQ(moment_aa(psi, 0, 1), cplx{0.0});
}

TEST(MomentAA, ThermalFactorials)
{
    const auto rho = make_thermal(1.0, 80);
    double fact = 1.0;
    for (int k = 0; k <= 4; ++k) {
        if (k > 0)
            fact *= k;
        EXPECT_NEAR(moment_aa(rho, k, k).real(), fact, 1e-9) << k;
        EXPECT_EQ(moment_aa(rho, k + 1, k), cplx{0.0});
    }
}

TEST(MomentAA, SqueezedVacuumClosedForms)
{
    const auto psi = apply_squeeze(make_fock(0, 64), 0.5);
    const oracle::SqueezedVacuum ref(0.5);
    EXPECT_NEAR(std::abs(moment_aa(psi, 0, 2) - ref.a2()), 0.0, 1e-12);
    EXPECT_NEAR(std::abs(moment_aa(psi, 2, 0) - ref.a2()), 0.0, 1e-12);
    EXPECT_NEAR(moment_aa(psi, 1, 1).real(), ref.n(), 1e-12);
    EXPECT_NEAR(moment_aa(psi, 2, 2).real(), ref.ad2a2(), 1e-12);
    EXPECT_NEAR(std::abs(moment_aa(psi, 0, 4) - ref.a4()), 0.0, 1e-12);
}

TEST(MomentAA, MatchesDenseOperatorsForRandomStates)
{
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        const auto psi = oracle::random_state(24, seed);
        const auto rho = oracle::random_mixed(24, seed);
        for (int k = 0; k <= 4; ++k)
            for (int l = 0; l <= 4; ++l) {
                const cplx pure_ref = oracle::moment(psi.amplitudes(), k, l);
                EXPECT_NEAR(std::abs(moment_aa(psi, k, l) - pure_ref), 0.0, 1e-10 * (1 + std::abs(pure_ref)));
                const cplx mixed_ref = oracle::moment(rho.matrix(), k, l);
                EXPECT_NEAR(std::abs(moment_aa(rho, k, l) - mixed_ref), 0.0,
                            1e-10 * (1 + std::abs(mixed_ref)));
            }
    }
}

TEST(MomentAA, WarnsPastHalfDimension)
{
    std::vector<std::string> seen;
    set_warning_handler([&](std::string_view m) { seen.emplace_back(m); });
    moment_aa(make_fock(0, 8), 3, 2);
    set_warning_handler(nullptr);
    EXPECT_EQ(seen.size(), 1u);
    EXPECT_THROW(moment_aa(make_fock(0, 8), -1, 0), OrderError);
}

TEST(QuadMoment, SqueezedVacuumSecondMoment)
{
    const auto t = moment_table(apply_squeeze(make_fock(0, 64), 0.5), 4);
    EXPECT_NEAR(quad_moment(t, 2, 0, 0.0).real(), std::exp(-1.0) - 1.0, 1e-12);
    // x_{pi/2} is the anti-squeezed axis
    EXPECT_NEAR(quad_moment(t, 2, 0, pi / 2).real(), std::exp(1.0) - 1.0, 1e-12);
}

TEST(QuadMoment, CoherentEvaluatesAtPhasePoint)
{
    const cplx alpha{0.8, 0.35};
    const auto t = moment_table(make_coherent(alpha, 48), 6);
    for (double phi : {0.0, 0.4, 2.1}) {
        const double x = 2.0 * (alpha * std::polar(1.0, -phi)).real();
        const double p = 2.0 * (alpha * std::polar(1.0, -phi - pi / 2)).real();
        const double n = std::norm(alpha);
        EXPECT_NEAR(std::abs(quad_moment(t, 2, 1, phi) - x * x * p), 0.0, 1e-11);
        EXPECT_NEAR(std::abs(quad_moment(t, 1, 3, phi) - x * p * p * p), 0.0, 1e-11);
        EXPECT_NEAR(std::abs(xn_moment(t, 2, 2, phi) - x * x * n * n), 0.0, 1e-11);
    }
}

TEST(QuadMoment, PhaseCovariance)
{
    const auto t = moment_table(oracle::random_state(32, 9), 4);
    const double phi = 0.83;
    EXPECT_NEAR(std::abs(quad_moment(t, 2, 2, phi) - quad_moment(t.rotated(phi), 2, 2, 0.0)), 0.0, 1e-9);
}

TEST(NormalPolynomial, AdjointAndPower)
{
    const auto x = NormalPolynomial::quadrature_x(0.3);
    const auto x2 = x.pow(2);
    EXPECT_NEAR(std::abs(x2.coefficient(1, 1) - cplx{2.0}), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(x2.coefficient(0, 2) - std::polar(1.0, -0.6)), 0.0, 1e-15);
    const auto p = NormalPolynomial::monomial(2, 1, {1.0, 2.0});
    EXPECT_EQ(p.adjoint().coefficient(1, 2), cplx(1.0, -2.0));
    EXPECT_EQ((x * x).max_index(), 2);
}

TEST(CharFunction, ClosedForms)
{
    const cplx beta{0.4, -0.7};
    EXPECT_NEAR(std::abs(char_function(make_fock(0, 10), beta) - 1.0), 0.0, 1e-15);
    const cplx alpha{0.5, 0.2};
    const cplx coh = std::exp(beta * std::conj(alpha) - std::conj(beta) * alpha);
    EXPECT_NEAR(std::abs(char_function(make_coherent(alpha, 40), beta) - coh), 0.0, 1e-12);
    EXPECT_NEAR(std::abs(char_function(make_fock(1, 10), beta) - (1.0 - std::norm(beta))), 0.0, 1e-14);
    // thermal: exp(-nbar |beta|^2)
    EXPECT_NEAR(std::abs(char_function(make_thermal(0.7, 80), beta) - std::exp(-0.7 * std::norm(beta))), 0.0,
                1e-10);
}

TEST(CharFunction, MatchesDenseDisplacement)
{
    const auto psi = oracle::random_low_state(30, 12, 4);
    for (cplx beta : {cplx{0.3, 0.1}, cplx{-0.9, 0.5}, cplx{1.2, -1.1}}) {
        const cplx ref = oracle::char_function_dense(psi.amplitudes(), beta);
        EXPECT_NEAR(std::abs(char_function(psi, beta) - ref), 0.0, 1e-9 * (1 + std::abs(ref)));
    }
}

TEST(CharFunction, HermitianSymmetryAndMixedStates)
{
    const auto psi = oracle::random_state(20, 11);
    const auto rho = DensityState::from_pure(psi);
    const cplx beta{0.6, 0.45};
    EXPECT_NEAR(std::abs(char_function(psi, -beta) - std::conj(char_function(psi, beta))), 0.0, 1e-12);
    EXPECT_NEAR(std::abs(char_function(rho, beta) - char_function(psi, beta)), 0.0, 1e-10);
    EXPECT_THROW(char_function(psi, cplx{40.0, 0.0}), NumericError);
}
