#include <cmath>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "ncl/ncl.hpp"
#include "oracles.hpp"

using namespace ncl;

TEST(FockState, NormalizesAmplitudes)
{
    CVector v(3);
    v << 3.0, 0.0, cplx{0.0, 4.0};
    const FockState psi(v);
    EXPECT_NEAR(psi.amplitudes().norm(), 1.0, 1e-15);
    EXPECT_NEAR(std::abs(psi[2] - cplx{0.0, 0.8}), 0.0, 1e-15);
}

TEST(FockState, RejectsEmptyAndZero)
{
    EXPECT_THROW(FockState(CVector(0)), DimensionError);
    EXPECT_THROW(FockState(CVector::Zero(4)), NumericError);
}

TEST(DensityState, ValidatesMatrix)
{
    CMatrix bad = CMatrix::Zero(2, 2);
    bad(0, 0) = 1.0;
    bad(0, 1) = 0.3;
    EXPECT_THROW(DensityState{bad}, NumericError);

    CMatrix trace2 = CMatrix::Identity(2, 2);
    EXPECT_THROW(DensityState{trace2}, NumericError);

    CMatrix negative(2, 2);
    negative << 1.5, 0.0, 0.0, -0.5;
    EXPECT_THROW(DensityState{negative}, NumericError);

    EXPECT_THROW(DensityState{CMatrix(2, 3)}, DimensionError);
}

TEST(DensityState, FromPureKeepsSpectrum)
{
    const auto psi = oracle::random_state(6, 3);
    const auto rho = DensityState::from_pure(psi);
    EXPECT_NEAR(rho.spectral_weights().maxCoeff(), 1.0, 1e-12);
    EXPECT_NEAR(rho.matrix().trace().real(), 1.0, 1e-12);
}

TEST(MakeFock, BoundsChecked)
{
    EXPECT_NO_THROW(make_fock(3, 4));
    EXPECT_THROW(make_fock(4, 4), DimensionError);
    EXPECT_THROW(make_fock(-1, 4), DimensionError);
    EXPECT_THROW(make_fock(0, 0), DimensionError);
}

TEST(MakeCoherent, PoissonAmplitudes)
{
    const cplx alpha{0.7, -0.4};
    const auto psi = make_coherent(alpha, 40);
    double fact = 1.0;
    for (int n = 0; n < 10; ++n) {
        if (n > 0)
            fact *= n;
        const cplx expect = std::exp(-0.5 * std::norm(alpha)) * std::pow(alpha, n) / std::sqrt(fact);
        EXPECT_NEAR(std::abs(psi[n] - expect), 0.0, 1e-14) << n;
    }
}

TEST(MakeCoherent, TruncationSuggestsLargerDim)
{
    try {
        make_coherent(5.0, 10);
        FAIL() << "expected TruncationError";
    } catch (const TruncationError& e) {
        EXPECT_GT(e.deficit(), 1e-10);
        EXPECT_GT(e.suggested_dim(), 10);
    }
}

TEST(MakeThermal, GeometricDiagonal)
{
    const auto rho = make_thermal(1.0, 64);
    for (int n = 0; n < 10; ++n)
        EXPECT_NEAR(rho.matrix()(n, n).real(), std::pow(0.5, n + 1), 1e-12);
    EXPECT_THROW(make_thermal(10.0, 8), TruncationError);
    EXPECT_THROW(make_thermal(-1.0, 8), ValidationError);
}

TEST(Squeeze, MatchesBogoliubovMoments)
{
    const auto sv = apply_squeeze(make_fock(0, 64), 0.5);
    const oracle::SqueezedVacuum ref(0.5);
    const CVector& v = sv.amplitudes();
    EXPECT_NEAR(std::abs(oracle::moment(v, 0, 2) - ref.a2()), 0.0, 1e-12);
    EXPECT_NEAR(oracle::moment(v, 1, 1).real(), ref.n(), 1e-12);
}

TEST(Squeeze, RoundTripRestoresState)
{
    const auto psi = make_coherent({0.5, 0.2}, 48);
    const cplx z = std::polar(0.4, 0.7);
    const auto back = apply_squeeze(apply_squeeze(psi, z), -z);
    EXPECT_NEAR((back.amplitudes() - psi.amplitudes()).norm(), 0.0, 1e-10);
}

TEST(Squeeze, PreservesParity)
{
    const auto sv = apply_squeeze(make_fock(1, 60), std::polar(0.6, 0.3));
    for (int n = 0; n < 60; n += 2)
        EXPECT_EQ(std::abs(sv[n]), 0.0) << n;
}

TEST(Squeeze, ReportsDeficitAndThrows)
{
    const auto res = squeeze_with_deficit(make_fock(0, 12), 1.5);
    EXPECT_GT(res.norm_deficit, 1e-3);
    EXPECT_THROW(apply_squeeze(make_fock(0, 12), 1.5), TruncationError);
    const auto fine = squeeze_with_deficit(make_fock(0, 64), 0.3);
    EXPECT_LT(fine.norm_deficit, 1e-12);
}

TEST(QFunction, VacuumPeakAndMass)
{
    ComplexGrid g{-5.0, 5.0, -5.0, 5.0, 101, 101};
    const auto q = q_function(State{make_fock(0, 20)}, g);
    EXPECT_NEAR(q(50, 50), 1.0 / pi, 1e-14);
    EXPECT_NEAR(q.maxCoeff(), 1.0 / pi, 1e-14);
    const double da = 0.1 * 0.1;
    EXPECT_NEAR(q.sum() * da, 1.0, 1e-3);
}

TEST(QFunction, CoherentPeakSitsAtAmplitude)
{
    ComplexGrid g{-2.0, 2.0, -2.0, 2.0, 41, 41};
    const auto q = q_function(State{make_coherent({1.0, -0.5}, 40)}, g);
    Eigen::Index i = 0, j = 0;
    q.maxCoeff(&i, &j);
    EXPECT_NEAR(g.re(static_cast<int>(i)), 1.0, 1e-12);
    EXPECT_NEAR(g.im(static_cast<int>(j)), -0.5, 1e-12);
}

TEST(QFunction, MixedEqualsWeightedPure)
{
    const auto rho = make_thermal(0.5, 40);
    ComplexGrid g{-1.0, 1.0, -1.0, 1.0, 5, 5};
    const auto q = q_function(State{rho}, g);
    // thermal Q = exp(-|a|^2/(1+nbar)) / (pi (1+nbar))
    for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 5; ++j) {
            const double r2 = std::norm(g.point(i, j));
            EXPECT_NEAR(q(i, j), std::exp(-r2 / 1.5) / (pi * 1.5), 1e-12);
        }
}

TEST(Warnings, HandlerCapturesMessages)
{
    std::vector<std::string> seen;
    set_warning_handler([&](std::string_view m) { seen.emplace_back(m); });
    warn("probe");
    set_warning_handler(nullptr);
    ASSERT_EQ(seen.size(), 1u);
    EXPECT_EQ(seen[0], "probe");
}
