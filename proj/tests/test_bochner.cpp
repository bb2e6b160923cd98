#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "ncl/ncl.hpp"
#include "oracles.hpp"

using namespace ncl;

TEST(BochnerDet, CoherentAndVacuumVanish)
{
    const auto coh = make_coherent({0.6, -0.2}, 40);
    EXPECT_NEAR(bochner_det(coh, {cplx{0.1, 0.2}, cplx{-0.7, 0.4}}), 0.0, 1e-12);
    const auto vac = make_fock(0, 10);
    EXPECT_NEAR(bochner_det(vac, {cplx{0.0}, cplx{0.5, 0.0}, cplx{0.0, 1.0}}), 0.0, 1e-12);
}

TEST(BochnerDet, MatchesExplicitTwoByTwo)
{
    const auto psi = oracle::random_low_state(30, 6, 17);
    const cplx b1{0.2, -0.1}, b2{-0.4, 0.6};
    const cplx phi = char_function(psi, b1 - b2);
    EXPECT_NEAR(bochner_det(psi, {b1, b2}), 1.0 - std::norm(phi), 1e-12);
}

TEST(BochnerDet, SqueezedVacuumNegativeAlongSqueezedQuadrature)
{
    const auto sv = apply_squeeze(make_fock(0, 64), 0.5);
    // beta = i b probes x_0, the squeezed quadrature, where |Phi| > 1
    EXPECT_LT(bochner_det(sv, {cplx{0.0}, cplx{0.0, 0.5}}), 0.0);
    EXPECT_GT(bochner_det(sv, {cplx{0.0}, cplx{0.5, 0.0}}), 0.0);
}

TEST(BochnerDet, Validation)
{
    const auto vac = make_fock(0, 10);
    EXPECT_THROW(bochner_det(vac, {cplx{0.3}}), ValidationError);
    EXPECT_THROW(bochner_det(vac, {cplx{0.3}, cplx{0.3}}), ValidationError);
}

TEST(BochnerSearch, CoherentStaysAtZero)
{
    const auto r = bochner_search(make_coherent({0.5, 0.3}, 48), 2, 2.0, 16, 3);
    EXPECT_NEAR(r.value, 0.0, 1e-9);
}

TEST(BochnerSearch, SqueezedVacuumFindsNegativeCell)
{
    const auto sv = apply_squeeze(make_fock(0, 80), 0.5);
    const auto r = bochner_search(sv, 2, 2.0, 16, 42);
    EXPECT_LT(r.value, -1e-3);
    ASSERT_EQ(r.betas.size(), 2u);
    for (const auto& b : r.betas)
        EXPECT_LE(std::abs(b), 2.0 + 1e-12);
    EXPECT_NEAR(bochner_det(sv, r.betas), r.value, 1e-12);
}

TEST(BochnerSearch, ThermalIsClassical)
{
    const auto r = bochner_search(make_thermal(1.0, 96), 2, 2.0, 16, 42);
    EXPECT_GE(r.value, -1e-9);
}

TEST(BochnerSearch, ThreePointsAndDeterminism)
{
    const auto sv = apply_squeeze(make_fock(0, 64), 0.4);
    const auto a = bochner_search(sv, 3, 1.5, 6, 9);
    const auto b = bochner_search(sv, 3, 1.5, 6, 9);
    EXPECT_EQ(a.value, b.value);
    ASSERT_EQ(a.betas.size(), 3u);
    EXPECT_LT(a.value, 0.0);
}

TEST(BochnerSearch, Validation)
{
    const auto vac = make_fock(0, 10);
    EXPECT_THROW(bochner_search(vac, 4, 1.0, 8, 1), ValidationError);
    EXPECT_THROW(bochner_search(vac, 2, 1.0, 1, 1), ValidationError);
    EXPECT_THROW(bochner_search(vac, 2, -1.0, 8, 1), ValidationError);
}
