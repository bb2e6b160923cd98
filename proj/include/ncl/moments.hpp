#ifndef NCL_MOMENTS_HPP
#define NCL_MOMENTS_HPP

#include <cmath>
#include <complex>
#include <string>
#include <variant>

#include "ncl/fock.hpp"
#include "ncl/moment_table.hpp"
#include "ncl/normal_polynomial.hpp"

namespace ncl {

namespace detail {

inline void check_order_guard(int k, int l, int dim)
{
    if (k < 0 || l < 0)
        throw OrderError("moment powers must be nonnegative");
    if (2 * (k + l) > dim)
        warn("moment of order " + std::to_string(k + l) + " exceeds dim/2 = " +
             std::to_string(dim / 2) + "; truncation may bias it");
}

} // namespace detail

/// <psi| a^dag^k a^l |psi> = sum_p conj(c_{p+k}) c_{p+l} w(p,k) w(p,l)
inline cplx moment_aa(const FockState& psi, int k, int l)
{
    detail::check_order_guard(k, l, psi.dim());
    const auto& c = psi.amplitudes();
    cplx total = 0.0;
    for (long p = 0; p + std::max(k, l) < psi.dim(); ++p)
        total += std::conj(c[p + k]) * c[p + l] * detail::ladder_weight(p, k) *
                 detail::ladder_weight(p, l);
    return total;
}

/// tr(rho a^dag^k a^l) = sum_p rho_{p+l, p+k} w(p,k) w(p,l)
inline cplx moment_aa(const DensityState& rho, int k, int l)
{
    detail::check_order_guard(k, l, rho.dim());
    const auto& m = rho.matrix();
    cplx total = 0.0;
    for (long p = 0; p + std::max(k, l) < rho.dim(); ++p)
        total += m(p + l, p + k) * detail::ladder_weight(p, k) * detail::ladder_weight(p, l);
    return total;
}

inline cplx moment_aa(const State& s, int k, int l)
{
    return std::visit([&](const auto& v) { return moment_aa(v, k, l); }, s);
}

template <typename StateT>
MomentTable moment_table(const StateT& state, int max_order)
{
    MomentTable table(max_order);
    for (int k = 0; k <= max_order; ++k)
        for (int l = 0; l <= k; ++l)
            table.set(k, l, (k == 0 && l == 0) ? cplx{1.0} : moment_aa(state, k, l));
    for (int k = 0; k <= max_order; ++k)
        if (table(k, k).real() < -1e-12)
            throw NumericError("negative diagonal moment at order " + std::to_string(k));
    return table;
}

/// <: x_phi^k p_phi^l :> from the commuting expansion contracted with the table.
inline cplx quad_moment(const MomentTable& table, int k, int l, double phi)
{
    const auto poly = NormalPolynomial::quadrature_x(phi).pow(k) *
                      NormalPolynomial::quadrature_p(phi).pow(l);
    return poly.expectation(table);
}

/// <: x_phi^k n^l :>
inline cplx xn_moment(const MomentTable& table, int k, int l, double phi)
{
    const auto poly = NormalPolynomial::quadrature_x(phi).pow(k) * NormalPolynomial::number().pow(l);
    return poly.expectation(table);
}

namespace detail {

/// e^{c a} v on the truncated vector. Only lowering occurs, so this is exact
/// for the stored amplitudes.
inline CVector exp_lower(cplx c, const CVector& v)
{
    const auto dim = v.size();
    CVector out = CVector::Zero(dim);
    for (Eigen::Index n = 0; n < dim; ++n) {
        cplx term = 1.0; // c^k/k! sqrt((n+k)!/n!)
        cplx sum = v[n];
        for (Eigen::Index k = 1; n + k < dim; ++k) {
            term *= c * std::sqrt(static_cast<double>(n + k)) / static_cast<double>(k);
            sum += term * v[n + k];
        }
        out[n] = sum;
    }
    return out;
}

inline cplx char_function_pure(const CVector& v, cplx beta)
{
    const CVector left = exp_lower(std::conj(beta), v);
    const CVector right = exp_lower(-std::conj(beta), v);
    return left.dot(right);
}

} // namespace detail

/// Normally ordered characteristic function Phi(beta) = <e^{beta a^dag} e^{-beta* a}>,
/// equal to e^{|beta|^2/2} <D(beta)>.
inline cplx char_function(const FockState& psi, cplx beta)
{
    if (0.5 * std::norm(beta) > 600.0)
        throw NumericError("|beta| too large for the characteristic function");
    if (std::norm(beta) > psi.dim())
        warn("|beta|^2 exceeds dim; characteristic function may be truncation-limited");
    return detail::char_function_pure(psi.amplitudes(), beta);
}

inline cplx char_function(const DensityState& rho, cplx beta)
{
    if (0.5 * std::norm(beta) > 600.0)
        throw NumericError("|beta| too large for the characteristic function");
    if (std::norm(beta) > rho.dim())
        warn("|beta|^2 exceeds dim; characteristic function may be truncation-limited");
    const auto& w = rho.spectral_weights();
    const auto& vecs = rho.spectral_vectors();
    cplx total = 0.0;
    for (Eigen::Index i = 0; i < w.size(); ++i) {
        if (std::abs(w[i]) < 1e-16)
            continue;
        total += w[i] * detail::char_function_pure(vecs.col(i), beta);
    }
    return total;
}

inline cplx char_function(const State& s, cplx beta)
{
    return std::visit([&](const auto& v) { return char_function(v, beta); }, s);
}

} // namespace ncl

#endif // NCL_MOMENTS_HPP
