#ifndef NCL_ASS_STATE_HPP
#define NCL_ASS_STATE_HPP

#include <cmath>
#include <complex>
#include <utility>
#include <vector>

#include "ncl/fock.hpp"

namespace ncl {

/// Parameters of the minimum-uncertainty amplitude-squared squeezed state
/// |psi(m, lambda)> = c_m S H_m(i gamma a^dag)|0>.
///
/// The squeeze operator S obeys a S = S (mu a + nu a^dag) with mu = cosh r and
/// nu = e^{i phi} sinh r, where z = r e^{i phi}. In terms of apply_squeeze
/// this is S = apply_squeeze(., -z).
struct AssParams
{
    int m = 0;
    double lambda = 2.0;
    cplx gamma;
    cplx z;
    cplx beta;
    double c_m_sq = 1.0;
    double mu = 1.0;
    cplx nu;
};

/// Coefficients h_k of the physicists' Hermite polynomial H_m(s) = sum_k h_k s^k.
inline std::vector<double> hermite_coefficients(int m)
{
    std::vector<double> prev{1.0};
    if (m == 0)
        return prev;
    std::vector<double> cur{0.0, 2.0};
    for (int n = 1; n < m; ++n) {
        // H_{n+1} = 2 s H_n - 2 n H_{n-1}
        std::vector<double> next(n + 2, 0.0);
        for (int k = 0; k <= n; ++k)
            next[k + 1] += 2.0 * cur[k];
        for (int k = 0; k < n; ++k)
            next[k] -= 2.0 * n * prev[k];
        prev = std::move(cur);
        cur = std::move(next);
    }
    return cur;
}

/// Gegenbauer polynomial C_n^{(a)}(x) via its explicit Pochhammer sum, valid
/// for any real a including negative integers.
inline double gegenbauer(int n, double a, double x)
{
    double total = 0.0;
    for (int k = 0; 2 * k <= n; ++k) {
        double poch = 1.0; // (a)_{n-k}
        for (int j = 0; j < n - k; ++j)
            poch *= a + j;
        double fact_k = 1.0;
        for (int j = 2; j <= k; ++j)
            fact_k *= j;
        double fact_n2k = 1.0;
        for (int j = 2; j <= n - 2 * k; ++j)
            fact_n2k *= j;
        const double sign = (k % 2 == 0) ? 1.0 : -1.0;
        total += sign * poch / (fact_k * fact_n2k) * std::pow(2.0 * x, n - 2 * k);
    }
    return total;
}

/// |c_m|^2 from the closed Gegenbauer expression; kept as a cross-check of the
/// numerical normalization.
inline double ass_norm_gegenbauer(int m, double gamma_abs_sq)
{
    if (m == 0)
        return 1.0;
    double m_fact = 1.0;
    for (int j = 2; j <= m; ++j)
        m_fact *= j;
    const double sign = (m % 2 == 0) ? 1.0 : -1.0;
    return sign / (m_fact * gegenbauer(m, -static_cast<double>(m), 2.0 * gamma_abs_sq));
}

namespace detail {

/// Fock amplitudes of H_m(i gamma a^dag)|0>, unnormalized, of length dim.
inline CVector hermite_seed(int m, cplx gamma, int dim)
{
    const auto h = hermite_coefficients(m);
    CVector v = CVector::Zero(dim);
    const cplx ig = cplx{0.0, 1.0} * gamma;
    cplx power = 1.0;
    for (int k = 0; k <= m; ++k) {
        if (k < dim)
            v[k] = h[k] * power * ladder_weight(0, k);
        power *= ig;
    }
    return v;
}

} // namespace detail

/// Closed-form parameters for given (m, lambda); |c_m|^2 comes from the norm
/// of the finite Hermite seed vector, which the unitary squeeze preserves.
inline AssParams ass_params(int m, double lambda)
{
    if (m < 0)
        throw ValidationError("ASS order m must be >= 0");
    if (!(lambda > 0.0) || lambda == 1.0 || !std::isfinite(lambda))
        throw ValidationError("ASS lambda must be positive and != 1");
    AssParams p;
    p.m = m;
    p.lambda = lambda;
    const double root = std::sqrt(std::abs(lambda * lambda - 1.0));
    double phase = 0.0;
    if (lambda < 1.0) {
        p.gamma = std::polar(std::sqrt(root / 2.0), pi / 4.0);
        p.beta = cplx{0.0, root * (2 * m + 1)};
        phase = pi / 2.0;
    } else {
        p.gamma = std::sqrt(root / (2.0 * lambda));
        p.beta = root * (2 * m + 1);
    }
    const double r = std::atanh(std::sqrt(std::abs(lambda - 1.0) / (lambda + 1.0)));
    p.z = std::polar(r, phase);
    p.mu = std::cosh(r);
    p.nu = std::polar(std::sinh(r), phase);
    const CVector seed = detail::hermite_seed(m, p.gamma, m + 1);
    p.c_m_sq = 1.0 / seed.squaredNorm();
    return p;
}

inline std::pair<FockState, AssParams> make_ass_state(int m, double lambda, int dim)
{
    AssParams p = ass_params(m, lambda);
    if (dim <= m)
        throw DimensionError("dim must exceed the Hermite order m");
    FockState seed(detail::hermite_seed(m, p.gamma, dim));
    FockState psi = apply_squeeze(seed, -p.z);
    return {std::move(psi), p};
}

/// The operators X = a^2 + a^dag^2 and Y = i(a^dag^2 - a^2) whose combination
/// X + i lambda Y has the ASS states as eigenvectors.
struct AssOperators
{
    CMatrix x;
    CMatrix y;
};

inline AssOperators ass_operators(int dim)
{
    const CMatrix a = detail::annihilation(dim);
    const CMatrix a2 = a * a;
    const CMatrix ad2 = a2.adjoint();
    return {a2 + ad2, cplx{0.0, 1.0} * (ad2 - a2)};
}

/// || (X + i lambda Y)|psi> - beta|psi> ||, computed with two extra levels so
/// a^dag^2 does not fall off the top of the truncated space.
inline double ass_eigen_residual(const FockState& psi, const AssParams& p)
{
    const int dim = psi.dim() + 2;
    CVector v = CVector::Zero(dim);
    v.head(psi.dim()) = psi.amplitudes();
    const auto ops = ass_operators(dim);
    const CVector lhs = (ops.x + cplx{0.0, p.lambda} * ops.y) * v;
    return (lhs - p.beta * v).norm();
}

} // namespace ncl

#endif // NCL_ASS_STATE_HPP
