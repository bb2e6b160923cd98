#ifndef NCL_HERMITE_ORACLE_HPP
#define NCL_HERMITE_ORACLE_HPP

#include <array>
#include <complex>
#include <map>
#include <mutex>

#include <Eigen/Dense>

#include "ncl/ass_state.hpp"
#include "ncl/error.hpp"

namespace ncl {

/// Four-dimensional Hermite numbers H^{A}_{nmkl}(0,0,0,0), the Taylor
/// coefficients (times n! m! k! l!) of exp(-w^T A w / 2).
///
/// Evaluated with the zero-argument recursion
///   H_{alpha + e_i} = - sum_j A_ij alpha_j H_{alpha - e_j}
/// and memoized. The cache is guarded, so one oracle can be shared across
/// threads.
class HermiteOracle
{
public:
    using Index = std::array<int, 4>;

    explicit HermiteOracle(const Eigen::Matrix4cd& a)
        : a_(a)
    {
        if ((a - a.transpose()).cwiseAbs().maxCoeff() > 1e-12)
            throw NumericError("Hermite oracle matrix must be symmetric");
    }

    const Eigen::Matrix4cd& matrix() const noexcept { return a_; }

    cplx operator()(const Index& idx) const
    {
        std::lock_guard lock(mutex_);
        return eval(idx);
    }

    /// Matrix A of the generating function for ASS moments.
    static Eigen::Matrix4cd ass_matrix(const AssParams& p)
    {
        const cplx i{0.0, 1.0};
        const cplx g = p.gamma;
        const cplx gb = std::conj(g);
        const cplx mu = p.mu;
        const cplx nu = p.nu;
        const cplx nub = std::conj(nu);
        const double g2 = std::norm(g);
        const double nu2 = std::norm(nu);
        Eigen::Matrix4cd a;
        a << 2.0, -4.0 * g2, -2.0 * i * nub * g, -2.0 * i * mu * g,
             -4.0 * g2, 2.0, 2.0 * i * mu * gb, 2.0 * i * nu * gb,
             -2.0 * i * nub * g, 2.0 * i * mu * gb, -mu * nub, -nu2,
             -2.0 * i * mu * g, 2.0 * i * nu * gb, -nu2, -mu * nu;
        return a;
    }

private:
    cplx eval(const Index& idx) const
    {
        for (int v : idx)
            if (v < 0)
                return 0.0;
        if (idx[0] == 0 && idx[1] == 0 && idx[2] == 0 && idx[3] == 0)
            return 1.0;
        if (auto it = cache_.find(idx); it != cache_.end())
            return it->second;

        int i = 0;
        while (idx[i] == 0)
            ++i;
        Index alpha = idx;
        --alpha[i];
        cplx total = 0.0;
        for (int j = 0; j < 4; ++j) {
            if (alpha[j] == 0)
                continue;
            Index lowered = alpha;
            --lowered[j];
            total -= a_(i, j) * static_cast<double>(alpha[j]) * eval(lowered);
        }
        cache_.emplace(idx, total);
        return total;
    }

    Eigen::Matrix4cd a_;
    mutable std::map<Index, cplx> cache_;
    mutable std::mutex mutex_;
};

/// <a^dag^k a^l> of |psi(m, lambda)> as |c_m|^2 H^{A}_{m m k l}(0).
inline cplx ass_moment_analytic(const AssParams& p, int k, int l)
{
    if (k < 0 || l < 0)
        throw OrderError("moment powers must be nonnegative");
    const HermiteOracle oracle(HermiteOracle::ass_matrix(p));
    return p.c_m_sq * oracle({p.m, p.m, k, l});
}

} // namespace ncl

#endif // NCL_HERMITE_ORACLE_HPP
