#ifndef NCL_FOCK_HPP
#define NCL_FOCK_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <string>
#include <utility>
#include <variant>

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#include "ncl/error.hpp"

namespace ncl {

using cplx = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;

inline constexpr double pi = 3.14159265358979323846;

namespace detail {

/// sqrt((p+k)!/p!), the matrix element of a^k between |p+k> and |p>.
inline double ladder_weight(long p, int k)
{
    double w = 1.0;
    for (int q = 1; q <= k; ++q)
        w *= std::sqrt(static_cast<double>(p + q));
    return w;
}

/// a^k applied to a vector of Fock amplitudes (same length, top entries zero).
inline CVector lower(const CVector& v, int k)
{
    const auto dim = v.size();
    CVector out = CVector::Zero(dim);
    for (Eigen::Index p = 0; p + k < dim; ++p)
        out[p] = ladder_weight(p, k) * v[p + k];
    return out;
}

/// Matrix of the annihilation operator on a truncated space.
inline CMatrix annihilation(int dim)
{
    CMatrix a = CMatrix::Zero(dim, dim);
    for (int n = 1; n < dim; ++n)
        a(n - 1, n) = std::sqrt(static_cast<double>(n));
    return a;
}

} // namespace detail

/// Pure single-mode state in a truncated photon-number basis.
class FockState
{
public:
    /// Normalizes the amplitudes; throws if the vector is empty or zero.
    explicit FockState(CVector amplitudes)
        : amps_(std::move(amplitudes))
    {
        if (amps_.size() < 1)
            throw DimensionError("FockState needs dim >= 1");
        const double norm = amps_.norm();
        if (!(norm > 0.0) || !std::isfinite(norm))
            throw NumericError("FockState amplitudes have zero or non-finite norm");
        amps_ /= norm;
    }

    int dim() const noexcept { return static_cast<int>(amps_.size()); }
    const CVector& amplitudes() const noexcept { return amps_; }
    cplx operator[](int n) const { return amps_[n]; }

private:
    CVector amps_;
};

/// Mixed single-mode state; the spectral decomposition is kept for
/// expectation values that factor over pure components.
class DensityState
{
public:
    explicit DensityState(CMatrix rho)
    {
        if (rho.rows() < 1 || rho.rows() != rho.cols())
            throw DimensionError("DensityState needs a square matrix with dim >= 1");
        const double herm_residue = (rho - rho.adjoint()).cwiseAbs().maxCoeff();
        if (herm_residue > 1e-12)
            throw NumericError("density matrix is not Hermitian (residue " +
                               std::to_string(herm_residue) + ")");
        rho_ = 0.5 * (rho + rho.adjoint());
        const double trace = rho_.trace().real();
        if (std::abs(trace - 1.0) > 1e-10)
            throw NumericError("density matrix trace " + std::to_string(trace) + " != 1");
        Eigen::SelfAdjointEigenSolver<CMatrix> es(rho_);
        if (es.eigenvalues().minCoeff() < -1e-10)
            throw NumericError("density matrix has a negative eigenvalue");
        weights_ = es.eigenvalues();
        vectors_ = es.eigenvectors();
    }

    static DensityState from_pure(const FockState& psi)
    {
        return DensityState(psi.amplitudes() * psi.amplitudes().adjoint());
    }

    int dim() const noexcept { return static_cast<int>(rho_.rows()); }
    const CMatrix& matrix() const noexcept { return rho_; }
    const Eigen::VectorXd& spectral_weights() const noexcept { return weights_; }
    const CMatrix& spectral_vectors() const noexcept { return vectors_; }

private:
    CMatrix rho_;
    Eigen::VectorXd weights_;
    CMatrix vectors_;
};

using State = std::variant<FockState, DensityState>;

inline int state_dim(const State& s)
{
    return std::visit([](const auto& v) { return v.dim(); }, s);
}

inline FockState make_fock(int n, int dim)
{
    if (dim < 1)
        throw DimensionError("dim must be >= 1");
    if (n < 0 || n >= dim)
        throw DimensionError("Fock index " + std::to_string(n) + " outside dim " +
                             std::to_string(dim));
    CVector v = CVector::Zero(dim);
    v[n] = 1.0;
    return FockState(std::move(v));
}

inline FockState make_coherent(cplx alpha, int dim)
{
    if (dim < 1)
        throw DimensionError("dim must be >= 1");
    CVector v(dim);
    v[0] = std::exp(-0.5 * std::norm(alpha));
    for (int n = 1; n < dim; ++n)
        v[n] = v[n - 1] * alpha / std::sqrt(static_cast<double>(n));
    const double deficit = 1.0 - v.squaredNorm();
    if (deficit > 1e-10) {
        int suggested = dim;
        while (suggested < 100000) {
            suggested *= 2;
            if (std::norm(alpha) < 0.25 * suggested)
                break;
        }
        throw TruncationError("coherent state truncated", deficit, suggested);
    }
    return FockState(std::move(v));
}

inline DensityState make_thermal(double nbar, int dim)
{
    if (dim < 1)
        throw DimensionError("dim must be >= 1");
    if (!(nbar >= 0.0))
        throw ValidationError("thermal mean photon number must be >= 0");
    const double q = nbar / (1.0 + nbar);
    Eigen::VectorXd p(dim);
    p[0] = 1.0 - q;
    for (int n = 1; n < dim; ++n)
        p[n] = p[n - 1] * q;
    const double deficit = 1.0 - p.sum();
    if (deficit > 1e-10) {
        const int suggested = static_cast<int>(std::ceil(std::log(1e-11) / std::log(q))) + 1;
        throw TruncationError("thermal state truncated", deficit, suggested);
    }
    p /= p.sum();
    return DensityState(CMatrix(p.cast<cplx>().asDiagonal()));
}

/// Result of a squeeze with the truncation diagnostic attached.
struct SqueezeResult
{
    FockState state;
    double norm_deficit;
};

/// S(z)|psi> with S(z) = exp(1/2 (z* a^2 - z a^dag^2)), evaluated by a dense
/// matrix exponential in a padded space. The weight that leaks past the
/// original dimension is reported as the norm deficit.
inline SqueezeResult squeeze_with_deficit(const FockState& state, cplx z)
{
    const int dim = state.dim();
    if (z == cplx{0.0, 0.0})
        return {state, 0.0};
    const int padded = dim + std::max(16, dim / 2);
    const CMatrix a = detail::annihilation(padded);
    const CMatrix a2 = a * a;
    const CMatrix generator = 0.5 * (std::conj(z) * a2 - z * a2.adjoint());
    const CMatrix u = generator.exp();
    CVector in = CVector::Zero(padded);
    in.head(dim) = state.amplitudes();
    const CVector out = u * in;
    const double deficit = out.tail(padded - dim).squaredNorm();
    return {FockState(out.head(dim)), deficit};
}

inline FockState apply_squeeze(const FockState& state, cplx z, double max_deficit = 1e-8)
{
    auto [squeezed, deficit] = squeeze_with_deficit(state, z);
    if (deficit > max_deficit)
        throw TruncationError("squeeze operator truncated", deficit, 2 * state.dim());
    return squeezed;
}

/// Rectangular grid over the complex plane, inclusive of both bounds.
struct ComplexGrid
{
    double re_min = -4.0;
    double re_max = 4.0;
    double im_min = -4.0;
    double im_max = 4.0;
    int n_re = 81;
    int n_im = 81;

    double re(int i) const { return n_re == 1 ? re_min : re_min + (re_max - re_min) * i / (n_re - 1); }
    double im(int j) const { return n_im == 1 ? im_min : im_min + (im_max - im_min) * j / (n_im - 1); }
    cplx point(int i, int j) const { return {re(i), im(j)}; }
};

namespace detail {

/// Unnormalized truncated coherent vector e^{-|a|^2/2} a^n / sqrt(n!).
inline CVector coherent_vector(cplx alpha, int dim)
{
    CVector v(dim);
    v[0] = std::exp(-0.5 * std::norm(alpha));
    for (int n = 1; n < dim; ++n)
        v[n] = v[n - 1] * alpha / std::sqrt(static_cast<double>(n));
    return v;
}

} // namespace detail

/// Husimi Q(alpha) = <alpha|rho|alpha>/pi on the grid; rows index Re, cols Im.
inline Eigen::MatrixXd q_function(const State& state, const ComplexGrid& grid)
{
    if (grid.n_re < 1 || grid.n_im < 1)
        throw ValidationError("Q-function grid needs at least one point per axis");
    if (!std::isfinite(grid.re_min) || !std::isfinite(grid.re_max) ||
        !std::isfinite(grid.im_min) || !std::isfinite(grid.im_max))
        throw ValidationError("Q-function grid bounds must be finite");
    const int dim = state_dim(state);
    Eigen::MatrixXd q(grid.n_re, grid.n_im);
    for (int i = 0; i < grid.n_re; ++i) {
        for (int j = 0; j < grid.n_im; ++j) {
            const cplx alpha = grid.point(i, j);
            // e^{-|alpha|^2/2} underflows to zero before anything overflows
            if (std::norm(alpha) > 1400.0) {
                q(i, j) = 0.0;
                continue;
            }
            const CVector coh = detail::coherent_vector(alpha, dim);
            double value = 0.0;
            if (const auto* psi = std::get_if<FockState>(&state))
                value = std::norm(coh.dot(psi->amplitudes()));
            else
                value = coh.dot(std::get<DensityState>(state).matrix() * coh).real();
            q(i, j) = std::max(value, 0.0) / pi;
        }
    }
    return q;
}

} // namespace ncl

#endif // NCL_FOCK_HPP
