#ifndef NCL_MEASUREMENT_HPP
#define NCL_MEASUREMENT_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "ncl/error.hpp"
#include "ncl/moment_table.hpp"
#include "ncl/normal_polynomial.hpp"

namespace ncl {

/// Local oscillator and entrance splitter. t0/r0 are the complex amplitude
/// transmittance and reflectance, depth the number of 50/50 stages behind the
/// entrance (scheme A: 2^depth detectors).
struct LOConfig
{
    cplx alpha{5.0, 0.0};
    cplx t0{std::sqrt(0.96), 0.0};
    cplx r0{0.2, 0.0};
    int depth = 2;

    /// Real splitter with |T0| = t0_abs and R0 = sqrt(1 - t0_abs^2).
    static LOConfig with_transmittance(cplx alpha, double t0_abs, int depth)
    {
        if (!(t0_abs > 0.0 && t0_abs <= 1.0))
            throw ValidationError("|T0| must lie in (0, 1]");
        return LOConfig{alpha, cplx{t0_abs}, cplx{std::sqrt(1.0 - t0_abs * t0_abs)}, depth};
    }

    void validate() const
    {
        if (std::abs(std::norm(t0) + std::norm(r0) - 1.0) > 1e-12)
            throw ValidationError("|T0|^2 + |R0|^2 must equal 1");
        if (depth < 0 || depth > 16)
            throw ValidationError("splitter depth must lie in [0, 16]");
        if (std::abs(r0) >= std::abs(t0))
            warn("|R0| >= |T0|: entrance splitter is not signal-dominated");
    }

    int detectors() const noexcept { return 1 << depth; }

    /// Quadrature phase probed when the LO phase shifter is set to phi.
    double theta(double phi) const
    {
        return phi + std::arg(alpha) + std::arg(r0) - std::arg(t0);
    }
};

enum class Scheme { A, B, C };

inline std::string to_string(Scheme s)
{
    switch (s) {
    case Scheme::A: return "a";
    case Scheme::B: return "b";
    case Scheme::C: return "c";
    }
    return "?";
}

inline Scheme scheme_from_string(const std::string& s)
{
    if (s == "a" || s == "A") return Scheme::A;
    if (s == "b" || s == "B") return Scheme::B;
    if (s == "c" || s == "C") return Scheme::C;
    throw ValidationError("unknown scheme '" + s + "'");
}

/// Normally ordered coincidence rate on a detector subset (1-based labels).
struct Correlation
{
    std::vector<int> detectors;
    bool blocked_lo = false;
    double value = 0.0;
};

/// One sample of the n-fold scheme A signal F_n at LO phase phi.
struct FnSample
{
    int n = 0;
    double phi = 0.0;
    double value = 0.0;
};

struct DetectionRecord
{
    Scheme scheme = Scheme::A;
    LOConfig lo;
    double phi = 0.0;
    std::vector<Correlation> correlations;
    std::vector<FnSample> fn_samples;

    double gamma(std::vector<int> detectors, bool blocked_lo = false) const
    {
        std::sort(detectors.begin(), detectors.end());
        for (const auto& c : correlations)
            if (c.detectors == detectors && c.blocked_lo == blocked_lo)
                return c.value;
        std::string label;
        for (int d : detectors)
            label += std::to_string(d);
        throw ValidationError("record lacks correlation Gamma_" + label +
                              (blocked_lo ? " (blocked LO)" : ""));
    }
};

/// f_n(m) for |m| <= n, keyed by (n, m).
struct FourierRecord
{
    std::map<std::pair<int, int>, cplx> coefficients;

    cplx operator()(int n, int m) const
    {
        auto it = coefficients.find({n, m});
        if (it == coefficients.end())
            throw OrderError("Fourier coefficient f_" + std::to_string(n) + "(" + std::to_string(m) +
                             ") not available");
        return it->second;
    }

    int max_n() const
    {
        int n = 0;
        for (const auto& [key, v] : coefficients)
            n = std::max(n, key.first);
        return n;
    }
};

namespace detail {

inline double binomial(int n, int k)
{
    if (k < 0 || k > n)
        return 0.0;
    double r = 1.0;
    for (int i = 1; i <= k; ++i)
        r = r * (n - k + i) / i;
    return r;
}

/// C(2^d, n) / 2^{nd}: number of n-detector subsets times the per-detector
/// intensity share.
inline double scheme_a_prefactor(const LOConfig& lo, int n)
{
    return binomial(lo.detectors(), n) / std::pow(2.0, static_cast<double>(n) * lo.depth);
}

inline double scheme_a_weight(const LOConfig& lo, int n, int k, int l)
{
    const double t = std::abs(lo.t0);
    const double ra = std::abs(lo.r0 * lo.alpha);
    return binomial(n, k) * binomial(n, l) * std::pow(t, k + l) * std::pow(ra, 2 * n - k - l);
}

inline void check_scheme_a_order(const LOConfig& lo, int n)
{
    if (n < 1)
        throw ValidationError("correlation order n must be >= 1");
    if (n > lo.detectors())
        throw ValidationError("order n = " + std::to_string(n) + " exceeds the " +
                              std::to_string(lo.detectors()) + " available detectors");
}

} // namespace detail

/// Offset-free Fourier coefficient f_n(m) of the n-fold coincidence signal.
inline cplx scheme_a_coefficient(const MomentTable& table, const LOConfig& lo, int n, int m)
{
    detail::check_scheme_a_order(lo, n);
    if (std::abs(m) > n)
        return 0.0;
    cplx total = 0.0;
    for (int k = std::max(0, m); k <= n && k - m <= n; ++k) {
        const int l = k - m;
        total += detail::scheme_a_weight(lo, n, k, l) * table(k, l);
    }
    return detail::scheme_a_prefactor(lo, n) * total;
}

/// F_n at LO phase setting phi.
inline double scheme_a_forward(const MomentTable& table, const LOConfig& lo, int n, double phi)
{
    const double theta = lo.theta(phi);
    cplx total = 0.0;
    for (int m = -n; m <= n; ++m)
        total += scheme_a_coefficient(table, lo, n, m) * std::polar(1.0, m * theta);
    return checked_real(total, "F_n");
}

/// Least-squares trigonometric fit of degree n to samples of F_n; exact for
/// noiseless data on at least 2n+1 distinct phases.
inline std::map<int, cplx> scheme_a_fourier(const std::vector<FnSample>& samples, const LOConfig& lo, int n)
{
    std::vector<const FnSample*> rows;
    for (const auto& s : samples)
        if (s.n == n)
            rows.push_back(&s);
    if (static_cast<int>(rows.size()) < 2 * n + 1)
        throw ValidationError("F_" + std::to_string(n) + " needs at least " + std::to_string(2 * n + 1) +
                              " phase samples, got " + std::to_string(rows.size()));
    const auto s_count = static_cast<Eigen::Index>(rows.size());
    CMatrix a(s_count, 2 * n + 1);
    CVector b(s_count);
    for (Eigen::Index j = 0; j < s_count; ++j) {
        const double theta = lo.theta(rows[j]->phi);
        for (int m = -n; m <= n; ++m)
            a(j, m + n) = std::polar(1.0, m * theta);
        b[j] = rows[j]->value;
    }
    const CVector f = a.colPivHouseholderQr().solve(b);
    std::map<int, cplx> out;
    for (int m = 0; m <= n; ++m) {
        const cplx v = 0.5 * (f[m + n] + std::conj(f[n - m]));
        out[m] = m == 0 ? cplx{v.real()} : v;
        out[-m] = std::conj(out[m]);
    }
    return out;
}

/// Samples F_n at `samples` equispaced phases in [0, 2 pi).
inline std::vector<FnSample> scheme_a_sample(const MomentTable& table, const LOConfig& lo, int n, int samples)
{
    detail::check_scheme_a_order(lo, n);
    if (samples < 2 * n + 1)
        throw ValidationError("F_n sampling needs at least 2n+1 phases");
    std::vector<FnSample> out;
    for (int j = 0; j < samples; ++j) {
        const double phi = 2.0 * pi * j / samples;
        out.push_back({n, phi, scheme_a_forward(table, lo, n, phi)});
    }
    return out;
}

inline std::map<int, cplx> scheme_a_sample_and_fourier(const MomentTable& table, const LOConfig& lo, int n,
                                                       int samples)
{
    return scheme_a_fourier(scheme_a_sample(table, lo, n, samples), lo, n);
}

/// Scheme A record for orders 1..n_max; samples_per_n <= 0 selects 2n+2.
inline DetectionRecord scheme_a_simulate(const MomentTable& table, const LOConfig& lo, int n_max,
                                         int samples_per_n = 0)
{
    lo.validate();
    DetectionRecord rec;
    rec.scheme = Scheme::A;
    rec.lo = lo;
    for (int n = 1; n <= n_max; ++n) {
        const int s = samples_per_n > 0 ? samples_per_n : 2 * n + 2;
        auto part = scheme_a_sample(table, lo, n, s);
        rec.fn_samples.insert(rec.fn_samples.end(), part.begin(), part.end());
    }
    return rec;
}

inline FourierRecord scheme_a_fourier_record(const DetectionRecord& rec)
{
    if (rec.scheme != Scheme::A)
        throw ValidationError("Fourier analysis applies to scheme A records only");
    int n_max = 0;
    for (const auto& s : rec.fn_samples)
        n_max = std::max(n_max, s.n);
    FourierRecord fr;
    for (int n = 1; n <= n_max; ++n)
        for (const auto& [m, v] : scheme_a_fourier(rec.fn_samples, rec.lo, n))
            fr.coefficients[{n, m}] = v;
    return fr;
}

/// Step-by-step recovery of <a^dag^k a^l>, k, l <= n_max. Each f_n(m), m >= 0,
/// contains exactly one moment not fixed at lower n, namely (n, n - m).
inline MomentTable scheme_a_invert(const FourierRecord& fr, const LOConfig& lo, int n_max)
{
    lo.validate();
    if (n_max < 1)
        throw ValidationError("inversion order must be >= 1");
    detail::check_scheme_a_order(lo, n_max);
    MomentTable table(n_max);
    for (int n = 1; n <= n_max; ++n) {
        const double pref = detail::scheme_a_prefactor(lo, n);
        for (int m = 0; m <= n; ++m) {
            cplx rest = fr(n, m) / pref;
            for (int k = m; k < n; ++k)
                rest -= detail::scheme_a_weight(lo, n, k, k - m) * table(k, k - m);
            const double w = detail::scheme_a_weight(lo, n, n, n - m);
            if (!(std::abs(w) > 1e-300) || !std::isfinite(w))
                throw SingularError("vanishing coefficient for <a^dag^" + std::to_string(n) + " a^" +
                                    std::to_string(n - m) + ">");
            table.set(n, n - m, rest / w);
        }
    }
    return table;
}

/// <a^n> from the corner coefficient f_n(-n) alone.
inline cplx scheme_a_corner(const FourierRecord& fr, const LOConfig& lo, int n)
{
    detail::check_scheme_a_order(lo, n);
    const double w = detail::scheme_a_prefactor(lo, n) * detail::scheme_a_weight(lo, n, 0, n);
    if (!(w > 0.0))
        throw SingularError("vanishing corner coefficient");
    return fr(n, -n) / w;
}

namespace detail {

/// Linear detector field u a + v as a normally ordered polynomial, and its
/// intensity u* v* combination.
inline NormalPolynomial field(cplx u, cplx v)
{
    return NormalPolynomial::monomial(0, 1, u) + NormalPolynomial::constant(v);
}

inline NormalPolynomial intensity(const NormalPolynomial& f) { return f.adjoint() * f; }

inline void fill_correlations(DetectionRecord& rec, const MomentTable& table,
                              const std::vector<NormalPolynomial>& intensities, bool blocked)
{
    const int count = static_cast<int>(intensities.size());
    for (int j = 0; j < count; ++j)
        rec.correlations.push_back({{j + 1}, blocked, checked_real(intensities[j].expectation(table), "Gamma_j")});
    for (int j = 0; j < count; ++j)
        for (int k = j + 1; k < count; ++k)
            rec.correlations.push_back(
                {{j + 1, k + 1}, blocked,
                 checked_real((intensities[j] * intensities[k]).expectation(table), "Gamma_jk")});
}

inline std::vector<NormalPolynomial> scheme_b_intensities(cplx alpha_eff)
{
    const cplx i{0.0, 1.0};
    return {intensity(field(0.5, 0.5 * i * alpha_eff)), intensity(field(0.5, -0.5 * i * alpha_eff)),
            intensity(field(0.5, 0.5 * alpha_eff)), intensity(field(0.5, -0.5 * alpha_eff))};
}

inline std::vector<NormalPolynomial> scheme_c_intensities(const LOConfig& lo, cplx alpha_eff)
{
    const double s = std::sqrt(0.5);
    const auto b1 = field(s * lo.t0, s * lo.r0 * alpha_eff);
    const auto b2 = field(-s * std::conj(lo.r0), s * std::conj(lo.t0) * alpha_eff);
    const auto n1 = intensity(b1);
    const auto n2 = intensity(b2);
    return {n1, n1, n2, n2};
}

} // namespace detail

/// Four-detector device with modes c_{1,2} = (a +- i alpha')/2 and
/// c_{3,4} = (a +- alpha')/2, alpha' = alpha e^{i phi}.
inline DetectionRecord scheme_b_forward(const MomentTable& table, cplx alpha, double phi)
{
    if (std::abs(alpha) == 0.0)
        throw ValidationError("scheme B needs a nonzero LO amplitude");
    DetectionRecord rec;
    rec.scheme = Scheme::B;
    rec.lo.alpha = alpha;
    rec.lo.t0 = 1.0;
    rec.lo.r0 = 0.0;
    rec.lo.depth = 0;
    rec.phi = phi;
    detail::fill_correlations(rec, table, detail::scheme_b_intensities(alpha * std::polar(1.0, phi)), false);
    return rec;
}

/// Quadrature moments at theta = arg(alpha) + phi.
struct SchemeBMoments
{
    double theta;
    double n;
    double x;
    double p;
    double xx;
    double pp;
    double xp;
};

inline SchemeBMoments scheme_b_extract(const DetectionRecord& rec)
{
    if (rec.scheme != Scheme::B)
        throw ValidationError("not a scheme B record");
    const double a = std::abs(rec.lo.alpha);
    if (a < 1e-12)
        throw SingularError("scheme B extraction needs |alpha| > 0");
    const double g1 = rec.gamma({1}), g2 = rec.gamma({2}), g3 = rec.gamma({3}), g4 = rec.gamma({4});
    const double g12 = rec.gamma({1, 2}), g34 = rec.gamma({3, 4});
    const double g13 = rec.gamma({1, 3}), g24 = rec.gamma({2, 4});
    SchemeBMoments out{};
    out.theta = std::arg(rec.lo.alpha) + rec.phi;
    out.n = g1 + g2 + g3 + g4 - a * a;
    out.x = 2.0 * (g3 - g4) / a;
    out.p = 2.0 * (g1 - g2) / a;
    out.xx = 8.0 * (g12 - g34) / (a * a) + 2.0 * out.n;
    out.pp = -8.0 * (g12 - g34) / (a * a) + 2.0 * out.n;
    out.xp = 8.0 * (g13 + g24 - g12 - g34) / (a * a) - 2.0 * out.n;
    return out;
}

/// Entrance splitter b1 = T0 a + R0 alpha', b2 = -R0* a + T0* alpha', each
/// output split 50/50 onto detectors (1, 2) and (3, 4). Includes a blocked-LO
/// pass.
inline DetectionRecord scheme_c_forward(const MomentTable& table, const LOConfig& lo, double phi)
{
    lo.validate();
    DetectionRecord rec;
    rec.scheme = Scheme::C;
    rec.lo = lo;
    rec.phi = phi;
    detail::fill_correlations(rec, table, detail::scheme_c_intensities(lo, lo.alpha * std::polar(1.0, phi)),
                              false);
    detail::fill_correlations(rec, table, detail::scheme_c_intensities(lo, 0.0), true);
    return rec;
}

/// Moments at theta = phi + arg(alpha) + arg(R0) - arg(T0).
struct SchemeCMoments
{
    double theta;
    double n;
    double x;
    double nn;
    double xx;
    double nx;
};

inline SchemeCMoments scheme_c_extract(const DetectionRecord& rec)
{
    if (rec.scheme != Scheme::C)
        throw ValidationError("not a scheme C record");
    const double t = std::abs(rec.lo.t0);
    const double r = std::abs(rec.lo.r0);
    const double a = std::abs(rec.lo.alpha);
    if (a < 1e-12 || t * r < 1e-12)
        throw SingularError("scheme C extraction needs nonzero LO and a mixing entrance splitter");
    const double t2 = t * t, r2 = r * r, a2 = a * a;

    SchemeCMoments out{};
    out.theta = rec.lo.theta(rec.phi);
    const double s1 = rec.gamma({1}) + rec.gamma({2});
    const double s2 = rec.gamma({3}) + rec.gamma({4});
    out.n = s1 + s2 - a2;
    out.x = (s1 - t2 * out.n - r2 * a2) / (t * r * a);

    double blocked = 0.0;
    for (int j = 1; j <= 4; ++j)
        for (int k = j + 1; k <= 4; ++k)
            blocked += rec.gamma({j, k}, true);
    out.nn = blocked / (0.25 * (t2 * t2 + r2 * r2) + t2 * r2);

    const double e_minus = 4.0 * (rec.gamma({1, 2}) - rec.gamma({3, 4}));
    out.nx = (e_minus - (t2 - r2) * (out.nn - a2 * a2)) / (2.0 * t * r * a) - a2 * out.x;

    const double cross = rec.gamma({1, 3}) + rec.gamma({1, 4}) + rec.gamma({2, 3}) + rec.gamma({2, 4});
    out.xx = (t2 * r2 * out.nn + (t2 * t2 + r2 * r2) * a2 * out.n + t2 * r2 * a2 * a2 +
              t * r * (r2 - t2) * a * (out.nx - a2 * out.x) - cross) /
             (t2 * r2 * a2);
    return out;
}

/// Multiplicative Gaussian counting noise with standard deviation
/// max(|v|, 1e-6) / sqrt(samples), drawn in record order from one seeded stream.
inline DetectionRecord add_shot_noise(const DetectionRecord& rec, std::uint64_t samples, std::uint64_t seed)
{
    if (samples < 1)
        throw ValidationError("shot noise needs samples >= 1");
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    const double inv = 1.0 / std::sqrt(static_cast<double>(samples));
    DetectionRecord out = rec;
    for (auto& c : out.correlations)
        c.value += std::max(std::abs(c.value), 1e-6) * inv * normal(rng);
    for (auto& s : out.fn_samples)
        s.value += std::max(std::abs(s.value), 1e-6) * inv * normal(rng);
    return out;
}

} // namespace ncl

#endif // NCL_MEASUREMENT_HPP
