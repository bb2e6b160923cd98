#ifndef NCL_CRITERIA_HPP
#define NCL_CRITERIA_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "ncl/moment_table.hpp"
#include "ncl/moments.hpp"
#include "ncl/normal_polynomial.hpp"

namespace ncl {

/// AA: monomials a^dag^k a^l. QUAD: x^a p^b. XN: x^a n^b.
/// XN_WEIGHTED: x^a n^b weighted by (4n - x^2) (the d^(2) family).
enum class BasisKind { AA, QUAD, XN, XN_WEIGHTED };

inline std::string to_string(BasisKind kind)
{
    switch (kind) {
    case BasisKind::AA: return "aa";
    case BasisKind::QUAD: return "quad";
    case BasisKind::XN: return "xn";
    case BasisKind::XN_WEIGHTED: return "d2";
    }
    return "?";
}

inline BasisKind basis_kind_from_string(const std::string& s)
{
    if (s == "aa") return BasisKind::AA;
    if (s == "quad") return BasisKind::QUAD;
    if (s == "xn") return BasisKind::XN;
    if (s == "d2") return BasisKind::XN_WEIGHTED;
    throw ValidationError("unknown hierarchy kind '" + s + "'");
}

/// Exponent pair of one basis monomial; its meaning depends on the basis kind.
struct Monomial
{
    int first = 0;
    int second = 0;

    friend bool operator==(const Monomial&, const Monomial&) = default;
};

/// Ordered monomial basis in graded order. For AA the pair is
/// (power of a^dag, power of a) and degree d runs (0,d), (1,d-1), ..., (d,0),
/// giving 1, a, a^dag, a^2, a^dag a, a^dag^2, ... For the quadrature kinds the
/// pair is (power of x, power of p or n) and degree d runs x^d, ..., p^d.
class MonomialBasis
{
public:
    MonomialBasis(BasisKind kind, std::vector<Monomial> monomials, double phi = 0.0)
        : kind_(kind), monomials_(std::move(monomials)), phi_(phi)
    { }

    static MonomialBasis graded(BasisKind kind, int n, double phi = 0.0)
    {
        std::vector<Monomial> out;
        for (int d = 0; static_cast<int>(out.size()) < n; ++d) {
            for (int i = 0; i <= d && static_cast<int>(out.size()) < n; ++i) {
                if (kind == BasisKind::AA)
                    out.push_back({i, d - i});
                else
                    out.push_back({d - i, i});
            }
        }
        return MonomialBasis(kind, std::move(out), phi);
    }

    /// 1, n, n^2, ... : the basis of the printed d^(2) matrix.
    static MonomialBasis number_powers(int n, double phi = 0.0)
    {
        std::vector<Monomial> out;
        for (int i = 0; i < n; ++i)
            out.push_back({0, i});
        return MonomialBasis(BasisKind::XN_WEIGHTED, std::move(out), phi);
    }

    BasisKind kind() const noexcept { return kind_; }
    double phi() const noexcept { return phi_; }
    const std::vector<Monomial>& monomials() const noexcept { return monomials_; }
    int size() const noexcept { return static_cast<int>(monomials_.size()); }

    /// Position of a monomial, or -1.
    int position(Monomial m) const
    {
        auto it = std::find(monomials_.begin(), monomials_.end(), m);
        return it == monomials_.end() ? -1 : static_cast<int>(it - monomials_.begin());
    }

private:
    BasisKind kind_;
    std::vector<Monomial> monomials_;
    double phi_;
};

struct MomentMatrix
{
    MonomialBasis basis;
    CMatrix values;

    int size() const noexcept { return static_cast<int>(values.rows()); }
};

namespace detail {

inline double matrix_entry_real(const MomentTable& table, const NormalPolynomial& poly)
{
    return checked_real(poly.expectation(table), "quadrature moment");
}

inline void enforce_hermitian(CMatrix& m)
{
    const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
    const double residue = (m - m.adjoint()).cwiseAbs().maxCoeff();
    if (residue > 1e-10 * scale)
        throw NumericError("moment matrix is not Hermitian (residue " + std::to_string(residue) + ")");
    m = 0.5 * (m + m.adjoint()).eval();
}

inline MomentMatrix fill_matrix(const MomentTable& table, const MonomialBasis& basis)
{
    const int n = basis.size();
    const auto& mons = basis.monomials();
    const double phi = basis.phi();
    CMatrix m(n, n);
    const auto x = NormalPolynomial::quadrature_x(phi);
    const auto p = NormalPolynomial::quadrature_p(phi);
    const auto num = NormalPolynomial::number();
    const auto weight = cplx{4.0} * num - x * x;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            const int a = mons[i].first + mons[j].first;
            const int b = mons[i].second + mons[j].second;
            switch (basis.kind()) {
            case BasisKind::AA:
                // <(a^dag^k_i a^l_i)^dag a^dag^k_j a^l_j> in normal order
                m(i, j) = table(mons[j].first + mons[i].second, mons[j].second + mons[i].first);
                break;
            case BasisKind::QUAD:
                m(i, j) = matrix_entry_real(table, x.pow(a) * p.pow(b));
                break;
            case BasisKind::XN:
                m(i, j) = matrix_entry_real(table, x.pow(a) * num.pow(b));
                break;
            case BasisKind::XN_WEIGHTED:
                // 4 m_{a, b+1} - m_{a+2, b}
                m(i, j) = matrix_entry_real(table, weight * x.pow(a) * num.pow(b));
                break;
            }
        }
    }
    enforce_hermitian(m);
    return {basis, std::move(m)};
}

inline double hermitian_determinant(const CMatrix& m)
{
    if (m.rows() == 0)
        return 1.0;
    const cplx det = Eigen::FullPivLU<CMatrix>(m).determinant();
    const double scale = std::max(1.0, std::pow(m.cwiseAbs().maxCoeff(), static_cast<double>(m.rows())));
    if (std::abs(det.imag()) > 1e-9 * scale)
        throw NumericError("determinant of Hermitian matrix has imaginary residue " +
                           std::to_string(det.imag()));
    return det.real();
}

} // namespace detail

/// Moment matrix of the first n graded monomials of the given kind.
/// XN_WEIGHTED here uses the general (x, n) graded basis.
inline MomentMatrix build_matrix(const MomentTable& table, BasisKind kind, int n, double phi = 0.0)
{
    if (n < 1)
        throw IndexError("moment matrix size must be >= 1");
    return detail::fill_matrix(table, MonomialBasis::graded(kind, n, phi));
}

enum class D2Basis { NumberPowers, General };

/// d^(2) matrix: entries <:(4n - x_phi^2) x^a n^b:> = 4 m_{a,b+1} - m_{a+2,b}.
/// The default basis 1, n, n^2, ... reproduces the printed Hankel pattern
/// M_ij = 4 m_{0,i+j-1} - m_{2,i+j-2} (1-based).
inline MomentMatrix build_matrix_d2(const MomentTable& table, int n, double phi = 0.0,
                                    D2Basis basis = D2Basis::NumberPowers)
{
    if (n < 1)
        throw IndexError("moment matrix size must be >= 1");
    if (basis == D2Basis::NumberPowers)
        return detail::fill_matrix(table, MonomialBasis::number_powers(n, phi));
    return detail::fill_matrix(table, MonomialBasis::graded(BasisKind::XN_WEIGHTED, n, phi));
}

/// Determinant of the principal submatrix on the given (sorted, unique) positions.
inline double principal_minor(const MomentMatrix& matrix, std::span<const int> indices)
{
    if (indices.empty())
        throw IndexError("principal minor needs at least one index");
    for (std::size_t i = 0; i < indices.size(); ++i) {
        if (indices[i] < 0 || indices[i] >= matrix.size())
            throw IndexError("principal minor index out of range");
        if (i > 0 && indices[i] <= indices[i - 1])
            throw IndexError("principal minor indices must be sorted and unique");
    }
    const auto k = static_cast<Eigen::Index>(indices.size());
    CMatrix sub(k, k);
    for (Eigen::Index i = 0; i < k; ++i)
        for (Eigen::Index j = 0; j < k; ++j)
            sub(i, j) = matrix.values(indices[i], indices[j]);
    return detail::hermitian_determinant(sub);
}

inline double principal_minor(const MomentMatrix& matrix, std::initializer_list<int> indices)
{
    return principal_minor(matrix, std::span<const int>(indices.begin(), indices.size()));
}

/// Leading principal determinant of order n.
inline double leading_minor(const MomentMatrix& matrix, int n)
{
    if (n < 0 || n > matrix.size())
        throw IndexError("leading minor order out of range");
    return detail::hermitian_determinant(matrix.values.topLeftCorner(n, n));
}

/// Central moments feeding the amplitude-squared variance.
struct AsqCentralMoments
{
    double number_like; // <Delta a^dag^2 Delta a^2> = <a^dag^2 a^2> - |<a^2>|^2
    cplx anomalous;     // <(Delta a^2)^2> = <a^4> - <a^2>^2
};

inline AsqCentralMoments asq_central_moments(const MomentTable& t)
{
    const cplx a2 = t(0, 2);
    return {t(2, 2).real() - std::norm(a2), t(0, 4) - a2 * a2};
}

/// <:(Delta X_phi)^2:> for X_phi = a^2 e^{i phi} + a^dag^2 e^{-i phi}.
inline double asq_variance(const MomentTable& table, double phi)
{
    const auto c = asq_central_moments(table);
    return 2.0 * (std::polar(1.0, 2.0 * phi) * c.anomalous).real() + 2.0 * c.number_like;
}

struct MinMax
{
    double min;
    double max;
};

/// Extremes over phi of the normally ordered X_phi variance.
inline MinMax asq_min_max(const MomentTable& table)
{
    const auto c = asq_central_moments(table);
    const double spread = std::abs(c.anomalous);
    return {2.0 * (c.number_like - spread), 2.0 * (c.number_like + spread)};
}

/// Subdeterminant on rows/columns {1, a^2, a^dag^2} of the AA moment matrix.
inline double s3(const MomentTable& t)
{
    CMatrix m(3, 3);
    m << 1.0, t(2, 0), t(0, 2),
         t(0, 2), t(2, 2), t(0, 4),
         t(2, 0), t(4, 0), t(2, 2);
    return detail::hermitian_determinant(m);
}

struct S2Witnesses
{
    double sA; // |<:x^2:> <:x^2 p:>; <:x^2 p:> <:x^2 p^2:>|
    double sB; // |1 <:x p:>; <:x p:> <:x^2 p^2:>|
};

inline S2Witnesses s2_witnesses(const MomentTable& table, double phi)
{
    auto q = [&](int k, int l) { return checked_real(quad_moment(table, k, l, phi), "quadrature moment"); };
    const double xx = q(2, 0);
    const double xxp = q(2, 1);
    const double xxpp = q(2, 2);
    const double xp = q(1, 1);
    return {xx * xxpp - xxp * xxp, xxpp - xp * xp};
}

struct DeterminantEntry
{
    int order;
    double value;
};

struct CriterionReport
{
    BasisKind kind = BasisKind::AA;
    double phi = 0.0;
    std::vector<DeterminantEntry> determinants;
    std::optional<int> first_negative_order;
    std::map<std::string, double> witnesses;
    double tolerance = 1e-9;

    /// Some classified determinant or witness lies below -tolerance.
    bool nonclassical() const
    {
        if (first_negative_order)
            return true;
        for (const auto& [name, value] : witnesses)
            if (value < -tolerance)
                return true;
        return false;
    }
};

/// First order at which a hierarchy is classified. d_2 of the AA family is
/// always nonnegative and only reported.
inline int first_classified_order(BasisKind kind)
{
    switch (kind) {
    case BasisKind::AA: return 3;
    case BasisKind::XN_WEIGHTED: return 1;
    default: return 2;
    }
}

inline int first_reported_order(BasisKind kind)
{
    return kind == BasisKind::XN_WEIGHTED ? 1 : 2;
}

/// Named witnesses s3, s2A, s2B, asq_min, asq_max; skipped silently when the
/// table lacks fourth-order moments.
inline std::map<std::string, double> named_witnesses(const MomentTable& table, double phi)
{
    std::map<std::string, double> out;
    try {
        out["s3"] = s3(table);
        const auto s2 = s2_witnesses(table, phi);
        out["s2A"] = s2.sA;
        out["s2B"] = s2.sB;
        const auto mm = asq_min_max(table);
        out["asq_min"] = mm.min;
        out["asq_max"] = mm.max;
    } catch (const OrderError&) {
        out.clear();
    }
    return out;
}

/// Leading principal determinants up to n_max plus the named witnesses.
inline CriterionReport determinant_hierarchy(const MomentTable& table, BasisKind kind, int n_max,
                                             double phi = 0.0, double tolerance = 1e-9)
{
    if (n_max < first_reported_order(kind))
        throw IndexError("hierarchy order too small for kind " + to_string(kind));
    const MomentMatrix matrix = kind == BasisKind::XN_WEIGHTED
                                    ? build_matrix_d2(table, n_max, phi)
                                    : build_matrix(table, kind, n_max, phi);
    CriterionReport report;
    report.kind = kind;
    report.phi = phi;
    report.tolerance = tolerance;
    for (int n = first_reported_order(kind); n <= n_max; ++n) {
        const double value = leading_minor(matrix, n);
        report.determinants.push_back({n, value});
        if (!report.first_negative_order && n >= first_classified_order(kind) && value < -tolerance)
            report.first_negative_order = n;
    }
    report.witnesses = named_witnesses(table, phi);
    return report;
}

} // namespace ncl

#endif // NCL_CRITERIA_HPP
