#ifndef NCL_NORMAL_POLYNOMIAL_HPP
#define NCL_NORMAL_POLYNOMIAL_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <utility>

#include "ncl/moment_table.hpp"

namespace ncl {

/// Polynomial in a^dag and a inside normal-ordering colons, where the two
/// symbols commute. Term (i, j) stands for a^dag^i a^j.
class NormalPolynomial
{
public:
    using Key = std::pair<int, int>;

    NormalPolynomial() = default;

    static NormalPolynomial constant(cplx c) { return monomial(0, 0, c); }

    static NormalPolynomial monomial(int i, int j, cplx c = 1.0)
    {
        NormalPolynomial p;
        if (c != cplx{0.0, 0.0})
            p.terms_[{i, j}] = c;
        return p;
    }

    /// x_phi = a e^{-i phi} + a^dag e^{i phi}
    static NormalPolynomial quadrature_x(double phi)
    {
        return monomial(0, 1, std::polar(1.0, -phi)) + monomial(1, 0, std::polar(1.0, phi));
    }

    /// p_phi = x_{phi + pi/2}
    static NormalPolynomial quadrature_p(double phi) { return quadrature_x(phi + pi / 2.0); }

    static NormalPolynomial number() { return monomial(1, 1); }

    const std::map<Key, cplx>& terms() const noexcept { return terms_; }
    bool empty() const noexcept { return terms_.empty(); }

    cplx coefficient(int i, int j) const
    {
        auto it = terms_.find({i, j});
        return it == terms_.end() ? cplx{} : it->second;
    }

    /// Largest single power of a or a^dag, i.e. the table order this needs.
    int max_index() const
    {
        int m = 0;
        for (const auto& [key, c] : terms_)
            m = std::max({m, key.first, key.second});
        return m;
    }

    NormalPolynomial& operator+=(const NormalPolynomial& o)
    {
        for (const auto& [key, c] : o.terms_)
            terms_[key] += c;
        return *this;
    }

    NormalPolynomial& operator-=(const NormalPolynomial& o) { return *this += o * cplx{-1.0}; }

    friend NormalPolynomial operator+(NormalPolynomial a, const NormalPolynomial& b) { return a += b; }
    friend NormalPolynomial operator-(NormalPolynomial a, const NormalPolynomial& b) { return a -= b; }

    friend NormalPolynomial operator*(const NormalPolynomial& a, const NormalPolynomial& b)
    {
        NormalPolynomial out;
        for (const auto& [ka, ca] : a.terms_)
            for (const auto& [kb, cb] : b.terms_)
                out.terms_[{ka.first + kb.first, ka.second + kb.second}] += ca * cb;
        return out;
    }

    friend NormalPolynomial operator*(NormalPolynomial a, cplx s)
    {
        for (auto& [key, c] : a.terms_)
            c *= s;
        return a;
    }

    friend NormalPolynomial operator*(cplx s, NormalPolynomial a) { return std::move(a) * s; }

    NormalPolynomial pow(int n) const
    {
        NormalPolynomial out = constant(1.0);
        for (int i = 0; i < n; ++i)
            out = out * (*this);
        return out;
    }

    /// Hermitian conjugate: a^dag^i a^j -> a^dag^j a^i with conjugated coefficient.
    NormalPolynomial adjoint() const
    {
        NormalPolynomial out;
        for (const auto& [key, c] : terms_)
            out.terms_[{key.second, key.first}] += std::conj(c);
        return out;
    }

    /// Contract against a moment table.
    cplx expectation(const MomentTable& table) const
    {
        cplx total = 0.0;
        for (const auto& [key, c] : terms_) {
            if (c == cplx{0.0, 0.0})
                continue;
            total += c * table(key.first, key.second);
        }
        return total;
    }

private:
    std::map<Key, cplx> terms_;
};

} // namespace ncl

#endif // NCL_NORMAL_POLYNOMIAL_HPP
