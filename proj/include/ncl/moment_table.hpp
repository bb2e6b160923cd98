#ifndef NCL_MOMENT_TABLE_HPP
#define NCL_MOMENT_TABLE_HPP

#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include "ncl/error.hpp"
#include "ncl/fock.hpp"

namespace ncl {

/// Normally ordered moments <a^dag^k a^l> for 0 <= k, l <= max_order.
///
/// Entries are stored with conjugation symmetry: setting (k, l) also sets
/// (l, k) to the conjugate, and diagonal entries are forced real. Entries may
/// be left unknown (tables recovered from partial measurements); reading one
/// raises OrderError.
class MomentTable
{
public:
    explicit MomentTable(int max_order)
        : order_(max_order),
          values_(static_cast<std::size_t>(max_order + 1) * (max_order + 1)),
          known_(values_.size(), 0)
    {
        if (max_order < 0)
            throw OrderError("moment table order must be >= 0");
        set(0, 0, 1.0);
    }

    int max_order() const noexcept { return order_; }

    bool has(int k, int l) const noexcept
    {
        return k >= 0 && l >= 0 && k <= order_ && l <= order_ && known_[index(k, l)];
    }

    cplx operator()(int k, int l) const
    {
        if (!has(k, l))
            throw OrderError("moment <a^dag^" + std::to_string(k) + " a^" + std::to_string(l) +
                             "> not available (table order " + std::to_string(order_) + ")");
        return values_[index(k, l)];
    }

    void set(int k, int l, cplx value)
    {
        if (k < 0 || l < 0 || k > order_ || l > order_)
            throw OrderError("moment index outside table order");
        if (k == l)
            value = value.real();
        values_[index(k, l)] = value;
        values_[index(l, k)] = std::conj(value);
        known_[index(k, l)] = 1;
        known_[index(l, k)] = 1;
    }

    /// Entries with e^{i(k-l)phi} applied, i.e. the moments of the state
    /// rotated so that phase phi maps onto phase 0.
    MomentTable rotated(double phi) const
    {
        MomentTable out(order_);
        for (int k = 0; k <= order_; ++k)
            for (int l = 0; l <= k; ++l)
                if (has(k, l))
                    out.set(k, l, std::polar(1.0, (k - l) * phi) * (*this)(k, l));
        return out;
    }

private:
    std::size_t index(int k, int l) const noexcept
    {
        return static_cast<std::size_t>(k) * (order_ + 1) + l;
    }

    int order_;
    std::vector<cplx> values_;
    std::vector<char> known_;
};

/// Real part of a quantity that is Hermitian by construction. The imaginary
/// residue must stay below tol * (1 + |value|).
inline double checked_real(cplx value, const char* what, double tol = 1e-8)
{
    if (std::abs(value.imag()) > tol * (1.0 + std::abs(value.real())))
        throw NumericError(std::string(what) + " has imaginary residue " +
                           std::to_string(value.imag()));
    return value.real();
}

} // namespace ncl

#endif // NCL_MOMENT_TABLE_HPP
