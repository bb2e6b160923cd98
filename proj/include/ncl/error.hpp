#ifndef NCL_ERROR_HPP
#define NCL_ERROR_HPP

#include <functional>
#include <iostream>
#include <mutex>
#include <stdexcept>
#include <string>
#include <string_view>

namespace ncl {

/// Base class of every error raised by the library.
class Error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

/// A requested index or photon number does not fit the truncation dimension.
class DimensionError : public Error
{
public:
    using Error::Error;
};

/// The truncated Fock space loses more probability than the operation allows.
class TruncationError : public Error
{
public:
    TruncationError(const std::string& what, double deficit, int suggested_dim)
        : Error(what + " (deficit " + std::to_string(deficit) + ", try dim >= " +
                std::to_string(suggested_dim) + ")"),
          deficit_(deficit), suggested_dim_(suggested_dim)
    { }

    double deficit() const noexcept { return deficit_; }
    int suggested_dim() const noexcept { return suggested_dim_; }

private:
    double deficit_;
    int suggested_dim_;
};

/// A moment required by a computation is missing from the table.
class OrderError : public Error
{
public:
    using Error::Error;
};

/// A quantity that must be real (or Hermitian, or normalized) is not.
class NumericError : public Error
{
public:
    using Error::Error;
};

/// Out-of-range or malformed index set.
class IndexError : public Error
{
public:
    using Error::Error;
};

/// A linear inversion hits a zero divisor.
class SingularError : public Error
{
public:
    using Error::Error;
};

/// Invalid user input (state specs, LO configs, duplicate points, ...).
class ValidationError : public Error
{
public:
    using Error::Error;
};

using WarningHandler = std::function<void(std::string_view)>;

namespace detail {

inline WarningHandler& warning_slot()
{
    static WarningHandler handler = [](std::string_view msg) {
        std::clog << "ncl warning: " << msg << '\n';
    };
    return handler;
}

inline std::mutex& warning_mutex()
{
    static std::mutex m;
    return m;
}

} // namespace detail

/// Replace the warning sink. Passing an empty handler silences warnings.
inline void set_warning_handler(WarningHandler handler)
{
    std::lock_guard lock(detail::warning_mutex());
    detail::warning_slot() = std::move(handler);
}

inline void warn(std::string_view msg)
{
    std::lock_guard lock(detail::warning_mutex());
    if (detail::warning_slot())
        detail::warning_slot()(msg);
}

} // namespace ncl

#endif // NCL_ERROR_HPP
