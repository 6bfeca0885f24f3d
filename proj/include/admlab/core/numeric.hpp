#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <numbers>
#include <span>
#include <vector>

namespace admlab {

using cplx = std::complex<double>;

namespace detail {

template <class T>
T pairwise_sum_impl(std::span<const T> v) {
    if (v.size() <= 8) {
        T s{};
        for (const auto& x : v) s += x;
        return s;
    }
    const std::size_t half = v.size() / 2;
    return pairwise_sum_impl(v.first(half)) + pairwise_sum_impl(v.subspan(half));
}

}  // namespace detail

/// Pairwise summation; result independent of thread count, error O(log n).
template <class T>
T pairwise_sum(std::span<const T> v) {
    return detail::pairwise_sum_impl(v);
}

template <class T>
T pairwise_sum(const std::vector<T>& v) {
    return detail::pairwise_sum_impl(std::span<const T>(v));
}

/// e^z - 1 without cancellation for small |z|.
template <class Real>
std::complex<Real> cexpm1(std::complex<Real> z) {
    const Real x = z.real();
    const Real y = z.imag();
    if (y == Real(0)) return {std::expm1(x), Real(0)};
    const Real s = std::sin(y / 2);
    const Real re = std::expm1(x) * std::cos(y) - 2 * s * s;
    const Real im = std::exp(x) * std::sin(y);
    return {re, im};
}

/// (e^z - 1)/z, continuous at 0.
template <class Real>
std::complex<Real> phi1(std::complex<Real> z) {
    const Real az = std::abs(z);
    if (az < Real(1e-5)) {
        return Real(1) + z / Real(2) + z * z / Real(6) + z * z * z / Real(24);
    }
    return cexpm1(z) / z;
}

/// Principal branch of arg(-lambda) for Re lambda < 0, in (-pi/2, pi/2).
template <class Real>
Real sector_arg(std::complex<Real> lambda) {
    return std::arg(-lambda);
}

/// Logarithmically spaced points lo..hi inclusive.
inline std::vector<double> logspace(double lo, double hi, std::size_t count) {
    std::vector<double> out(count);
    if (count == 1) {
        out[0] = lo;
        return out;
    }
    const double a = std::log(lo);
    const double b = std::log(hi);
    for (std::size_t i = 0; i < count; ++i) {
        out[i] = std::exp(a + (b - a) * static_cast<double>(i) / static_cast<double>(count - 1));
    }
    out.front() = lo;
    out.back() = hi;
    return out;
}

inline std::vector<double> linspace(double lo, double hi, std::size_t count) {
    std::vector<double> out(count);
    if (count == 1) {
        out[0] = lo;
        return out;
    }
    for (std::size_t i = 0; i < count; ++i) {
        out[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(count - 1);
    }
    out.back() = hi;
    return out;
}

inline bool rel_close(double a, double b, double rel, double abs_floor = 0.0) {
    return std::abs(a - b) <= rel * std::max(std::abs(a), std::abs(b)) + abs_floor;
}

inline constexpr double inf = std::numeric_limits<double>::infinity();

}  // namespace admlab
