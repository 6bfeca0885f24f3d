#pragma once

#include <admlab/core/numeric.hpp>
#include <admlab/spectral/generator.hpp>

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string_view>
#include <vector>

namespace admlab::spectral {

enum class scale { x1, x, xm1 };

inline std::string_view to_string(scale s) {
    switch (s) {
        case scale::x1: return "X1";
        case scale::x: return "X";
        case scale::xm1: return "X-1";
    }
    return "?";
}

/// One step up the scale (X-1 -> X -> X1).
inline scale raised(scale s) { return s == scale::xm1 ? scale::x : scale::x1; }
inline scale lowered(scale s) { return s == scale::x1 ? scale::x : scale::xm1; }

template <class Real = double>
struct basic_spectral_vector {
    std::vector<std::complex<Real>> coeffs;
    spectral::scale tag = scale::x;

    std::size_t size() const noexcept { return coeffs.size(); }

    static basic_spectral_vector unit(std::size_t n, std::size_t k, spectral::scale s = scale::x) {
        basic_spectral_vector v{std::vector<std::complex<Real>>(n), s};
        v.coeffs.at(k) = Real(1);
        return v;
    }
};

using spectral_vector = basic_spectral_vector<double>;

template <class Real>
void check_aligned(const basic_diagonal_generator<Real>& a, const basic_spectral_vector<Real>& x) {
    if (x.size() != a.size()) {
        throw std::invalid_argument("spectral vector has " + std::to_string(x.size()) + " coefficients, generator has " +
                                    std::to_string(a.size()) + " modes");
    }
}

/// Weighted l^2 norm in the tagged scale; +inf once any term exceeds 1e300.
template <class Real>
Real space_norm(const basic_diagonal_generator<Real>& a, const basic_spectral_vector<Real>& x) {
    check_aligned(a, x);
    std::vector<Real> terms(x.size());
    for (std::size_t n = 0; n < x.size(); ++n) {
        const Real c = std::norm(x.coeffs[n]);
        Real t = a.weight(n) * c;
        if (x.tag == scale::x1) {
            t *= Real(1) + std::norm(a.eigenvalue(n));
        } else if (x.tag == scale::xm1) {
            t /= std::norm(a.beta() - a.eigenvalue(n));
        }
        if (!(t <= Real(1e300))) return std::numeric_limits<Real>::infinity();
        terms[n] = t;
    }
    return std::sqrt(pairwise_sum(terms));
}

/// Weighted inner product <y, x> = sum w_n conj(y_n) x_n.
template <class Real>
std::complex<Real> pairing(const basic_diagonal_generator<Real>& a, const basic_spectral_vector<Real>& y,
                           const basic_spectral_vector<Real>& x) {
    check_aligned(a, x);
    check_aligned(a, y);
    std::vector<std::complex<Real>> terms(x.size());
    for (std::size_t n = 0; n < x.size(); ++n) terms[n] = a.weight(n) * std::conj(y.coeffs[n]) * x.coeffs[n];
    return pairwise_sum(terms);
}

}  // namespace admlab::spectral
