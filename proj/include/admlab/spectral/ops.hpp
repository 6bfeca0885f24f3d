#pragma once

#include <admlab/core/error.hpp>
#include <admlab/core/numeric.hpp>
#include <admlab/spectral/generator.hpp>
#include <admlab/spectral/vector.hpp>

#include <cmath>
#include <complex>
#include <numbers>
#include <string>

namespace admlab::spectral {

/// T(t)x; also the extrapolated T_{-1}(t), which acts identically on coefficients.
template <class Real>
basic_spectral_vector<Real> semigroup_apply(const basic_diagonal_generator<Real>& a, Real t,
                                            const basic_spectral_vector<Real>& x) {
    check_aligned(a, x);
    if (t < Real(0)) throw std::invalid_argument("semigroup_apply: t must be >= 0");
    basic_spectral_vector<Real> out = x;
    if (t == Real(0)) return out;
    for (std::size_t n = 0; n < x.size(); ++n) out.coeffs[n] *= std::exp(a.eigenvalue(n) * t);
    return out;
}

/// R(lambda, A)x = (lambda - A)^{-1} x, one step up the scale.
template <class Real>
basic_spectral_vector<Real> resolvent_apply(const basic_diagonal_generator<Real>& a, std::complex<Real> lambda,
                                            const basic_spectral_vector<Real>& x) {
    check_aligned(a, x);
    basic_spectral_vector<Real> out{x.coeffs, raised(x.tag)};
    const Real tol = Real(1e-14) * (Real(1) + std::abs(lambda));
    for (std::size_t n = 0; n < x.size(); ++n) {
        const auto d = lambda - a.eigenvalue(n);
        if (std::abs(d) < tol) {
            throw spectrum_hit("resolvent_apply: lambda within 1e-14 of eigenvalue " + std::to_string(n));
        }
        out.coeffs[n] /= d;
    }
    return out;
}

/// (-A)^{1/2} x, principal branch.
template <class Real>
basic_spectral_vector<Real> frac_power_apply(const basic_diagonal_generator<Real>& a,
                                             const basic_spectral_vector<Real>& x) {
    check_aligned(a, x);
    if (!a.is_analytic()) throw std::domain_error("frac_power_apply: sector angle must be below pi/2");
    basic_spectral_vector<Real> out{x.coeffs, lowered(x.tag)};
    for (std::size_t n = 0; n < x.size(); ++n) out.coeffs[n] *= std::sqrt(-a.eigenvalue(n));
    return out;
}

/// A x (for x in X, the result lives in X-1).
template <class Real>
basic_spectral_vector<Real> generator_apply(const basic_diagonal_generator<Real>& a,
                                            const basic_spectral_vector<Real>& x) {
    check_aligned(a, x);
    basic_spectral_vector<Real> out{x.coeffs, lowered(x.tag)};
    for (std::size_t n = 0; n < x.size(); ++n) out.coeffs[n] *= a.eigenvalue(n);
    return out;
}

template <class Real>
struct multiplier_result {
    basic_spectral_vector<Real> value;
    Real bound = 0;  ///< sup_n |g(-lambda_n)|
};

/// g(-A)x for a scalar function g on the right half-plane.
template <class Real, class G>
multiplier_result<Real> hinf_multiplier(const basic_diagonal_generator<Real>& a, G&& g,
                                        const basic_spectral_vector<Real>& x) {
    check_aligned(a, x);
    multiplier_result<Real> r{x, Real(0)};
    for (std::size_t n = 0; n < x.size(); ++n) {
        const std::complex<Real> gn = g(-a.eigenvalue(n));
        if (!std::isfinite(static_cast<double>(gn.real())) || !std::isfinite(static_cast<double>(gn.imag()))) {
            throw std::domain_error("hinf_multiplier: g(-lambda_" + std::to_string(n) + ") is not finite");
        }
        r.value.coeffs[n] *= gn;
        r.bound = std::max(r.bound, std::abs(gn));
    }
    return r;
}

/// Embedding constants between the scales: ||x||_{X-1} <= c_m1 ||x||_X and ||x||_X <= c_x ||x||_{X1}.
template <class Real>
struct scale_constants {
    Real xm1_x = 0;
    Real x_x1 = 0;
};

template <class Real>
scale_constants<Real> embedding_constants(const basic_diagonal_generator<Real>& a) {
    scale_constants<Real> c;
    for (std::size_t n = 0; n < a.size(); ++n) {
        c.xm1_x = std::max(c.xm1_x, Real(1) / std::abs(a.beta() - a.eigenvalue(n)));
        c.x_x1 = std::max(c.x_x1, Real(1) / std::sqrt(Real(1) + std::norm(a.eigenvalue(n))));
    }
    return c;
}

template <class Real>
struct range_test {
    Real sum = 0;             ///< sum_n w_n |b_n / lambda_n|^2 at truncation N
    Real tail_fraction = 0;   ///< share of `sum` carried by the upper half of the modes
    bool tail_divergent = false;
};

template <class Real>
range_test<Real> series_tail(const std::vector<Real>& terms, Real threshold) {
    range_test<Real> r;
    r.sum = pairwise_sum(terms);
    if (terms.size() >= 8 && r.sum > Real(0)) {
        const std::size_t half = terms.size() / 2;
        std::vector<Real> upper(terms.begin() + static_cast<long>(half), terms.end());
        r.tail_fraction = pairwise_sum(upper) / r.sum;
        r.tail_divergent = r.tail_fraction > threshold;
    }
    return r;
}

/// Truncation-stable guess at b in ran A_{-1}: a series whose upper half carries more than
/// `threshold` of the total is flagged as divergent.
template <class Real>
range_test<Real> range_membership(const basic_diagonal_generator<Real>& a, const basic_spectral_vector<Real>& b,
                                  Real threshold = Real(0.05)) {
    check_aligned(a, b);
    std::vector<Real> terms(b.size());
    for (std::size_t n = 0; n < b.size(); ++n) terms[n] = a.weight(n) * std::norm(b.coeffs[n] / a.eigenvalue(n));
    return series_tail(terms, threshold);
}

/// Same tail test applied to the X-norm series of b.
template <class Real>
range_test<Real> membership_in_x(const basic_diagonal_generator<Real>& a, const basic_spectral_vector<Real>& b,
                                 Real threshold = Real(0.05)) {
    check_aligned(a, b);
    std::vector<Real> terms(b.size());
    for (std::size_t n = 0; n < b.size(); ++n) terms[n] = a.weight(n) * std::norm(b.coeffs[n]);
    return series_tail(terms, threshold);
}

}  // namespace admlab::spectral
