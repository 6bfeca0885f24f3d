#pragma once

// Brute-force reference computations, deliberately naive and independent of the library code paths.

#include <admlab/admlab.hpp>

#include <cmath>
#include <complex>
#include <functional>
#include <random>
#include <vector>

namespace oracle {

using cplx = std::complex<double>;

/// Composite midpoint rule on [a, b].
inline double midpoint(const std::function<double(double)>& f, double a, double b, std::size_t n) {
    const double h = (b - a) / static_cast<double>(n);
    long double acc = 0;
    for (std::size_t i = 0; i < n; ++i) acc += f(a + (static_cast<double>(i) + 0.5) * h);
    return static_cast<double>(acc * h);
}

inline cplx midpoint_c(const std::function<cplx(double)>& f, double a, double b, std::size_t n) {
    const double h = (b - a) / static_cast<double>(n);
    std::complex<long double> acc = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const cplx v = f(a + (static_cast<double>(i) + 0.5) * h);
        acc += std::complex<long double>(v.real(), v.imag());
    }
    return {static_cast<double>(acc.real() * h), static_cast<double>(acc.imag() * h)};
}

/// Composite Simpson rule on [a, b] with n (even) intervals.
inline double simpson(const std::function<double(double)>& f, double a, double b, std::size_t n) {
    if (n % 2) ++n;
    const double h = (b - a) / static_cast<double>(n);
    long double acc = f(a) + f(b);
    for (std::size_t i = 1; i < n; ++i) acc += (i % 2 ? 4.0L : 2.0L) * f(a + static_cast<double>(i) * h);
    return static_cast<double>(acc * h / 3.0L);
}

/// Riemann sum for int_0^t e^{lambda s} u(s) ds.
inline cplx mode_integral(cplx lambda, const admlab::signals::scalar_signal& u, double t, std::size_t n = 1000000) {
    return midpoint_c([&](double s) { return std::exp(lambda * s) * u.value_at(s); }, 0.0, t, n);
}

/// (int |f|^p)^{1/p} for a piecewise-constant f.
inline double p_norm(const std::vector<double>& grid, const std::vector<double>& values, double p) {
    long double acc = 0;
    for (std::size_t i = 0; i < values.size(); ++i) {
        acc += std::pow(static_cast<long double>(values[i]), p) * (grid[i + 1] - grid[i]);
    }
    return static_cast<double>(std::pow(acc, 1.0L / p));
}

/// Luxemburg norm by plain bisection of k -> sum Phi(v/k) dx on [0, hi].
inline double luxemburg(const std::function<double(double)>& phi, const std::vector<double>& grid,
                        const std::vector<double>& values) {
    auto modular = [&](double k) {
        long double acc = 0;
        for (std::size_t i = 0; i < values.size(); ++i) acc += phi(values[i] / k) * (grid[i + 1] - grid[i]);
        return static_cast<double>(acc);
    };
    double lo = 0.0;
    double hi = 1.0;
    while (modular(hi) > 1.0) hi *= 2.0;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        (modular(mid) > 1.0 ? lo : hi) = mid;
    }
    return hi;
}

/// sup over a dense grid of x >= 0 of (xy - Phi(x)).
inline double legendre(const std::function<double(double)>& phi, double y, double x_max, std::size_t n = 200000) {
    double best = 0.0;
    for (std::size_t i = 0; i <= n; ++i) {
        const double x = x_max * static_cast<double>(i) / static_cast<double>(n);
        best = std::max(best, x * y - phi(x));
    }
    return best;
}

/// max over Re z >= 0 of g(z) by a dense log/linear scan of the closed right half-plane.
inline double half_plane_max(const std::function<double(cplx)>& g, double re_max = 1e3, double im_max = 1e3) {
    double best = 0.0;
    std::vector<double> res{0.0};
    for (int i = 0; i <= 400; ++i) res.push_back(std::pow(10.0, -6.0 + 9.0 * i / 400.0) * re_max / 1e3);
    std::vector<double> ims{0.0};
    for (int i = 0; i <= 400; ++i) {
        const double v = std::pow(10.0, -6.0 + 9.0 * i / 400.0) * im_max / 1e3;
        ims.push_back(v);
        ims.push_back(-v);
    }
    for (double re : res) {
        for (double im : ims) {
            const double v = g({re, im});
            if (std::isfinite(v)) best = std::max(best, v);
        }
    }
    return best;
}

inline std::vector<double> uniform_grid(double a, double b, std::size_t cells) {
    std::vector<double> g(cells + 1);
    for (std::size_t i = 0; i <= cells; ++i) g[i] = a + (b - a) * static_cast<double>(i) / static_cast<double>(cells);
    return g;
}

/// Random piecewise-constant nonnegative function on [0, len].
inline admlab::orlicz::sampled_function random_sampled(std::mt19937_64& rng, double len, std::size_t pieces,
                                                       double amp = 3.0) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<double> g{0.0};
    for (std::size_t i = 1; i < pieces; ++i) g.push_back(len * unit(rng));
    g.push_back(len);
    std::sort(g.begin(), g.end());
    g.erase(std::unique(g.begin(), g.end()), g.end());
    std::vector<double> v(g.size() - 1);
    for (auto& x : v) x = amp * unit(rng);
    return {std::move(g), std::move(v)};
}

inline admlab::spectral::spectral_vector random_vector(std::mt19937_64& rng, std::size_t n,
                                                       admlab::spectral::scale s = admlab::spectral::scale::x) {
    std::normal_distribution<double> gauss;
    admlab::spectral::spectral_vector x{std::vector<cplx>(n), s};
    for (auto& c : x.coeffs) c = {gauss(rng), gauss(rng)};
    return x;
}

/// Random eigenvalues in the sector |arg(-lambda)| <= angle.
inline admlab::spectral::diagonal_generator random_generator(std::mt19937_64& rng, std::size_t n, double angle,
                                                             double scale = 10.0) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<cplx> eig(n);
    for (auto& l : eig) l = -std::polar(0.1 + scale * unit(rng), angle * (2.0 * unit(rng) - 1.0));
    return admlab::spectral::diagonal_generator(std::move(eig));
}

}  // namespace oracle
