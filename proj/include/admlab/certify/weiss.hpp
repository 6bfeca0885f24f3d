#pragma once

#include <admlab/admissibility/input_operator.hpp>
#include <admlab/core/numeric.hpp>

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <vector>

namespace admlab::certify {

using admissibility::input_kind;
using admissibility::input_operator;
using spectral::diagonal_generator;

struct weiss_options {
    double re_min = 1e-8;
    double re_max = 1e6;
    double im_max = 1e6;
    std::size_t re_points = 121;
    std::size_t im_points = 121;  ///< per sign
    bool refine = true;
};

struct weiss_result {
    double p = inf;               ///< 1, 2 or inf
    double grid_sup = 0.0;        ///< sup over the grid (after refinement)
    cplx argmax{0.0, 0.0};
    double per_mode_max = 0.0;    ///< closed-form per-mode maxima
    bool closed_form_exact = false;  ///< per_mode_max is the true supremum
    std::size_t points = 0;
    std::size_t skipped = 0;
};

/// ||(p Re lambda)^{1/p} R(lambda, A_{-1}) B||_{L(U, X)}; NaN when lambda is within 1e-14 of the spectrum.
inline double weiss_value(const diagonal_generator& a, const input_operator& b, double p, cplx lambda) {
    const double factor = std::isinf(p) ? 1.0 : std::pow(p * lambda.real(), 1.0 / p);
    const double tol = 1e-14 * (1.0 + std::abs(lambda));
    if (b.kind() == input_kind::full_diagonal) {
        double best = 0.0;
        for (const auto& l : a.eigenvalues()) {
            const double d = std::abs(lambda - l);
            if (d < tol) return std::numeric_limits<double>::quiet_NaN();
            best = std::max(best, std::abs(l) / d);
        }
        return factor * best;
    }
    const std::size_t m = b.input_dim(a);
    std::vector<Eigen::VectorXcd> cols;
    for (std::size_t j = 0; j < m; ++j) {
        const auto c = b.column(a, j);
        Eigen::VectorXcd r(static_cast<Eigen::Index>(a.size()));
        for (std::size_t n = 0; n < a.size(); ++n) {
            const cplx d = lambda - a.eigenvalue(n);
            if (std::abs(d) < tol) return std::numeric_limits<double>::quiet_NaN();
            r[static_cast<Eigen::Index>(n)] = std::sqrt(a.weight(n)) * c.coeffs[n] / d;
        }
        cols.push_back(std::move(r));
    }
    if (m == 1) return factor * cols[0].norm();
    Eigen::MatrixXcd g(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(m));
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < m; ++j) {
            g(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = cols[i].dot(cols[j]);
        }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(g, Eigen::EigenvaluesOnly);
    return factor * std::sqrt(std::max(es.eigenvalues().maxCoeff(), 0.0));
}

/// Per-mode suprema over Re lambda > 0 (attained or approached at Re lambda -> 0 / inf).
inline double weiss_per_mode(const diagonal_generator& a, const input_operator& b, double p, bool& exact) {
    auto mode_sup = [&](cplx l, double scale) {
        const double re = std::abs(l.real());
        if (std::isinf(p)) return scale / re;
        if (p == 2.0) return scale / std::sqrt(2.0 * re);
        return scale;
    };
    double best = 0.0;
    if (b.kind() == input_kind::full_diagonal) {
        for (const auto& l : a.eigenvalues()) best = std::max(best, mode_sup(l, std::abs(l)));
        exact = true;
        return best;
    }
    const std::size_t m = b.input_dim(a);
    std::size_t active = 0;
    double l1_norm = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
        const auto c = b.column(a, j);
        for (std::size_t n = 0; n < a.size(); ++n) {
            const double s = std::sqrt(a.weight(n)) * std::abs(c.coeffs[n]);
            if (s > 0.0) ++active;
            best = std::max(best, mode_sup(a.eigenvalue(n), s));
            l1_norm += s * s;
        }
    }
    if (p == 1.0 && m == 1) {
        // x R(x) b -> b as x -> inf.
        best = std::sqrt(l1_norm);
        exact = true;
        return best;
    }
    exact = m == 1 && active <= 1;
    return best;
}

/// Grid supremum of the resolvent condition over Re lambda in [re_min, re_max], |Im lambda| <= im_max,
/// refined by a compass search in (log Re, asinh Im).
inline weiss_result weiss_check(const diagonal_generator& a, const input_operator& b, double p,
                                const weiss_options& opt = {}) {
    if (!(p == 1.0 || p == 2.0 || std::isinf(p))) throw std::invalid_argument("weiss_check: p must be 1, 2 or inf");
    weiss_result r;
    r.p = p;
    r.per_mode_max = weiss_per_mode(a, b, p, r.closed_form_exact);

    auto re = logspace(opt.re_min, opt.re_max, opt.re_points);
    std::vector<double> im{0.0};
    for (double y : logspace(1e-3, opt.im_max, opt.im_points)) {
        im.push_back(y);
        im.push_back(-y);
    }
    for (const auto& l : a.eigenvalues()) {
        if (std::abs(l.imag()) <= opt.im_max) im.push_back(l.imag());
        if (std::abs(l.real()) >= opt.re_min && std::abs(l.real()) <= opt.re_max) re.push_back(std::abs(l.real()));
    }
    std::sort(re.begin(), re.end());
    re.erase(std::unique(re.begin(), re.end()), re.end());
    std::sort(im.begin(), im.end());
    im.erase(std::unique(im.begin(), im.end()), im.end());

    struct point {
        double value;
        double x;
        double y;
    };
    std::vector<point> top;
    auto consider = [&](double x, double y) {
        const double v = weiss_value(a, b, p, {x, y});
        ++r.points;
        if (std::isnan(v)) {
            ++r.skipped;
            return v;
        }
        if (v > r.grid_sup) {
            r.grid_sup = v;
            r.argmax = {x, y};
        }
        return v;
    };
    for (double x : re) {
        for (double y : im) {
            const double v = consider(x, y);
            if (std::isnan(v)) continue;
            top.push_back({v, x, y});
            if (top.size() > 64) {
                std::nth_element(top.begin(), top.begin() + 8, top.end(),
                                 [](const point& l, const point& q) { return l.value > q.value; });
                top.resize(8);
            }
        }
    }
    if (!opt.refine) return r;
    std::sort(top.begin(), top.end(), [](const point& l, const point& q) { return l.value > q.value; });
    if (top.size() > 5) top.resize(5);
    const double du0 = std::log(opt.re_max / opt.re_min) / static_cast<double>(opt.re_points - 1);
    const double dv0 = std::asinh(opt.im_max) / static_cast<double>(opt.im_points);
    const double u_lo = std::log(opt.re_min);
    const double u_hi = std::log(opt.re_max);
    for (const auto& start : top) {
        double u = std::log(start.x);
        double v = std::asinh(start.y);
        double best = start.value;
        double du = du0;
        double dv = dv0;
        for (int iter = 0; iter < 2000 && (du > 1e-13 || dv > 1e-13); ++iter) {
            bool moved = false;
            for (const auto& d : std::array<std::array<double, 2>, 8>{
                     {{1, 0}, {-1, 0}, {0, 1}, {0, -1}, {1, 1}, {1, -1}, {-1, 1}, {-1, -1}}}) {
                const double nu = std::clamp(u + d[0] * du, u_lo, u_hi);
                const double nv = v + d[1] * dv;
                const double val = consider(std::exp(nu), std::sinh(nv));
                if (!std::isnan(val) && val > best) {
                    best = val;
                    u = nu;
                    v = nv;
                    moved = true;
                    break;
                }
            }
            if (!moved) {
                du /= 2;
                dv /= 2;
            }
        }
    }
    return r;
}

}  // namespace admlab::certify
