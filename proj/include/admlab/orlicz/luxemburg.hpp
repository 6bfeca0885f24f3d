#pragma once

#include <admlab/core/error.hpp>
#include <admlab/orlicz/sampled_function.hpp>
#include <admlab/orlicz/young_function.hpp>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <utility>

namespace admlab::orlicz {

/// inf{k > 0 : int Phi(|u|/k) <= 1}, by bracketing and bisection (relative tolerance 1e-14).
/// The returned k always satisfies modular(k) <= 1.
inline double luxemburg_norm(const young_function& phi, const sampled_function& u) {
    if (u.is_zero()) return 0.0;
    constexpr int max_steps = 200;
    const double sup = u.sup_norm();
    const double meas = u.measure();
    double k = std::isfinite(sup) && sup > 0.0 ? sup * (std::isfinite(meas) ? std::max(meas, 1.0) : 1.0)
                                               : std::max(u.l1_norm(), 1e-300);
    if (!std::isfinite(k) || !(k > 0.0)) k = 1.0;

    double lo = 0.0;
    double hi = 0.0;
    if (u.modular(phi, k) > 1.0) {
        lo = k;
        int n = 0;
        for (; n < max_steps; ++n) {
            k *= 2.0;
            if (u.modular(phi, k) <= 1.0) break;
            lo = k;
        }
        if (n == max_steps) {
            throw convergence_error("luxemburg_norm: modular stays above 1 after 200 doublings (u not in L_Phi)");
        }
        hi = k;
    } else {
        hi = k;
        int n = 0;
        for (; n < max_steps; ++n) {
            k *= 0.5;
            if (u.modular(phi, k) > 1.0) break;
            hi = k;
        }
        if (n == max_steps) throw convergence_error("luxemburg_norm: no lower bracket after 200 halvings");
        lo = k;
    }
    for (int it = 0; it < 200 && hi - lo > 1e-14 * hi; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (u.modular(phi, mid) <= 1.0) hi = mid;
        else lo = mid;
    }
    return hi;
}

struct holder_result {
    double lhs = 0.0;  ///< int |u v|
    double rhs = 0.0;  ///< 2 ||u||_{L_Phi} ||v||_{L_Phi~}
};

/// Orlicz-Hoelder pair for piecewise-constant u, v on a common interval (no head or tail).
inline holder_result holder_bound(const young_function& phi, const sampled_function& u, const sampled_function& v) {
    if (u.head() || u.tail() || v.head() || v.tail()) {
        throw std::invalid_argument("holder_bound: only bounded piecewise-constant inputs are supported");
    }
    if (u.grid().front() != v.grid().front() || u.grid().back() != v.grid().back()) {
        throw std::invalid_argument("holder_bound: u and v must live on the same interval");
    }
    std::vector<double> merged;
    std::merge(u.grid().begin(), u.grid().end(), v.grid().begin(), v.grid().end(), std::back_inserter(merged));
    merged.erase(std::unique(merged.begin(), merged.end()), merged.end());
    std::vector<double> parts;
    parts.reserve(merged.size());
    for (std::size_t i = 0; i + 1 < merged.size(); ++i) {
        const double mid = 0.5 * (merged[i] + merged[i + 1]);
        parts.push_back(u.value_at(mid) * v.value_at(mid) * (merged[i + 1] - merged[i]));
    }
    holder_result r;
    r.lhs = pairwise_sum(parts);
    const double nu = luxemburg_norm(phi, u);
    const double nv = v.is_zero() ? 0.0 : luxemburg_norm(complementary(phi), v);
    r.rhs = 2.0 * nu * nv;
    return r;
}

struct escalation_result {
    double value = 0.0;
    bool divergent = false;
    int levels = 0;
};

/// int Phi(|f|/k) where the singular head is integrated numerically in log-time s = t0 e^{-v},
/// over doubling v-windows, until the increment is negligible or the partial sum exceeds `threshold`.
inline escalation_result escalated_modular(const young_function& phi, const sampled_function& f, double k = 1.0,
                                           double threshold = 1e6, int max_levels = 64) {
    escalation_result res;
    sampled_function body(f.grid(), f.values(), std::nullopt, f.tail());
    double total = body.modular(phi, k);
    if (!f.head() || f.head()->coef == 0.0) {
        res.value = total;
        return res;
    }
    const double t0 = f.grid().front();
    const double a = f.head()->exponent;
    const double log_y0 = std::log(f.head()->coef / k) + a * std::log(t0);
    const double log_t0 = std::log(t0);
    auto integrand = [&](double v) {
        const double lp = phi.log_eval(log_y0 - a * v);
        return std::exp(lp + log_t0 - v);
    };
    double lo = 0.0;
    double hi = 1.0;
    for (int level = 0; level < max_levels; ++level) {
        const double piece =
            boost::math::quadrature::gauss_kronrod<double, 31>::integrate(integrand, lo, hi, 12, 1e-12);
        total += piece;
        res.levels = level + 1;
        if (!std::isfinite(total) || total > threshold) {
            res.value = total;
            res.divergent = true;
            return res;
        }
        if (level > 3 && piece <= 1e-15 * total) {
            res.value = total;
            return res;
        }
        lo = hi;
        hi *= 2.0;
    }
    throw convergence_error("escalated_modular: neither converged nor crossed the divergence threshold");
}

}  // namespace admlab::orlicz
