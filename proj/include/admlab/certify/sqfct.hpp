#pragma once

#include <admlab/admissibility/bounds.hpp>
#include <admlab/core/numeric.hpp>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

namespace admlab::certify {

/// phi_0 sign convention: decaying (-z)^{1/2} e^{z}, or the printed (-z)^{1/2} e^{-z}.
enum class phi0_convention { decaying, printed };

inline cplx phi0(cplx z, phi0_convention c = phi0_convention::decaying) {
    return std::sqrt(-z) * std::exp(c == phi0_convention::decaying ? z : -z);
}

struct sqfct_row {
    std::size_t n = 0;
    double closed = 0.0;      ///< |lambda_n| / (2 |Re lambda_n|)
    double quadrature = 0.0;  ///< int_0^inf |phi_0(t lambda_n)|^2 dt / t
};

struct convention_check {
    double decaying = 0.0;       ///< mode-0 integral, decaying convention
    double printed_partial = 0.0;  ///< last partial integral of the printed convention
    double printed_cutoff = 0.0;   ///< upper limit at which it was taken
    bool printed_divergent = false;
};

struct sqfct_report {
    double k_lower = 0.0;
    double k_upper = 0.0;
    std::vector<sqfct_row> rows;
    double max_rel_error = 0.0;  ///< closed form vs. quadrature
    convention_check conventions;
};

/// int_0^inf |phi_0(t lambda)|^2 dt / t by exp-sinh quadrature.
inline double sqfct_mode_integral(cplx lambda, phi0_convention c = phi0_convention::decaying) {
    auto f = [&](double t) {
        if (t == 0.0) return std::abs(lambda);
        return std::norm(phi0(t * lambda, c)) / t;
    };
    boost::math::quadrature::exp_sinh<double> q;
    return q.integrate(f, 1e-13);
}

/// Partial integrals int_0^L |phi_0(t lambda)|^2 dt/t with L doubling until they exceed `threshold`
/// (divergent) or stabilize.
inline convention_check check_conventions(cplx lambda, double threshold = 1e6) {
    convention_check c;
    c.decaying = sqfct_mode_integral(lambda);
    auto f = [&](double t) {
        if (t == 0.0) return std::abs(lambda);
        return std::norm(phi0(t * lambda, phi0_convention::printed)) / t;
    };
    double total = 0.0;
    double lo = 0.0;
    double hi = 1.0 / std::abs(lambda);
    for (int level = 0; level < 200; ++level) {
        total += boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, lo, hi, 15, 1e-12);
        c.printed_partial = total;
        c.printed_cutoff = hi;
        if (!std::isfinite(total) || total > threshold) {
            c.printed_divergent = true;
            return c;
        }
        lo = hi;
        hi *= 2.0;
    }
    return c;
}

/// k = min_n I_n, K = max_n I_n with I_n = |lambda_n| / (2 |Re lambda_n|), cross-checked by quadrature.
inline sqfct_report sqfct_constants(const spectral::diagonal_generator& a) {
    if (!a.is_analytic()) throw std::domain_error("sqfct_constants: sector angle must be below pi/2");
    sqfct_report r;
    r.k_lower = inf;
    for (std::size_t n = 0; n < a.size(); ++n) {
        const cplx l = a.eigenvalue(n);
        sqfct_row row{n, std::abs(l) / (2.0 * std::abs(l.real())), sqfct_mode_integral(l)};
        if (!std::isfinite(row.quadrature)) {
            throw convergence_error("sqfct_constants: per-mode integral diverges at n = " + std::to_string(n));
        }
        r.k_lower = std::min(r.k_lower, row.closed);
        r.k_upper = std::max(r.k_upper, row.closed);
        r.max_rel_error = std::max(r.max_rel_error, std::abs(row.quadrature - row.closed) / row.closed);
        r.rows.push_back(row);
    }
    r.conventions = check_conventions(a.eigenvalue(0));
    return r;
}

struct weak_sqfct_result {
    double estimate = 0.0;
    double diagonal_max = 0.0;
    double random_max = 0.0;
    std::size_t pairs = 0;
    std::size_t skipped = 0;
    double phase_ratio_max = 0.0;  ///< piecewise phase-aligned input value / L^1 value (never above 1)
};

/// Empirical lower estimate of C in ||<y, A T(.) x>||_{L^1(0,inf)} <= C ||x|| ||y||.
inline weak_sqfct_result weak_sqfct_estimate(const spectral::diagonal_generator& a, std::size_t samples,
                                             std::uint64_t seed = 0) {
    weak_sqfct_result r;
    const std::size_t n_modes = a.size();
    for (std::size_t n = 0; n < n_modes; ++n) {
        auto e = spectral::spectral_vector::unit(n_modes, n);
        e.coeffs[n] /= std::sqrt(a.weight(n));
        try {
            const double v = admissibility::output_map_l1(a, e, e);
            r.diagonal_max = std::max(r.diagonal_max, v);
            ++r.pairs;
        } catch (const convergence_error&) {
            ++r.skipped;
        }
    }
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss;
    auto random_unit = [&] {
        spectral::spectral_vector v{std::vector<cplx>(n_modes), spectral::scale::x};
        for (auto& c : v.coeffs) c = {gauss(rng), gauss(rng)};
        const double nrm = spectral::space_norm(a, v);
        for (auto& c : v.coeffs) c /= nrm;
        return v;
    };
    const double top = 40.0 / a.stability_margin();
    const auto bp = admissibility::search_breakpoints(top, 64);
    for (std::size_t s = 0; s < samples; ++s) {
        const auto x = random_unit();
        const auto y = random_unit();
        double v = 0.0;
        try {
            v = admissibility::output_map_l1(a, y, x);
        } catch (const convergence_error&) {
            ++r.skipped;
            continue;
        }
        ++r.pairs;
        r.random_max = std::max(r.random_max, v);
        // Phase-aligned piecewise input: sum_k |int_{piece k} <y, A T(s) x> ds| <= the L^1 norm.
        std::vector<double> pieces;
        for (std::size_t k = 0; k + 1 < bp.size(); ++k) {
            cplx acc = 0.0;
            const double d = bp[k + 1] - bp[k];
            for (std::size_t n = 0; n < n_modes; ++n) {
                const cplx l = a.eigenvalue(n);
                acc += a.weight(n) * std::conj(y.coeffs[n]) * x.coeffs[n] * l * std::exp(l * bp[k]) * d * phi1(l * d);
            }
            pieces.push_back(std::abs(acc));
        }
        if (v > 0.0) r.phase_ratio_max = std::max(r.phase_ratio_max, pairwise_sum(pieces) / v);
    }
    r.estimate = std::max(r.diagonal_max, r.random_max);
    return r;
}

}  // namespace admlab::certify
