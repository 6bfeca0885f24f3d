#pragma once

#include <admlab/admissibility/bounds.hpp>
#include <admlab/admissibility/input_operator.hpp>
#include <admlab/certify/weiss.hpp>
#include <admlab/signals/integrals.hpp>

#include <chrono>
#include <cmath>
#include <optional>
#include <vector>

namespace admlab::certify {

struct counterexample_options {
    double k_bound = 1.0;
    bool complex_spectrum = false;  ///< xi = 1: gamma_m = -2^{m-1} (1 + i k)
    bool strict = false;            ///< scale by (1 + 1e-9)^{m-1} so the subsequence rule holds strictly
    bool weiss_grid = true;         ///< grid-check the resolvent condition on modes with |gamma| <= 1e6
};

struct counterexample_row {
    std::size_t modes = 0;
    double s_m = 0.0;         ///< ||Phi_1 u||^2
    double theory = 0.0;      ///< M (e^{-1/2} - e^{-1})^2, real case; NaN otherwise
    double input_sup = 0.0;   ///< ||u||_{L^inf(0,1;X)}
    double column_bound_max = 0.0;
    double column_bound_min = 0.0;
    double weiss_closed = 0.0;  ///< sup_n |gamma_n| / |Re gamma_n|
    double weiss_grid = 0.0;    ///< grid value on the leading modes (0 when skipped)
    double seconds = 0.0;
};

/// gamma_m = -2^{m-1} (1 + i k xi), m = 1..M, in long double so that M = 10^4 stays finite.
inline std::vector<std::complex<long double>> counterexample_spectrum(std::size_t modes,
                                                                     const counterexample_options& opt = {}) {
    std::vector<std::complex<long double>> g(modes);
    const long double im = opt.complex_spectrum ? static_cast<long double>(opt.k_bound) : 0.0L;
    for (std::size_t m = 0; m < modes; ++m) {
        long double mag = std::ldexp(1.0L, static_cast<int>(m));
        if (opt.strict) mag *= std::pow(1.0L + 1e-9L, static_cast<long double>(m));
        g[m] = {-mag, -mag * im};
    }
    return g;
}

/// Reconstruct the divergence: ||Phi_1 u||^2 grows like M while every column of B = A_{-1} is uniformly admissible.
inline counterexample_row counterexample_run(std::size_t modes, const counterexample_options& opt = {}) {
    const auto start = std::chrono::steady_clock::now();
    using real = long double;
    const auto gammas = counterexample_spectrum(modes, opt);
    spectral::basic_diagonal_generator<real> a(gammas);
    auto ce = signals::counterexample_input(gammas, opt.strict);
    const auto b = admissibility::basic_input_operator<real>::full_diagonal();
    const auto x = admissibility::input_map(a, b, ce.u, real(1));

    counterexample_row row;
    row.modes = modes;
    std::vector<real> terms(modes);
    for (std::size_t n = 0; n < modes; ++n) terms[n] = a.weight(n) * std::norm(x.coeffs[n]);
    row.s_m = static_cast<double>(pairwise_sum(terms));
    const real summand = std::exp(real(-0.5)) - std::exp(real(-1));
    row.theory = opt.complex_spectrum && opt.k_bound != 0.0 ? std::numeric_limits<double>::quiet_NaN()
                                                            : static_cast<double>(static_cast<real>(modes) * summand * summand);
    row.input_sup = static_cast<double>(ce.u.sup_norm());

    row.column_bound_min = inf;
    real weiss = 0;
    const real cos_angle = std::cos(a.sector_angle());
    for (std::size_t n = 0; n < modes; ++n) {
        // Column n of A_{-1} is A_{-1} e_n; both closed-form routes reduce to ||e_n|| / cos(angle) here.
        const auto bound = static_cast<double>(std::sqrt(a.weight(n)) / cos_angle);
        row.column_bound_max = std::max(row.column_bound_max, bound);
        row.column_bound_min = std::min(row.column_bound_min, bound);
        weiss = std::max(weiss, std::abs(a.eigenvalue(n)) / std::abs(a.eigenvalue(n).real()));
    }
    row.weiss_closed = static_cast<double>(weiss);

    if (opt.weiss_grid) {
        std::vector<cplx> lead;
        for (const auto& g : gammas) {
            if (std::abs(g) <= 1e6L) lead.emplace_back(static_cast<double>(g.real()), static_cast<double>(g.imag()));
        }
        if (!lead.empty()) {
            const spectral::diagonal_generator small(lead);
            row.weiss_grid = weiss_check(small, admissibility::input_operator::full_diagonal(), inf).grid_sup;
        }
    }
    row.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return row;
}

}  // namespace admlab::certify
