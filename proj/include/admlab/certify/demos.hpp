#pragma once

#include <admlab/core/numeric.hpp>
#include <admlab/orlicz/luxemburg.hpp>
#include <admlab/orlicz/sampled_function.hpp>
#include <admlab/spectral/generator.hpp>

#include <algorithm>
#include <cmath>
#include <vector>

namespace admlab::certify {

/// (T(s) f)(x) = f(x + s) on L^1(0, 1), zero past the right end.
inline orlicz::sampled_function left_shift(const orlicz::sampled_function& f, double s) {
    if (!(s >= 0.0) || s >= 1.0) throw std::invalid_argument("left_shift: need 0 <= s < 1");
    std::vector<double> g;
    std::vector<double> v;
    for (std::size_t i = 0; i < f.values().size(); ++i) {
        const double lo = f.grid()[i] - s;
        const double hi = f.grid()[i + 1] - s;
        if (hi <= 0.0) continue;
        if (g.empty()) g.push_back(std::max(lo, 0.0));
        g.push_back(hi);
        v.push_back(f.values()[i]);
    }
    if (g.size() < 2) return orlicz::sampled_function({0.0, 1.0}, {0.0});
    if (g.front() > 0.0 && !f.head()) {
        g.insert(g.begin(), 0.0);
        v.insert(v.begin(), 0.0);
    }
    return orlicz::sampled_function(std::move(g), std::move(v));
}

struct shift_report {
    double output_l1 = 0.0;  ///< ||Psi_1 f||_{L^1(0,1)} with C T(s) f = f(s)
    double input_l1 = 0.0;   ///< ||f||_{L^1(0,1)}
    double modular = 0.0;    ///< int_0^1 Phi(|f|), partial sum when divergent
    bool divergent = false;  ///< escalated quadrature crossed the threshold: f is not in E_Phi
    int levels = 0;
};

/// Left shift on L^1(0, 1) observed by point evaluation at 0.
inline shift_report shift_demo(const orlicz::sampled_function& f, const orlicz::young_function& phi,
                               double threshold = 1e6) {
    if (f.start() < 0.0 || f.end() > 1.0) throw std::invalid_argument("shift_demo: f must live on (0, 1)");
    shift_report r;
    r.input_l1 = f.l1_norm();
    // Output y(s) = (T(s) f)(0+): on each grid cell, the shifted function's first value.
    std::vector<double> vals;
    for (std::size_t i = 0; i + 1 < f.grid().size(); ++i) {
        const double s = f.grid()[i];
        vals.push_back(s < 1.0 ? left_shift(f, s).values().front() : 0.0);
    }
    const orlicz::sampled_function y(f.grid(), std::move(vals), f.head());
    r.output_l1 = y.l1_norm();
    const auto esc = orlicz::escalated_modular(phi, f, 1.0, threshold);
    r.modular = esc.value;
    r.divergent = esc.divergent;
    r.levels = esc.levels;
    return r;
}

/// sup_{||x|| = 1} ||T(t) x - x|| = max_n |e^{lambda_n t} - 1|.
inline double boundedness_value(const spectral::diagonal_generator& a, double t) {
    double best = 0.0;
    for (const auto& l : a.eigenvalues()) best = std::max(best, std::abs(cexpm1(l * t)));
    return best;
}

struct probe_row {
    std::size_t modes = 0;
    double t = 0.0;
    double value = 0.0;
};

struct probe_result {
    std::vector<probe_row> rows;
    bool degrades = false;  ///< at the smallest t the value grows with N by more than 0.1
};

/// Truncations of lambda_n = -|base| n^exponent e^{i angle}.
inline probe_result boundedness_probe(double base, double exponent, double angle, const std::vector<std::size_t>& ns,
                                      const std::vector<double>& ts) {
    probe_result r;
    if (ns.empty() || ts.empty()) return r;
    const double t_min = *std::min_element(ts.begin(), ts.end());
    double first = 0.0;
    double last = 0.0;
    for (std::size_t i = 0; i < ns.size(); ++i) {
        const auto a = spectral::diagonal_generator::ray(base, exponent, angle, ns[i]);
        for (double t : ts) {
            const double v = boundedness_value(a, t);
            r.rows.push_back({ns[i], t, v});
            if (t == t_min) (i == 0 ? first : last) = v;
        }
    }
    r.degrades = ns.size() > 1 && last - first > 0.1;
    return r;
}

}  // namespace admlab::certify
