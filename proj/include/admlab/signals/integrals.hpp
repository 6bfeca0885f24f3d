#pragma once

#include <admlab/core/numeric.hpp>
#include <admlab/signals/signal.hpp>

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace admlab::signals {

/// int_0^t e^{lambda s} u(s) ds, closed form per piece; t defaults to the channel horizon.
template <class Real>
std::complex<Real> mode_integral(std::complex<Real> lambda, const basic_scalar_signal<Real>& u,
                                 Real t = std::numeric_limits<Real>::infinity()) {
    const Real end = std::min(t, u.horizon());
    if (u.is_probe()) {
        const auto z = lambda - *u.probe_rate();
        const auto v = u.values()[0];
        if (std::isinf(static_cast<double>(end))) {
            if (!(z.real() < Real(0))) throw std::domain_error("mode_integral: probe integral diverges");
            return -v / z;
        }
        return v * end * phi1(z * end);
    }
    std::vector<std::complex<Real>> parts;
    const auto& b = u.breakpoints();
    const auto& vals = u.values();
    for (std::size_t k = 0; k < vals.size() && b[k] < end; ++k) {
        if (vals[k] == std::complex<Real>(0)) continue;
        const Real lo = b[k];
        const Real d = std::min(b[k + 1], end) - lo;
        parts.push_back(vals[k] * std::exp(lambda * lo) * d * phi1(lambda * d));
    }
    return pairwise_sum(parts);
}

/// int_0^t e^{lambda (t - s)} u(s) ds, the mild-solution convolution for one mode.
template <class Real>
std::complex<Real> convolution_integral(std::complex<Real> lambda, const basic_scalar_signal<Real>& u, Real t) {
    if (u.is_probe()) {
        const auto mu = *u.probe_rate();
        const auto v = u.values()[0];
        const Real end = std::min(t, u.horizon());
        const auto shift = std::exp(lambda * (t - end));
        const auto z = lambda + mu;
        if (z.real() <= Real(0)) return shift * v * std::exp(-mu * end) * end * phi1(z * end);
        return shift * v * std::exp(lambda * end) * end * phi1(-z * end);
    }
    std::vector<std::complex<Real>> parts;
    const auto& b = u.breakpoints();
    const auto& vals = u.values();
    for (std::size_t k = 0; k < vals.size() && b[k] < t; ++k) {
        if (vals[k] == std::complex<Real>(0)) continue;
        const Real hi = std::min(b[k + 1], t);
        const Real d = hi - b[k];
        parts.push_back(vals[k] * std::exp(lambda * (t - hi)) * d * phi1(lambda * d));
    }
    return pairwise_sum(parts);
}

template <class Real>
struct support_interval {
    std::size_t m = 0;  ///< 1-based mode index
    Real lo = 0;
    Real hi = 0;
};

template <class Real>
struct counterexample_signal {
    basic_piecewise_signal<Real> u;
    std::vector<support_interval<Real>> table;
};

/// Per-mode indicator input on [0, 1]: channel m equals 1 on [-1/(2 Re g_m), -1/Re g_m].
/// Requires Re g_1 <= -1 and Re g_{m+1} <= 2 Re g_m (strict when `strict`).
template <class Real>
counterexample_signal<Real> counterexample_input(const std::vector<std::complex<Real>>& gammas, bool strict = false,
                                                 std::vector<Real> weights = {}) {
    if (gammas.empty()) throw std::invalid_argument("counterexample_input: no modes");
    if (!(gammas[0].real() <= Real(-1))) {
        throw std::invalid_argument("counterexample_input: need Re gamma_1 <= -1");
    }
    for (std::size_t m = 0; m + 1 < gammas.size(); ++m) {
        const Real next = gammas[m + 1].real();
        const Real bound = 2 * gammas[m].real();
        const bool ok = strict ? next < bound : next <= bound;
        if (!ok) {
            throw std::invalid_argument("counterexample_input: subsequence rule fails at m = " + std::to_string(m + 2) +
                                        (strict ? " (need Re g_{m+1} < 2 Re g_m)" : " (need Re g_{m+1} <= 2 Re g_m)"));
        }
    }
    counterexample_signal<Real> out;
    std::vector<basic_scalar_signal<Real>> channels;
    channels.reserve(gammas.size());
    for (std::size_t m = 0; m < gammas.size(); ++m) {
        const Real lo = Real(-1) / (2 * gammas[m].real());
        const Real hi = Real(-1) / gammas[m].real();
        if (!out.table.empty() && hi > out.table.back().lo) {
            throw std::logic_error("counterexample_input: supports overlap at m = " + std::to_string(m + 1));
        }
        out.table.push_back({m + 1, lo, hi});
        if (hi < Real(1)) {
            channels.emplace_back(std::vector<Real>{Real(0), lo, hi, Real(1)},
                                  std::vector<std::complex<Real>>{Real(0), Real(1), Real(0)});
        } else {
            channels.emplace_back(std::vector<Real>{Real(0), lo, Real(1)},
                                  std::vector<std::complex<Real>>{Real(0), Real(1)});
        }
    }
    out.u = basic_piecewise_signal<Real>(layout::per_mode, std::move(channels), std::move(weights));
    return out;
}

enum class scalar_field { real, complex };

struct phase_search_options {
    std::size_t block = 1;  ///< columns per piece, constrained jointly to the Euclidean unit ball
    scalar_field field = scalar_field::complex;
    int restarts = 8;
    int iterations = 200;
    std::uint64_t seed = 0;
};

struct phase_search_result {
    std::vector<cplx> values;  ///< piece values, `block` consecutive entries per piece
    double lower_bound = 0.0;  ///< ||M v||_W
    int restart = -1;          ///< -1: the all-ones start won
    int iterations = 0;
};

/// Alternating maximization of ||M v||_W over piece values in the unit ball: v <- normalize(M* W M v) blockwise.
/// Starts from v = 1 and `restarts` seeded random phases; the best iterate is kept.
inline phase_search_result worst_case_phases(const Eigen::MatrixXcd& m, const std::vector<double>& weights,
                                             const phase_search_options& opt = {}) {
    if (static_cast<std::size_t>(m.rows()) != weights.size()) {
        throw std::invalid_argument("worst_case_phases: weights must match matrix rows");
    }
    if (opt.block == 0 || static_cast<std::size_t>(m.cols()) % opt.block != 0) {
        throw std::invalid_argument("worst_case_phases: column count must be a multiple of the block size");
    }
    const Eigen::Index cols = m.cols();
    const Eigen::Index block = static_cast<Eigen::Index>(opt.block);
    Eigen::VectorXd w(m.rows());
    for (Eigen::Index n = 0; n < m.rows(); ++n) w[n] = weights[static_cast<std::size_t>(n)];

    auto objective = [&](const Eigen::VectorXcd& v) {
        const Eigen::VectorXcd y = m * v;
        return std::sqrt((w.array() * y.array().abs2()).sum());
    };
    auto normalize = [&](Eigen::VectorXcd& v) {
        for (Eigen::Index k = 0; k < cols; k += block) {
            auto seg = v.segment(k, block);
            if (opt.field == scalar_field::real) seg = seg.real().cast<cplx>();
            const double nrm = seg.norm();
            if (nrm > 0.0) seg /= nrm;
        }
    };

    phase_search_result best;
    best.values.assign(static_cast<std::size_t>(cols), cplx(0));
    if (cols == 0) return best;
    best.lower_bound = -1.0;

    std::mt19937_64 rng(opt.seed);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
    for (int r = -1; r < opt.restarts; ++r) {
        Eigen::VectorXcd v(cols);
        for (Eigen::Index k = 0; k < cols; ++k) {
            if (r < 0) v[k] = 1.0;
            else if (opt.field == scalar_field::real) v[k] = angle(rng) < std::numbers::pi ? 1.0 : -1.0;
            else v[k] = std::polar(1.0, angle(rng));
        }
        normalize(v);
        double val = objective(v);
        int it = 0;
        for (; it < opt.iterations; ++it) {
            const Eigen::VectorXcd y = m * v;
            Eigen::VectorXcd g = m.adjoint() * (w.cast<cplx>().asDiagonal() * y);
            if (g.norm() == 0.0) break;
            normalize(g);
            const double next = objective(g);
            if (!(next > val * (1.0 + 1e-15))) {
                if (next >= val) {
                    v = g;
                    val = next;
                }
                break;
            }
            v = g;
            val = next;
        }
        if (val > best.lower_bound) {
            best.lower_bound = val;
            best.values.assign(v.data(), v.data() + cols);
            best.restart = r;
            best.iterations = it;
        }
    }
    return best;
}

}  // namespace admlab::signals
