#pragma once

#include <admlab/admissibility/bounds.hpp>
#include <admlab/admissibility/input_operator.hpp>
#include <admlab/core/error.hpp>
#include <admlab/signals/random.hpp>

#include <cmath>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace admlab::certify {

/// beta(r, t) = M e^{-omega t} r and mu(r) = gain r; the iISS pair (Phi, C) rides along.
struct kl_bundle {
    double m = 1.0;
    double omega = 0.0;
    double gain = 0.0;
    std::optional<orlicz::young_function> phi;
    double orlicz_constant = 0.0;

    double beta(double r, double t) const { return m * std::exp(-omega * t) * r; }
    double mu(double r) const { return gain * r; }
};

struct iss_options {
    int trials = 100;
    double horizon = 10.0;
    std::size_t time_points = 41;
    std::size_t pieces = 12;
    std::uint64_t seed = 0;
    signals::scalar_field field = signals::scalar_field::complex;
    std::optional<double> adm_bound_override;  ///< replaces the admissibility bound (forces failures when undersized)
};

struct violation_dump {
    int trial = 0;
    double t = 0.0;
    double lhs = 0.0;
    double rhs = 0.0;
    spectral::spectral_vector x0;
    signals::piecewise_signal u;
};

struct iss_verdict {
    kl_bundle bundle;
    std::string bound_route;
    int trials = 0;
    int checks = 0;
    int violations = 0;
    double max_ratio = 0.0;  ///< max ||x(t)|| / envelope
    std::optional<violation_dump> dump;
    bool passed() const { return violations == 0; }
};

namespace detail {

inline spectral::spectral_vector random_state(std::mt19937_64& rng, const spectral::diagonal_generator& a,
                                              signals::scalar_field field, double norm) {
    std::normal_distribution<double> gauss;
    spectral::spectral_vector x{std::vector<cplx>(a.size()), spectral::scale::x};
    for (auto& c : x.coeffs) c = {gauss(rng), field == signals::scalar_field::complex ? gauss(rng) : 0.0};
    const double n = spectral::space_norm(a, x);
    for (auto& c : x.coeffs) c *= norm / n;
    return x;
}

/// Trials: 0 has u = 0, 1 has x0 = 0 and u = 1, the rest are random.
template <class Envelope>
iss_verdict run_trials(const spectral::diagonal_generator& a, const admissibility::input_operator& b,
                       const iss_options& opt, iss_verdict v, Envelope&& input_term) {
    std::mt19937_64 rng(opt.seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const std::size_t m = b.input_dim(a);
    const auto times = linspace(0.0, opt.horizon, opt.time_points);
    for (int trial = 0; trial < opt.trials; ++trial) {
        spectral::spectral_vector x0;
        signals::piecewise_signal u;
        if (trial == 0) {
            x0 = random_state(rng, a, opt.field, 1.0);
            std::vector<signals::scalar_signal> zero(m, signals::scalar_signal::zero(opt.horizon));
            u = signals::piecewise_signal(signals::layout::input_channels, std::move(zero));
        } else if (trial == 1) {
            x0 = spectral::spectral_vector{std::vector<cplx>(a.size()), spectral::scale::x};
            std::vector<signals::scalar_signal> one(m, signals::scalar_signal::constant(
                                                           opt.horizon, 1.0 / std::sqrt(static_cast<double>(m))));
            u = signals::piecewise_signal(signals::layout::input_channels, std::move(one));
        } else {
            x0 = random_state(rng, a, opt.field, 2.0 * unit(rng));
            u = signals::random_signal(rng, opt.horizon, opt.pieces, m, opt.field, 2.0 * unit(rng));
        }
        ++v.trials;
        const double nx0 = spectral::space_norm(a, x0);
        for (double t : times) {
            const double lhs = spectral::space_norm(a, admissibility::state_at(a, b, x0, u, t));
            const double rhs = v.bundle.beta(nx0, t) + input_term(u, t);
            ++v.checks;
            if (rhs > 0.0) v.max_ratio = std::max(v.max_ratio, lhs / rhs);
            if (lhs > rhs + 1e-8) {
                ++v.violations;
                if (!v.dump) v.dump = violation_dump{trial, t, lhs, rhs, x0, u};
            }
        }
    }
    return v;
}

}  // namespace detail

/// ||x(t)|| <= e^{-delta t} ||x0|| + mu ||u||_{L^inf(0,t)} along simulated trajectories.
inline iss_verdict iss_certificate(const spectral::diagonal_generator& a, const admissibility::input_operator& b,
                                   const iss_options& opt = {}) {
    const double delta = a.stability_margin();
    if (!(delta > 0.0)) throw std::invalid_argument("iss_certificate: generator must be exponentially stable");
    iss_verdict v;
    v.bundle.omega = delta;
    if (opt.adm_bound_override) {
        v.bundle.gain = *opt.adm_bound_override;
        v.bound_route = "override";
    } else {
        if (b.kind() == admissibility::input_kind::full_diagonal) {
            throw unsupported_error("iss_certificate: B = A_{-1} has no uniform L^inf-admissibility bound");
        }
        admissibility::search_options so;
        so.restarts = 0;
        so.iterations = 1;
        const auto rep = admissibility::linfty_bounds(a, b, opt.horizon, so);
        if (!rep.uniform_upper) throw unsupported_error("iss_certificate: no horizon-uniform admissibility bound");
        v.bundle.gain = rep.upper;
        v.bound_route = rep.upper_route;
    }
    return detail::run_trials(a, b, opt, v, [&](const signals::piecewise_signal& u, double t) {
        return v.bundle.mu(u.sup_norm(t));
    });
}

/// ||x(t)|| <= e^{-delta t} ||x0|| + C ||u||_{E_Phi(0,t)} for B = A_{-1} x0, Phi = Psi~(x^2).
inline iss_verdict iiss_certificate(const spectral::diagonal_generator& a, const admissibility::input_operator& b,
                                    const orlicz::young_function& psi, const iss_options& opt = {}) {
    if (b.kind() != admissibility::input_kind::a_minus_one_x0) {
        throw std::invalid_argument("iiss_certificate: needs B = A_{-1} x0");
    }
    const double delta = a.stability_margin();
    if (!(delta > 0.0)) throw std::invalid_argument("iiss_certificate: generator must be exponentially stable");
    admissibility::orlicz_options oo;
    oo.trials = 0;
    const auto cert = admissibility::orlicz_adm_bound(a, b.x0(), psi, oo);
    iss_verdict v;
    v.bundle.omega = delta;
    v.bundle.phi = cert.phi;
    v.bundle.orlicz_constant = opt.adm_bound_override ? *opt.adm_bound_override : cert.constant;
    v.bound_route = opt.adm_bound_override ? "override" : "factorization";
    const auto& phi = cert.phi;
    return detail::run_trials(a, b, opt, v, [&](const signals::piecewise_signal& u, double t) {
        if (t <= 0.0) return 0.0;
        return v.bundle.orlicz_constant * admissibility::orlicz_signal_norm(phi, u, t);
    });
}

}  // namespace admlab::certify
