#pragma once

#include <admlab/core/numeric.hpp>

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace admlab::signals {

/// One scalar channel on [0, horizon]: either piecewise constant (values[k] on
/// [breakpoints[k], breakpoints[k+1])) or the probe v * exp(-mu s).
template <class Real = double>
class basic_scalar_signal {
public:
    using complex_type = std::complex<Real>;

    basic_scalar_signal() = default;

    basic_scalar_signal(std::vector<Real> breakpoints, std::vector<complex_type> values)
        : breakpoints_(std::move(breakpoints)), values_(std::move(values)) {
        if (breakpoints_.size() < 2 || values_.size() + 1 != breakpoints_.size()) {
            throw std::invalid_argument("scalar_signal: need breakpoints.size() == values.size() + 1 >= 2");
        }
        if (breakpoints_.front() != Real(0)) throw std::invalid_argument("scalar_signal: first breakpoint must be 0");
        for (std::size_t k = 1; k < breakpoints_.size(); ++k) {
            if (!(breakpoints_[k] > breakpoints_[k - 1])) {
                throw std::invalid_argument("scalar_signal: breakpoints must be strictly increasing");
            }
        }
        for (const auto& v : values_) {
            if (!std::isfinite(static_cast<double>(std::abs(v)))) {
                throw std::invalid_argument("scalar_signal: values must be finite");
            }
        }
    }

    /// u(s) = amplitude * exp(-mu s) on [0, horizon]; horizon may be +inf.
    static basic_scalar_signal probe(complex_type mu, Real horizon, complex_type amplitude = Real(1)) {
        if (!(horizon > Real(0))) throw std::invalid_argument("probe: horizon must be positive");
        basic_scalar_signal s;
        s.breakpoints_ = {Real(0), horizon};
        s.values_ = {amplitude};
        s.mu_ = mu;
        return s;
    }

    static basic_scalar_signal constant(Real horizon, complex_type value) {
        return basic_scalar_signal({Real(0), horizon}, {value});
    }

    static basic_scalar_signal zero(Real horizon) { return constant(horizon, Real(0)); }

    bool is_probe() const noexcept { return mu_.has_value(); }
    std::optional<complex_type> probe_rate() const noexcept { return mu_; }
    Real horizon() const noexcept { return breakpoints_.back(); }
    const std::vector<Real>& breakpoints() const noexcept { return breakpoints_; }
    const std::vector<complex_type>& values() const noexcept { return values_; }

    complex_type value_at(Real s) const {
        if (s < Real(0) || s >= horizon()) return Real(0);
        if (mu_) return values_[0] * std::exp(-*mu_ * s);
        const auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), s);
        return values_[static_cast<std::size_t>(it - breakpoints_.begin()) - 1];
    }

    /// sup_{s in [0, t)} |u(s)|.
    Real sup_norm(Real t = std::numeric_limits<Real>::infinity()) const {
        if (mu_) {
            const Real a = std::abs(values_[0]);
            if (mu_->real() >= Real(0)) return a;
            const Real end = std::min(t, horizon());
            return std::isinf(static_cast<double>(end)) ? std::numeric_limits<Real>::infinity()
                                                        : a * std::exp(-mu_->real() * end);
        }
        Real m = 0;
        for (std::size_t k = 0; k < values_.size() && breakpoints_[k] < t; ++k) m = std::max(m, std::abs(values_[k]));
        return m;
    }

    /// Time reversal s -> horizon - s (piecewise-constant channels only).
    basic_scalar_signal reversed() const {
        if (mu_) throw std::invalid_argument("reversed: probe signals are not supported");
        const Real h = horizon();
        std::vector<Real> b(breakpoints_.size());
        std::vector<complex_type> v(values_.rbegin(), values_.rend());
        for (std::size_t k = 0; k < b.size(); ++k) b[k] = h - breakpoints_[breakpoints_.size() - 1 - k];
        b.front() = Real(0);
        b.back() = h;
        return basic_scalar_signal(std::move(b), std::move(v));
    }

    /// s -> u(c s) on [0, horizon / c].
    basic_scalar_signal time_scaled(Real c) const {
        if (!(c > Real(0))) throw std::invalid_argument("time_scaled: factor must be positive");
        if (mu_) return probe(*mu_ * c, horizon() / c, values_[0]);
        std::vector<Real> b(breakpoints_);
        for (auto& x : b) x /= c;
        return basic_scalar_signal(std::move(b), values_);
    }

private:
    std::vector<Real> breakpoints_{Real(0), Real(1)};
    std::vector<complex_type> values_{complex_type(0)};
    std::optional<complex_type> mu_;
};

using scalar_signal = basic_scalar_signal<double>;

/// Input space of a signal: U = C^m with the Euclidean norm, or U = X with one channel per mode.
enum class layout { input_channels, per_mode };

template <class Real = double>
class basic_piecewise_signal {
public:
    using channel_type = basic_scalar_signal<Real>;

    basic_piecewise_signal() = default;

    /// `weights` give the X-norm for the per-mode layout; ignored for input channels.
    basic_piecewise_signal(signals::layout l, std::vector<channel_type> channels, std::vector<Real> weights = {})
        : layout_(l), channels_(std::move(channels)), weights_(std::move(weights)) {
        if (channels_.empty()) throw std::invalid_argument("piecewise_signal: no channels");
        for (const auto& c : channels_) {
            if (c.horizon() != channels_.front().horizon()) {
                throw std::invalid_argument("piecewise_signal: channels must share the horizon");
            }
        }
        if (weights_.empty()) weights_.assign(channels_.size(), Real(1));
        if (weights_.size() != channels_.size()) {
            throw std::invalid_argument("piecewise_signal: weights must match channel count");
        }
        if (l == layout::input_channels) std::fill(weights_.begin(), weights_.end(), Real(1));
    }

    static basic_piecewise_signal scalar(channel_type c) { return basic_piecewise_signal(layout::input_channels, {std::move(c)}); }

    signals::layout layout() const noexcept { return layout_; }
    std::size_t channel_count() const noexcept { return channels_.size(); }
    const channel_type& channel(std::size_t i) const { return channels_.at(i); }
    const std::vector<channel_type>& channels() const noexcept { return channels_; }
    const std::vector<Real>& weights() const noexcept { return weights_; }
    Real horizon() const { return channels_.front().horizon(); }

    /// ||u||_{L^inf(0, t; U)} by a sweep over the union of breakpoints.
    Real sup_norm(Real t = std::numeric_limits<Real>::infinity()) const {
        bool any_probe = false;
        for (const auto& c : channels_) any_probe = any_probe || c.is_probe();
        if (any_probe) {
            // Probes are monotone in |u|; bound channelwise.
            Real s = 0;
            for (std::size_t i = 0; i < channels_.size(); ++i) {
                const Real m = channels_[i].sup_norm(t);
                s += weights_[i] * m * m;
            }
            return std::sqrt(s);
        }
        struct event {
            Real time;
            std::size_t channel;
            Real value;  // |v|^2 from this time on
        };
        std::vector<event> events;
        for (std::size_t i = 0; i < channels_.size(); ++i) {
            const auto& c = channels_[i];
            for (std::size_t k = 0; k < c.values().size(); ++k) {
                if (c.breakpoints()[k] >= t) break;
                events.push_back({c.breakpoints()[k], i, std::norm(c.values()[k])});
            }
        }
        std::stable_sort(events.begin(), events.end(), [](const event& a, const event& b) { return a.time < b.time; });
        std::vector<Real> current(channels_.size(), Real(0));
        Real total = 0;
        Real best = 0;
        for (std::size_t e = 0; e < events.size();) {
            const Real time = events[e].time;
            for (; e < events.size() && events[e].time == time; ++e) {
                const auto& ev = events[e];
                total += weights_[ev.channel] * (ev.value - current[ev.channel]);
                current[ev.channel] = ev.value;
            }
            best = std::max(best, total);
        }
        return std::sqrt(std::max(best, Real(0)));
    }

    /// Pointwise |u(s)|_U.
    Real norm_at(Real s) const {
        Real acc = 0;
        for (std::size_t i = 0; i < channels_.size(); ++i) acc += weights_[i] * std::norm(channels_[i].value_at(s));
        return std::sqrt(acc);
    }

    /// Union of breakpoints of all channels up to `t`, with `t` appended.
    std::vector<Real> merged_breakpoints(Real t) const {
        std::vector<Real> out;
        for (const auto& c : channels_) {
            for (Real b : c.breakpoints()) {
                if (b < t) out.push_back(b);
            }
        }
        out.push_back(t);
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
        return out;
    }

private:
    signals::layout layout_ = layout::input_channels;
    std::vector<channel_type> channels_{channel_type{}};
    std::vector<Real> weights_{Real(1)};
};

using piecewise_signal = basic_piecewise_signal<double>;

}  // namespace admlab::signals
