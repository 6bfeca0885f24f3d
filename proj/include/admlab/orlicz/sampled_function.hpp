#pragma once

#include <admlab/core/numeric.hpp>
#include <admlab/orlicz/young_function.hpp>

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <vector>

namespace admlab::orlicz {

/// |f(s)| = coef * s^exponent on (0, grid.front()].
struct power_head {
    double coef = 0.0;
    double exponent = 0.0;
};

/// |f(s)| = amplitude * exp(-rate (s - grid.back())) on [grid.back(), inf).
struct exponential_tail {
    double amplitude = 0.0;
    double rate = 1.0;
};

/// Nonnegative function on an interval, piecewise constant on a grid, with optional closed-form
/// singular head at 0 and exponential tail at infinity.
///
/// values[i] holds the value on [grid[i], grid[i+1]).
class sampled_function {
public:
    sampled_function() = default;

    sampled_function(std::vector<double> grid, std::vector<double> values,
                     std::optional<power_head> head = std::nullopt,
                     std::optional<exponential_tail> tail = std::nullopt)
        : grid_(std::move(grid)), values_(std::move(values)), head_(head), tail_(tail) {
        if (grid_.size() < 2 || values_.size() + 1 != grid_.size()) {
            throw std::invalid_argument("sampled_function: need grid.size() == values.size() + 1 >= 2");
        }
        if (grid_.front() < 0.0) throw std::invalid_argument("sampled_function: grid must lie in [0, inf)");
        for (std::size_t i = 1; i < grid_.size(); ++i) {
            if (!(grid_[i] > grid_[i - 1]) || !std::isfinite(grid_[i])) {
                throw std::invalid_argument("sampled_function: grid must be finite and strictly increasing");
            }
        }
        for (double v : values_) {
            if (!(v >= 0.0) || !std::isfinite(v)) {
                throw std::invalid_argument("sampled_function: values must be finite and >= 0");
            }
        }
        if (head_) {
            if (!(grid_.front() > 0.0)) throw std::invalid_argument("sampled_function: head needs grid.front() > 0");
            if (!(head_->coef >= 0.0) || !std::isfinite(head_->exponent)) {
                throw std::invalid_argument("sampled_function: head needs coef >= 0 and finite exponent");
            }
        }
        if (tail_) {
            if (!(tail_->rate > 0.0) || !(tail_->amplitude >= 0.0) || !std::isfinite(tail_->amplitude)) {
                throw std::invalid_argument("sampled_function: tail needs rate > 0 and finite amplitude >= 0");
            }
        }
    }

    /// Piecewise-constant function with the given values on a uniform grid over [a, b].
    static sampled_function uniform(double a, double b, std::vector<double> values) {
        auto grid = linspace(a, b, values.size() + 1);
        return sampled_function(std::move(grid), std::move(values));
    }

    const std::vector<double>& grid() const noexcept { return grid_; }
    const std::vector<double>& values() const noexcept { return values_; }
    const std::optional<power_head>& head() const noexcept { return head_; }
    const std::optional<exponential_tail>& tail() const noexcept { return tail_; }

    double start() const noexcept { return head_ ? 0.0 : grid_.front(); }
    double end() const noexcept { return tail_ ? inf : grid_.back(); }
    double measure() const noexcept { return end() - start(); }

    bool is_zero() const {
        const bool body = std::all_of(values_.begin(), values_.end(), [](double v) { return v == 0.0; });
        return body && (!head_ || head_->coef == 0.0) && (!tail_ || tail_->amplitude == 0.0);
    }

    double value_at(double s) const {
        if (head_ && s > 0.0 && s <= grid_.front()) return head_->coef * std::pow(s, head_->exponent);
        if (s >= grid_.back()) {
            if (tail_) return tail_->amplitude * std::exp(-tail_->rate * (s - grid_.back()));
            return 0.0;
        }
        if (s < grid_.front()) return 0.0;
        const auto it = std::upper_bound(grid_.begin(), grid_.end(), s);
        return values_[static_cast<std::size_t>(it - grid_.begin()) - 1];
    }

    double sup_norm() const {
        double m = values_.empty() ? 0.0 : *std::max_element(values_.begin(), values_.end());
        if (head_ && head_->coef > 0.0) {
            if (head_->exponent < 0.0) return inf;
            m = std::max(m, head_->coef * std::pow(grid_.front(), head_->exponent));
        }
        if (tail_) m = std::max(m, tail_->amplitude);
        return m;
    }

    double l1_norm() const { return level_mass(0.0); }

    /// int_{|f| > level} |f|.
    double level_mass(double level) const {
        std::vector<double> parts;
        parts.reserve(values_.size() + 2);
        for (std::size_t i = 0; i < values_.size(); ++i) {
            if (values_[i] > level) parts.push_back(values_[i] * (grid_[i + 1] - grid_[i]));
        }
        if (head_ && head_->coef > 0.0) {
            const double a = head_->exponent;
            const double c = head_->coef;
            const double t0 = grid_.front();
            if (a <= -1.0) return inf;
            double lo = 0.0;
            double hi = t0;
            if (level > 0.0) {
                const double s_star = std::pow(level / c, 1.0 / a);
                if (a < 0.0) hi = std::min(t0, s_star);
                else if (a > 0.0) lo = std::min(t0, s_star);
                else if (c <= level) hi = 0.0;
            }
            if (hi > lo) parts.push_back(c * (std::pow(hi, a + 1.0) - std::pow(lo, a + 1.0)) / (a + 1.0));
        }
        if (tail_ && tail_->amplitude > level) parts.push_back((tail_->amplitude - level) / tail_->rate);
        return pairwise_sum(parts);
    }

    /// int Phi(|f| / k).
    double modular(const young_function& phi, double k) const {
        std::vector<double> parts;
        parts.reserve(values_.size() + 2);
        for (std::size_t i = 0; i < values_.size(); ++i) {
            if (values_[i] > 0.0) parts.push_back(phi(values_[i] / k) * (grid_[i + 1] - grid_[i]));
        }
        if (head_ && head_->coef > 0.0) {
            const double part = head_modular(phi, k);
            if (std::isinf(part)) return inf;
            parts.push_back(part);
        }
        if (tail_ && tail_->amplitude > 0.0) {
            // int_0^inf Phi(h e^{-rho x}/k) dx = (1/rho) int_0^{h/k} Phi(y)/y dy
            const double part = phi.integral_times_power(0.0, tail_->amplitude / k, -1.0) / tail_->rate;
            if (std::isinf(part)) return inf;
            parts.push_back(part);
        }
        return pairwise_sum(parts);
    }

    /// The body restricted to [start(), t]; head kept, tail dropped.
    sampled_function restrict_to(double t) const {
        if (t >= grid_.back()) {
            if (!tail_ || t == grid_.back()) return sampled_function(grid_, values_, head_, std::nullopt);
            // Sample the tail as a decreasing step envelope (left values).
            std::vector<double> g = grid_;
            std::vector<double> v = values_;
            const double h = (t - grid_.back()) / 64.0;
            for (int i = 1; i <= 64; ++i) {
                v.push_back(value_at(g.back()));
                g.push_back(grid_.back() + h * i);
            }
            g.back() = t;
            return sampled_function(std::move(g), std::move(v), head_, std::nullopt);
        }
        if (t <= grid_.front()) throw std::invalid_argument("restrict_to: t before grid start");
        std::vector<double> g;
        std::vector<double> v;
        for (std::size_t i = 0; i < values_.size() && grid_[i] < t; ++i) {
            g.push_back(grid_[i]);
            v.push_back(values_[i]);
        }
        g.push_back(t);
        return sampled_function(std::move(g), std::move(v), head_, std::nullopt);
    }

private:
    double head_modular(const young_function& phi, double k) const {
        const double a = head_->exponent;
        const double c = head_->coef;
        const double t0 = grid_.front();
        if (a == 0.0) return t0 * phi(c / k);
        // Substitute y = (c/k) s^a.
        const double scale = std::pow(k / c, 1.0 / a) / std::abs(a);
        const double y_edge = (c / k) * std::pow(t0, a);
        const double q = 1.0 / a - 1.0;
        const double integral = a < 0.0 ? phi.integral_times_power(y_edge, inf, q)
                                        : phi.integral_times_power(0.0, y_edge, q);
        return std::isinf(integral) ? inf : scale * integral;
    }

    std::vector<double> grid_;
    std::vector<double> values_;
    std::optional<power_head> head_;
    std::optional<exponential_tail> tail_;
};

}  // namespace admlab::orlicz
