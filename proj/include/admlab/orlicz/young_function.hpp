#pragma once

#include <admlab/core/error.hpp>
#include <admlab/core/numeric.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

namespace admlab::orlicz {

enum class density_kind { power, constant };

/// One piece of the density phi = Phi' on [x0, next x0).
/// power:    phi(x) = c * x^r   (absolute x, c > 0, r > 0)
/// constant: phi(x) = c
struct young_segment {
    double x0 = 0.0;
    density_kind kind = density_kind::power;
    double c = 1.0;
    double r = 1.0;

    friend bool operator==(const young_segment&, const young_segment&) = default;
};

/// Young function Phi(x) = int_0^x phi, with phi piecewise power/constant and nondecreasing.
///
/// The first segment must be a power segment (so Phi(x)/x -> 0 at 0). The last segment must be
/// unbounded (power) unless `asymptotic_growth` is set, which records that the caller vouches for
/// superlinear growth beyond the represented range.
class young_function {
public:
    young_function() : young_function({young_segment{0.0, density_kind::power, 2.0, 1.0}}) {}

    explicit young_function(std::vector<young_segment> segments, bool asymptotic_growth = false)
        : segments_(std::move(segments)), asymptotic_growth_(asymptotic_growth) {
        validate();
        cumulative_.resize(segments_.size());
        cumulative_[0] = 0.0;
        for (std::size_t i = 1; i < segments_.size(); ++i) {
            cumulative_[i] = cumulative_[i - 1] + piece_integral(i - 1, segments_[i].x0);
        }
    }

    /// Phi(x) = coef * x^p, p > 1.
    static young_function power_law(double coef, double p) {
        if (!(p > 1.0) || !(coef > 0.0)) {
            throw std::invalid_argument("power_law: need coef > 0 and p > 1");
        }
        return young_function({young_segment{0.0, density_kind::power, coef * p, p - 1.0}});
    }

    const std::vector<young_segment>& segments() const noexcept { return segments_; }
    bool asymptotic_growth() const noexcept { return asymptotic_growth_; }
    bool last_segment_bounded() const noexcept {
        return segments_.back().kind == density_kind::constant;
    }

    double operator()(double x) const {
        if (!(x > 0.0)) return 0.0;
        if (std::isinf(x)) return inf;
        const std::size_t i = segment_index(x);
        return cumulative_[i] + piece_integral(i, x);
    }

    /// phi(x), right-continuous.
    double density(double x) const {
        if (x < 0.0) return 0.0;
        const auto& s = segments_[segment_index(x)];
        return s.kind == density_kind::constant ? s.c : s.c * std::pow(x, s.r);
    }

    /// Left limit phi(x^-).
    double density_left(double x) const {
        if (!(x > 0.0)) return 0.0;
        std::size_t i = segment_index(x);
        if (segments_[i].x0 == x && i > 0) --i;
        const auto& s = segments_[i];
        return s.kind == density_kind::constant ? s.c : s.c * std::pow(x, s.r);
    }

    /// Smallest x with Phi(x) >= y.
    double inverse(double y) const {
        if (!(y > 0.0)) return 0.0;
        const auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), y);
        const std::size_t i = static_cast<std::size_t>(it - cumulative_.begin()) - 1;
        const auto& s = segments_[i];
        const double rest = y - cumulative_[i];
        if (s.kind == density_kind::constant) return s.x0 + rest / s.c;
        const double e = s.r + 1.0;
        return std::pow(rest * e / s.c + std::pow(s.x0, e), 1.0 / e);
    }

    /// log Phi(e^t), usable far beyond the double range of Phi itself.
    double log_eval(double log_x) const {
        if (log_x < 600.0) {
            const double v = (*this)(std::exp(log_x));
            if (std::isfinite(v)) return v > 0.0 ? std::log(v) : -inf;
        }
        std::size_t i = segments_.size() - 1;
        while (i > 0 && std::log(segments_[i].x0) > log_x) --i;
        const auto [alpha, beta, e] = affine_power_form(i);
        // Phi(x) = alpha + beta x^e with beta x^e dominating.
        const double log_main = std::log(beta) + e * log_x;
        return log_main + std::log1p(alpha * std::exp(-log_main));
    }

    /// int_lo^hi Phi(y) y^q dy in closed form; hi may be +inf. Returns +inf when divergent.
    double integral_times_power(double lo, double hi, double q) const {
        if (!(hi > lo)) return 0.0;
        double total = 0.0;
        for (std::size_t i = 0; i < segments_.size(); ++i) {
            const double a = segments_[i].x0;
            const double b = i + 1 < segments_.size() ? segments_[i + 1].x0 : inf;
            const double s = std::max(lo, a);
            const double e = std::min(hi, b);
            if (!(e > s)) continue;
            const auto [alpha, beta, ex] = affine_power_form(i);
            if (alpha != 0.0) total += alpha * power_integral(s, e, q);
            total += beta * power_integral(s, e, q + ex);
            if (std::isinf(total)) return inf;
        }
        return total;
    }

    friend bool operator==(const young_function& a, const young_function& b) {
        return a.segments_ == b.segments_ && a.asymptotic_growth_ == b.asymptotic_growth_;
    }

private:
    struct affine_power {
        double alpha;
        double beta;
        double exponent;
    };

    // On segment i: Phi(y) = alpha + beta * y^exponent.
    affine_power affine_power_form(std::size_t i) const {
        const auto& s = segments_[i];
        if (s.kind == density_kind::constant) {
            const double alpha = i == 0 ? 0.0 : cumulative_[i] - s.c * s.x0;
            return {alpha, s.c, 1.0};
        }
        const double e = s.r + 1.0;
        const double beta = s.c / e;
        const double alpha = i == 0 ? 0.0 : cumulative_[i] - beta * std::pow(s.x0, e);
        return {alpha, beta, e};
    }

    static double power_integral(double s, double e, double p) {
        if (p == -1.0) {
            if (s <= 0.0 || std::isinf(e)) return inf;
            return std::log(e / s);
        }
        const double p1 = p + 1.0;
        if (std::isinf(e)) {
            if (p1 >= 0.0) return inf;
            return -std::pow(s, p1) / p1;
        }
        if (s <= 0.0) {
            if (p1 <= 0.0) return inf;
            return std::pow(e, p1) / p1;
        }
        return (std::pow(e, p1) - std::pow(s, p1)) / p1;
    }

    std::size_t segment_index(double x) const {
        const auto it = std::upper_bound(segments_.begin(), segments_.end(), x,
                                         [](double v, const young_segment& s) { return v < s.x0; });
        return static_cast<std::size_t>(it - segments_.begin()) - 1;
    }

    // int_{x0_i}^{x} phi on segment i.
    double piece_integral(std::size_t i, double x) const {
        const auto& s = segments_[i];
        if (s.kind == density_kind::constant) return s.c * (x - s.x0);
        const double e = s.r + 1.0;
        return s.c / e * (std::pow(x, e) - std::pow(s.x0, e));
    }

    void validate() const {
        if (segments_.empty()) throw std::invalid_argument("young_function: no segments");
        if (segments_[0].x0 != 0.0) throw std::invalid_argument("young_function: first breakpoint must be 0");
        if (segments_[0].kind != density_kind::power) {
            throw std::invalid_argument("young_function: first segment must be a power density (Phi(x)/x -> 0)");
        }
        for (std::size_t i = 0; i < segments_.size(); ++i) {
            const auto& s = segments_[i];
            if (!std::isfinite(s.x0) || !std::isfinite(s.c) || !(s.c > 0.0)) {
                throw std::invalid_argument("young_function: segment " + std::to_string(i) + " needs finite x0 and c > 0");
            }
            if (s.kind == density_kind::power && !(s.r > 0.0 && std::isfinite(s.r))) {
                throw std::invalid_argument("young_function: segment " + std::to_string(i) + " needs r > 0");
            }
            if (i > 0) {
                const auto& p = segments_[i - 1];
                if (!(s.x0 > p.x0)) throw std::invalid_argument("young_function: breakpoints must increase");
                const double left = p.kind == density_kind::constant ? p.c : p.c * std::pow(s.x0, p.r);
                const double right = s.kind == density_kind::constant ? s.c : s.c * std::pow(s.x0, s.r);
                if (right < left * (1.0 - 1e-12)) {
                    throw std::invalid_argument("young_function: density decreases at breakpoint " + std::to_string(i));
                }
            }
        }
        if (segments_.back().kind == density_kind::constant && !asymptotic_growth_) {
            throw std::invalid_argument(
                "young_function: bounded final density needs the asymptotic-growth flag (Phi(x)/x -> inf)");
        }
    }

    std::vector<young_segment> segments_;
    bool asymptotic_growth_ = false;
    std::vector<double> cumulative_;
};

/// Phi~(y) = sup_x (xy - Phi(x)), exact in the segment representation: the generalized inverse of
/// a power density is a power density, density jumps become constant pieces and vice versa.
inline young_function complementary(const young_function& phi) {
    const auto& segs = phi.segments();
    if (phi.last_segment_bounded()) {
        throw unsupported_error(
            "complementary: final density is bounded, so the conjugate is +inf beyond a finite argument");
    }
    std::vector<young_segment> out;
    double prev_end = 0.0;  // phi(a^-) of the current segment
    for (std::size_t i = 0; i < segs.size(); ++i) {
        const auto& s = segs[i];
        const double a = s.x0;
        const bool last = i + 1 == segs.size();
        const double b = last ? inf : segs[i + 1].x0;
        const double v_lo = s.kind == density_kind::constant ? s.c : s.c * std::pow(a, s.r);
        if (v_lo > prev_end) {
            // Density jump of phi at a: the inverse is flat (= a) on [prev_end, v_lo).
            out.push_back({prev_end, density_kind::constant, a, 0.0});
        }
        if (s.kind == density_kind::power) {
            out.push_back({v_lo, density_kind::power, std::pow(s.c, -1.0 / s.r), 1.0 / s.r});
            prev_end = last ? inf : s.c * std::pow(b, s.r);
        } else {
            prev_end = s.c;
        }
    }
    // Merge zero-length pieces that can appear from float coincidences.
    std::vector<young_segment> merged;
    for (const auto& s : out) {
        if (!merged.empty() && !(s.x0 > merged.back().x0)) {
            merged.back() = s;
        } else {
            merged.push_back(s);
        }
    }
    return young_function(std::move(merged));
}

/// x -> Phi~(x^2) with Phi~ = complementary(psi).
inline young_function compose_sqrt(const young_function& psi) {
    const young_function conj = complementary(psi);
    std::vector<young_segment> out;
    out.reserve(conj.segments().size());
    for (const auto& s : conj.segments()) {
        const double x0 = std::sqrt(s.x0);
        if (s.kind == density_kind::power) {
            // d/dx Phi~(x^2) = 2x * c x^{2r}
            out.push_back({x0, density_kind::power, 2.0 * s.c, 2.0 * s.r + 1.0});
        } else {
            out.push_back({x0, density_kind::power, 2.0 * s.c, 1.0});
        }
    }
    return young_function(std::move(out), conj.asymptotic_growth());
}

}  // namespace admlab::orlicz
