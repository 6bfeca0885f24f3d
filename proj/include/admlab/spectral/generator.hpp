#pragma once

#include <admlab/core/numeric.hpp>

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace admlab::spectral {

/// Finite truncation of a diagonal generator A e_n = lambda_n e_n on a weighted l^2 space,
/// ||x||^2 = sum_n w_n |x_n|^2. All eigenvalues lie in the open left half-plane.
template <class Real = double>
class basic_diagonal_generator {
public:
    using real_type = Real;
    using complex_type = std::complex<Real>;

    basic_diagonal_generator() = default;

    explicit basic_diagonal_generator(std::vector<complex_type> eigenvalues, std::vector<Real> weights = {},
                                      std::optional<complex_type> beta = std::nullopt)
        : eigenvalues_(std::move(eigenvalues)), weights_(std::move(weights)) {
        if (eigenvalues_.empty()) throw std::invalid_argument("diagonal_generator: empty spectrum");
        if (weights_.empty()) weights_.assign(eigenvalues_.size(), Real(1));
        if (weights_.size() != eigenvalues_.size()) {
            throw std::invalid_argument("diagonal_generator: weights and eigenvalues differ in length");
        }
        for (std::size_t n = 0; n < eigenvalues_.size(); ++n) {
            const auto& l = eigenvalues_[n];
            if (!(l.real() < Real(0)) || !std::isfinite(static_cast<double>(l.imag()))) {
                throw std::invalid_argument("diagonal_generator: eigenvalue " + std::to_string(n) +
                                            " is not in the open left half-plane");
            }
            if (!(weights_[n] > Real(0)) || !std::isfinite(static_cast<double>(weights_[n]))) {
                throw std::invalid_argument("diagonal_generator: weights must be positive");
            }
        }
        if (beta) {
            beta_ = *beta;
        } else {
            Real inf_abs = std::abs(eigenvalues_[0]);
            for (const auto& l : eigenvalues_) inf_abs = std::min(inf_abs, std::abs(l));
            beta_ = inf_abs > Real(0) ? complex_type(0) : complex_type(1);
        }
        for (const auto& l : eigenvalues_) {
            if (std::abs(beta_ - l) <= Real(1e-12) * (Real(1) + std::abs(beta_))) {
                throw std::invalid_argument("diagonal_generator: reference point beta lies on the spectrum");
            }
        }
    }

    /// lambda_n = -|base| * n^exponent * e^{i angle}, n = 1..count.
    static basic_diagonal_generator ray(Real base, Real exponent, Real angle, std::size_t count) {
        if (!(std::abs(angle) < std::numbers::pi_v<Real> / 2)) {
            throw std::invalid_argument("ray: |angle| must be below pi/2");
        }
        std::vector<complex_type> eig(count);
        const complex_type dir = std::polar(Real(1), angle);
        for (std::size_t n = 1; n <= count; ++n) {
            eig[n - 1] = -std::abs(base) * std::pow(static_cast<Real>(n), exponent) * dir;
        }
        return basic_diagonal_generator(std::move(eig));
    }

    std::size_t size() const noexcept { return eigenvalues_.size(); }
    const std::vector<complex_type>& eigenvalues() const noexcept { return eigenvalues_; }
    const std::vector<Real>& weights() const noexcept { return weights_; }
    complex_type eigenvalue(std::size_t n) const { return eigenvalues_.at(n); }
    Real weight(std::size_t n) const { return weights_.at(n); }
    complex_type beta() const noexcept { return beta_; }

    /// delta = min_n |Re lambda_n|; ||T(t)|| <= e^{-delta t} in the weighted norm.
    Real stability_margin() const {
        Real d = -eigenvalues_[0].real();
        for (const auto& l : eigenvalues_) d = std::min(d, -l.real());
        return d;
    }

    /// sup_n |arg(-lambda_n)|.
    Real sector_angle() const {
        Real a = 0;
        for (const auto& l : eigenvalues_) a = std::max(a, std::abs(std::arg(-l)));
        return a;
    }

    bool is_analytic() const { return sector_angle() < std::numbers::pi_v<Real> / 2; }

    Real max_abs_eigenvalue() const {
        Real m = 0;
        for (const auto& l : eigenvalues_) m = std::max(m, std::abs(l));
        return m;
    }

    /// Keep the first n modes.
    basic_diagonal_generator truncated(std::size_t n) const {
        n = std::min(n, size());
        return basic_diagonal_generator({eigenvalues_.begin(), eigenvalues_.begin() + static_cast<long>(n)},
                                        {weights_.begin(), weights_.begin() + static_cast<long>(n)}, beta_);
    }

private:
    std::vector<complex_type> eigenvalues_;
    std::vector<Real> weights_;
    complex_type beta_{0};
};

using diagonal_generator = basic_diagonal_generator<double>;

}  // namespace admlab::spectral
