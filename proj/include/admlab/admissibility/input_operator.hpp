#pragma once

#include <admlab/signals/integrals.hpp>
#include <admlab/signals/signal.hpp>
#include <admlab/spectral/generator.hpp>
#include <admlab/spectral/ops.hpp>
#include <admlab/spectral/vector.hpp>

#include <complex>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace admlab::admissibility {

enum class input_kind { columns, a_minus_one_x0, full_diagonal };

inline std::string_view to_string(input_kind k) {
    switch (k) {
        case input_kind::columns: return "columns";
        case input_kind::a_minus_one_x0: return "a_minus_one_x0";
        case input_kind::full_diagonal: return "full_diagonal";
    }
    return "?";
}

/// B in L(U, X_{-1}): explicit columns (U = C^m), B = A_{-1} x0 (U = C), or B = A_{-1} (U = X).
template <class Real = double>
class basic_input_operator {
public:
    using vector_type = spectral::basic_spectral_vector<Real>;
    using generator_type = spectral::basic_diagonal_generator<Real>;

    static basic_input_operator columns(std::vector<vector_type> cols) {
        if (cols.empty()) throw std::invalid_argument("input_operator: no columns");
        basic_input_operator b;
        b.kind_ = input_kind::columns;
        b.cols_ = std::move(cols);
        for (auto& c : b.cols_) c.tag = spectral::scale::xm1;
        return b;
    }

    static basic_input_operator a_minus_one(vector_type x0) {
        basic_input_operator b;
        b.kind_ = input_kind::a_minus_one_x0;
        x0.tag = spectral::scale::x;
        b.x0_ = std::move(x0);
        return b;
    }

    static basic_input_operator full_diagonal() {
        basic_input_operator b;
        b.kind_ = input_kind::full_diagonal;
        return b;
    }

    input_kind kind() const noexcept { return kind_; }
    const vector_type& x0() const noexcept { return x0_; }

    std::size_t input_dim(const generator_type& a) const {
        switch (kind_) {
            case input_kind::columns: return cols_.size();
            case input_kind::a_minus_one_x0: return 1;
            case input_kind::full_diagonal: return a.size();
        }
        return 0;
    }

    /// Column j as an X_{-1} coefficient vector.
    vector_type column(const generator_type& a, std::size_t j) const {
        switch (kind_) {
            case input_kind::columns: {
                auto c = cols_.at(j);
                spectral::check_aligned(a, c);
                return c;
            }
            case input_kind::a_minus_one_x0: {
                if (j != 0) throw std::out_of_range("input_operator: B = A_{-1} x0 has a single column");
                spectral::check_aligned(a, x0_);
                return spectral::generator_apply(a, x0_);
            }
            case input_kind::full_diagonal: {
                auto e = vector_type::unit(a.size(), j, spectral::scale::xm1);
                e.coeffs[j] = a.eigenvalue(j);
                return e;
            }
        }
        throw std::logic_error("input_operator: unknown kind");
    }

    /// Column j written as A_{-1} x0_j (always possible at finite truncation).
    vector_type preimage(const generator_type& a, std::size_t j) const {
        if (kind_ == input_kind::a_minus_one_x0) return x0_;
        auto b = column(a, j);
        for (std::size_t n = 0; n < b.size(); ++n) b.coeffs[n] /= a.eigenvalue(n);
        b.tag = spectral::scale::x;
        return b;
    }

    bool is_zero(const generator_type& a) const {
        if (kind_ == input_kind::full_diagonal) return false;
        for (std::size_t j = 0; j < input_dim(a); ++j) {
            for (const auto& c : column(a, j).coeffs) {
                if (c != std::complex<Real>(0)) return false;
            }
        }
        return true;
    }

private:
    input_kind kind_ = input_kind::columns;
    std::vector<vector_type> cols_;
    vector_type x0_;
};

using input_operator = basic_input_operator<double>;

namespace detail {

template <class Real>
void check_layout(const spectral::basic_diagonal_generator<Real>& a, const basic_input_operator<Real>& b,
                  const signals::basic_piecewise_signal<Real>& u) {
    const bool per_mode = b.kind() == input_kind::full_diagonal;
    if (per_mode != (u.layout() == signals::layout::per_mode)) {
        throw std::invalid_argument(per_mode ? "B = A_{-1} needs a per-mode signal (U = X)"
                                             : "column input operators need an input-channel signal (U = C^m)");
    }
    if (u.channel_count() != b.input_dim(a)) {
        throw std::invalid_argument("signal has " + std::to_string(u.channel_count()) + " channels, B expects " +
                                    std::to_string(b.input_dim(a)));
    }
}

}  // namespace detail

/// Phi_t u = int_0^t T_{-1}(s) B u(s) ds, exact per mode.
template <class Real>
spectral::basic_spectral_vector<Real> input_map(const spectral::basic_diagonal_generator<Real>& a,
                                                const basic_input_operator<Real>& b,
                                                const signals::basic_piecewise_signal<Real>& u, Real t) {
    detail::check_layout(a, b, u);
    const std::size_t n_modes = a.size();
    spectral::basic_spectral_vector<Real> out{std::vector<std::complex<Real>>(n_modes), spectral::scale::x};
    if (b.kind() == input_kind::full_diagonal) {
        for (std::size_t n = 0; n < n_modes; ++n) {
            out.coeffs[n] = a.eigenvalue(n) * signals::mode_integral(a.eigenvalue(n), u.channel(n), t);
        }
        return out;
    }
    for (std::size_t j = 0; j < u.channel_count(); ++j) {
        const auto col = b.column(a, j);
        for (std::size_t n = 0; n < n_modes; ++n) {
            if (col.coeffs[n] == std::complex<Real>(0)) continue;
            out.coeffs[n] += col.coeffs[n] * signals::mode_integral(a.eigenvalue(n), u.channel(j), t);
        }
    }
    return out;
}

/// Mild solution x(t) = T(t) x0 + int_0^t T_{-1}(t - s) B u(s) ds.
template <class Real>
spectral::basic_spectral_vector<Real> state_at(const spectral::basic_diagonal_generator<Real>& a,
                                               const basic_input_operator<Real>& b,
                                               const spectral::basic_spectral_vector<Real>& x0,
                                               const signals::basic_piecewise_signal<Real>& u, Real t) {
    detail::check_layout(a, b, u);
    auto out = spectral::semigroup_apply(a, t, x0);
    out.tag = spectral::scale::x;
    if (b.kind() == input_kind::full_diagonal) {
        for (std::size_t n = 0; n < a.size(); ++n) {
            out.coeffs[n] += a.eigenvalue(n) * signals::convolution_integral(a.eigenvalue(n), u.channel(n), t);
        }
        return out;
    }
    for (std::size_t j = 0; j < u.channel_count(); ++j) {
        const auto col = b.column(a, j);
        for (std::size_t n = 0; n < a.size(); ++n) {
            if (col.coeffs[n] == std::complex<Real>(0)) continue;
            out.coeffs[n] += col.coeffs[n] * signals::convolution_integral(a.eigenvalue(n), u.channel(j), t);
        }
    }
    return out;
}

}  // namespace admlab::admissibility
