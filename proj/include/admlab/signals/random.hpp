#pragma once

#include <admlab/signals/integrals.hpp>
#include <admlab/signals/signal.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <vector>

namespace admlab::signals {

/// Random piecewise-constant input on [0, t] with `pieces` pieces at random breakpoints and
/// pointwise |u(s)|_U <= amplitude.
template <class Rng>
piecewise_signal random_signal(Rng& rng, double t, std::size_t pieces, std::size_t channels, scalar_field field,
                               double amplitude = 1.0) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<scalar_signal> out;
    out.reserve(channels);
    for (std::size_t c = 0; c < channels; ++c) {
        std::vector<double> b{0.0};
        for (std::size_t k = 1; k < pieces; ++k) b.push_back(t * unit(rng));
        b.push_back(t);
        std::sort(b.begin(), b.end());
        b.erase(std::unique(b.begin(), b.end()), b.end());
        std::vector<cplx> v;
        for (std::size_t k = 0; k + 1 < b.size(); ++k) {
            const double r = amplitude * unit(rng) / std::sqrt(static_cast<double>(channels));
            if (field == scalar_field::real) v.emplace_back(unit(rng) < 0.5 ? -r : r, 0.0);
            else v.push_back(std::polar(r, 2.0 * std::numbers::pi * unit(rng)));
        }
        out.emplace_back(std::move(b), std::move(v));
    }
    return piecewise_signal(layout::input_channels, std::move(out));
}

}  // namespace admlab::signals
