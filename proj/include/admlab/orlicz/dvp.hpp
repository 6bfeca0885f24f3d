#pragma once

#include <admlab/core/error.hpp>
#include <admlab/orlicz/luxemburg.hpp>
#include <admlab/orlicz/sampled_function.hpp>
#include <admlab/orlicz/young_function.hpp>

#include <cmath>
#include <vector>

namespace admlab::orlicz {

struct dvp_result {
    young_function phi;
    std::vector<double> levels;       ///< density breakpoints l_j
    std::vector<double> tail_masses;  ///< a_j = int_{|f| > l_j} |f|
    std::vector<double> slopes;       ///< c_j
    double modular = 0.0;             ///< int Phi(|f|), closed form
    double modular_quadrature = 0.0;  ///< same, singular head by escalated quadrature
};

/// de la Vallee-Poussin construction of a Young function with int Phi(|f|) < inf.
///
/// Levels are the integers 0..64, then doubling up to 2^62. On [l_j, l_{j+1}) the density is the
/// constant c_j = min(l_j + 1, a_j^{-1/2}); on [0, 1) it is c_0 x so that Phi(x)/x -> 0. Beyond the
/// last level the density grows like x^eps with eps small enough to keep a power-law head integrable.
/// Since Phi(x)/x <= phi(x), int Phi(|f|) <= sum_j c_j (a_j - a_{j+1}) <= 2 sqrt(a_0).
inline dvp_result dvp_construct(const sampled_function& f, double tau) {
    if (!(tau > 0.0)) throw std::invalid_argument("dvp_construct: tau must be positive");
    const double l1 = f.l1_norm();
    if (!std::isfinite(l1)) throw std::domain_error("dvp_construct: f is not integrable (tail masses diverge)");
    if (f.head() && f.head()->coef > 0.0 && f.head()->exponent < 0.0 && tau < f.grid().front()) {
        throw std::invalid_argument("dvp_construct: f must be bounded on (tau, inf)");
    }

    dvp_result out;
    if (f.is_zero()) {
        out.phi = young_function::power_law(1.0, 2.0);
        return out;
    }

    std::vector<double> levels{0.0};
    for (int j = 1; j <= 64; ++j) levels.push_back(j);
    for (double l = 128.0; l <= 0x1p62; l *= 2.0) levels.push_back(l);

    std::vector<double> masses;
    std::vector<double> slopes;
    for (double l : levels) {
        const double a = f.level_mass(l);
        masses.push_back(a);
        const double c = a > 0.0 ? std::min(l + 1.0, 1.0 / std::sqrt(a)) : l + 1.0;
        slopes.push_back(slopes.empty() ? c : std::max(c, slopes.back()));
        if (a == 0.0) break;
    }
    levels.resize(masses.size());

    double eps = 1.0;
    if (f.head() && f.head()->coef > 0.0 && f.head()->exponent < 0.0) {
        // Phi(y) ~ y^{1+eps} at infinity; need (1 + eps) * exponent > -1.
        eps = std::min(1.0, 0.5 * (-1.0 / f.head()->exponent - 1.0));
    }

    std::vector<young_segment> segs;
    segs.push_back({0.0, density_kind::power, slopes[0], 1.0});
    for (std::size_t j = 1; j + 1 < levels.size(); ++j) {
        segs.push_back({levels[j], density_kind::constant, slopes[j], 0.0});
    }
    const double last = std::max(levels.back(), 1.0);
    const double c_last = slopes.back();
    segs.push_back({last, density_kind::power, c_last * std::pow(last, -eps), eps});

    out.phi = young_function(std::move(segs));
    out.levels = levels;
    out.tail_masses = masses;
    out.slopes = slopes;
    out.modular = f.modular(out.phi, 1.0);
    out.modular_quadrature = escalated_modular(out.phi, f, 1.0, 1e12).value;
    if (!std::isfinite(out.modular)) {
        throw convergence_error("dvp_construct: constructed Phi has divergent modular");
    }
    return out;
}

}  // namespace admlab::orlicz
