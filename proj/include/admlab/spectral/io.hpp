#pragma once

#include <admlab/spectral/generator.hpp>
#include <admlab/spectral/vector.hpp>

#include <json.hpp>

#include <complex>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace admlab::spectral {

/// Complex scalar from JSON: a number or a two-element array [re, im].
template <class Real = double>
std::complex<Real> complex_from_json(const nlohmann::json& j) {
    if (j.is_number()) return {static_cast<Real>(j.get<double>()), Real(0)};
    if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
        return {static_cast<Real>(j[0].get<double>()), static_cast<Real>(j[1].get<double>())};
    }
    throw std::invalid_argument("expected a number or [re, im], got " + j.dump());
}

template <class Real>
nlohmann::json complex_to_json(std::complex<Real> z) {
    return nlohmann::json::array({static_cast<double>(z.real()), static_cast<double>(z.imag())});
}

template <class Real = double>
std::vector<std::complex<Real>> complex_list_from_json(const nlohmann::json& j) {
    if (!j.is_array()) throw std::invalid_argument("expected an array of complex numbers");
    std::vector<std::complex<Real>> out;
    out.reserve(j.size());
    for (const auto& e : j) out.push_back(complex_from_json<Real>(e));
    return out;
}

/// {"eigenvalues":[...], "weights":[...], "beta":z} or
/// {"kind":"ray","base":b,"exponent":a,"angle":phi,"count":N}. `modes` overrides the count.
template <class Real = double>
basic_diagonal_generator<Real> generator_from_json(const nlohmann::json& j, std::optional<std::size_t> modes = {}) {
    std::optional<std::complex<Real>> beta;
    if (j.contains("beta")) beta = complex_from_json<Real>(j.at("beta"));
    if (j.value("kind", std::string("explicit")) == "ray") {
        const std::size_t count = modes ? *modes : j.at("count").get<std::size_t>();
        auto g = basic_diagonal_generator<Real>::ray(static_cast<Real>(j.at("base").get<double>()),
                                                     static_cast<Real>(j.value("exponent", 1.0)),
                                                     static_cast<Real>(j.value("angle", 0.0)), count);
        if (beta || j.contains("weights")) {
            std::vector<Real> w;
            if (j.contains("weights")) {
                for (double x : j.at("weights").get<std::vector<double>>()) w.push_back(static_cast<Real>(x));
            }
            return basic_diagonal_generator<Real>(g.eigenvalues(), std::move(w), beta);
        }
        return g;
    }
    auto eig = complex_list_from_json<Real>(j.at("eigenvalues"));
    std::vector<Real> w;
    if (j.contains("weights")) {
        for (double x : j.at("weights").get<std::vector<double>>()) w.push_back(static_cast<Real>(x));
    }
    basic_diagonal_generator<Real> g(std::move(eig), std::move(w), beta);
    return modes ? g.truncated(*modes) : g;
}

template <class Real>
nlohmann::json to_json(const basic_diagonal_generator<Real>& a) {
    nlohmann::json eig = nlohmann::json::array();
    for (const auto& l : a.eigenvalues()) eig.push_back(complex_to_json(l));
    std::vector<double> w;
    for (Real x : a.weights()) w.push_back(static_cast<double>(x));
    return {{"eigenvalues", std::move(eig)}, {"weights", std::move(w)}, {"beta", complex_to_json(a.beta())}};
}

/// Coefficient list padded with zeros (or cut) to `n` entries.
template <class Real = double>
basic_spectral_vector<Real> vector_from_json(const nlohmann::json& j, std::size_t n, scale tag = scale::x) {
    auto c = complex_list_from_json<Real>(j);
    c.resize(n);
    return {std::move(c), tag};
}

}  // namespace admlab::spectral
