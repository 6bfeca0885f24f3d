#pragma once

#include <json.hpp>

#include <cmath>
#include <cstddef>
#include <iomanip>
#include <limits>
#include <ostream>
#include <string>
#include <vector>

namespace admlab::admissibility {

/// One upper- or lower-bound route; inapplicable routes keep the reason.
struct route_value {
    std::string route;  ///< factorization | hinf-multiplier | kernel-L1 | phase-search | closed-form
    double value = 0.0;
    bool applicable = true;
    std::string reason;
    bool lower = false;  ///< lower bound (achieved by a concrete input) rather than upper bound
};

struct adm_report {
    double t = 0.0;  ///< horizon, +inf for infinite-time reports
    std::string space = "Linf";
    double lower = 0.0;
    double upper = std::numeric_limits<double>::infinity();
    std::string lower_route;
    std::string upper_route;
    std::size_t modes = 0;
    bool uniform_upper = false;  ///< upper bound holds for every horizon
    std::vector<route_value> routes;

    bool consistent() const { return lower <= upper + 1e-9; }
};

inline nlohmann::json number_or_string(double x) {
    if (std::isfinite(x)) return x;
    if (std::isnan(x)) return "nan";
    return x > 0 ? "inf" : "-inf";
}

inline nlohmann::json to_json(const adm_report& r) {
    nlohmann::json routes = nlohmann::json::array();
    for (const auto& rv : r.routes) {
        nlohmann::json j{{"route", rv.route}, {"value", number_or_string(rv.value)}, {"applicable", rv.applicable},
                         {"bound", rv.lower ? "lower" : "upper"}};
        if (!rv.reason.empty()) j["reason"] = rv.reason;
        routes.push_back(std::move(j));
    }
    return {{"t", number_or_string(r.t)},
            {"space", r.space},
            {"lower", number_or_string(r.lower)},
            {"upper", number_or_string(r.upper)},
            {"lower_route", r.lower_route},
            {"upper_route", r.upper_route},
            {"modes", r.modes},
            {"uniform_upper", r.uniform_upper},
            {"routes", std::move(routes)}};
}

inline void write_csv(std::ostream& os, const std::vector<adm_report>& rows) {
    os << "t,Z,lower,upper,route\n" << std::setprecision(std::numeric_limits<double>::max_digits10);
    for (const auto& r : rows) {
        os << r.t << ',' << r.space << ',' << r.lower << ',' << r.upper << ',' << r.upper_route << '\n';
    }
}

}  // namespace admlab::admissibility
