#pragma once

#include <admlab/orlicz/sampled_function.hpp>
#include <admlab/orlicz/young_function.hpp>

#include <json.hpp>

#include <iomanip>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>

namespace admlab::orlicz {

inline nlohmann::json to_json(const young_function& phi) {
    nlohmann::json segs = nlohmann::json::array();
    for (const auto& s : phi.segments()) {
        nlohmann::json j{{"x0", s.x0}, {"kind", s.kind == density_kind::power ? "power" : "const"}, {"c", s.c}};
        if (s.kind == density_kind::power) j["r"] = s.r;
        segs.push_back(std::move(j));
    }
    nlohmann::json out{{"segments", std::move(segs)}};
    if (phi.asymptotic_growth()) out["asymptotic"] = true;
    return out;
}

inline young_function young_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("segments") || !j.at("segments").is_array()) {
        throw std::invalid_argument("young function: expected object with array 'segments'");
    }
    std::vector<young_segment> segs;
    for (const auto& s : j.at("segments")) {
        young_segment seg;
        seg.x0 = s.at("x0").get<double>();
        const auto kind = s.at("kind").get<std::string>();
        if (kind == "power") {
            seg.kind = density_kind::power;
            seg.r = s.at("r").get<double>();
        } else if (kind == "const") {
            seg.kind = density_kind::constant;
            seg.r = 0.0;
        } else {
            throw std::invalid_argument("young function: unknown segment kind '" + kind + "'");
        }
        seg.c = s.at("c").get<double>();
        segs.push_back(seg);
    }
    return young_function(std::move(segs), j.value("asymptotic", false));
}

/// CSV with header `t,value`; row i holds (grid[i], values[i]); the final row carries the grid end
/// and the tail amplitude (0 without a tail).
inline void write_csv(std::ostream& os, const sampled_function& f) {
    os << "t,value\n" << std::setprecision(std::numeric_limits<double>::max_digits10);
    for (std::size_t i = 0; i < f.values().size(); ++i) os << f.grid()[i] << ',' << f.values()[i] << '\n';
    os << f.grid().back() << ',' << (f.tail() ? f.tail()->amplitude : 0.0) << '\n';
}

inline sampled_function read_csv(std::istream& is) {
    std::string line;
    if (!std::getline(is, line)) throw std::invalid_argument("sampled function CSV: empty input");
    std::vector<double> t;
    std::vector<double> v;
    std::size_t row = 1;
    while (std::getline(is, line)) {
        ++row;
        if (line.empty()) continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos) {
            throw std::invalid_argument("sampled function CSV: row " + std::to_string(row) + " lacks a comma");
        }
        t.push_back(std::stod(line.substr(0, comma)));
        v.push_back(std::stod(line.substr(comma + 1)));
    }
    if (t.size() < 2) throw std::invalid_argument("sampled function CSV: need at least two rows");
    v.pop_back();
    return sampled_function(std::move(t), std::move(v));
}

}  // namespace admlab::orlicz
