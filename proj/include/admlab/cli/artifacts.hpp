#pragma once

#include <admlab/version.hpp>

#include <json.hpp>

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace admlab::cli {

inline std::uint64_t fnv1a64(std::string_view bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

/// Hash of the canonical (key-sorted, compact) dump, so whitespace and key order do not matter.
inline std::string scenario_hash(const nlohmann::json& scenario) {
    std::ostringstream os;
    os << "fnv1a64:" << std::hex << std::setw(16) << std::setfill('0') << fnv1a64(scenario.dump());
    return os.str();
}

inline nlohmann::json versions_json() {
    nlohmann::json j = nlohmann::json::object();
    j["admlab"] = std::string(version);
    for (const auto& [name, v] : module_versions) j[std::string(name)] = std::string(v);
    return j;
}

class io_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Write via a sibling temporary and rename over the target.
inline void write_atomic(const std::filesystem::path& path, const std::string& contents) {
    std::error_code ec;
    if (path.has_parent_path()) {
        std::filesystem::create_directories(path.parent_path(), ec);
        if (ec) throw io_error(path.parent_path().string() + ": " + ec.message());
    }
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
        if (!os) throw io_error(tmp.string() + ": cannot open for writing");
        os << contents;
        os.flush();
        if (!os) throw io_error(tmp.string() + ": write failed");
    }
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::filesystem::remove(tmp);
        throw io_error(path.string() + ": " + ec.message());
    }
}

/// One flat CSV curve. Column names carry units as "name [unit]".
struct plot_table {
    std::string file;
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;

    template <class... Ts>
    void add(const Ts&... cells) {
        rows.push_back({cell(cells)...});
    }

    std::string render() const {
        std::string out;
        for (std::size_t i = 0; i < columns.size(); ++i) out += (i ? "," : "") + columns[i];
        out += '\n';
        for (const auto& r : rows) {
            for (std::size_t i = 0; i < r.size(); ++i) out += (i ? "," : "") + r[i];
            out += '\n';
        }
        return out;
    }

    static std::string cell(double x) {
        std::ostringstream os;
        os << std::setprecision(std::numeric_limits<double>::max_digits10) << x;
        return os.str();
    }
    static std::string cell(long double x) { return cell(static_cast<double>(x)); }
    static std::string cell(std::size_t x) { return std::to_string(x); }
    static std::string cell(int x) { return std::to_string(x); }
    static std::string cell(const std::string& s) { return s; }
    static std::string cell(const char* s) { return s; }
};

/// A command's outcome: the JSON report, its plot tables and any extra files.
struct report {
    nlohmann::json body = nlohmann::json::object();
    std::vector<plot_table> plots;
    std::vector<std::pair<std::string, std::string>> extra_files;
    std::vector<std::string> summary;
    int exit_code = 0;
};

inline void emit_plotdata(const report& r, const std::filesystem::path& dir) {
    for (const auto& p : r.plots) write_atomic(dir / p.file, p.render());
}

}  // namespace admlab::cli
