#pragma once

#include <json.hpp>

#include <cmath>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace admlab::cli {

struct schema_error {
    std::string pointer;  ///< JSON pointer into the instance ("" for the root)
    std::string message;
};

/// Validator for the draft-07 subset used by the scenario schema: type, enum, properties,
/// required, additionalProperties (boolean), items, min/maxItems, (exclusive) minimum/maximum
/// and local "#/..." references. Unknown keywords are rejected when the schema is loaded.
class schema_validator {
public:
    explicit schema_validator(nlohmann::json schema) : root_(std::move(schema)) { check_keywords(root_, ""); }

    std::vector<schema_error> validate(const nlohmann::json& instance) const {
        std::vector<schema_error> errors;
        visit(root_, instance, "", errors);
        return errors;
    }

private:
    nlohmann::json root_;

    static std::string escape(const std::string& key) {
        std::string out;
        for (char c : key) {
            if (c == '~') out += "~0";
            else if (c == '/') out += "~1";
            else out += c;
        }
        return out;
    }

    void check_keywords(const nlohmann::json& s, const std::string& where) const {
        static const std::set<std::string> known{
            "$schema", "$ref", "title", "description", "definitions", "type", "enum", "properties", "required",
            "additionalProperties", "items", "minItems", "maxItems", "minimum", "maximum", "exclusiveMinimum",
            "exclusiveMaximum"};
        if (!s.is_object()) throw std::invalid_argument("schema: expected object at '" + where + "'");
        for (const auto& [k, v] : s.items()) {
            if (!known.count(k)) throw std::invalid_argument("schema: unsupported keyword '" + k + "' at '" + where + "'");
            if (k == "properties" || k == "definitions") {
                for (const auto& [name, sub] : v.items()) check_keywords(sub, where + "/" + k + "/" + name);
            } else if (k == "items") {
                check_keywords(v, where + "/items");
            } else if (k == "$ref") {
                resolve(v.get<std::string>());
            }
        }
    }

    const nlohmann::json& resolve(const std::string& ref) const {
        if (ref.rfind("#", 0) != 0) throw std::invalid_argument("schema: only local references are supported: " + ref);
        const nlohmann::json::json_pointer ptr(ref.substr(1));
        if (!root_.contains(ptr)) throw std::invalid_argument("schema: dangling reference " + ref);
        return root_.at(ptr);
    }

    static bool has_type(const nlohmann::json& v, const std::string& type) {
        if (type == "object") return v.is_object();
        if (type == "array") return v.is_array();
        if (type == "string") return v.is_string();
        if (type == "boolean") return v.is_boolean();
        if (type == "null") return v.is_null();
        if (type == "number") return v.is_number();
        if (type == "integer") {
            if (v.is_number_integer()) return true;
            if (!v.is_number_float()) return false;
            const double d = v.get<double>();
            return std::isfinite(d) && d == std::floor(d);
        }
        throw std::invalid_argument("schema: unknown type '" + type + "'");
    }

    static std::string type_name(const nlohmann::json& v) {
        if (v.is_number_integer()) return "integer";
        return v.type_name();
    }

    void visit(const nlohmann::json& s, const nlohmann::json& v, const std::string& ptr,
               std::vector<schema_error>& errors) const {
        if (s.contains("$ref")) {
            visit(resolve(s.at("$ref").get<std::string>()), v, ptr, errors);
            return;
        }
        if (s.contains("type")) {
            const auto& t = s.at("type");
            bool ok = false;
            std::string wanted;
            if (t.is_string()) {
                ok = has_type(v, t.get<std::string>());
                wanted = t.get<std::string>();
            } else {
                for (const auto& alt : t) {
                    ok = ok || has_type(v, alt.get<std::string>());
                    wanted += (wanted.empty() ? "" : " or ") + alt.get<std::string>();
                }
            }
            if (!ok) {
                errors.push_back({ptr, "expected " + wanted + ", got " + type_name(v)});
                return;
            }
        }
        if (s.contains("enum")) {
            bool found = false;
            for (const auto& e : s.at("enum")) found = found || e == v;
            if (!found) {
                errors.push_back({ptr, "value " + v.dump() + " not in " + s.at("enum").dump()});
                return;
            }
        }
        if (v.is_number()) {
            const double d = v.get<double>();
            if (s.contains("minimum") && d < s.at("minimum").get<double>()) {
                errors.push_back({ptr, "must be >= " + s.at("minimum").dump()});
            }
            if (s.contains("maximum") && d > s.at("maximum").get<double>()) {
                errors.push_back({ptr, "must be <= " + s.at("maximum").dump()});
            }
            if (s.contains("exclusiveMinimum") && !(d > s.at("exclusiveMinimum").get<double>())) {
                errors.push_back({ptr, "must be > " + s.at("exclusiveMinimum").dump()});
            }
            if (s.contains("exclusiveMaximum") && !(d < s.at("exclusiveMaximum").get<double>())) {
                errors.push_back({ptr, "must be < " + s.at("exclusiveMaximum").dump()});
            }
        }
        if (v.is_array()) {
            if (s.contains("minItems") && v.size() < s.at("minItems").get<std::size_t>()) {
                errors.push_back({ptr, "needs at least " + s.at("minItems").dump() + " items"});
            }
            if (s.contains("maxItems") && v.size() > s.at("maxItems").get<std::size_t>()) {
                errors.push_back({ptr, "allows at most " + s.at("maxItems").dump() + " items"});
            }
            if (s.contains("items")) {
                for (std::size_t i = 0; i < v.size(); ++i) visit(s.at("items"), v[i], ptr + "/" + std::to_string(i), errors);
            }
        }
        if (v.is_object()) {
            if (s.contains("required")) {
                for (const auto& r : s.at("required")) {
                    if (!v.contains(r.get<std::string>())) {
                        errors.push_back({ptr + "/" + escape(r.get<std::string>()), "required key is missing"});
                    }
                }
            }
            const bool closed = s.contains("additionalProperties") && s.at("additionalProperties") == false;
            for (const auto& [k, sub] : v.items()) {
                const std::string child = ptr + "/" + escape(k);
                if (s.contains("properties") && s.at("properties").contains(k)) {
                    visit(s.at("properties").at(k), sub, child, errors);
                } else if (closed) {
                    errors.push_back({child, "unknown key"});
                }
            }
        }
    }
};

/// Parse error that names the last object key read before the failure.
class json_syntax_error : public std::invalid_argument {
public:
    json_syntax_error(const std::string& what, std::string key)
        : std::invalid_argument(what), key_(std::move(key)) {}
    const std::string& key() const noexcept { return key_; }

private:
    std::string key_;
};

namespace detail {

struct key_tracker : nlohmann::json_sax<nlohmann::json> {
    std::vector<std::string> path;
    std::vector<bool> in_object;
    std::string error;

    std::string pointer() const {
        std::string p;
        for (const auto& s : path) p += "/" + s;
        return p;
    }
    void value_done() {
        if (!in_object.empty() && in_object.back() && !path.empty()) path.pop_back();
        else if (!in_object.empty() && !in_object.back() && !path.empty()) {
            path.back() = std::to_string(std::stoul(path.back()) + 1);
        }
    }
    bool null() override { value_done(); return true; }
    bool boolean(bool) override { value_done(); return true; }
    bool number_integer(number_integer_t) override { value_done(); return true; }
    bool number_unsigned(number_unsigned_t) override { value_done(); return true; }
    bool number_float(number_float_t, const string_t&) override { value_done(); return true; }
    bool string(string_t&) override { value_done(); return true; }
    bool binary(binary_t&) override { value_done(); return true; }
    bool start_object(std::size_t) override { in_object.push_back(true); return true; }
    bool key(string_t& k) override {
        path.push_back(k);
        return true;
    }
    bool end_object() override {
        in_object.pop_back();
        value_done();
        return true;
    }
    bool start_array(std::size_t) override {
        in_object.push_back(false);
        path.push_back("0");
        return true;
    }
    bool end_array() override {
        in_object.pop_back();
        path.pop_back();
        value_done();
        return true;
    }
    bool parse_error(std::size_t, const std::string&, const nlohmann::detail::exception& ex) override {
        error = ex.what();
        return false;
    }
};

}  // namespace detail

/// Parse JSON text; on failure throw json_syntax_error naming the key being read.
inline nlohmann::json parse_json(const std::string& text) {
    detail::key_tracker t;
    if (!nlohmann::json::sax_parse(text, &t)) {
        const std::string at = t.path.empty() ? std::string("<root>") : t.pointer();
        throw json_syntax_error("malformed JSON near key '" + at + "': " + t.error, at);
    }
    return nlohmann::json::parse(text);
}

}  // namespace admlab::cli
