#pragma once

#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace kummer::toml {

/// Minimal TOML subset: [sections], key = value with strings, numbers,
/// booleans and (nested) arrays.  Enough for the numeric-suite configs; keys
/// are exposed dotted as "section.key".
struct Value;
using Array = std::vector<Value>;

struct Value {
    std::variant<double, bool, std::string, Array> v;

    bool is_number() const { return std::holds_alternative<double>(v); }
    bool is_array() const { return std::holds_alternative<Array>(v); }
    double number() const { return std::get<double>(v); }
    bool boolean() const { return std::get<bool>(v); }
    const std::string& str() const { return std::get<std::string>(v); }
    const Array& array() const { return std::get<Array>(v); }
};

struct parse_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace detail {

inline void skip_ws(const std::string& s, size_t& p) {
    while (p < s.size() && (s[p] == ' ' || s[p] == '\t')) ++p;
}

inline Value parse_value(const std::string& s, size_t& p);

inline Value parse_array(const std::string& s, size_t& p) {
    ++p; // '['
    Array arr;
    for (;;) {
        skip_ws(s, p);
        if (p >= s.size()) throw parse_error("unterminated array");
        if (s[p] == ']') { ++p; break; }
        arr.push_back(parse_value(s, p));
        skip_ws(s, p);
        if (p < s.size() && s[p] == ',') ++p;
    }
    return Value{arr};
}

inline Value parse_value(const std::string& s, size_t& p) {
    skip_ws(s, p);
    if (p >= s.size()) throw parse_error("missing value");
    if (s[p] == '[') return parse_array(s, p);
    if (s[p] == '"') {
        size_t end = s.find('"', p + 1);
        if (end == std::string::npos) throw parse_error("unterminated string");
        Value v{s.substr(p + 1, end - p - 1)};
        p = end + 1;
        return v;
    }
    size_t end = p;
    while (end < s.size() && s[end] != ',' && s[end] != ']' && s[end] != '#') ++end;
    std::string tok = s.substr(p, end - p);
    while (!tok.empty() && (tok.back() == ' ' || tok.back() == '\t')) tok.pop_back();
    p = end;
    if (tok == "true") return Value{true};
    if (tok == "false") return Value{false};
    try {
        size_t used = 0;
        double d = std::stod(tok, &used);
        if (used != tok.size()) throw parse_error("trailing junk in number: " + tok);
        return Value{d};
    } catch (const std::invalid_argument&) {
        throw parse_error("cannot parse value: " + tok);
    }
}

} // namespace detail

class Table {
public:
    std::map<std::string, Value> entries;

    bool has(const std::string& key) const { return entries.count(key) > 0; }
    const Value& at(const std::string& key) const {
        auto it = entries.find(key);
        if (it == entries.end()) throw parse_error("missing config key: " + key);
        return it->second;
    }
    double number(const std::string& key) const { return at(key).number(); }
    double number_or(const std::string& key, double fallback) const {
        return has(key) ? at(key).number() : fallback;
    }
    std::vector<double> numbers(const std::string& key) const {
        std::vector<double> out;
        for (const auto& v : at(key).array()) out.push_back(v.number());
        return out;
    }
};

inline Table parse(std::istream& in) {
    Table t;
    std::string line, section;
    while (std::getline(in, line)) {
        // strip comments outside strings
        bool in_str = false;
        for (size_t i = 0; i < line.size(); ++i) {
            if (line[i] == '"') in_str = !in_str;
            if (line[i] == '#' && !in_str) { line = line.substr(0, i); break; }
        }
        size_t p = 0;
        detail::skip_ws(line, p);
        if (p >= line.size() || line[p] == '\r') continue;
        if (line[p] == '[') {
            size_t end = line.find(']', p);
            if (end == std::string::npos) throw parse_error("unterminated section header");
            section = line.substr(p + 1, end - p - 1);
            continue;
        }
        size_t eq = line.find('=', p);
        if (eq == std::string::npos) throw parse_error("expected key = value: " + line);
        std::string key = line.substr(p, eq - p);
        while (!key.empty() && (key.back() == ' ' || key.back() == '\t')) key.pop_back();
        size_t vp = eq + 1;
        Value v = detail::parse_value(line, vp);
        t.entries[section.empty() ? key : section + "." + key] = v;
    }
    return t;
}

inline Table parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw parse_error("cannot open config file: " + path);
    return parse(in);
}

inline Table parse_string(const std::string& text) {
    std::istringstream in(text);
    return parse(in);
}

} // namespace kummer::toml
