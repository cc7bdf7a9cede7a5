#pragma once

#include <string>

#include "json.hpp"

#include "kummer/coassoc.hpp"
#include "kummer/resdata.hpp"

namespace kummer {

using nlohmann::json;

inline constexpr const char* tool_version = "1.0.0";
inline constexpr const char* report_schema_version = "1";

/// Exact scalars serialize as 8-tuples of rationals "p/q" over the basis
/// {1, s2, s3, s6, s5, s10, s15, s30}.
inline json to_json(const FieldScalar& s) {
    json arr = json::array();
    for (const auto& r : s.c) arr.push_back(r.str());
    return arr;
}
inline FieldScalar field_from_json(const json& j) {
    FieldScalar s;
    if (j.is_string()) { // plain rational shorthand "p/q"
        s.c[0] = Rational::parse(j.get<std::string>());
        return s;
    }
    if (j.is_number_integer()) {
        s.c[0] = Rational(j.get<std::int64_t>());
        return s;
    }
    for (int i = 0; i < 8; ++i) s.c[i] = Rational::parse(j.at(i).get<std::string>());
    return s;
}

inline json to_json(const ImVec& v) { return json::array({to_json(v.x), to_json(v.y), to_json(v.z)}); }
inline ImVec imvec_from_json(const json& j) {
    return ImVec{field_from_json(j.at(0)), field_from_json(j.at(1)), field_from_json(j.at(2))};
}

inline json to_json(const Quat& q) {
    return json{{"r", to_json(q.r)}, {"i", to_json(q.x)}, {"j", to_json(q.y)}, {"k", to_json(q.z)}};
}
inline json to_json(const RotationH& R) { return json{{"a", to_json(R.a)}, {"b", to_json(R.b)}}; }

inline json to_json(const LatticeIm& L) {
    return json::array({to_json(L.basis[0]), to_json(L.basis[1]), to_json(L.basis[2])});
}

inline json to_json(const Zeta& z) {
    json out;
    if (z.kind == ZetaKind::GibbonsHawking) {
        out["kind"] = "gibbons-hawking";
        json pts = json::array();
        for (const auto& p : z.gh_points) pts.push_back(to_json(p));
        out["points"] = pts;
    } else {
        out["kind"] = "kronheimer";
        out["root_system"] = z.root_system().label();
        json pts = json::array();
        for (const auto& p : z.weight.entries) pts.push_back(to_json(p));
        out["weight"] = pts;
    }
    return out;
}

inline json to_json(const RootSystem& rs) {
    json roots = json::array();
    for (const auto& th : rs.roots) {
        json r = json::array();
        for (const auto& q : th) r.push_back(q.str());
        roots.push_back(r);
    }
    return json{{"label", rs.label()}, {"rank", rs.rank}, {"roots", roots}};
}

inline json to_json(const DiagramAut& aut) {
    json m = json::array();
    for (const auto& row : aut.matrix.a) {
        json r = json::array();
        for (const auto& q : row) r.push_back(q.str());
        m.push_back(r);
    }
    return m;
}

/// One verification line of a run report.
struct Check {
    std::string name;
    bool pass = false;
    json value;
    json expected;
    std::string detail;
};

inline json to_json(const Check& c) {
    json out{{"name", c.name}, {"pass", c.pass}};
    if (!c.value.is_null()) out["value"] = c.value;
    if (!c.expected.is_null()) out["expected"] = c.expected;
    if (!c.detail.empty()) out["detail"] = c.detail;
    return out;
}

struct RunReport {
    std::string command;
    json config;
    std::vector<Check> checks;
    double seconds = 0;

    bool overall() const {
        for (const auto& c : checks)
            if (!c.pass) return false;
        return true;
    }
    json to_report_json() const {
        json out{{"schema_version", report_schema_version},
                 {"tool_version", tool_version},
                 {"command", command},
                 {"config", config},
                 {"overall", overall() ? "pass" : "fail"}};
        json cs = json::array();
        for (const auto& c : checks) cs.push_back(to_json(c));
        out["checks"] = cs;
        out["timings"] = json{{"total_seconds", seconds}};
        return out;
    }
    std::string text() const {
        std::string s = "command: " + command + "\n";
        for (const auto& c : checks) {
            s += std::string(c.pass ? "[pass] " : "[FAIL] ") + c.name;
            if (!c.value.is_null()) s += "  value=" + c.value.dump();
            if (!c.expected.is_null()) s += "  expected=" + c.expected.dump();
            if (!c.detail.empty()) s += "  (" + c.detail + ")";
            s += "\n";
        }
        s += std::string("overall: ") + (overall() ? "pass" : "fail") + "\n";
        return s;
    }
};

} // namespace kummer
