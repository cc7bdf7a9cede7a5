#pragma once

#include "kummer/json_io.hpp"
#include "kummer/toml_lite.hpp"

namespace kummer {

/// Stable report schema:
/// {conditions, status, cover_degree, volume_coefficient, family_dimension}.
inline json to_json(const CoassocReport& rep) {
    json conds = json::object();
    for (const auto& c : rep.conditions)
        conds[c.id] = json{{"pass", c.pass}, {"witness", c.witness}};
    json out{{"conditions", conds},
             {"status", status_str(rep.status)},
             {"cover_degree", rep.cover_degree},
             {"volume_coefficient", rep.volume_coefficient},
             {"family_dimension", rep.family_dimension}};
    if (!rep.area_source.empty()) out["area_source"] = rep.area_source;
    if (!rep.witnesses.empty()) out["witnesses"] = rep.witnesses;
    if (!rep.candidates.empty()) out["candidates"] = rep.candidates;
    return out;
}

namespace detail {
inline ImVec imvec_from_toml(const toml::Value& v) {
    const auto& arr = v.array();
    if (arr.size() != 3) throw toml::parse_error("vectors need 3 rational components");
    auto comp = [&](int i) {
        if (arr[i].is_number()) {
            double d = arr[i].number();
            std::int64_t n = std::int64_t(d);
            if (double(n) != d)
                throw toml::parse_error("non-integer numeric component; use a \"p/q\" string");
            return FieldScalar(n);
        }
        return FieldScalar(Rational::parse(arr[i].str()));
    };
    return ImVec{comp(0), comp(1), comp(2)};
}
} // namespace detail

/// CoassocData from its TOML description.  Exact coordinates are written as
/// "p/q" strings (integers may stay numeric).
inline CoassocData coassoc_data_from_toml(const toml::Table& t) {
    CoassocData d;
    std::string kind = t.at("sphere.kind").str();
    int row = int(t.number_or("group.row", 0));
    d.gamma = parse_gamma(t.has("group.gamma") ? t.at("group.gamma").str() : "C2");
    d.group = row == 0 ? BieberbachGroup::lattice_only() : family_row_group(row);

    std::string zkind = t.at("zeta.kind").str();
    std::vector<ImVec> pts;
    for (const auto& p : t.at("zeta.points").array()) pts.push_back(detail::imvec_from_toml(p));
    if (zkind == "gh")
        d.zeta = Zeta::gh(std::move(pts));
    else if (zkind == "kronheimer-d5")
        d.zeta = Zeta::kronheimer(CartanWeight(std::move(pts)), RootType::D, 5);
    else
        throw toml::parse_error("zeta.kind must be gh or kronheimer-d5");

    if (kind == "segment") {
        d.sphere = SphereDesc::segment(detail::imvec_from_toml(t.at("sphere.z0")),
                                       detail::imvec_from_toml(t.at("sphere.z1")));
    } else if (kind == "root") {
        RootVec theta;
        for (const auto& c : t.at("sphere.theta").array()) {
            if (c.is_number())
                theta.push_back(Rational(std::int64_t(c.number())));
            else
                theta.push_back(Rational::parse(c.str()));
        }
        d.sphere = SphereDesc::root(std::move(theta));
    } else {
        throw toml::parse_error("sphere.kind must be segment or root");
    }

    d.xi1_hat = detail::imvec_from_toml(t.at("frame.xi1_hat"));
    d.xi2 = detail::imvec_from_toml(t.at("frame.xi2"));
    d.xi3 = detail::imvec_from_toml(t.at("frame.xi3"));
    d.base_point = t.has("frame.base_point") ? detail::imvec_from_toml(t.at("frame.base_point"))
                                             : ImVec::zero();
    return d;
}

inline std::optional<double> supplied_area_from_toml(const toml::Table& t) {
    if (!t.has("volume.area")) return std::nullopt;
    return t.number("volume.area");
}

} // namespace kummer
