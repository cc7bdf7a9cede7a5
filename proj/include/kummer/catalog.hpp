#pragma once

#include <fstream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "kummer/json_io.hpp"

namespace kummer {

/// A bundled worked example: the parameter, the coassociative data shared by
/// all its spheres, and the recorded expectations the run is compared
/// against.
struct CatalogEntry {
    std::string id;
    std::string notes;
    int row = 0; // 0 = lattice-only stratum
    GroupLabel gamma = GroupLabel::C(2);
    Zeta zeta = Zeta::gh({});
    ImVec xi1_hat, xi2, xi3, base_point;
    std::optional<double> sphere_area;
    std::string area_note;
    json expect;
};

inline GroupLabel parse_gamma(const std::string& s) {
    if (s == "2T") return GroupLabel::T2();
    if (s == "2O") return GroupLabel::O2();
    if (s == "2I") return GroupLabel::I2();
    if (s.rfind("Dic", 0) == 0) return GroupLabel::Dic(std::stoi(s.substr(3)));
    if (s.rfind("C", 0) == 0) return GroupLabel::C(std::stoi(s.substr(1)));
    throw std::invalid_argument("unknown group label: " + s);
}

inline std::vector<CatalogEntry> load_catalog(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open catalog: " + path);
    json j = json::parse(in);
    std::vector<CatalogEntry> out;
    for (const auto& e : j.at("examples")) {
        CatalogEntry c;
        c.id = e.at("id").get<std::string>();
        c.notes = e.value("notes", "");
        c.row = e.at("row").get<int>();
        c.gamma = parse_gamma(e.at("gamma").get<std::string>());
        std::vector<ImVec> pts;
        for (const auto& p : e.at("zeta")) pts.push_back(imvec_from_json(p));
        std::string kind = e.at("zeta_kind").get<std::string>();
        if (kind == "gh")
            c.zeta = Zeta::gh(std::move(pts));
        else if (kind == "kronheimer-d5")
            c.zeta = Zeta::kronheimer(CartanWeight(std::move(pts)), RootType::D, 5);
        else
            throw std::invalid_argument("unknown zeta kind: " + kind);
        c.xi1_hat = imvec_from_json(e.at("xi1_hat"));
        c.xi2 = imvec_from_json(e.at("xi2"));
        c.xi3 = imvec_from_json(e.at("xi3"));
        c.base_point = imvec_from_json(e.at("base_point"));
        if (e.contains("sphere_area")) {
            c.sphere_area = e.at("sphere_area").at("value").get<double>();
            c.area_note = e.at("sphere_area").value("note", "");
        }
        c.expect = e.at("expect");
        out.push_back(std::move(c));
    }
    return out;
}

inline CoassocData entry_data(const CatalogEntry& e, const SphereDesc& sphere) {
    CoassocData d;
    d.sphere = sphere;
    d.xi1_hat = e.xi1_hat;
    d.xi2 = e.xi2;
    d.xi3 = e.xi3;
    d.base_point = e.base_point;
    d.group = e.row == 0 ? BieberbachGroup::lattice_only() : family_row_group(e.row);
    d.gamma = e.gamma;
    d.zeta = e.zeta;
    return d;
}

/// Executes the admissibility, counting, classification and volume pipeline
/// for one catalog entry and compares against its recorded expectations.
inline RunReport run_example(const CatalogEntry& e) {
    RunReport rep;
    rep.command = "run-example";
    rep.config = json{{"id", e.id}, {"row", e.row}, {"zeta", to_json(e.zeta)}};

    // admissibility and the parameter-family membership
    {
        Check c{"admissible", false, {}, true, ""};
        c.value = e.zeta.kind == ZetaKind::GibbonsHawking
                      ? gh_admissible(e.zeta)
                      : in_delta_circ(e.zeta.weight, e.zeta.root_system());
        c.pass = c.value.get<bool>();
        rep.checks.push_back(c);
    }
    if (e.row >= 1) {
        Check c{"parameter-family-member", false, {}, true, "row " + std::to_string(e.row)};
        c.value = family_member(e.row, e.zeta);
        c.pass = c.value.get<bool>();
        rep.checks.push_back(c);
    }

    auto spheres = count_spheres(e.zeta, e.xi1_hat);
    {
        Check c{"sphere-count", false, int(spheres.embedded.size()),
                e.expect.at("sphere_count"), ""};
        c.pass = c.value == c.expected;
        rep.checks.push_back(c);
    }

    // per-sphere assumption checks and classification
    std::map<std::string, int> statuses;
    std::vector<CoassocData> data;
    std::vector<Classification> cls;
    bool assumptions_ok = true, degree_ok = true, no_indeterminate = true;
    for (const auto& s : spheres.embedded) {
        data.push_back(entry_data(e, s));
        assumptions_ok = assumptions_ok && all_pass(check_assumption(data.back()));
        cls.push_back(classify_embedding(data.back()));
        statuses[status_str(cls.back().status)] += 1;
        if (cls.back().status == Status::Indeterminate) no_indeterminate = false;
        if (cls.back().status == Status::KFoldCover && e.expect.contains("cover_degree"))
            degree_ok = degree_ok &&
                        cls.back().cover_degree == e.expect.at("cover_degree").get<int>();
    }
    rep.checks.push_back(
        Check{"assumption-conditions", assumptions_ok, assumptions_ok, true, ""});
    {
        json got(statuses);
        Check c{"classification-statuses", false, got, e.expect.at("statuses"), ""};
        c.pass = got == c.expected && no_indeterminate;
        rep.checks.push_back(c);
    }
    rep.checks.push_back(Check{"cover-degrees", degree_ok, degree_ok, true, ""});

    // distinct embedded coassociatives after the group identification
    {
        int distinct_embedded = 0;
        std::vector<int> seen;
        for (size_t i = 0; i < data.size(); ++i) {
            bool dup = false;
            for (int j : seen)
                if (data_equivalent(data[j], data[i])) dup = true;
            if (dup) continue;
            seen.push_back(int(i));
            if (cls[i].status == Status::Embedded) ++distinct_embedded;
        }
        Check c{"distinct-embedded", false, distinct_embedded,
                e.expect.at("distinct_embedded"), "deduplicated by the group action"};
        c.pass = c.value == c.expected;
        rep.checks.push_back(c);
    }

    // volumes: coefficient, exact quadratic scaling, shrink-to-zero
    if (!data.empty()) {
        auto vol = model_volume_coefficient(data.front(), e.sphere_area);
        Check c{"volume-coefficient-positive", vol.coefficient > 0, vol.coefficient, {},
                "area source: " + vol.area_source +
                    (e.area_note.empty() ? "" : "; " + e.area_note) +
                    "; fiber period normalization 2*pi"};
        rep.checks.push_back(c);
        double v1 = vol.coefficient * 1.0, v2 = vol.coefficient * 1e-4; // t = 1, t = 0.01
        double slope = std::log(v1 / v2) / std::log(1.0 / 0.01);
        Check s{"volume-slope", std::abs(slope - 2.0) < 1e-12, slope, 2, "log-log slope in t"};
        rep.checks.push_back(s);
        Check z{"volume-shrinks-to-zero", v2 < 1e-3 * v1, v2, {}, "volume at t = 0.01"};
        rep.checks.push_back(z);
    }

    {
        int fd = data.empty() ? 1 : family_dimension(data.front());
        Check c{"family-dimension", fd == 1, fd, 1, "1 + b1(Sigma)"};
        rep.checks.push_back(c);
    }
    return rep;
}

inline const CatalogEntry& find_entry(const std::vector<CatalogEntry>& catalog,
                                      const std::string& id) {
    for (const auto& e : catalog)
        if (e.id == id) return e;
    throw std::invalid_argument("unknown example id: " + id);
}

} // namespace kummer
