#pragma once

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "kummer/catalog.hpp"
#include "kummer/coassoc_io.hpp"
#include "kummer/ghspace.hpp"
#include "kummer/json_io.hpp"
#include "kummer/toml_lite.hpp"

namespace kummer::cli {

// exit codes: 0 pass, 1 check failure, 2 config error, 3 internal error
enum ExitCode { ExitPass = 0, ExitCheckFailure = 1, ExitConfigError = 2, ExitInternal = 3 };

/// Embedded spheres of a parameter in every direction (used by the
/// enumeration stream, where no direction is singled out).
inline int embedded_sphere_total(const Zeta& z) {
    if (z.kind == ZetaKind::GibbonsHawking) {
        const auto& pts = z.gh_points;
        int n = 0;
        for (size_t a = 0; a < pts.size(); ++a)
            for (size_t b = a + 1; b < pts.size(); ++b) {
                ImVec d = pts[b] - pts[a];
                bool blocked = false;
                for (size_t c = 0; c < pts.size(); ++c) {
                    if (c == a || c == b) continue;
                    ImVec w = pts[c] - pts[a];
                    if (!cross(w, d).is_zero()) continue;
                    FieldScalar t = inner(w, d) * d.norm2().inverse();
                    if (t.sign() > 0 && (FieldScalar::one() - t).sign() > 0) blocked = true;
                }
                if (!blocked) ++n;
            }
        return n;
    }
    const RootSystem& rs = z.root_system();
    int n = 0;
    for (const auto& th : rs.roots) {
        SphereDesc cand = SphereDesc::root(th);
        if (!(root_key(cand.theta) == root_key(th))) continue;
        bool decomposable = false;
        for (const auto& th1 : rs.roots) {
            RootVec th2(th.size());
            for (size_t m = 0; m < th.size(); ++m) th2[m] = th[m] - th1[m];
            if (!rs.is_root(th2)) continue;
            ImVec v1 = z.weight.evaluate(th1);
            ImVec v2 = z.weight.evaluate(th2);
            if (cross(v1, v2).is_zero() && inner(v1, v2).sign() >= 0) {
                decomposable = true;
                break;
            }
        }
        if (!decomposable) ++n;
    }
    return n;
}

/// Unit vector along v if its length lies in the coefficient field.
inline std::optional<ImVec> unit_direction(const ImVec& v) {
    FieldScalar n2 = v.norm2();
    if (!n2.is_rational()) return std::nullopt;
    Rational pq = n2.rational_part();
    if (pq.sign() <= 0) return std::nullopt;
    std::int64_t n = pq.num * pq.den; // sqrt(p/q) = sqrt(p q) / q
    std::int64_t square = 1, rest = n;
    for (std::int64_t d = 2; d * d <= rest; ++d)
        while (rest % (d * d) == 0) {
            rest /= d * d;
            square *= d;
        }
    int mask = -1;
    switch (rest) {
        case 1: mask = 0; break;
        case 2: mask = 1; break;
        case 3: mask = 2; break;
        case 6: mask = 3; break;
        case 5: mask = 4; break;
        case 10: mask = 5; break;
        case 15: mask = 6; break;
        case 30: mask = 7; break;
        default: return std::nullopt;
    }
    FieldScalar len = FieldScalar::basis(mask, Rational(square, pq.den));
    return len.inverse() * v;
}

inline int run_example_command(const std::string& id, const std::string& catalog_path,
                               const std::string& format, std::ostream& out) {
    auto catalog = load_catalog(catalog_path);
    auto t0 = std::chrono::steady_clock::now();
    RunReport rep = run_example(find_entry(catalog, id));
    rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (format == "text")
        out << rep.text();
    else
        out << rep.to_report_json().dump(2) << "\n";
    return rep.overall() ? ExitPass : ExitCheckFailure;
}

inline int enumerate_command(const std::string& row_name, int height, std::ostream& out) {
    if (row_name.size() < 2 || (row_name[0] != 'R' && row_name[0] != 'r'))
        throw CLI::ValidationError("--row", "rows are named R1..R6");
    int row = std::stoi(row_name.substr(1));
    if (row < 1 || row > 6) throw CLI::ValidationError("--row", "rows are named R1..R6");
    auto members = enumerate_admissible(row, height);
    for (const auto& z : members) {
        json line{{"row", "R" + std::to_string(row)},
                  {"zeta", to_json(z)},
                  {"canonical_form", zeta_canonical_key(z)},
                  {"embedded_spheres", embedded_sphere_total(z)}};
        // orthogonal primitive pairs for the direction of the first aligned
        // sphere, when its unit vector is exactly representable
        std::optional<ImVec> dir;
        if (z.kind == ZetaKind::GibbonsHawking) {
            for (size_t a = 0; a < z.gh_points.size() && !dir; ++a)
                for (size_t b = a + 1; b < z.gh_points.size() && !dir; ++b)
                    dir = unit_direction(z.gh_points[b] - z.gh_points[a]);
        } else {
            for (const auto& th : z.root_system().roots) {
                dir = unit_direction(z.weight.evaluate(th));
                if (dir) break;
            }
        }
        if (dir) {
            auto pairs = orthogonal_primitive_pairs(*dir, LatticeIm::standard(), height);
            line["orthogonal_primitive_pairs"] = int(pairs.size());
            line["xi1_hat"] = to_json(*dir);
        } else {
            line["orthogonal_primitive_pairs"] = nullptr;
        }
        out << line.dump() << "\n";
    }
    return ExitPass;
}

/// The numeric Gibbons-Hawking suite: harmonicity and closedness convergence
/// ratios, ALE decay slope, and the sphere-area cross-check, each against
/// its declared tolerance.
inline RunReport verify_numerics(const toml::Table& cfg) {
    RunReport rep;
    rep.command = "verify-numerics";

    gh::GHConfig g;
    g.zeta.clear();
    for (const auto& p : cfg.at("zeta.points").array()) {
        const auto& arr = p.array();
        if (arr.size() != 3) throw toml::parse_error("zeta points must have 3 components");
        g.zeta.push_back(gh::Vec3{arr[0].number(), arr[1].number(), arr[2].number()});
    }
    if (g.zeta.empty()) throw toml::parse_error("zeta.points must be nonempty");
    if (cfg.has("gauge.axis")) {
        auto ax = cfg.numbers("gauge.axis");
        if (ax.size() != 3) throw toml::parse_error("gauge.axis must have 3 components");
        g.gauge_axis = gh::Vec3{ax[0], ax[1], ax[2]}.normalized();
    }
    std::vector<double> hs = cfg.numbers("grid.h");
    if (hs.size() < 2) throw toml::parse_error("grid.h needs at least two spacings");
    g.extent = cfg.number("grid.extent");
    g.exclusion = cfg.number_or("grid.exclusion", 4.0 * hs.front());
    double string_margin = cfg.number_or("grid.string_margin", 3.0 * hs.front());
    g.seg_nodes = int(cfg.number_or("quadrature.segment_nodes", 64));
    g.fiber_nodes = int(cfg.number_or("quadrature.fiber_nodes", 64));
    double ratio_lo = cfg.number_or("tolerances.ratio_low", 3.4);
    double ratio_hi = cfg.number_or("tolerances.ratio_high", 4.6);
    double slope_lo = cfg.number_or("tolerances.slope_low", -4.5);
    double slope_hi = cfg.number_or("tolerances.slope_high", -3.5);
    double area_rel = cfg.number_or("tolerances.area_rel", 1e-4);
    std::vector<double> radii = cfg.has("decay.radii")
                                    ? cfg.numbers("decay.radii")
                                    : std::vector<double>{2.0, 2.828427124746190, 4.0,
                                                          5.656854249492381, 8.0};

    rep.config = json{{"zeta_points", g.zeta.size()},
                      {"h", hs},
                      {"extent", g.extent},
                      {"exclusion", g.exclusion},
                      {"radii", radii},
                      {"fiber_period_normalization", "2*pi"}};

    auto points = gh::grid_points(g, hs.front());
    auto safe = gh::string_safe_points(g, points, string_margin);

    std::vector<double> harm, clos;
    for (double h : hs) {
        harm.push_back(gh::harmonic_residual(g, points, h));
        clos.push_back(gh::closure_residual(g, safe, h));
    }
    for (size_t k = 0; k + 1 < hs.size(); ++k) {
        double hr = harm[k] / harm[k + 1];
        double cr = clos[k] / clos[k + 1];
        Check ch{"harmonic-ratio-h" + std::to_string(hs[k]),
                 hr >= ratio_lo && hr <= ratio_hi, hr,
                 json{{"low", ratio_lo}, {"high", ratio_hi}}, "per-halving residual ratio"};
        rep.checks.push_back(ch);
        Check cc{"closure-ratio-h" + std::to_string(hs[k]),
                 cr >= ratio_lo && cr <= ratio_hi, cr,
                 json{{"low", ratio_lo}, {"high", ratio_hi}}, "per-halving residual ratio"};
        rep.checks.push_back(cc);
    }

    gh::DecayFit fit = gh::ale_decay_fit(g, radii);
    if (fit.flat) {
        double worst = 0;
        for (double n : fit.norms) worst = std::max(worst, n);
        rep.checks.push_back(Check{"ale-decay-flat-model", worst < 1e-10, worst, {},
                                   "one-center space equals the flat model"});
    } else {
        Check c{"ale-decay-slope", fit.slope >= slope_lo && fit.slope <= slope_hi, fit.slope,
                json{{"low", slope_lo}, {"high", slope_hi}},
                fit.unreliable ? "warning: radii inside the monopole region" : ""};
        c.pass = c.pass && !fit.unreliable;
        rep.checks.push_back(c);
    }

    // sphere-area cross-check over every valid monopole segment
    int segments = 0;
    double worst_gap = 0;
    for (size_t a = 0; a < g.zeta.size(); ++a)
        for (size_t b = a + 1; b < g.zeta.size(); ++b) {
            try {
                auto res = gh::sphere_area(g, g.zeta[a], g.zeta[b]);
                ++segments;
                worst_gap = std::max(worst_gap, res.relative_gap);
            } catch (const gh::invalid_segment&) {
            }
        }
    if (segments > 0)
        rep.checks.push_back(Check{"sphere-area-cross-check", worst_gap < area_rel, worst_gap,
                                   area_rel,
                                   std::to_string(segments) + " segments, quadrature vs "
                                                              "calibration period"});
    else
        rep.checks.push_back(
            Check{"sphere-area-cross-check", true, 0, {}, "no two-point segments in this zeta"});
    return rep;
}

inline int verify_numerics_command(const std::string& config_path, const std::string& format,
                                   std::ostream& out) {
    toml::Table cfg = toml::parse_file(config_path);
    auto t0 = std::chrono::steady_clock::now();
    RunReport rep = verify_numerics(cfg);
    rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (format == "text")
        out << rep.text();
    else
        out << rep.to_report_json().dump(2) << "\n";
    return rep.overall() ? ExitPass : ExitCheckFailure;
}

inline int classify_command(const std::string& config_path, const std::string& format,
                            std::ostream& out) {
    toml::Table t = toml::parse_file(config_path);
    CoassocData data = coassoc_data_from_toml(t);
    CoassocReport rep = build_coassoc_report(data, supplied_area_from_toml(t));
    if (format == "text") {
        for (const auto& c : rep.conditions)
            out << (c.pass ? "[pass] " : "[FAIL] ") << c.id << "  (" << c.witness << ")\n";
        out << "status: " << status_str(rep.status) << "\n"
            << "cover_degree: " << rep.cover_degree << "\n"
            << "volume_coefficient: " << rep.volume_coefficient << "\n"
            << "family_dimension: " << rep.family_dimension << "\n";
    } else {
        out << to_json(rep).dump(2) << "\n";
    }
    bool ok = all_pass(rep.conditions) && rep.status != Status::Indeterminate;
    return ok ? ExitPass : ExitCheckFailure;
}

inline int certificate_command(double beta, double gamma, double c, double R,
                               std::optional<double> cE, const std::string& format,
                               std::ostream& out) {
    RunReport rep;
    rep.command = "certificate";
    rep.config = json{{"beta", beta}, {"gamma", gamma}, {"c", c}, {"R", R}};
    if (cE) rep.config["cE"] = *cE;

    CertificateInput in;
    in.beta = beta;
    in.gamma = gamma;
    in.c = c;
    in.R = R;
    in.c_E = cE;
    try {
        auto res = perturbation_certificate(in);
        rep.checks.push_back(Check{"hypothesis-beta-gt-2gamma", true, beta, {}, ""});
        rep.checks.push_back(Check{"positive-T", res.T > 0, res.T, {},
                                   "largest scale at which the contraction closes"});
        rep.config["c_E"] = res.c_E;
        rep.config["radius_law"] =
            "r(t) = " + std::to_string(res.radius_coefficient) + " * t^" +
            std::to_string(res.radius_exponent);
    } catch (const no_certificate& e) {
        rep.checks.push_back(Check{"hypothesis-beta-gt-2gamma", false, beta, {}, e.what()});
    }
    if (format == "text")
        out << rep.text();
    else
        out << rep.to_report_json().dump(2) << "\n";
    return rep.overall() ? ExitPass : ExitCheckFailure;
}

inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"coassociative bookkeeping for generalized Kummer resolutions"};
    app.require_subcommand(1);

    std::string default_catalog = std::string(KUMMER_DATA_DIR) + "/catalog.json";
    std::string id, catalog_path = default_catalog, format = "json", config_path, row = "R1";
    int height = 1;
    double beta = 2.5, gamma = 1.0, cc = 1.0, RR = 1.0;
    double cE_val = 0;
    bool has_cE = false;

    auto* run_ex = app.add_subcommand("run-example", "run a bundled worked example");
    run_ex->add_option("id", id, "example id")->required();
    run_ex->add_option("--catalog", catalog_path, "expectations catalog path");
    run_ex->add_option("--format", format)->check(CLI::IsMember({"json", "text"}));

    auto* enum_cmd = app.add_subcommand("enumerate", "enumerate admissible parameters");
    enum_cmd->add_option("--row", row, "family row R1..R6")->required();
    enum_cmd->add_option("--height", height, "coordinate bound")->required();

    auto* verify = app.add_subcommand("verify-numerics", "run the numeric suite");
    verify->add_option("--config", config_path, "TOML config")->required();
    verify->add_option("--format", format)->check(CLI::IsMember({"json", "text"}));

    std::string classify_config;
    auto* classify = app.add_subcommand("classify", "classify one coassociative datum");
    classify->add_option("--config", classify_config, "TOML description of the datum")->required();
    classify->add_option("--format", format)->check(CLI::IsMember({"json", "text"}));

    auto* cert = app.add_subcommand("certificate", "perturbation certificate constants");
    cert->add_option("--beta", beta)->required();
    cert->add_option("--gamma", gamma)->required();
    cert->add_option("--c", cc)->required();
    cert->add_option("--R", RR)->required();
    auto* ce_opt = cert->add_option("--cE", cE_val);
    cert->add_option("--format", format)->check(CLI::IsMember({"json", "text"}));

    std::reverse(args.begin(), args.end());
    try {
        app.parse(args);
        has_cE = ce_opt->count() > 0;
        if (run_ex->parsed()) return run_example_command(id, catalog_path, format, out);
        if (enum_cmd->parsed()) return enumerate_command(row, height, out);
        if (verify->parsed()) return verify_numerics_command(config_path, format, out);
        if (classify->parsed()) return classify_command(classify_config, format, out);
        if (cert->parsed())
            return certificate_command(beta, gamma, cc, RR,
                                       has_cE ? std::optional<double>(cE_val) : std::nullopt,
                                       format, out);
        err << "no subcommand\n";
        return ExitConfigError;
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) { // --help
            out << app.help();
            return ExitPass;
        }
        err << "argument error: " << e.what() << "\n";
        return ExitConfigError;
    } catch (const toml::parse_error& e) {
        err << "config error: " << e.what() << "\n";
        return ExitConfigError;
    } catch (const std::invalid_argument& e) {
        err << "config error: " << e.what() << "\n";
        return ExitConfigError;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return ExitInternal;
    }
}

} // namespace kummer::cli
