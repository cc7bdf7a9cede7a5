#include "doctest.h"

#include <random>

#include "kummer/ghspace.hpp"

using namespace kummer::gh;

namespace {

GHConfig two_center() {
    GHConfig cfg;
    cfg.zeta = {Vec3{-1, 0, 0}, Vec3{1, 0, 0}};
    cfg.gauge_axis = Vec3{0, 0, 1};
    cfg.extent = 2.0;
    cfg.exclusion = 0.35;
    return cfg;
}

Vec3 random_point(std::mt19937& rng, const GHConfig& cfg) {
    std::uniform_real_distribution<double> d(-cfg.extent, cfg.extent);
    for (;;) {
        Vec3 q{d(rng), d(rng), d(rng)};
        bool ok = true;
        for (const auto& z : cfg.zeta)
            if ((q - z).norm() < cfg.exclusion ||
                kummer::gh::detail::dist_to_string(q, z, cfg.gauge_axis) < 0.2)
                ok = false;
        if (ok) return q;
    }
}

} // namespace

TEST_CASE("f_zeta worked examples") {
    GHConfig cfg = two_center();
    CHECK(f_zeta(cfg, Vec3{0, 0, 0}) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(f_zeta(cfg, Vec3{0, 1, 0}) == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-14));

    GHConfig mono;
    mono.zeta = {Vec3{0, 0, 0}};
    CHECK(f_zeta(mono, Vec3{0, 0, 2}) == doctest::Approx(0.25).epsilon(1e-14));
    CHECK_THROWS_AS(f_zeta(mono, Vec3{0, 0, 0}), singular_point);
}

TEST_CASE("harmonic residual shrinks at second order; |q|^2 control does not") {
    GHConfig cfg = two_center();
    auto pts = grid_points(cfg, 0.2);
    REQUIRE(pts.size() > 100);
    double r1 = harmonic_residual(cfg, pts, 0.2);
    double r2 = harmonic_residual(cfg, pts, 0.1);
    double r4 = harmonic_residual(cfg, pts, 0.05);
    CHECK(r1 / r2 == doctest::Approx(4.0).epsilon(0.2));
    CHECK(r2 / r4 == doctest::Approx(4.0).epsilon(0.2));

    // frozen single-monopole magnitude: h = 0.05, points with r >= 1
    GHConfig mono;
    mono.zeta = {Vec3{0, 0, 0}};
    mono.extent = 2.0;
    mono.exclusion = 1.0;
    double rm = harmonic_residual(mono, grid_points(mono, 0.25), 0.05);
    CHECK(rm < 1e-2);
    CHECK(rm > 1e-5); // fourth derivative is not zero, the residual is genuine

    // non-harmonic control: laplacian of |q|^2 is 6 at every h
    auto sq = [](Vec3 q) { return dot(q, q); };
    CHECK(fd_laplacian(sq, Vec3{0.3, -0.2, 0.9}, 0.1) == doctest::Approx(6.0).epsilon(1e-9));
    CHECK(fd_laplacian(sq, Vec3{0.3, -0.2, 0.9}, 0.05) == doctest::Approx(6.0).epsilon(1e-9));
}

TEST_CASE("triple samples: orthogonality, norms and self-duality") {
    GHConfig cfg = two_center();
    std::mt19937 rng(61);
    for (int t = 0; t < 50; ++t) {
        Vec3 q = random_point(rng, cfg);
        TripleSample s = hyperkahler_triple(cfg, q);
        for (int a = 0; a < 3; ++a) {
            for (int b = 0; b < 3; ++b) {
                double ip = form_inner(s.omega[a], s.omega[b], s.metric_inv);
                CHECK(ip == doctest::Approx(a == b ? 2.0 : 0.0).epsilon(1e-8).scale(1.0));
            }
            Mat4 star = hodge_star(s.omega[a], s);
            for (int m = 0; m < 4; ++m)
                for (int n = 0; n < 4; ++n)
                    CHECK(star[m][n] == doctest::Approx(s.omega[a][m][n]).epsilon(1e-10).scale(1.0));
        }
    }
    // a point on the string is rejected
    CHECK_THROWS_AS(hyperkahler_triple(cfg, Vec3{1, 0, -0.5}), gauge_singular);
}

TEST_CASE("rotating the configuration about the gauge axis rotates the samples") {
    GHConfig cfg = two_center();
    double c = std::cos(0.7), s = std::sin(0.7);
    auto rot = [&](Vec3 v) { return Vec3{c * v.x - s * v.y, s * v.x + c * v.y, v.z}; };
    GHConfig rcfg = cfg;
    for (auto& z : rcfg.zeta) z = rot(z);
    std::mt19937 rng(67);
    for (int t = 0; t < 20; ++t) {
        Vec3 q = random_point(rng, cfg);
        CHECK(f_zeta(cfg, q) == doctest::Approx(f_zeta(rcfg, rot(q))).epsilon(1e-12));
    }
}

TEST_CASE("closure residual: second order for the triple, obstructed for the control") {
    GHConfig cfg = two_center();
    auto pts = string_safe_points(cfg, grid_points(cfg, 0.2), 0.45);
    REQUIRE(pts.size() > 50);
    double r1 = closure_residual(cfg, pts, 0.2);
    double r2 = closure_residual(cfg, pts, 0.1);
    double r4 = closure_residual(cfg, pts, 0.05);
    CHECK(r1 / r2 == doctest::Approx(4.0).epsilon(0.2));
    CHECK(r2 / r4 == doctest::Approx(4.0).epsilon(0.2));

    // single monopole: same order as the harmonic residual scale
    GHConfig mono;
    mono.zeta = {Vec3{0, 0, 0}};
    mono.extent = 2.0;
    mono.exclusion = 0.5;
    auto mpts = string_safe_points(mono, grid_points(mono, 0.2), 0.45);
    double rm1 = closure_residual(mono, mpts, 0.1);
    double rm2 = closure_residual(mono, mpts, 0.05);
    CHECK(rm1 / rm2 == doctest::Approx(4.0).epsilon(0.2));

    // control with the connection dropped: d(f dx_b ^ dx_c) = @_a f vol != 0
    double c1 = closure_residual(cfg, pts, 0.1, true);
    double c2 = closure_residual(cfg, pts, 0.05, true);
    CHECK(c1 > 0.1);
    CHECK(c2 > 0.1);
    CHECK(c1 / c2 == doctest::Approx(1.0).epsilon(0.05)); // not shrinking with h
}

TEST_CASE("ale decay: slope near -4, doubling radii shrinks by about 2^4") {
    GHConfig cfg = two_center();
    std::vector<double> radii = {2.0, 2.0 * std::sqrt(2.0), 4.0, 4.0 * std::sqrt(2.0), 8.0};
    DecayFit fit = ale_decay_fit(cfg, radii);
    REQUIRE_FALSE(fit.flat);
    CHECK_FALSE(fit.unreliable);
    CHECK(fit.slope > -4.5);
    CHECK(fit.slope < -3.5);
    // consecutive radii differ by sqrt(2): doubling r is two steps
    double ratio = fit.norms[0] / fit.norms[2];
    CHECK(ratio == doctest::Approx(16.0).epsilon(0.5));

    // radii inside the monopole region are flagged
    DecayFit warn = ale_decay_fit(cfg, {1.0, 2.0, 4.0});
    CHECK(warn.unreliable);
}

TEST_CASE("ale decay: the one-center space is the flat model") {
    GHConfig mono;
    mono.zeta = {Vec3{0, 0, 0}};
    DecayFit fit = ale_decay_fit(mono, {2.0, 4.0, 8.0});
    CHECK(fit.flat);
    for (double n : fit.norms) CHECK(n < 1e-12);
}

TEST_CASE("sphere area: quadrature equals the calibration period") {
    GHConfig cfg = two_center();
    auto res = sphere_area(cfg, cfg.zeta[0], cfg.zeta[1]);
    CHECK(res.relative_gap < 1e-10);
    // candidate closed form 2*pi*|z1 - z0|, confirmed by the calibration oracle
    CHECK(res.calibration == doctest::Approx(4.0 * M_PI).epsilon(1e-10));
    CHECK(res.area == doctest::Approx(4.0 * M_PI).epsilon(1e-10));

    // degenerate segment has zero area
    auto degen = sphere_area(cfg, cfg.zeta[0], cfg.zeta[0]);
    CHECK(degen.area == 0.0);

    // a segment through an interior monopole is rejected
    GHConfig four;
    four.zeta = {Vec3{-2, 0, 0}, Vec3{-1, 0, 0}, Vec3{1, 0, 0}, Vec3{2, 0, 0}};
    CHECK_THROWS_AS(sphere_area(four, four.zeta[0], four.zeta[3]), invalid_segment);
    auto ok = sphere_area(four, four.zeta[1], four.zeta[2]);
    CHECK(ok.relative_gap < 1e-10);
}

TEST_CASE("sphere area scales linearly with the configuration") {
    GHConfig cfg = two_center();
    GHConfig scaled = cfg;
    for (auto& z : scaled.zeta) z = 1.75 * z;
    auto a1 = sphere_area(cfg, cfg.zeta[0], cfg.zeta[1]);
    auto a2 = sphere_area(scaled, scaled.zeta[0], scaled.zeta[1]);
    CHECK(a2.area == doctest::Approx(1.75 * a1.area).epsilon(1e-6));
}

TEST_CASE("sphere area at doubled resolution agrees (quadrature stability)") {
    GHConfig cfg = two_center();
    GHConfig dbl = cfg;
    dbl.seg_nodes *= 2;
    dbl.fiber_nodes *= 2;
    auto a1 = sphere_area(cfg, cfg.zeta[0], cfg.zeta[1]);
    auto a2 = sphere_area(dbl, dbl.zeta[0], dbl.zeta[1]);
    CHECK(a1.area == doctest::Approx(a2.area).epsilon(1e-9));
}
