#include "doctest.h"

#include <random>

#include "kummer/cli.hpp"
#include "kummer/coassoc.hpp"

using namespace kummer;

namespace {
ImVec iv(std::int64_t a, std::int64_t b, std::int64_t c) { return ImVec::of_ints(a, b, c); }

Zeta gh_i(std::initializer_list<std::int64_t> mult) {
    std::vector<ImVec> pts;
    for (auto m : mult) pts.push_back(iv(m, 0, 0));
    return Zeta::gh(std::move(pts));
}

CoassocData gh_data(int row, Zeta z, ImVec z0, ImVec z1) {
    CoassocData d;
    d.sphere = SphereDesc::segment(std::move(z0), std::move(z1));
    d.xi1_hat = ImVec::i();
    d.xi2 = ImVec::j();
    d.xi3 = ImVec::k();
    d.base_point = ImVec::zero();
    d.group = row == 0 ? BieberbachGroup::lattice_only() : family_row_group(row);
    d.gamma = row == 0 ? GroupLabel::C(2) : family_row_gamma(row);
    d.zeta = std::move(z);
    return d;
}

Zeta dic3_zeta() {
    return Zeta::kronheimer(
        CartanWeight({iv(0, 0, 0), iv(1, 0, 0), iv(2, 0, 0), iv(3, 0, 0), iv(4, 0, 0)}),
        RootType::D, 5);
}

CoassocData dic3_data(const SphereDesc& sphere) {
    CoassocData d;
    d.sphere = sphere;
    d.xi1_hat = ImVec::i();
    d.xi2 = ImVec::j();
    d.xi3 = ImVec::k();
    d.base_point = ImVec::zero();
    d.group = family_row_group(6);
    d.gamma = GroupLabel::Dic(3);
    d.zeta = dic3_zeta();
    return d;
}
} // namespace

TEST_CASE("count_spheres: the worked parameter families") {
    CHECK(count_spheres(gh_i({-1, 1}), ImVec::i()).embedded.size() == 1);
    CHECK(count_spheres(gh_i({-1, 0, 1}), ImVec::i()).embedded.size() == 2);
    CHECK(count_spheres(gh_i({-2, -1, 1, 2}), ImVec::i()).embedded.size() == 3);
    CHECK(count_spheres(gh_i({-3, -2, -1, 1, 2, 3}), ImVec::i()).embedded.size() == 5);
    auto d5 = count_spheres(dic3_zeta(), ImVec::i());
    CHECK(d5.embedded.size() == 5);
    CHECK(d5.nodal.size() == 15); // remaining root pairs decompose

    // blocked segments are reported separately, not as spheres
    auto four = count_spheres(gh_i({-2, -1, 1, 2}), ImVec::i());
    CHECK(four.nodal.size() == 3);

    CHECK_THROWS_AS(count_spheres(gh_i({1, 1, -2}), ImVec::i()), std::invalid_argument);
}

TEST_CASE("count_spheres is invariant under a global exact rotation") {
    // conjugation by (1+i+j+k)/2 cycles i -> j -> k -> i
    Quat w{frac(1, 2), frac(1, 2), frac(1, 2), frac(1, 2)};
    Mat3F rot = lambda2_plus(RotationH(w, Quat::one()));
    for (auto mult : {std::initializer_list<std::int64_t>{-1, 1},
                      std::initializer_list<std::int64_t>{-2, -1, 1, 2}}) {
        Zeta z = gh_i(mult);
        Zeta rz = Zeta::gh({});
        for (const auto& p : z.gh_points) rz.gh_points.push_back(rot * p);
        CHECK(count_spheres(z, ImVec::i()).embedded.size() ==
              count_spheres(rz, rot * ImVec::i()).embedded.size());
    }
}

TEST_CASE("check_assumption worked examples") {
    auto d = gh_data(0, gh_i({-1, 1}), iv(-1, 0, 0), iv(1, 0, 0));
    CHECK(all_pass(check_assumption(d)));

    auto bad1 = d;
    bad1.xi2 = ImVec::i(); // not orthogonal to xi1
    auto conds1 = check_assumption(bad1);
    CHECK_FALSE(all_pass(conds1));

    auto bad2 = d;
    bad2.xi2 = iv(1, 1, 0); // <i+j, i> = 1 != 0
    CHECK_FALSE(all_pass(check_assumption(bad2)));

    // segment through an interior monopole is not a sphere
    auto blocked = gh_data(0, gh_i({-2, -1, 1, 2}), iv(-2, 0, 0), iv(2, 0, 0));
    CHECK_FALSE(all_pass(check_assumption(blocked)));

    // Kronheimer data
    auto kd = dic3_data(SphereDesc::root(
        {Rational(1), Rational(-1), Rational(0), Rational(0), Rational(0)}));
    CHECK(all_pass(check_assumption(kd)));
}

TEST_CASE("classify_embedding: lattice-only data is embedded") {
    auto d = gh_data(0, gh_i({-1, 1}), iv(-1, 0, 0), iv(1, 0, 0));
    auto cls = classify_embedding(d);
    CHECK(cls.status == Status::Embedded);
    CHECK(cls.cover_degree == 1);
}

TEST_CASE("classify_embedding: the C2 and C3 strata give 2-fold covers") {
    // C2 stratum with both extra generators
    auto c2 = gh_data(1, gh_i({-1, 1}), iv(-1, 0, 0), iv(1, 0, 0));
    auto cls2 = classify_embedding(c2);
    CHECK(cls2.status == Status::KFoldCover);
    CHECK(cls2.cover_degree == 2);

    // C3 stratum, both spheres
    for (auto seg : {std::make_pair(iv(-1, 0, 0), iv(0, 0, 0)),
                     std::make_pair(iv(0, 0, 0), iv(1, 0, 0))}) {
        auto c3 = gh_data(2, gh_i({-1, 0, 1}), seg.first, seg.second);
        auto cls3 = classify_embedding(c3);
        CHECK(cls3.status == Status::KFoldCover);
        CHECK(cls3.cover_degree == 2);
    }

    // C4 and C6 strata: every sphere is a double cover
    for (auto row_zeta :
         {std::make_pair(4, gh_i({-2, -1, 1, 2})), std::make_pair(5, gh_i({-3, -2, -1, 1, 2, 3}))}) {
        auto spheres = count_spheres(row_zeta.second, ImVec::i());
        for (const auto& s : spheres.embedded) {
            auto d = gh_data(row_zeta.first, row_zeta.second, s.z0, s.z1);
            auto cls = classify_embedding(d);
            CHECK(cls.status == Status::KFoldCover);
            CHECK(cls.cover_degree == 2);
        }
    }
}

TEST_CASE("classify_embedding: the Dic3 stratum has one embedded coassociative among five") {
    auto spheres = count_spheres(dic3_zeta(), ImVec::i());
    REQUIRE(spheres.embedded.size() == 5);
    std::vector<CoassocData> data;
    std::vector<Classification> cls;
    int embedded_count = 0, cover_count = 0;
    for (const auto& s : spheres.embedded) {
        data.push_back(dic3_data(s));
        cls.push_back(classify_embedding(data.back()));
        if (cls.back().status == Status::Embedded) ++embedded_count;
        if (cls.back().status == Status::KFoldCover) {
            ++cover_count;
            CHECK(cls.back().cover_degree == 2);
        }
    }
    // two sphere choices are stabilizer-free but carried onto each other by
    // the group: they describe the same embedded coassociative
    CHECK(embedded_count == 2);
    CHECK(cover_count == 3);

    // dedup by the group action: exactly one distinct embedded coassociative
    std::vector<int> embedded_idx;
    for (size_t i = 0; i < cls.size(); ++i)
        if (cls[i].status == Status::Embedded) embedded_idx.push_back(int(i));
    REQUIRE(embedded_idx.size() == 2);
    CHECK(data_equivalent(data[embedded_idx[0]], data[embedded_idx[1]]));

    // the covers are pairwise inequivalent and inequivalent to the embedded
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
    CHECK(distinct_embedded == 1);
    CHECK(seen.size() == 4); // 1 embedded + 3 covers
}

TEST_CASE("classify_embedding invariances") {
    auto d = gh_data(2, gh_i({-1, 0, 1}), iv(-1, 0, 0), iv(0, 0, 0));
    auto base = classify_embedding(d);

    auto swapped = d;
    std::swap(swapped.xi2, swapped.xi3);
    auto cls_sw = classify_embedding(swapped);
    CHECK(cls_sw.status == base.status);
    CHECK(cls_sw.cover_degree == base.cover_degree);

    for (auto shift : {d.xi2, d.xi3, d.xi2 + d.xi3, -d.xi2}) {
        auto moved = d;
        moved.base_point = d.base_point + shift;
        auto cls_mv = classify_embedding(moved);
        CHECK(cls_mv.status == base.status);
        CHECK(cls_mv.cover_degree == base.cover_degree);
    }
}

TEST_CASE("classify_embedding: sublattice pairs give covers from the lattice itself") {
    // xi2 = j+k, xi3 = j-k generate an index-2 sublattice of the plane lattice
    auto d = gh_data(0, gh_i({-1, 1}), iv(-1, 0, 0), iv(1, 0, 0));
    d.xi2 = iv(0, 1, 1);
    d.xi3 = iv(0, 1, -1);
    auto cls = classify_embedding(d);
    CHECK(cls.status == Status::KFoldCover);
    CHECK(cls.cover_degree == 2);
}

TEST_CASE("model volume: scaling and the frozen area oracle") {
    auto d = gh_data(0, gh_i({-1, 1}), iv(-1, 0, 0), iv(1, 0, 0));
    CHECK(model_volume(d, 0.0) == 0.0);

    auto res = model_volume_coefficient(d);
    // covolume(j, k) = 1, sphere area = the calibration-period value 4*pi
    CHECK(res.coefficient == doctest::Approx(4.0 * M_PI).epsilon(1e-9));
    CHECK(res.area_source == "quadrature");

    // log-log slope in t is exactly 2
    double v1 = model_volume(d, 0.2), v2 = model_volume(d, 0.1);
    CHECK(std::log(v1 / v2) / std::log(2.0) == doctest::Approx(2.0).epsilon(1e-12));

    // Kronheimer spheres need an external area
    auto kd = dic3_data(SphereDesc::root(
        {Rational(1), Rational(-1), Rational(0), Rational(0), Rational(0)}));
    CHECK_THROWS_AS(model_volume(kd, 0.5), requires_external_area);
    CHECK(model_volume(kd, 0.5, 2.0 * M_PI) == doctest::Approx(0.25 * 2.0 * M_PI).epsilon(1e-12));
}

TEST_CASE("flat model residual") {
    double r0 = flat_model_residual({1, 0, 0}, {0, 1, 0}, {0, 0, 1});
    CHECK(r0 < 1e-14);

    // tilting xi2 towards xi1 breaks the calibration
    double r1 = flat_model_residual({1, 0, 0}, {0.1, 1, 0}, {0, 0, 1});
    CHECK(r1 > 1e-3);

    // permuting xi2 and xi3 leaves the residual unchanged
    double a = flat_model_residual({1, 0, 0}, {0.1, 1, 0}, {0, 0, 1});
    double b = flat_model_residual({1, 0, 0}, {0, 0, 1}, {0.1, 1, 0});
    CHECK(a == doctest::Approx(b).epsilon(1e-12));

    // another orthogonal configuration, off the coordinate axes
    double r2 = flat_model_residual({0, 1, 0}, {1, 0, 1}, {1, 0, -1});
    CHECK(r2 < 1e-13);
}

TEST_CASE("perturbation certificate: worked constants and grid oracle") {
    CertificateInput in;
    in.beta = 2.5;
    in.gamma = 1.0;
    in.c = 1.0;
    in.R = 1.0;
    in.c_E = 1.0;
    auto res = perturbation_certificate(in);
    CHECK(res.T > 0);
    CHECK(res.radius_coefficient == 2.0);
    CHECK(res.radius_exponent == doctest::Approx(1.5));
    // brute-force grid oracle: both inequalities hold on 1000 samples below T
    for (int k = 1; k <= 1000; ++k) {
        double t = res.T * k / 1001.0;
        CHECK(certificate_conditions(in, res.c_E, t));
    }
    // and fail just above
    CHECK_FALSE(certificate_conditions(in, res.c_E, res.T * 1.01));

    // beta <= 2 gamma is rejected
    CertificateInput badin = in;
    badin.beta = 1.5;
    CHECK_THROWS_AS(perturbation_certificate(badin), no_certificate);

    // doubling c_E strictly decreases T
    CertificateInput dbl = in;
    dbl.c_E = 2.0;
    CHECK(perturbation_certificate(dbl).T < res.T);

    // the default c_E = c^2 (1 + R) is reported
    CertificateInput defin = in;
    defin.c_E.reset();
    CHECK(perturbation_certificate(defin).c_E == doctest::Approx(2.0));
}

TEST_CASE("model volume scales exactly quadratically") {
    auto d = gh_data(0, gh_i({-1, 1}), iv(-1, 0, 0), iv(1, 0, 0));
    double v1 = model_volume(d, 1.0);
    for (double t : {0.5, 0.25, 0.1, 3.0})
        CHECK(model_volume(d, t) == t * t * v1); // exact float identity
}

TEST_CASE("flat model residual vanishes for every enumerated family member") {
    // rows 1-5 with trivial lattice fiber action: any sphere direction with a
    // representable unit vector, paired with orthogonal primitive lattice
    // vectors, calibrates exactly
    for (int row = 1; row <= 5; ++row) {
        auto members = enumerate_admissible(row, 1);
        REQUIRE(!members.empty());
        for (const auto& z : members) {
            auto spheres_all = z.gh_points;
            for (size_t a = 0; a < spheres_all.size(); ++a)
                for (size_t b = a + 1; b < spheres_all.size(); ++b) {
                    ImVec dir = spheres_all[b] - spheres_all[a];
                    auto unit = cli::unit_direction(dir);
                    if (!unit) continue;
                    auto pairs = orthogonal_primitive_pairs(*unit, LatticeIm::standard(), 1);
                    if (pairs.empty()) continue;
                    auto du = unit->to_double();
                    auto d2 = pairs.front().first.to_double();
                    auto d3 = pairs.front().second.to_double();
                    double r = flat_model_residual({du[0], du[1], du[2]}, {d2[0], d2[1], d2[2]},
                                                   {d3[0], d3[1], d3[2]});
                    CHECK(r < 1e-12);
                }
        }
    }
}

TEST_CASE("resolution spec consistency") {
    ResolutionSpec spec;
    spec.gamma_label = GroupLabel::C(2);
    spec.bieberbach = family_row_group(1);
    spec.zeta = gh_i({-1, 1});
    spec.family_row = 1;
    CHECK(spec.consistent());

    spec.gamma_label = GroupLabel::C(3);
    CHECK_FALSE(spec.consistent()); // two points cannot resolve a C3 stratum

    ResolutionSpec kron;
    kron.gamma_label = GroupLabel::Dic(3);
    kron.bieberbach = family_row_group(6);
    kron.zeta = dic3_zeta();
    kron.family_row = 6;
    CHECK(kron.consistent());
    kron.gamma_label = GroupLabel::Dic(4); // needs D6, not D5
    CHECK_FALSE(kron.consistent());
}

TEST_CASE("family dimension") {
    auto d = gh_data(0, gh_i({-1, 1}), iv(-1, 0, 0), iv(1, 0, 0));
    CHECK(family_dimension(d) == 1);
    CHECK(family_dimension_from_b1(2) == 3);
    auto d2 = d;
    std::swap(d2.xi2, d2.xi3);
    CHECK(family_dimension(d2) == family_dimension(d));
}
