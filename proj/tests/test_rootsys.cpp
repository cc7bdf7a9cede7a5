#include "doctest.h"

#include <random>

#include "kummer/mckay.hpp"
#include "kummer/rootsys.hpp"

using namespace kummer;

namespace {

ImVec iv(std::int64_t a, std::int64_t b, std::int64_t c) { return ImVec::of_ints(a, b, c); }

CartanWeight weight_i(std::initializer_list<std::int64_t> multiples) {
    std::vector<ImVec> e;
    for (auto m : multiples) e.push_back(iv(m, 0, 0));
    return CartanWeight(std::move(e));
}

CartanWeight random_weight(std::mt19937& rng, int dim) {
    std::uniform_int_distribution<std::int64_t> d(-4, 4);
    std::vector<ImVec> e;
    for (int m = 0; m < dim; ++m) e.push_back(iv(d(rng), d(rng), d(rng)));
    return CartanWeight(std::move(e));
}

MatQ random_weyl(std::mt19937& rng, const RootSystem& rs, int words = 6) {
    std::uniform_int_distribution<size_t> d(0, rs.roots.size() - 1);
    MatQ w = MatQ::identity(rs.ambient);
    for (int t = 0; t < words; ++t) w = w * weyl_reflection(rs, rs.roots[d(rng)]);
    return w;
}

} // namespace

TEST_CASE("root counts match the type") {
    CHECK(build_root_system(RootType::A, 1).roots.size() == 2);
    CHECK(build_root_system(RootType::A, 2).roots.size() == 6);
    CHECK(build_root_system(RootType::D, 5).roots.size() == 40);
    CHECK(build_root_system(RootType::E6).roots.size() == 72);
    CHECK(build_root_system(RootType::E7).roots.size() == 126);
    CHECK(build_root_system(RootType::E8).roots.size() == 240);
}

TEST_CASE("roots close under negation and simple roots form a basis") {
    for (auto rs : {build_root_system(RootType::A, 3), build_root_system(RootType::D, 5),
                    build_root_system(RootType::E6)}) {
        for (const auto& th : rs.roots) {
            RootVec neg(th.size());
            for (size_t i = 0; i < th.size(); ++i) neg[i] = -th[i];
            CHECK(rs.is_root(neg));
        }
        CHECK(int(rs.simple_roots.size()) == rs.rank);
        CHECK(rs.simple_roots.size() + rs.complement.size() == size_t(rs.ambient));
    }
}

TEST_CASE("weight evaluation is linear on roots") {
    auto D5 = build_root_system(RootType::D, 5);
    std::mt19937 rng(97);
    for (int t = 0; t < 30; ++t) {
        CartanWeight z = random_weight(rng, 5);
        const RootVec& a = D5.roots[rng() % D5.roots.size()];
        const RootVec& b = D5.roots[rng() % D5.roots.size()];
        RootVec sum(5);
        for (int m = 0; m < 5; ++m) sum[m] = a[m] + b[m];
        CHECK(z.evaluate(sum) == z.evaluate(a) + z.evaluate(b));
    }
}

TEST_CASE("in_delta_circ worked examples") {
    auto A1 = build_root_system(RootType::A, 1);
    CHECK(in_delta_circ(weight_i({-1, 1}), A1));
    CHECK_FALSE(in_delta_circ(weight_i({1, 1}), A1)); // equal points: root hits zero

    auto D5 = build_root_system(RootType::D, 5);
    CHECK(in_delta_circ(weight_i({0, 1, 2, 3, 4}), D5));
    CHECK_FALSE(in_delta_circ(weight_i({0, 1, 2, 3, -3}), D5)); // e4 + e5 vanishes
    CHECK_THROWS_AS(in_delta_circ(weight_i({0, 1}), D5), std::invalid_argument);
}

TEST_CASE("weyl_canonical: A-type sorts, D-type respects even signs") {
    auto A2 = build_root_system(RootType::A, 2);
    CartanWeight w1({iv(1, 0, 0), iv(-1, 0, 0), iv(0, 0, 0)});
    CartanWeight w2({iv(0, 0, 0), iv(1, 0, 0), iv(-1, 0, 0)});
    CHECK(weyl_canonical(w1, A2).canonical == weyl_canonical(w2, A2).canonical);

    auto D5 = build_root_system(RootType::D, 5);
    CartanWeight d1 = weight_i({0, -1, 2, -3, 4}); // two sign flips from the reference
    CartanWeight d2 = weight_i({0, 1, 2, 3, 4});
    CHECK(weyl_canonical(d1, D5).canonical == weyl_canonical(d2, D5).canonical);

    // odd flips are not in W unless a zero entry absorbs them
    CartanWeight d3({iv(1, 0, 0), iv(2, 0, 0), iv(3, 0, 0), iv(4, 0, 0), iv(-5, 0, 0)});
    CartanWeight d4({iv(1, 0, 0), iv(2, 0, 0), iv(3, 0, 0), iv(4, 0, 0), iv(5, 0, 0)});
    CHECK(weyl_canonical(d3, D5).canonical != weyl_canonical(d4, D5).canonical);

    // idempotence
    auto c = weyl_canonical(d3, D5).canonical;
    CHECK(weyl_canonical(c, D5).canonical == c);
}

TEST_CASE("weyl_canonical witness reproduces the canonical form") {
    std::mt19937 rng(17);
    for (auto rs : {build_root_system(RootType::A, 3), build_root_system(RootType::D, 5),
                    build_root_system(RootType::E6)}) {
        for (int t = 0; t < 25; ++t) {
            CartanWeight z = random_weight(rng, rs.ambient);
            auto cw = weyl_canonical(z, rs);
            CHECK(z.compose(cw.witness) == cw.canonical);
        }
    }
}

TEST_CASE("weyl_canonical is constant on orbits") {
    std::mt19937 rng(19);
    for (auto rs : {build_root_system(RootType::A, 4), build_root_system(RootType::D, 5),
                    build_root_system(RootType::E6)}) {
        for (int t = 0; t < 100; ++t) {
            CartanWeight z = random_weight(rng, rs.ambient);
            CartanWeight moved = z.compose(random_weyl(rng, rs));
            CHECK(weyl_canonical(z, rs).canonical == weyl_canonical(moved, rs).canonical);
        }
    }
}

TEST_CASE("A/D canonical rules agree with the dominance chain on orbit equality") {
    std::mt19937 rng(29);
    for (auto rs : {build_root_system(RootType::A, 3), build_root_system(RootType::D, 4)}) {
        for (int t = 0; t < 50; ++t) {
            CartanWeight z = random_weight(rng, rs.ambient);
            CartanWeight w = z.compose(random_weyl(rng, rs));
            CHECK(weyl_canonical_chain(z, rs).canonical == weyl_canonical_chain(w, rs).canonical);
            // the two canonicalizations induce the same orbit partition
            CartanWeight other = random_weight(rng, rs.ambient);
            bool eq_rule = weyl_canonical(z, rs).canonical == weyl_canonical(other, rs).canonical;
            bool eq_chain =
                weyl_canonical_chain(z, rs).canonical == weyl_canonical_chain(other, rs).canonical;
            CHECK(eq_rule == eq_chain);
        }
    }
}

TEST_CASE("in_delta_circ is W-invariant") {
    std::mt19937 rng(31);
    auto D5 = build_root_system(RootType::D, 5);
    for (int t = 0; t < 50; ++t) {
        CartanWeight z = random_weight(rng, 5);
        CartanWeight moved = z.compose(random_weyl(rng, D5));
        CHECK(in_delta_circ(z, D5) == in_delta_circ(moved, D5));
    }
}

TEST_CASE("mckay_automorphism worked examples") {
    auto C3 = generate_subgroup(GroupLabel::C(3));
    auto A2 = root_system_for(C3.label);
    // conjugation by q |-> jqj inverts the generator: the A2 diagram flip
    RotationH rm = RotationH::left_right(Quat::j(), Quat::j());
    auto aut = mckay_automorphism(rm, C3, A2);
    CHECK_FALSE(aut.is_identity());
    CHECK(aut.permutes_roots(A2));
    // the flip swaps the two simple roots
    CHECK(aut.matrix.apply(A2.simple_roots[0]) == A2.simple_roots[1]);
    CHECK(aut.matrix.apply(A2.simple_roots[1]) == A2.simple_roots[0]);

    auto C4 = generate_subgroup(GroupLabel::C(4));
    auto A3 = root_system_for(C4.label);
    // conjugation by q |-> iqi fixes powers of e^{i pi/2}
    RotationH rp = RotationH::left_right(Quat::i(), Quat::i());
    CHECK(mckay_automorphism(rp, C4, A3).is_identity());
    CHECK_FALSE(mckay_automorphism(rm, C4, A3).is_identity());

    // a rotation acting trivially on Gamma by conjugation
    RotationH inner(Quat::i(), Quat::one());
    CHECK(mckay_automorphism(inner, C4, A3).is_identity());
}

TEST_CASE("mckay_automorphism on Dic3: inner for j-type, diagram flip for i-type") {
    auto dic3 = generate_subgroup(GroupLabel::Dic(3));
    auto D5 = root_system_for(dic3.label);
    CHECK(D5.label() == "D5");

    // -j is an element of Dic3, so conjugation by q |-> jqj is inner
    RotationH rm = RotationH::left_right(Quat::j(), Quat::j());
    CHECK(mckay_automorphism(rm, dic3, D5).is_identity());

    // -i is not in Dic3: q |-> iqi induces the fork swap e5 -> -e5
    RotationH rp = RotationH::left_right(Quat::i(), Quat::i());
    auto aut = mckay_automorphism(rp, dic3, D5);
    CHECK_FALSE(aut.is_identity());
    CHECK(aut.permutes_roots(D5));
    RootVec e5{Rational(0), Rational(0), Rational(0), Rational(0), Rational(1)};
    auto img = aut.matrix.apply(e5);
    CHECK(img[4] == Rational(-1));
    for (int i = 0; i < 4; ++i) CHECK(img[i].is_zero());
}

TEST_CASE("mckay_automorphism is a homomorphism on a fixed Gamma") {
    auto dic3 = generate_subgroup(GroupLabel::Dic(3));
    auto D5 = root_system_for(dic3.label);
    RotationH rp = RotationH::left_right(Quat::i(), Quat::i());
    RotationH rm = RotationH::left_right(Quat::j(), Quat::j());
    std::vector<RotationH> gens = {rp, rm, compose(rp, rm), RotationH::identity()};
    for (const auto& R : gens)
        for (const auto& S : gens) {
            auto lhs = mckay_automorphism(compose(R, S), dic3, D5);
            auto rhs = mckay_automorphism(R, dic3, D5).matrix *
                       mckay_automorphism(S, dic3, D5).matrix;
            CHECK(lhs.matrix == rhs);
        }
}

TEST_CASE("exceptional groups: inner conjugations give the identity; 2T flips E6") {
    auto t2 = generate_subgroup(GroupLabel::T2());
    auto E6 = root_system_for(t2.label);
    // conjugation by an element of 2T itself is inner
    Quat w{frac(1, 2), frac(1, 2), frac(1, 2), frac(1, 2)};
    CHECK(mckay_automorphism(RotationH(Quat::one(), w), t2, E6).is_identity());
    // conjugation by exp(i pi/4) in 2O \ 2T induces the E6 diagram flip
    FieldScalar s2h = frac(1, 2) * FieldScalar::sqrt2();
    Quat c8{s2h, s2h, 0, 0};
    auto aut = mckay_automorphism(RotationH(Quat::one(), c8), t2, E6);
    CHECK_FALSE(aut.is_identity());
    CHECK(aut.permutes_roots(E6));
    CHECK((aut.matrix * aut.matrix).is_identity());

    auto o2 = generate_subgroup(GroupLabel::O2());
    auto E7 = root_system_for(o2.label);
    CHECK(mckay_automorphism(RotationH(Quat::one(), c8), o2, E7).is_identity());
}

TEST_CASE("character tables build and verify for every family") {
    // orthogonality is asserted inside character_table
    for (auto label : {GroupLabel::C(2), GroupLabel::C(3), GroupLabel::C(4), GroupLabel::C(6),
                       GroupLabel::Dic(2), GroupLabel::Dic(3), GroupLabel::Dic(4),
                       GroupLabel::T2(), GroupLabel::O2(), GroupLabel::I2()}) {
        auto G = generate_subgroup(label);
        auto T = character_table(G);
        CHECK(T.rows.size() == T.classes.members.size());
    }
}

TEST_CASE("diagram automorphisms map the root set to itself (randomized)") {
    std::mt19937 rng(37);
    auto dic3 = generate_subgroup(GroupLabel::Dic(3));
    auto D5 = root_system_for(dic3.label);
    RotationH rp = RotationH::left_right(Quat::i(), Quat::i());
    RotationH rm = RotationH::left_right(Quat::j(), Quat::j());
    std::vector<RotationH> words = {rp, rm};
    for (int t = 0; t < 100; ++t) {
        RotationH R = words[rng() % words.size()];
        for (int reps = 0; reps < int(rng() % 3); ++reps) R = compose(R, words[rng() % words.size()]);
        auto aut = mckay_automorphism(R, dic3, D5);
        std::uniform_int_distribution<size_t> d(0, D5.roots.size() - 1);
        CHECK(D5.is_root(aut.matrix.apply(D5.roots[d(rng)])));
    }
}
