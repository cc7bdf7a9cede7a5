#pragma once

#include <array>
#include <cmath>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "kummer/quat.hpp"

namespace kummer {

/// Klein's finite subgroups of Sp(1): cyclic, dicyclic and the binary
/// polyhedral groups, acting on H by right multiplication.
enum class GroupFamily { Cyclic, Dicyclic, BinaryTetrahedral, BinaryOctahedral, BinaryIcosahedral };

struct GroupLabel {
    GroupFamily family;
    int n = 0; // N for C_N, m for Dic_m; unused otherwise

    static GroupLabel C(int N) { return {GroupFamily::Cyclic, N}; }
    static GroupLabel Dic(int m) { return {GroupFamily::Dicyclic, m}; }
    static GroupLabel T2() { return {GroupFamily::BinaryTetrahedral, 0}; }
    static GroupLabel O2() { return {GroupFamily::BinaryOctahedral, 0}; }
    static GroupLabel I2() { return {GroupFamily::BinaryIcosahedral, 0}; }

    int order() const {
        switch (family) {
            case GroupFamily::Cyclic: return n;
            case GroupFamily::Dicyclic: return 4 * n;
            case GroupFamily::BinaryTetrahedral: return 24;
            case GroupFamily::BinaryOctahedral: return 48;
            case GroupFamily::BinaryIcosahedral: return 120;
        }
        return 0;
    }
    std::string str() const {
        switch (family) {
            case GroupFamily::Cyclic: return "C" + std::to_string(n);
            case GroupFamily::Dicyclic: return "Dic" + std::to_string(n);
            case GroupFamily::BinaryTetrahedral: return "2T";
            case GroupFamily::BinaryOctahedral: return "2O";
            case GroupFamily::BinaryIcosahedral: return "2I";
        }
        return "?";
    }
    friend bool operator==(const GroupLabel& a, const GroupLabel& b) {
        return a.family == b.family && a.n == b.n;
    }
};

/// exp(pi * i * p / q) for the angles whose cosine/sine live in
/// Q(sqrt2, sqrt3, sqrt5); empty if the angle is not representable.
inline std::optional<Quat> exact_exp_i(int p, int q) {
    // reduce p/q mod 2
    p = ((p % (2 * q)) + 2 * q) % (2 * q);
    auto make = [](FieldScalar c, FieldScalar s) { return Quat{c, s, 0, 0}; };
    const FieldScalar half = frac(1, 2);
    const FieldScalar s3h = frac(1, 2) * FieldScalar::sqrt3();
    const FieldScalar s2h = frac(1, 2) * FieldScalar::sqrt2();
    // table of cos(pi t), sin(pi t) for t = p/q with q | 12 and q != 5-ish
    // normalize to denominator 12 if possible
    if ((12 * p) % q != 0) return std::nullopt;
    int t = (12 * p) / q; // angle = pi * t / 12, t in [0, 24)
    switch (t % 24) {
        case 0: return make(1, 0);
        case 3: return make(s2h, s2h);
        case 4: return make(half, s3h);
        case 6: return make(0, 1);
        case 8: return make(-half, s3h);
        case 9: return make(-s2h, s2h);
        case 12: return make(FieldScalar(-1), 0);
        case 15: return make(-s2h, -s2h);
        case 16: return make(-half, -s3h);
        case 18: return make(0, FieldScalar(-1));
        case 20: return make(half, -s3h);
        case 21: return make(s2h, -s2h);
        case 2: return make(s3h, half);
        case 10: return make(-s3h, half);
        case 14: return make(-s3h, -half);
        case 22: return make(s3h, -half);
        default: return std::nullopt;
    }
}

struct FiniteSubgroup {
    GroupLabel label;
    std::vector<Quat> elements;
    std::vector<Quat> generators;

    bool contains(const Quat& q) const {
        for (const auto& e : elements)
            if (e == q) return true;
        return false;
    }
    int index_of(const Quat& q) const {
        for (size_t i = 0; i < elements.size(); ++i)
            if (elements[i] == q) return int(i);
        return -1;
    }
    bool is_closed() const {
        for (const auto& a : elements)
            for (const auto& b : elements)
                if (!contains(a * b)) return false;
        return true;
    }
};

namespace detail {
inline std::vector<Quat> close_under_multiplication(std::vector<Quat> gens, size_t cap) {
    std::map<std::string, Quat> seen;
    std::vector<Quat> frontier;
    Quat one = Quat::one();
    seen.emplace(one.key(), one);
    frontier.push_back(one);
    for (auto& g : gens) {
        if (seen.emplace(g.key(), g).second) frontier.push_back(g);
    }
    while (!frontier.empty()) {
        Quat q = frontier.back();
        frontier.pop_back();
        for (const auto& g : gens) {
            Quat p = q * g;
            if (seen.emplace(p.key(), p).second) {
                if (seen.size() > cap)
                    throw std::logic_error("group closure exceeded expected order");
                frontier.push_back(p);
            }
        }
    }
    std::vector<Quat> out;
    out.reserve(seen.size());
    for (auto& kv : seen) out.push_back(kv.second);
    return out;
}
} // namespace detail

/// Builds the finite subgroup exactly.  Cyclic generation is exact for
/// N in {1,2,3,4,6} (the crystallographic cases occurring in the flat
/// orbifolds) and dicyclic for m in {1,2,3,4,6}; other orders need the
/// numeric fallback generate_subgroup_numeric.
inline FiniteSubgroup generate_subgroup(const GroupLabel& label) {
    std::vector<Quat> gens;
    switch (label.family) {
        case GroupFamily::Cyclic: {
            auto g = exact_exp_i(2, label.n);
            if (label.n < 1 || !g)
                throw std::invalid_argument(
                    "generate_subgroup: C_" + std::to_string(label.n) +
                    " has no exact generator in Q(sqrt2,sqrt3,sqrt5); use "
                    "generate_subgroup_numeric");
            gens = {*g};
            break;
        }
        case GroupFamily::Dicyclic: {
            auto g = exact_exp_i(1, label.n);
            if (label.n < 1 || !g)
                throw std::invalid_argument(
                    "generate_subgroup: Dic_" + std::to_string(label.n) +
                    " has no exact generator in Q(sqrt2,sqrt3,sqrt5); use "
                    "generate_subgroup_numeric");
            gens = {*g, Quat::j()};
            break;
        }
        case GroupFamily::BinaryTetrahedral: {
            Quat w{frac(1, 2), frac(1, 2), frac(1, 2), frac(1, 2)};
            gens = {w, Quat::i()};
            break;
        }
        case GroupFamily::BinaryOctahedral: {
            Quat w{frac(1, 2), frac(1, 2), frac(1, 2), frac(1, 2)};
            FieldScalar s2h = frac(1, 2) * FieldScalar::sqrt2();
            Quat c{s2h, s2h, 0, 0}; // exp(i pi/4)
            gens = {w, c, Quat::j()};
            break;
        }
        case GroupFamily::BinaryIcosahedral: {
            Quat w{frac(1, 2), frac(1, 2), frac(1, 2), frac(1, 2)};
            // (phi + phi^{-1} i + j)/2 with phi the golden ratio
            FieldScalar phi = frac(1, 2) * (FieldScalar::one() + FieldScalar::sqrt5());
            FieldScalar phinv = frac(1, 2) * (FieldScalar::sqrt5() - FieldScalar::one());
            Quat t{frac(1, 2) * phi, frac(1, 2) * phinv, frac(1, 2), FieldScalar()};
            gens = {w, t};
            break;
        }
    }
    FiniteSubgroup G;
    G.label = label;
    G.generators = gens;
    G.elements = detail::close_under_multiplication(gens, size_t(label.order()));
    if (int(G.elements.size()) != label.order())
        throw std::logic_error("generate_subgroup: closure order " +
                               std::to_string(G.elements.size()) + " != expected " +
                               std::to_string(label.order()));
    return G;
}

/// Floating-point generation for cyclic groups of arbitrary N (declared
/// tolerance 1e-12 for deduplication).
inline std::vector<std::array<double, 4>> generate_subgroup_numeric(int N) {
    if (N < 1) throw std::invalid_argument("generate_subgroup_numeric: N >= 1");
    std::vector<std::array<double, 4>> out;
    for (int a = 0; a < N; ++a) {
        double th = 2.0 * M_PI * a / N;
        out.push_back({std::cos(th), std::sin(th), 0.0, 0.0});
    }
    return out;
}

/// Conjugation action of the rotation R = (a, b) on right multiplications:
/// R M_gamma R^{-1} = M_{b gamma conj(b)}.  Only the right factor matters.
inline Quat conjugate_into(const RotationH& R, const Quat& gamma) {
    return R.b * gamma * R.b.conj();
}

inline bool normalizes(const RotationH& R, const FiniteSubgroup& G) {
    for (const auto& g : G.generators)
        if (!G.contains(conjugate_into(R, g))) return false;
    return true;
}
inline bool centralizes(const RotationH& R, const FiniteSubgroup& G) {
    for (const auto& g : G.elements)
        if (conjugate_into(R, g) != g) return false;
    return true;
}

enum class AlphaSign { PlusOne, MinusOne, NotInNormalizer, NotApplicable };

/// Sign recording whether a normalizing rotation centralizes the cyclic
/// group C_N; only defined for cyclic groups.
inline AlphaSign alpha_sign(const RotationH& R, const FiniteSubgroup& G) {
    if (G.label.family != GroupFamily::Cyclic) return AlphaSign::NotApplicable;
    if (centralizes(R, G)) return AlphaSign::PlusOne;
    if (normalizes(R, G)) return AlphaSign::MinusOne;
    return AlphaSign::NotInNormalizer;
}

/// Permutation of group elements induced by conjugation with R; requires R
/// in the normalizer.
inline std::vector<int> conjugation_permutation(const RotationH& R, const FiniteSubgroup& G) {
    std::vector<int> perm(G.elements.size());
    for (size_t i = 0; i < G.elements.size(); ++i) {
        int j = G.index_of(conjugate_into(R, G.elements[i]));
        if (j < 0)
            throw std::invalid_argument("conjugation_permutation: rotation is not in the normalizer");
        perm[i] = j;
    }
    return perm;
}

} // namespace kummer
