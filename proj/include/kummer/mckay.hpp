#pragma once

#include <algorithm>
#include <functional>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "kummer/groups.hpp"
#include "kummer/rootsys.hpp"

namespace kummer {

/// Complex value with exact real and imaginary parts; character values of
/// the ADE subgroups of Sp(1) all live in Q(sqrt2,sqrt3,sqrt5)(i).
struct CF {
    FieldScalar re, im;

    CF() = default;
    CF(FieldScalar r) : re(std::move(r)) {}
    CF(FieldScalar r, FieldScalar i) : re(std::move(r)), im(std::move(i)) {}
    static CF one() { return CF(FieldScalar::one()); }
    static CF i_unit() { return CF(FieldScalar(), FieldScalar::one()); }

    friend CF operator+(const CF& a, const CF& b) { return {a.re + b.re, a.im + b.im}; }
    friend CF operator-(const CF& a, const CF& b) { return {a.re - b.re, a.im - b.im}; }
    friend CF operator*(const CF& a, const CF& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    CF conj() const { return {re, -im}; }
    /// Galois twist sqrt5 -> -sqrt5 on both parts.
    CF twist5() const { return {re.conjugate(4), im.conjugate(4)}; }
    friend bool operator==(const CF& a, const CF& b) { return a.re == b.re && a.im == b.im; }
    friend bool operator!=(const CF& a, const CF& b) { return !(a == b); }
    bool is_zero() const { return re.is_zero() && im.is_zero(); }
};

struct ConjClasses {
    std::vector<int> class_of;               // element index -> class id
    std::vector<std::vector<int>> members;   // class id -> element indices
    std::vector<int> rep;                    // class id -> representative element
    std::vector<int> elem_order;             // order of the class elements
    std::vector<int> square_class;           // class of rep^2
    std::vector<int> inverse_class;          // class of rep^{-1}
};

namespace detail {
inline int element_order(const FiniteSubgroup& G, int idx) {
    Quat p = G.elements[idx];
    Quat one = Quat::one();
    int n = 1;
    while (!(p == one)) {
        p = p * G.elements[idx];
        ++n;
        if (n > 2 * int(G.elements.size()))
            throw std::logic_error("element_order: runaway");
    }
    return n;
}
} // namespace detail

inline ConjClasses conjugacy_classes(const FiniteSubgroup& G) {
    const int n = int(G.elements.size());
    ConjClasses cc;
    cc.class_of.assign(n, -1);
    std::vector<std::vector<int>> raw;
    for (int i = 0; i < n; ++i) {
        if (cc.class_of[i] >= 0) continue;
        std::vector<int> cls;
        for (const auto& g : G.elements) {
            Quat c = g * G.elements[i] * g.inverse();
            int j = G.index_of(c);
            if (cc.class_of[j] < 0) {
                cc.class_of[j] = int(raw.size());
                cls.push_back(j);
            }
        }
        std::sort(cls.begin(), cls.end());
        raw.push_back(cls);
    }
    // deterministic class order: (element order, size, lex-min member key)
    std::vector<int> ord(raw.size());
    std::vector<std::string> min_key(raw.size());
    for (size_t c = 0; c < raw.size(); ++c) {
        ord[c] = detail::element_order(G, raw[c][0]);
        min_key[c] = G.elements[raw[c][0]].key();
        for (int m : raw[c]) min_key[c] = std::min(min_key[c], G.elements[m].key());
    }
    std::vector<int> perm(raw.size());
    std::iota(perm.begin(), perm.end(), 0);
    std::sort(perm.begin(), perm.end(), [&](int a, int b) {
        if (ord[a] != ord[b]) return ord[a] < ord[b];
        if (raw[a].size() != raw[b].size()) return raw[a].size() < raw[b].size();
        return min_key[a] < min_key[b];
    });
    std::vector<int> inv_perm(raw.size());
    for (size_t i = 0; i < perm.size(); ++i) inv_perm[perm[i]] = int(i);
    cc.members.resize(raw.size());
    cc.rep.resize(raw.size());
    cc.elem_order.resize(raw.size());
    for (size_t c = 0; c < raw.size(); ++c) {
        cc.members[inv_perm[c]] = raw[c];
        cc.rep[inv_perm[c]] = raw[c][0];
        cc.elem_order[inv_perm[c]] = ord[c];
    }
    for (int i = 0; i < n; ++i) cc.class_of[i] = inv_perm[cc.class_of[i]];
    cc.square_class.resize(raw.size());
    cc.inverse_class.resize(raw.size());
    for (size_t c = 0; c < raw.size(); ++c) {
        const Quat& r = G.elements[cc.rep[c]];
        cc.square_class[c] = cc.class_of[G.index_of(r * r)];
        cc.inverse_class[c] = cc.class_of[G.index_of(r.inverse())];
    }
    return cc;
}

/// Exact character table, rows indexed by irreducible representation and
/// columns by conjugacy class.  Built from closed-form data per family
/// (SU(2) symmetric powers, Galois twists, and the small quotient
/// characters); first orthogonality is verified at construction.
struct CharacterTable {
    ConjClasses classes;
    std::vector<std::vector<CF>> rows;
    int trivial_row = 0;
    std::vector<CF> defining; // chi of the 2-dim quaternionic representation
};

namespace detail {

inline std::vector<CF> sym_power(const std::vector<CF>& prev, const std::vector<CF>& prev2,
                                 const std::vector<CF>& t) {
    // chi_{Sym^k} = chi_{Sym^{k-1}} * t - chi_{Sym^{k-2}}
    std::vector<CF> out(t.size());
    for (size_t c = 0; c < t.size(); ++c) out[c] = prev[c] * t[c] - prev2[c];
    return out;
}

inline void verify_orthogonality(const CharacterTable& T, int group_order) {
    const auto& cc = T.classes;
    for (size_t i = 0; i < T.rows.size(); ++i)
        for (size_t j = 0; j < T.rows.size(); ++j) {
            CF s;
            for (size_t c = 0; c < cc.members.size(); ++c) {
                CF term = T.rows[i][c] * T.rows[j][c].conj();
                FieldScalar size{std::int64_t(cc.members[c].size())};
                s = s + CF(size) * term;
            }
            CF expect = (i == j) ? CF(FieldScalar(group_order)) : CF();
            if (!(s == expect))
                throw std::logic_error("character table failed orthogonality check");
        }
}

inline int discrete_log(const Quat& g, const Quat& x, int order) {
    Quat p = Quat::one();
    for (int a = 0; a < order; ++a) {
        if (p == x) return a;
        p = p * g;
    }
    return -1;
}

} // namespace detail

inline CharacterTable character_table(const FiniteSubgroup& G) {
    CharacterTable T;
    T.classes = conjugacy_classes(G);
    const auto& cc = T.classes;
    const int nc = int(cc.members.size());

    // defining 2-dim character: 2 * re of any representative
    T.defining.resize(nc);
    for (int c = 0; c < nc; ++c)
        T.defining[c] = CF(FieldScalar(2) * G.elements[cc.rep[c]].r);

    std::vector<CF> ones(nc, CF::one());
    std::vector<CF> t = T.defining;

    switch (G.label.family) {
        case GroupFamily::Cyclic: {
            const int N = G.label.n;
            // pick the deterministic generator: lex-least element of order N
            int gen = -1;
            for (size_t i = 0; i < G.elements.size(); ++i)
                if (detail::element_order(G, int(i)) == N) { gen = int(i); break; }
            if (N == 1) gen = 0;
            if (gen < 0) throw std::logic_error("cyclic group without generator");
            const Quat& g = G.elements[gen];
            std::vector<int> dlog(nc);
            for (int c = 0; c < nc; ++c) {
                dlog[c] = detail::discrete_log(g, G.elements[cc.rep[c]], N);
                if (dlog[c] < 0) throw std::logic_error("cyclic discrete log failed");
            }
            for (int m = 0; m < N; ++m) {
                std::vector<CF> row(nc);
                for (int c = 0; c < nc; ++c) {
                    auto q = exact_exp_i(2 * m * dlog[c], N);
                    if (!q) throw std::logic_error("cyclic character value not exact");
                    row[c] = CF(q->r, q->x);
                }
                T.rows.push_back(row);
            }
            break;
        }
        case GroupFamily::Dicyclic: {
            const int m = G.label.n;
            // x = lex-least element of order 2m generating the cyclic part;
            // y = lex-least element outside <x>
            int xi = -1;
            for (size_t i = 0; i < G.elements.size(); ++i)
                if (detail::element_order(G, int(i)) == 2 * m) { xi = int(i); break; }
            if (m == 1) { // Dic_1: <x> = {1,-1}, x = -1
                xi = G.index_of(-Quat::one());
            }
            if (xi < 0) throw std::logic_error("dicyclic: no generator of order 2m");
            const Quat x = G.elements[xi];
            auto in_x = [&](const Quat& q) { return detail::discrete_log(x, q, 2 * m) >= 0; };
            int yi = -1;
            for (size_t i = 0; i < G.elements.size(); ++i)
                if (!in_x(G.elements[i])) { yi = int(i); break; }
            const Quat y = G.elements[yi];
            // decompose class representatives as x^a or x^a y
            std::vector<int> apow(nc), ypow(nc);
            for (int c = 0; c < nc; ++c) {
                const Quat& r = G.elements[cc.rep[c]];
                int a = detail::discrete_log(x, r, 2 * m);
                if (a >= 0) { apow[c] = a; ypow[c] = 0; continue; }
                a = detail::discrete_log(x, r * y.inverse(), 2 * m);
                if (a < 0) throw std::logic_error("dicyclic decomposition failed");
                apow[c] = a;
                ypow[c] = 1;
            }
            // four 1-dim characters
            if (m % 2 == 1) {
                for (int cpow = 0; cpow < 4; ++cpow) {
                    std::vector<CF> row(nc);
                    for (int c = 0; c < nc; ++c) {
                        // psi(x) = (-1)^cpow, psi(y) = i^cpow
                        int e = (cpow * apow[c]) % 2;
                        CF v = CF(FieldScalar(e == 0 ? 1 : -1));
                        if (ypow[c]) {
                            static const int re[4] = {1, 0, -1, 0};
                            static const int im[4] = {0, 1, 0, -1};
                            v = v * CF(FieldScalar(re[cpow % 4]), FieldScalar(im[cpow % 4]));
                        }
                        row[c] = v;
                    }
                    T.rows.push_back(row);
                }
            } else {
                for (int e1 = 1; e1 >= -1; e1 -= 2)
                    for (int e2 = 1; e2 >= -1; e2 -= 2) {
                        std::vector<CF> row(nc);
                        for (int c = 0; c < nc; ++c) {
                            std::int64_t v = 1;
                            if (apow[c] % 2) v *= e1;
                            if (ypow[c]) v *= e2;
                            row[c] = CF(FieldScalar(v));
                        }
                        T.rows.push_back(row);
                    }
            }
            // 2-dim characters rho_h, h = 1..m-1
            for (int h = 1; h < m; ++h) {
                std::vector<CF> row(nc);
                for (int c = 0; c < nc; ++c) {
                    if (ypow[c]) { row[c] = CF(); continue; }
                    auto q = exact_exp_i(h * apow[c], m);
                    if (!q) throw std::logic_error("dicyclic character value not exact");
                    row[c] = CF(FieldScalar(2) * q->r);
                }
                T.rows.push_back(row);
            }
            break;
        }
        case GroupFamily::BinaryTetrahedral: {
            // classes: 1, -1, order-4, two order-6, two order-3 (the order-6
            // and order-3 pairs are swapped by the outer automorphism; the
            // labeling below is this module's convention)
            auto s2 = detail::sym_power(t, ones, t);
            // u: pull-back of the A4 cubic character; u = omega on the first
            // order-6 class in class order, extended multiplicatively
            CF omega{frac(-1, 2), frac(1, 2) * FieldScalar::sqrt3()};
            std::vector<CF> u(nc, CF::one());
            int c6 = -1;
            for (int c = 0; c < nc; ++c)
                if (cc.elem_order[c] == 6) { c6 = c; break; }
            if (c6 < 0) throw std::logic_error("2T: missing order-6 class");
            u[c6] = omega;
            u[cc.inverse_class[c6]] = omega.conj();
            u[cc.square_class[c6]] = omega * omega;
            u[cc.square_class[cc.inverse_class[c6]]] = (omega * omega).conj();
            std::vector<CF> ubar(nc), us(nc), ubars(nc);
            for (int c = 0; c < nc; ++c) {
                ubar[c] = u[c].conj();
                us[c] = u[c] * t[c];
                ubars[c] = ubar[c] * t[c];
            }
            T.rows = {ones, u, ubar, t, us, ubars, s2};
            break;
        }
        case GroupFamily::BinaryOctahedral: {
            auto s2 = detail::sym_power(t, ones, t);
            std::vector<CF> sgn(nc), twoS(nc);
            for (int c = 0; c < nc; ++c) {
                int ord = cc.elem_order[c];
                size_t size = cc.members[c].size();
                // S4-image data: transpositions and 4-cycles are odd
                bool odd = (ord == 8) || (ord == 4 && size == 12);
                sgn[c] = CF(FieldScalar(odd ? -1 : 1));
                FieldScalar v;
                if (ord <= 2) v = FieldScalar(2);                    // center
                else if (ord == 4 && size == 6) v = FieldScalar(2);  // V4 image
                else if (ord == 3 || ord == 6) v = FieldScalar(-1);  // 3-cycles
                else v = FieldScalar(0);                             // 2- and 4-cycles
                twoS[c] = CF(v);
            }
            std::vector<CF> sgnt(nc), sgns2(nc), four(nc);
            for (int c = 0; c < nc; ++c) {
                sgnt[c] = sgn[c] * t[c];
                sgns2[c] = sgn[c] * s2[c];
                four[c] = twoS[c] * t[c];
            }
            T.rows = {ones, sgn, twoS, t, sgnt, s2, sgns2, four};
            break;
        }
        case GroupFamily::BinaryIcosahedral: {
            auto s2 = detail::sym_power(t, ones, t);
            auto s3 = detail::sym_power(s2, t, t);
            auto s4 = detail::sym_power(s3, s2, t);
            auto s5 = detail::sym_power(s4, s3, t);
            std::vector<CF> t5(nc), s25(nc), four(nc);
            for (int c = 0; c < nc; ++c) {
                t5[c] = t[c].twist5();
                s25[c] = s2[c].twist5();
                four[c] = t[c] * t5[c];
            }
            T.rows = {ones, t, t5, s2, s25, four, s3, s4, s5};
            break;
        }
    }
    // locate the trivial row
    T.trivial_row = -1;
    for (size_t i = 0; i < T.rows.size(); ++i) {
        bool triv = true;
        for (const auto& v : T.rows[i])
            if (!(v == CF::one())) { triv = false; break; }
        if (triv) { T.trivial_row = int(i); break; }
    }
    if (T.trivial_row < 0) throw std::logic_error("character table has no trivial row");
    detail::verify_orthogonality(T, int(G.elements.size()));
    return T;
}

/// Root system attached to Gamma by the McKay correspondence.
inline RootSystem root_system_for(const GroupLabel& label) {
    switch (label.family) {
        case GroupFamily::Cyclic:
            if (label.n < 2)
                throw std::invalid_argument("root_system_for: C_1 has no root system");
            return build_root_system(RootType::A, label.n - 1);
        case GroupFamily::Dicyclic: return build_root_system(RootType::D, label.n + 2);
        case GroupFamily::BinaryTetrahedral: return build_root_system(RootType::E6);
        case GroupFamily::BinaryOctahedral: return build_root_system(RootType::E7);
        case GroupFamily::BinaryIcosahedral: return build_root_system(RootType::E8);
    }
    throw std::invalid_argument("root_system_for: unknown label");
}

namespace detail {

/// 0/1 adjacency of the McKay graph restricted to nontrivial irreducibles.
inline std::vector<std::vector<int>> mckay_adjacency(const CharacterTable& T,
                                                     std::vector<int>& nodes,
                                                     int group_order) {
    nodes.clear();
    for (int i = 0; i < int(T.rows.size()); ++i)
        if (i != T.trivial_row) nodes.push_back(i);
    const auto& cc = T.classes;
    std::vector<std::vector<int>> adj(nodes.size(), std::vector<int>(nodes.size(), 0));
    for (size_t a = 0; a < nodes.size(); ++a)
        for (size_t b = 0; b < nodes.size(); ++b) {
            CF s;
            for (size_t c = 0; c < cc.members.size(); ++c) {
                FieldScalar size{std::int64_t(cc.members[c].size())};
                s = s + CF(size) * (T.defining[c] * T.rows[nodes[a]][c] *
                                    T.rows[nodes[b]][c].conj());
            }
            // multiplicity of chi_b in Q tensor chi_a
            if (!s.im.is_zero()) throw std::logic_error("mckay adjacency not real");
            FieldScalar mult = s.re;
            FieldScalar expect0, expect1{std::int64_t(group_order)};
            int v;
            if (mult == expect0) v = 0;
            else if (mult == expect1) v = 1;
            else throw std::logic_error("mckay adjacency multiplicity not in {0,1}");
            adj[a][b] = v;
        }
    for (size_t a = 0; a < nodes.size(); ++a)
        if (adj[a][a] != 0) throw std::logic_error("mckay graph has a loop");
    return adj;
}

inline std::vector<std::vector<int>> dynkin_adjacency(const RootSystem& rs) {
    int r = int(rs.simple_roots.size());
    std::vector<std::vector<int>> adj(r, std::vector<int>(r, 0));
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j)
            if (i != j && !dotQ(rs.simple_roots[i], rs.simple_roots[j]).is_zero())
                adj[i][j] = 1;
    return adj;
}

/// Deterministic backtracking isomorphism between two small simple graphs;
/// returns map[a] = b or throws.
inline std::vector<int> graph_isomorphism(const std::vector<std::vector<int>>& A,
                                          const std::vector<std::vector<int>>& B) {
    const int n = int(A.size());
    if (B.size() != A.size()) throw std::logic_error("graph_isomorphism: size mismatch");
    std::vector<int> map(n, -1), used(n, 0);
    std::function<bool(int)> rec = [&](int a) -> bool {
        if (a == n) return true;
        for (int b = 0; b < n; ++b) {
            if (used[b]) continue;
            bool ok = true;
            for (int a2 = 0; a2 < a && ok; ++a2)
                if (A[a][a2] != B[b][map[a2]]) ok = false;
            if (!ok) continue;
            int degA = 0, degB = 0;
            for (int x = 0; x < n; ++x) { degA += A[a][x]; degB += B[b][x]; }
            if (degA != degB) continue;
            map[a] = b;
            used[b] = 1;
            if (rec(a + 1)) return true;
            used[b] = 0;
            map[a] = -1;
        }
        return false;
    };
    if (!rec(0)) throw std::logic_error("graph_isomorphism: graphs are not isomorphic");
    return map;
}

} // namespace detail

/// Permutation of the nontrivial irreducible characters induced by
/// conjugation with R, transported through the character table and returned
/// as the corresponding Dynkin-diagram automorphism in ambient coordinates.
inline DiagramAut mckay_automorphism(const RotationH& R, const FiniteSubgroup& G,
                                     const RootSystem& rs) {
    if (G.label.order() <= 1)
        throw std::invalid_argument("mckay_automorphism: Gamma must be nontrivial");
    auto el_perm = conjugation_permutation(R, G); // throws if not normalizer
    auto cc = conjugacy_classes(G);
    const int nc = int(cc.members.size());
    std::vector<int> class_perm(nc);
    for (int c = 0; c < nc; ++c) class_perm[c] = cc.class_of[el_perm[cc.rep[c]]];
    bool trivial = true;
    for (int c = 0; c < nc; ++c)
        if (class_perm[c] != c) { trivial = false; break; }
    if (trivial) return DiagramAut{MatQ::identity(rs.ambient)};

    CharacterTable T = character_table(G);
    // chi^sigma(g) = chi(sigma^{-1} g): row i maps to the row matching
    // column-permuted values
    std::vector<int> inv_class_perm(nc);
    for (int c = 0; c < nc; ++c) inv_class_perm[class_perm[c]] = c;
    const int ni = int(T.rows.size());
    std::vector<int> irrep_perm(ni, -1);
    for (int i = 0; i < ni; ++i) {
        for (int j = 0; j < ni; ++j) {
            bool match = true;
            for (int c = 0; c < nc && match; ++c)
                if (!(T.rows[j][c] == T.rows[i][inv_class_perm[c]])) match = false;
            if (match) { irrep_perm[i] = j; break; }
        }
        if (irrep_perm[i] < 0)
            throw std::logic_error("mckay_automorphism: character permutation incomplete");
    }
    if (irrep_perm[T.trivial_row] != T.trivial_row)
        throw std::logic_error("mckay_automorphism: trivial character moved");

    std::vector<int> nodes;
    auto mk_adj = detail::mckay_adjacency(T, nodes, int(G.elements.size()));
    auto dy_adj = detail::dynkin_adjacency(rs);
    auto node_to_simple = detail::graph_isomorphism(mk_adj, dy_adj);
    std::vector<int> node_index_of_row(T.rows.size(), -1);
    for (size_t a = 0; a < nodes.size(); ++a) node_index_of_row[nodes[a]] = int(a);

    std::vector<int> simple_perm(rs.simple_roots.size(), -1);
    for (size_t a = 0; a < nodes.size(); ++a) {
        int image_row = irrep_perm[nodes[a]];
        int image_node = node_index_of_row[image_row];
        if (image_node < 0)
            throw std::logic_error("mckay_automorphism: image is the trivial node");
        simple_perm[node_to_simple[a]] = node_to_simple[image_node];
    }
    return diagram_aut_from_simple_perm(simple_perm, rs);
}

} // namespace kummer
