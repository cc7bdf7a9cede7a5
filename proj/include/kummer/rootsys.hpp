#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "kummer/imvec.hpp"
#include "kummer/rational.hpp"

namespace kummer {

/// Dense rational matrix, used for Weyl-group witnesses and diagram
/// automorphisms in the ambient Bourbaki coordinates.
struct MatQ {
    int n = 0;
    std::vector<std::vector<Rational>> a;

    MatQ() = default;
    explicit MatQ(int dim) : n(dim), a(dim, std::vector<Rational>(dim)) {}
    static MatQ identity(int dim) {
        MatQ m(dim);
        for (int i = 0; i < dim; ++i) m.a[i][i] = Rational(1);
        return m;
    }
    friend MatQ operator*(const MatQ& p, const MatQ& q) {
        MatQ r(p.n);
        for (int i = 0; i < p.n; ++i)
            for (int k = 0; k < p.n; ++k) {
                if (p.a[i][k].is_zero()) continue;
                for (int j = 0; j < p.n; ++j)
                    r.a[i][j] += p.a[i][k] * q.a[k][j];
            }
        return r;
    }
    std::vector<Rational> apply(const std::vector<Rational>& v) const {
        std::vector<Rational> r(n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (!a[i][j].is_zero()) r[i] += a[i][j] * v[j];
        return r;
    }
    MatQ transpose() const {
        MatQ r(n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) r.a[i][j] = a[j][i];
        return r;
    }
    MatQ inverse() const {
        MatQ inv = identity(n);
        MatQ m = *this;
        for (int col = 0; col < n; ++col) {
            int piv = -1;
            for (int r = col; r < n; ++r)
                if (!m.a[r][col].is_zero()) { piv = r; break; }
            if (piv < 0) throw std::domain_error("MatQ::inverse: singular matrix");
            std::swap(m.a[piv], m.a[col]);
            std::swap(inv.a[piv], inv.a[col]);
            Rational d = Rational(1) / m.a[col][col];
            for (int j = 0; j < n; ++j) { m.a[col][j] *= d; inv.a[col][j] *= d; }
            for (int r = 0; r < n; ++r) {
                if (r == col || m.a[r][col].is_zero()) continue;
                Rational f = m.a[r][col];
                for (int j = 0; j < n; ++j) {
                    m.a[r][j] -= f * m.a[col][j];
                    inv.a[r][j] -= f * inv.a[col][j];
                }
            }
        }
        return inv;
    }
    friend bool operator==(const MatQ& p, const MatQ& q) { return p.n == q.n && p.a == q.a; }
    bool is_identity() const { return *this == identity(n); }
};

enum class RootType { A, D, E6, E7, E8 };

using RootVec = std::vector<Rational>;

inline std::string root_key(const RootVec& v) {
    std::string s;
    for (const auto& r : v) s += r.str() + ",";
    return s;
}

/// Root system in standard Bourbaki coordinates.  A_k lives in R^{k+1},
/// D_k in R^k, the E types inside R^8 (with half-integral entries).
struct RootSystem {
    RootType type;
    int rank = 0;
    int ambient = 0;
    std::vector<RootVec> roots;
    std::vector<RootVec> simple_roots;
    /// basis of the orthogonal complement of span(roots) in the ambient space
    std::vector<RootVec> complement;
    std::map<std::string, int> root_index;

    std::string label() const {
        switch (type) {
            case RootType::A: return "A" + std::to_string(rank);
            case RootType::D: return "D" + std::to_string(rank);
            case RootType::E6: return "E6";
            case RootType::E7: return "E7";
            case RootType::E8: return "E8";
        }
        return "?";
    }
    bool is_root(const RootVec& v) const { return root_index.count(root_key(v)) > 0; }
    int index_of(const RootVec& v) const {
        auto it = root_index.find(root_key(v));
        return it == root_index.end() ? -1 : it->second;
    }
    void finalize() {
        root_index.clear();
        for (size_t i = 0; i < roots.size(); ++i) root_index[root_key(roots[i])] = int(i);
    }
};

inline Rational dotQ(const RootVec& u, const RootVec& v) {
    Rational s;
    for (size_t i = 0; i < u.size(); ++i) s += u[i] * v[i];
    return s;
}

namespace detail {
inline RootVec unit_vec(int amb, int i, Rational c = Rational(1)) {
    RootVec v(amb);
    v[i] = c;
    return v;
}
inline std::vector<RootVec> e8_roots() {
    std::vector<RootVec> out;
    for (int i = 0; i < 8; ++i)
        for (int j = i + 1; j < 8; ++j)
            for (int si = -1; si <= 1; si += 2)
                for (int sj = -1; sj <= 1; sj += 2) {
                    RootVec v(8);
                    v[i] = Rational(si);
                    v[j] = Rational(sj);
                    out.push_back(v);
                }
    for (int mask = 0; mask < 256; ++mask) {
        int minus = __builtin_popcount(mask);
        if (minus % 2 != 0) continue;
        RootVec v(8);
        for (int i = 0; i < 8; ++i)
            v[i] = Rational((mask >> i) & 1 ? -1 : 1, 2);
        out.push_back(v);
    }
    return out;
}
inline std::vector<RootVec> e8_simple() {
    auto half = [](std::initializer_list<int> signs) {
        RootVec v(8);
        int i = 0;
        for (int s : signs) v[i++] = Rational(s, 2);
        return v;
    };
    std::vector<RootVec> s;
    s.push_back(half({1, -1, -1, -1, -1, -1, -1, 1})); // alpha1
    RootVec a2(8);
    a2[0] = Rational(1);
    a2[1] = Rational(1);
    s.push_back(a2); // alpha2 = e1+e2
    for (int i = 1; i <= 6; ++i) { // alpha_{i+2} = e_i+1 - e_i (Bourbaki e_{i} - e_{i-1})
        RootVec v(8);
        v[i] = Rational(1);
        v[i - 1] = Rational(-1);
        s.push_back(v);
    }
    return s; // alpha3..alpha8 = e2-e1, e3-e2, ..., e7-e6
}
} // namespace detail

inline RootSystem build_root_system(RootType type, int rank_or_zero = 0) {
    RootSystem rs;
    rs.type = type;
    switch (type) {
        case RootType::A: {
            int k = rank_or_zero;
            if (k < 1) throw std::invalid_argument("build_root_system: A_k needs k >= 1");
            rs.rank = k;
            rs.ambient = k + 1;
            for (int a = 0; a < k + 1; ++a)
                for (int b = 0; b < k + 1; ++b) {
                    if (a == b) continue;
                    RootVec v(k + 1);
                    v[a] = Rational(1);
                    v[b] = Rational(-1);
                    rs.roots.push_back(v);
                }
            for (int i = 0; i < k; ++i) {
                RootVec v(k + 1);
                v[i] = Rational(1);
                v[i + 1] = Rational(-1);
                rs.simple_roots.push_back(v);
            }
            rs.complement.push_back(RootVec(k + 1, Rational(1))); // all-ones
            break;
        }
        case RootType::D: {
            int k = rank_or_zero;
            if (k < 3) throw std::invalid_argument("build_root_system: D_k needs k >= 3");
            rs.rank = k;
            rs.ambient = k;
            for (int i = 0; i < k; ++i)
                for (int j = i + 1; j < k; ++j)
                    for (int si = -1; si <= 1; si += 2)
                        for (int sj = -1; sj <= 1; sj += 2) {
                            RootVec v(k);
                            v[i] = Rational(si);
                            v[j] = Rational(sj);
                            rs.roots.push_back(v);
                        }
            for (int i = 0; i + 1 < k; ++i) {
                RootVec v(k);
                v[i] = Rational(1);
                v[i + 1] = Rational(-1);
                rs.simple_roots.push_back(v);
            }
            RootVec last(k);
            last[k - 2] = Rational(1);
            last[k - 1] = Rational(1);
            rs.simple_roots.push_back(last);
            break;
        }
        case RootType::E8: {
            rs.rank = 8;
            rs.ambient = 8;
            rs.roots = detail::e8_roots();
            rs.simple_roots = detail::e8_simple();
            break;
        }
        case RootType::E7:
        case RootType::E6: {
            rs.rank = (type == RootType::E7) ? 7 : 6;
            rs.ambient = 8;
            auto all = detail::e8_roots();
            RootVec c1 = detail::unit_vec(8, 6);
            c1[7] = Rational(1); // e7+e8
            RootVec c2 = detail::unit_vec(8, 5);
            c2[7] = Rational(1); // e6+e8
            rs.complement.push_back(c1);
            if (type == RootType::E6) rs.complement.push_back(c2);
            for (auto& v : all) {
                bool ok = dotQ(v, c1).is_zero();
                if (ok && type == RootType::E6) ok = dotQ(v, c2).is_zero();
                if (ok) rs.roots.push_back(v);
            }
            auto s8 = detail::e8_simple();
            rs.simple_roots.assign(s8.begin(), s8.begin() + rs.rank);
            break;
        }
    }
    rs.finalize();
    size_t expected = 0;
    switch (type) {
        case RootType::A: expected = size_t(rs.rank) * (rs.rank + 1); break;
        case RootType::D: expected = size_t(2 * rs.rank) * (rs.rank - 1); break;
        case RootType::E6: expected = 72; break;
        case RootType::E7: expected = 126; break;
        case RootType::E8: expected = 240; break;
    }
    if (rs.roots.size() != expected)
        throw std::logic_error("build_root_system: root count mismatch for " + rs.label());
    return rs;
}

/// Element of (Im H)* tensor h: one Im-H vector per ambient coordinate.
struct CartanWeight {
    std::vector<ImVec> entries;

    CartanWeight() = default;
    explicit CartanWeight(std::vector<ImVec> e) : entries(std::move(e)) {}
    int dim() const { return int(entries.size()); }

    friend bool operator==(const CartanWeight& a, const CartanWeight& b) {
        return a.entries == b.entries;
    }
    friend bool operator!=(const CartanWeight& a, const CartanWeight& b) { return !(a == b); }

    /// zeta(theta) for a root (or any ambient vector) theta.
    ImVec evaluate(const RootVec& theta) const {
        ImVec s;
        for (size_t m = 0; m < entries.size(); ++m)
            if (!theta[m].is_zero()) s = s + theta[m] * entries[m];
        return s;
    }
    /// Right composition by an ambient matrix: (zeta o M)_m = zeta(M e_m).
    CartanWeight compose(const MatQ& M) const {
        CartanWeight out;
        out.entries.resize(entries.size());
        for (int m = 0; m < M.n; ++m) {
            ImVec s;
            for (int n = 0; n < M.n; ++n)
                if (!M.a[n][m].is_zero()) s = s + M.a[n][m] * entries[n];
            out.entries[m] = s;
        }
        return out;
    }
    /// Entrywise application of a 3x3 map on Im H.
    CartanWeight map_imh(const Mat3F& L) const {
        CartanWeight out;
        out.entries.reserve(entries.size());
        for (const auto& e : entries) out.entries.push_back(L * e);
        return out;
    }
};

/// zeta avoids every wall: zeta(theta) != 0 in Im H for all roots.
inline bool in_delta_circ(const CartanWeight& zeta, const RootSystem& rs) {
    if (zeta.dim() != rs.ambient)
        throw std::invalid_argument("in_delta_circ: dimension mismatch (" +
                                    std::to_string(zeta.dim()) + " vs ambient " +
                                    std::to_string(rs.ambient) + ")");
    for (const auto& th : rs.roots)
        if (zeta.evaluate(th).is_zero()) return false;
    return true;
}

namespace detail {
/// Reflection in the root theta as an ambient rational matrix.
inline MatQ reflection_matrix(const RootVec& theta, int amb) {
    MatQ m = MatQ::identity(amb);
    Rational nn = dotQ(theta, theta);
    for (int i = 0; i < amb; ++i)
        for (int j = 0; j < amb; ++j)
            m.a[i][j] -= Rational(2) * theta[i] * theta[j] / nn;
    return m;
}

inline MatQ permutation_matrix(const std::vector<int>& sigma, const std::vector<int>& sign) {
    // canonical_m = sign[sigma[m]] * zeta_{sigma[m]}  =>  P[sigma[m]][m] = sign
    int n = int(sigma.size());
    MatQ p(n);
    for (int m = 0; m < n; ++m) p.a[sigma[m]][m] = Rational(sign[sigma[m]]);
    return p;
}

/// FieldScalar inner product of one Im-H component against a rational root.
inline FieldScalar component_dot(const std::vector<FieldScalar>& comp, const RootVec& theta) {
    FieldScalar s;
    for (size_t i = 0; i < comp.size(); ++i)
        if (!theta[i].is_zero()) s += theta[i] * comp[i];
    return s;
}
} // namespace detail

struct CanonicalWeight {
    CartanWeight canonical;
    MatQ witness; // canonical = zeta o witness, witness in W
};

/// Reflection in the given root, as a Weyl-group element in ambient
/// coordinates.
inline MatQ weyl_reflection(const RootSystem& rs, const RootVec& root) {
    return detail::reflection_matrix(root, rs.ambient);
}

/// Canonical representative via the simultaneous-dominance chain: make the
/// first Im-H component dominant, descend into its parabolic stabilizer,
/// repeat for the remaining components.  Works uniformly for all types and
/// is the implementation used for E6/E7/E8.
inline CanonicalWeight weyl_canonical_chain(const CartanWeight& zeta, const RootSystem& rs) {
    if (zeta.dim() != rs.ambient)
        throw std::invalid_argument("weyl_canonical_chain: dimension mismatch");
    const int n = rs.ambient;
    CartanWeight cur = zeta;
    MatQ W = MatQ::identity(n);
    std::vector<int> active(rs.simple_roots.size());
    std::iota(active.begin(), active.end(), 0);
    for (int compo = 0; compo < 3; ++compo) {
        auto component = [&](const CartanWeight& z) {
            std::vector<FieldScalar> comp(n);
            for (int m = 0; m < n; ++m) {
                const ImVec& v = z.entries[m];
                comp[m] = compo == 0 ? v.x : (compo == 1 ? v.y : v.z);
            }
            return comp;
        };
        bool changed = true;
        while (changed) {
            changed = false;
            auto comp = component(cur);
            for (int s : active) {
                if (detail::component_dot(comp, rs.simple_roots[s]).sign() < 0) {
                    MatQ refl = detail::reflection_matrix(rs.simple_roots[s], n);
                    cur = cur.compose(refl);
                    W = W * refl;
                    changed = true;
                    break;
                }
            }
        }
        auto comp = component(cur);
        std::vector<int> next;
        for (int s : active)
            if (detail::component_dot(comp, rs.simple_roots[s]).is_zero()) next.push_back(s);
        active = next;
    }
    return {cur, W};
}

/// Weyl-canonical representative of the orbit of zeta.
///   A type: coordinates sorted as a multiset (W = S_n permutes entries).
///   D type: entries made lex-nonnegative and sorted; an odd number of sign
///           flips is repaired on a zero entry when one exists, otherwise by
///           re-flipping the entry giving the lexicographically least tuple
///           (W = C_2^{k-1} x| S_k, only even sign changes).
///   E type: simultaneous dominance chain through parabolic stabilizers.
inline CanonicalWeight weyl_canonical(const CartanWeight& zeta, const RootSystem& rs) {
    if (zeta.dim() != rs.ambient)
        throw std::invalid_argument("weyl_canonical: dimension mismatch");
    const int n = rs.ambient;

    auto sort_perm = [&](const std::vector<ImVec>& vals) {
        std::vector<int> idx(vals.size());
        std::iota(idx.begin(), idx.end(), 0);
        std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) {
            return lex_less(vals[a], vals[b]);
        });
        return idx;
    };

    if (rs.type == RootType::A) {
        auto idx = sort_perm(zeta.entries);
        std::vector<int> sign(n, 1);
        MatQ P = detail::permutation_matrix(idx, sign);
        return {zeta.compose(P), P};
    }

    if (rs.type == RootType::D) {
        std::vector<int> sign(n, 1);
        std::vector<ImVec> vals = zeta.entries;
        int flips = 0;
        bool has_zero = false;
        for (int i = 0; i < n; ++i) {
            if (vals[i].is_zero()) { has_zero = true; continue; }
            if (vals[i].lex_negative()) {
                vals[i] = -vals[i];
                sign[i] = -1;
                ++flips;
            }
        }
        if (flips % 2 == 1) {
            if (has_zero) {
                for (int i = 0; i < n; ++i)
                    if (vals[i].is_zero()) { sign[i] = -sign[i]; break; }
            } else {
                // re-negate the entry whose flip yields the lex-least sorted tuple
                int best = -1;
                std::vector<ImVec> best_sorted;
                for (int i = 0; i < n; ++i) {
                    auto cand = vals;
                    cand[i] = -cand[i];
                    std::sort(cand.begin(), cand.end(),
                              [](const ImVec& a, const ImVec& b) { return lex_less(a, b); });
                    if (best < 0 ||
                        std::lexicographical_compare(cand.begin(), cand.end(),
                                                     best_sorted.begin(), best_sorted.end(),
                                                     [](const ImVec& a, const ImVec& b) {
                                                         return lex_less(a, b);
                                                     })) {
                        best = i;
                        best_sorted = cand;
                    }
                }
                vals[best] = -vals[best];
                sign[best] = -sign[best];
            }
        }
        auto idx = sort_perm(vals);
        MatQ P = detail::permutation_matrix(idx, sign);
        return {zeta.compose(P), P};
    }

    return weyl_canonical_chain(zeta, rs);
}

inline bool weyl_equivalent(const CartanWeight& a, const CartanWeight& b, const RootSystem& rs) {
    return weyl_canonical(a, rs).canonical == weyl_canonical(b, rs).canonical;
}

/// Orthogonal map of the Cartan space induced by a Dynkin-diagram
/// automorphism, stored in ambient coordinates.
struct DiagramAut {
    MatQ matrix;

    bool is_identity() const { return matrix.is_identity(); }
    /// Every diagram automorphism must permute the root set.
    bool permutes_roots(const RootSystem& rs) const {
        for (const auto& th : rs.roots)
            if (!rs.is_root(matrix.apply(th))) return false;
        return true;
    }
};

/// Linear extension of a simple-root permutation, fixing the orthogonal
/// complement of the root span pointwise.
inline DiagramAut diagram_aut_from_simple_perm(const std::vector<int>& perm,
                                               const RootSystem& rs) {
    const int n = rs.ambient;
    int r = int(rs.simple_roots.size());
    if (r + int(rs.complement.size()) != n)
        throw std::logic_error("diagram_aut: rank + complement != ambient");
    // columns of S: simple roots then complement; M * S = S_permuted
    MatQ S(n), T(n);
    for (int j = 0; j < n; ++j) {
        const RootVec& src = j < r ? rs.simple_roots[j] : rs.complement[j - r];
        const RootVec& dst = j < r ? rs.simple_roots[perm[j]] : rs.complement[j - r];
        for (int i = 0; i < n; ++i) {
            S.a[i][j] = src[i];
            T.a[i][j] = dst[i];
        }
    }
    DiagramAut aut{T * S.inverse()};
    if (!aut.permutes_roots(rs))
        throw std::logic_error("diagram_aut: extension does not permute the root system");
    return aut;
}

} // namespace kummer
