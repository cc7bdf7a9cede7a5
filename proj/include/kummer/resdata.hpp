#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <mutex>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "kummer/groups.hpp"
#include "kummer/lattices.hpp"
#include "kummer/mckay.hpp"
#include "kummer/rootsys.hpp"

namespace kummer {

inline const RootSystem& cached_root_system(RootType type, int rank = 0) {
    static std::mutex mu;
    static std::map<std::pair<int, int>, RootSystem> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_pair(int(type), rank);
    auto it = cache.find(key);
    if (it == cache.end()) it = cache.emplace(key, build_root_system(type, rank)).first;
    return it->second;
}

/// Resolution parameter: a multiset of monopole points summing to zero
/// (Gibbons-Hawking) or an Im-H-valued Cartan weight (Kronheimer).
enum class ZetaKind { GibbonsHawking, Kronheimer };

struct Zeta {
    ZetaKind kind;
    std::vector<ImVec> gh_points;  // GibbonsHawking
    CartanWeight weight;           // Kronheimer
    RootType root_type = RootType::A;
    int root_rank = 0;

    static Zeta gh(std::vector<ImVec> points) {
        Zeta z;
        z.kind = ZetaKind::GibbonsHawking;
        z.gh_points = std::move(points);
        return z;
    }
    static Zeta kronheimer(CartanWeight w, RootType type, int rank = 0) {
        Zeta z;
        z.kind = ZetaKind::Kronheimer;
        z.weight = std::move(w);
        z.root_type = type;
        z.root_rank = rank;
        return z;
    }

    const RootSystem& root_system() const {
        if (kind != ZetaKind::Kronheimer)
            throw std::logic_error("Zeta::root_system: not a Kronheimer parameter");
        return cached_root_system(root_type, root_rank);
    }

    int size() const {
        return kind == ZetaKind::GibbonsHawking ? int(gh_points.size()) : weight.dim();
    }
};

/// Resolution data for one singular stratum: the orbifold group, the
/// Bieberbach group with its fiber actions, and the resolution parameter.
struct ResolutionSpec {
    GroupLabel gamma_label = GroupLabel::C(2);
    BieberbachGroup bieberbach;
    Zeta zeta = Zeta::gh({});
    std::optional<int> family_row;

    /// Cyclic groups resolve through Gibbons-Hawking data (equivalently
    /// A-type weights); the other families need Kronheimer weights of the
    /// matching root system.
    bool consistent() const {
        if (gamma_label.family == GroupFamily::Cyclic) {
            if (zeta.kind == ZetaKind::GibbonsHawking)
                return int(zeta.gh_points.size()) == gamma_label.n;
            return zeta.root_type == RootType::A && zeta.weight.dim() == gamma_label.n;
        }
        if (zeta.kind != ZetaKind::Kronheimer) return false;
        switch (gamma_label.family) {
            case GroupFamily::Dicyclic:
                return zeta.root_type == RootType::D && zeta.root_rank == gamma_label.n + 2;
            case GroupFamily::BinaryTetrahedral: return zeta.root_type == RootType::E6;
            case GroupFamily::BinaryOctahedral: return zeta.root_type == RootType::E7;
            case GroupFamily::BinaryIcosahedral: return zeta.root_type == RootType::E8;
            default: return false;
        }
    }
};

namespace detail {
inline std::vector<ImVec> sorted_points(std::vector<ImVec> pts) {
    std::sort(pts.begin(), pts.end(), [](const ImVec& a, const ImVec& b) { return lex_less(a, b); });
    return pts;
}
inline bool multiset_equal(const std::vector<ImVec>& a, const std::vector<ImVec>& b) {
    if (a.size() != b.size()) return false;
    return sorted_points(a) == sorted_points(b);
}
inline std::vector<ImVec> apply_all(const Mat3F& M, const std::vector<ImVec>& pts) {
    std::vector<ImVec> out;
    out.reserve(pts.size());
    for (const auto& p : pts) out.push_back(M * p);
    return out;
}
} // namespace detail

/// zeta in Delta-circle: entries pairwise distinct and summing to zero.
inline bool gh_admissible(const Zeta& z) {
    if (z.kind != ZetaKind::GibbonsHawking)
        throw std::invalid_argument("gh_admissible: parameter is not of Gibbons-Hawking kind");
    ImVec sum;
    for (const auto& p : z.gh_points) sum = sum + p;
    if (!sum.is_zero()) return false;
    for (size_t a = 0; a < z.gh_points.size(); ++a)
        for (size_t b = a + 1; b < z.gh_points.size(); ++b)
            if (z.gh_points[a] == z.gh_points[b]) return false;
    return true;
}

/// Base action of the fiber isometry q |-> a q conj(b) on the monopole
/// space, through the asymptotic fibration [q] |-> q i conj(q):
/// v |-> s * (a v conj(a)) with conj(b) i b = s i.  Empty when b does not
/// normalize the i-circle (the lift is not a bundle map and segment
/// bookkeeping is undecidable).
inline std::optional<Mat3F> gh_base_action(const RotationH& R) {
    Quat w = R.b.conj() * Quat::i() * R.b;
    Mat3F L = lambda2_plus(R);
    if (w == Quat::i()) return L;
    if (w == -Quat::i()) return -L;
    return std::nullopt;
}

enum class LiftMode { Strict, Permissive };

/// Existence of a lift of R to the ALE space over zeta.
/// Gibbons-Hawking, strict: alpha_R * (Lambda^2_+ R) zeta = zeta as a
/// multiset.  Permissive: some sign works (the row-family predicates
/// are the authority on which sign geometry selects).
/// Kronheimer: (Lambda^2_+ R tensor Ad_{C_R}) zeta = zeta up to the Weyl
/// group.
inline bool lift_condition(const RotationH& R, const FiniteSubgroup& G, const Zeta& z,
                           LiftMode mode) {
    Mat3F L = lambda2_plus(R);
    if (z.kind == ZetaKind::GibbonsHawking) {
        AlphaSign alpha = alpha_sign(R, G);
        if (alpha == AlphaSign::NotApplicable)
            throw std::invalid_argument("lift_condition: GH parameter needs a cyclic group");
        if (alpha == AlphaSign::NotInNormalizer)
            throw std::invalid_argument("lift_condition: rotation is not in the normalizer");
        auto image_plus = detail::apply_all(L, z.gh_points);
        if (mode == LiftMode::Strict) {
            if (alpha == AlphaSign::MinusOne)
                for (auto& p : image_plus) p = -p;
            return detail::multiset_equal(image_plus, z.gh_points);
        }
        auto image_minus = image_plus;
        for (auto& p : image_minus) p = -p;
        return detail::multiset_equal(image_plus, z.gh_points) ||
               detail::multiset_equal(image_minus, z.gh_points);
    }
    // Kronheimer
    if (!normalizes(R, G))
        throw std::invalid_argument("lift_condition: rotation is not in the normalizer");
    const RootSystem& rs = z.root_system();
    DiagramAut ad = mckay_automorphism(R, G, rs);
    CartanWeight eta = z.weight.map_imh(L).compose(ad.matrix);
    return weyl_equivalent(eta, z.weight, rs);
}

/// Witness A = Ad * w with (L zeta) o A = zeta, unique on wall-avoiding
/// weights; used to transport sphere classes through a lifted isometry.
inline std::optional<MatQ> kron_lift_witness(const Mat3F& L, const DiagramAut& ad,
                                             const CartanWeight& zeta, const RootSystem& rs) {
    CartanWeight eta = zeta.map_imh(L).compose(ad.matrix);
    auto c_eta = weyl_canonical(eta, rs);
    auto c_zeta = weyl_canonical(zeta, rs);
    if (!(c_eta.canonical == c_zeta.canonical)) return std::nullopt;
    return ad.matrix * c_eta.witness * c_zeta.witness.inverse();
}

// ---------------------------------------------------------------------------
// The six resolution-parameter families of the flat-orbifold construction
// table, transcribed branch by branch.  R_pm are the integer matrices
// diag(+-1, -+1, -1) acting on Im H.

inline const Mat3F& mat_R_plus() {
    static const Mat3F m = Mat3F::diag(1, -1, -1);
    return m;
}
inline const Mat3F& mat_R_minus() {
    static const Mat3F m = Mat3F::diag(-1, 1, -1);
    return m;
}
inline const Mat3F& mat_R_pm() {
    static const Mat3F m = Mat3F::diag(-1, -1, 1);
    return m;
}

inline GroupLabel family_row_gamma(int row) {
    switch (row) {
        case 1: return GroupLabel::C(2);
        case 2: return GroupLabel::C(3);
        case 3: return GroupLabel::C(3);
        case 4: return GroupLabel::C(4);
        case 5: return GroupLabel::C(6);
        case 6: return GroupLabel::Dic(3);
    }
    throw std::invalid_argument("family_row_gamma: row must be 1..6");
}

/// Bieberbach group of the row: the lattice <i,j,k> plus, where the table
/// marks them, the generators (R+, (i+k)/2) with fiber [q] -> [iqi] and
/// (R-, j/2) with fiber [q] -> [jqj].
inline BieberbachGroup family_row_group(int row) {
    BieberbachGroup g;
    g.lattice = LatticeIm::standard();
    BieberbachGenerator gp{AffineIsom(mat_R_plus(), ImVec{frac(1, 2), FieldScalar(), frac(1, 2)}),
                           RotationH::left_right(Quat::i(), Quat::i()), "r_plus"};
    BieberbachGenerator gm{AffineIsom(mat_R_minus(), ImVec{FieldScalar(), frac(1, 2), FieldScalar()}),
                           RotationH::left_right(Quat::j(), Quat::j()), "r_minus"};
    switch (row) {
        case 2: g.extra_generators = {gm}; break;
        case 1:
        case 3:
        case 4:
        case 5:
        case 6: g.extra_generators = {gp, gm}; break;
        default: throw std::invalid_argument("family_row_group: row must be 1..6");
    }
    return g;
}

namespace detail {

inline bool on_axis(const ImVec& v, const ImVec& axis) { return cross(v, axis).is_zero(); }
inline bool in_perp(const ImVec& v, const ImVec& axis) { return inner(v, axis).is_zero(); }
inline bool in_jk_perp_union(const ImVec& v) {
    return in_perp(v, ImVec::j()) || in_perp(v, ImVec::k());
}
inline bool on_any_axis(const ImVec& v) {
    return on_axis(v, ImVec::i()) || on_axis(v, ImVec::j()) || on_axis(v, ImVec::k());
}
inline bool in_any_perp(const ImVec& v) {
    return in_perp(v, ImVec::i()) || in_perp(v, ImVec::j()) || in_perp(v, ImVec::k());
}

/// Exact ratio t with w = t v for collinear v != 0; empty otherwise.
inline std::optional<FieldScalar> collinear_ratio(const ImVec& w, const ImVec& v) {
    if (v.is_zero() || !cross(w, v).is_zero()) return std::nullopt;
    const FieldScalar* vc[3] = {&v.x, &v.y, &v.z};
    const FieldScalar* wc[3] = {&w.x, &w.y, &w.z};
    for (int c = 0; c < 3; ++c)
        if (!vc[c]->is_zero()) return *wc[c] * vc[c]->inverse();
    return std::nullopt;
}

/// Tries every ordering of the points against an ordered-tuple predicate.
inline bool match_any_ordering(const std::vector<ImVec>& pts,
                               const std::function<bool(const std::vector<ImVec>&)>& pred) {
    std::vector<int> idx(pts.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end());
    do {
        std::vector<ImVec> ordered;
        ordered.reserve(pts.size());
        for (int i : idx) ordered.push_back(pts[i]);
        if (pred(ordered)) return true;
    } while (std::next_permutation(idx.begin(), idx.end()));
    return false;
}

inline bool row_branches_gh(int row, const std::vector<ImVec>& pts) {
    const Mat3F& Rp = mat_R_plus();
    const Mat3F mRm = -mat_R_minus();       // diag(1,-1,1)
    const Mat3F mRpm = -mat_R_pm();         // diag(1,1,-1)
    switch (row) {
        case 1:
            return match_any_ordering(pts, [&](const std::vector<ImVec>& o) {
                       return o[1] == Rp * o[0] && in_jk_perp_union(o[0]) &&
                              !on_axis(o[0], ImVec::i());
                   }) ||
                   match_any_ordering(pts, [&](const std::vector<ImVec>& o) {
                       return o[0] == -o[1] && on_axis(o[1], ImVec::i());
                   });
        case 2:
            return match_any_ordering(pts, [&](const std::vector<ImVec>& o) {
                       return o[2] == mRm * o[1] && in_perp(o[0], ImVec::j()) &&
                              !in_perp(o[1], ImVec::j());
                   }) ||
                   [&] {
                       for (const auto& p : pts)
                           if (!in_perp(p, ImVec::j())) return false;
                       return true;
                   }();
        case 3:
            return match_any_ordering(pts, [&](const std::vector<ImVec>& o) {
                       return o[2] == Rp * o[1] && on_axis(o[0], ImVec::i()) &&
                              in_jk_perp_union(o[1]) && !on_axis(o[1], ImVec::i());
                   }) ||
                   [&] {
                       for (const auto& p : pts)
                           if (!on_axis(p, ImVec::i())) return false;
                       return true;
                   }();
        case 4: {
            auto off_planes = [&](const ImVec& v) { return !in_jk_perp_union(v); };
            auto plane_not_i = [&](const ImVec& v) {
                return in_jk_perp_union(v) && !on_axis(v, ImVec::i());
            };
            auto b1 = match_any_ordering(pts, [&](const std::vector<ImVec>& o) {
                return off_planes(o[0]) && o[1] == Rp * o[0] && o[2] == mRm * o[0] &&
                       o[3] == mRpm * o[0];
            });
            auto b2 = match_any_ordering(pts, [&](const std::vector<ImVec>& o) {
                return plane_not_i(o[0]) && o[1] == Rp * o[0] && plane_not_i(o[2]) &&
                       o[3] == Rp * o[2];
            });
            auto b3 = match_any_ordering(pts, [&](const std::vector<ImVec>& o) {
                return on_axis(o[0], ImVec::i()) && on_axis(o[1], ImVec::i()) &&
                       plane_not_i(o[2]) && o[3] == Rp * o[2];
            });
            auto b4 = [&] {
                for (const auto& p : pts)
                    if (!on_axis(p, ImVec::i())) return false;
                return true;
            }();
            return b1 || b2 || b3 || b4;
        }
        case 5: {
            auto off_planes = [&](const ImVec& v) { return !in_jk_perp_union(v); };
            auto plane_not_i = [&](const ImVec& v) {
                return in_jk_perp_union(v) && !on_axis(v, ImVec::i());
            };
            auto on_i = [&](const ImVec& v) { return on_axis(v, ImVec::i()); };
            auto b1 = match_any_ordering(pts, [&](const std::vector<ImVec>& o) {
                return plane_not_i(o[0]) && o[1] == Rp * o[0] && off_planes(o[2]) &&
                       o[3] == Rp * o[2] && o[4] == mRm * o[2] && o[5] == mRpm * o[2];
            });
            // the free orbit parameter must lie off both planes (its
            // R+, -R-, -R+R- images are the other three entries)
            auto b2 = match_any_ordering(pts, [&](const std::vector<ImVec>& o) {
                return on_i(o[0]) && on_i(o[1]) && off_planes(o[2]) && o[3] == Rp * o[2] &&
                       o[4] == mRm * o[2] && o[5] == mRpm * o[2];
            });
            auto b3 = match_any_ordering(pts, [&](const std::vector<ImVec>& o) {
                return plane_not_i(o[0]) && o[1] == Rp * o[0] && plane_not_i(o[2]) &&
                       o[3] == Rp * o[2] && plane_not_i(o[4]) && o[5] == Rp * o[4];
            });
            auto b4 = match_any_ordering(pts, [&](const std::vector<ImVec>& o) {
                return on_i(o[0]) && on_i(o[1]) && plane_not_i(o[2]) && o[3] == Rp * o[2] &&
                       plane_not_i(o[4]) && o[5] == Rp * o[4];
            });
            auto b5 = match_any_ordering(pts, [&](const std::vector<ImVec>& o) {
                return on_i(o[0]) && on_i(o[1]) && on_i(o[2]) && on_i(o[3]) &&
                       plane_not_i(o[4]) && o[5] == Rp * o[4];
            });
            auto b6 = [&] {
                for (const auto& p : pts)
                    if (!on_i(p)) return false;
                return true;
            }();
            return b1 || b2 || b3 || b4 || b5 || b6;
        }
    }
    throw std::invalid_argument("row_branches_gh: row must be 1..5");
}

inline bool row6_branches(const std::vector<ImVec>& entries) {
    const Mat3F* Rs[3] = {&mat_R_plus(), &mat_R_minus(), &mat_R_pm()};
    auto surface = [&](const ImVec& v) { return in_any_perp(v) && !on_any_axis(v); };
    auto axis = [&](const ImVec& v) { return on_any_axis(v); };
    auto generic = [&](const ImVec& v) { return !in_any_perp(v); };

    auto b1 = match_any_ordering(entries, [&](const std::vector<ImVec>& o) {
        return o[0].is_zero() && generic(o[1]) && o[2] == mat_R_plus() * o[1] &&
               o[3] == mat_R_minus() * o[1] && o[4] == mat_R_pm() * o[1];
    });
    if (b1) return true;
    auto b2 = match_any_ordering(entries, [&](const std::vector<ImVec>& o) {
        if (!(o[0].is_zero() && surface(o[1]) && surface(o[3]))) return false;
        bool ra = false, rb = false;
        for (const auto* R : Rs) {
            if (o[2] == *R * o[1]) ra = true;
            if (o[4] == *R * o[3]) rb = true;
        }
        return ra && rb;
    });
    if (b2) return true;
    auto b3 = match_any_ordering(entries, [&](const std::vector<ImVec>& o) {
        if (!(o[0].is_zero() && axis(o[1]) && surface(o[3]))) return false;
        auto t = collinear_ratio(o[2], o[1]);
        if (!t || t->is_zero() || *t == FieldScalar(-1)) return false;
        for (const auto* R : Rs)
            if (o[4] == *R * o[3]) return true;
        return false;
    });
    if (b3) return true;
    return match_any_ordering(entries, [&](const std::vector<ImVec>& o) {
        if (!(o[0].is_zero() && axis(o[1]) && axis(o[3]))) return false;
        auto t1 = collinear_ratio(o[2], o[1]);
        auto t2 = collinear_ratio(o[4], o[3]);
        if (!t1 || !t2) return false;
        FieldScalar prod = *t1 * *t2;
        return !prod.is_zero() && prod != FieldScalar(-1);
    });
}

inline std::vector<std::vector<int>> even_sign_patterns(int n) {
    std::vector<std::vector<int>> out;
    for (int mask = 0; mask < (1 << n); ++mask) {
        if (__builtin_popcount(mask) % 2 != 0) continue;
        std::vector<int> s(n, 1);
        for (int i = 0; i < n; ++i)
            if ((mask >> i) & 1) s[i] = -1;
        out.push_back(s);
    }
    return out;
}

} // namespace detail

/// zeta lies in the row's displayed parameter family, evaluated exactly.
/// Membership implies the ambient admissibility condition (Delta-circle for
/// rows 1-5, wall avoidance for row 6).
inline bool family_member(int row, const Zeta& z) {
    if (row >= 1 && row <= 5) {
        if (z.kind != ZetaKind::GibbonsHawking)
            throw std::invalid_argument("family_member: rows 1-5 take Gibbons-Hawking data");
        static const int expect_n[6] = {0, 2, 3, 3, 4, 6};
        if (int(z.gh_points.size()) != expect_n[row]) return false;
        if (!gh_admissible(z)) return false;
        return detail::row_branches_gh(row, z.gh_points);
    }
    if (row == 6) {
        if (z.kind != ZetaKind::Kronheimer || z.root_type != RootType::D || z.root_rank != 5)
            throw std::invalid_argument("family_member: row 6 takes a D5 Kronheimer weight");
        const RootSystem& rs = z.root_system();
        if (!in_delta_circ(z.weight, rs)) return false;
        // the displayed set lives in Delta-circle / W: test every even-sign
        // representative (permutations are absorbed by the multiset matcher)
        for (const auto& signs : detail::even_sign_patterns(5)) {
            std::vector<ImVec> entries = z.weight.entries;
            for (int m = 0; m < 5; ++m)
                if (signs[m] < 0) entries[m] = -entries[m];
            if (detail::row6_branches(entries)) return true;
        }
        return false;
    }
    throw std::invalid_argument("family_member: row must be 1..6");
}

/// Canonical dedup key for enumerated parameters.
inline std::string zeta_canonical_key(const Zeta& z) {
    if (z.kind == ZetaKind::GibbonsHawking) {
        std::string s;
        for (const auto& p : detail::sorted_points(z.gh_points)) s += p.str() + ";";
        return s;
    }
    auto c = weyl_canonical(z.weight, z.root_system()).canonical;
    std::string s;
    for (const auto& p : c.entries) s += p.str() + ";";
    return s;
}

/// All family members with integer coordinates bounded by `height`,
/// deduplicated by canonical form, in a deterministic order.  Each branch is
/// scanned over its own parameter domain (free entries of the displayed
/// tuple), so every member with entries in the box is reached.
inline std::vector<Zeta> enumerate_admissible(int row, int height) {
    if (height < 0) throw std::invalid_argument("enumerate_admissible: height must be >= 0");
    std::vector<ImVec> box, axis_i, plane_jk, surface, generic, any_axis;
    for (std::int64_t a = -height; a <= height; ++a)
        for (std::int64_t b = -height; b <= height; ++b)
            for (std::int64_t c = -height; c <= height; ++c) {
                ImVec v = ImVec::of_ints(a, b, c);
                box.push_back(v);
                if (b == 0 && c == 0) axis_i.push_back(v);
                if (b == 0 || c == 0) plane_jk.push_back(v); // (Rj)perp or (Rk)perp
                int zero_count = (a == 0) + (b == 0) + (c == 0);
                if (zero_count == 1) surface.push_back(v); // one wall, off the axes
                if (zero_count == 0) generic.push_back(v);
                if (zero_count >= 2 && !(a == 0 && b == 0 && c == 0)) any_axis.push_back(v);
            }
    auto bounded = [&](const ImVec& v) {
        auto in_range = [&](const FieldScalar& s) {
            return s.is_rational() && s.rational_part().is_integer() &&
                   std::abs(s.rational_part().num) <= height;
        };
        return in_range(v.x) && in_range(v.y) && in_range(v.z);
    };

    std::map<std::string, Zeta> accepted;
    std::map<std::string, bool> verdicts;
    auto consider = [&](Zeta z) {
        if (z.kind == ZetaKind::GibbonsHawking && !gh_admissible(z)) return;
        std::string key = zeta_canonical_key(z);
        auto it = verdicts.find(key);
        if (it != verdicts.end()) return;
        bool member = family_member(row, z);
        verdicts.emplace(std::move(key), member);
        if (member) accepted.emplace(zeta_canonical_key(z), std::move(z));
    };
    auto consider_gh = [&](std::vector<ImVec> pts) {
        for (const auto& p : pts)
            if (!bounded(p)) return;
        consider(Zeta::gh(std::move(pts)));
    };
    auto consider_row6 = [&](std::vector<ImVec> entries) {
        for (const auto& p : entries)
            if (!bounded(p)) return;
        // cheap wall prefilter before the canonical form
        for (size_t a = 0; a < entries.size(); ++a)
            for (size_t b = a + 1; b < entries.size(); ++b)
                if (entries[a] == entries[b] || entries[a] == -entries[b]) return;
        consider(Zeta::kronheimer(CartanWeight(std::move(entries)), RootType::D, 5));
    };

    const Mat3F& Rp = mat_R_plus();
    const Mat3F mRm = -mat_R_minus();
    const Mat3F mRpm = -mat_R_pm();

    switch (row) {
        case 1:
            for (const auto& z1 : box) {
                consider_gh({z1, Rp * z1});
                consider_gh({-z1, z1});
            }
            break;
        case 2:
        case 3:
            // every member is determined by two of its entries via sum zero
            for (const auto& z1 : box)
                for (const auto& z2 : box) consider_gh({z1, z2, -z1 - z2});
            break;
        case 4:
            for (const auto& z1 : box) consider_gh({z1, Rp * z1, mRm * z1, mRpm * z1});
            for (const auto& z1 : plane_jk)
                for (const auto& z2 : plane_jk) consider_gh({z1, Rp * z1, z2, Rp * z2});
            for (const auto& z1 : axis_i)
                for (const auto& z2 : axis_i)
                    for (const auto& z3 : plane_jk) consider_gh({z1, z2, z3, Rp * z3});
            for (const auto& z1 : axis_i)
                for (const auto& z2 : axis_i)
                    for (const auto& z3 : axis_i) consider_gh({z1, z2, z3, -z1 - z2 - z3});
            break;
        case 5:
            for (const auto& z1 : plane_jk)
                for (const auto& z2 : box)
                    consider_gh({z1, Rp * z1, z2, Rp * z2, mRm * z2, mRpm * z2});
            for (const auto& z1 : axis_i)
                for (const auto& z2 : axis_i)
                    for (const auto& z3 : box)
                        consider_gh({z1, z2, z3, Rp * z3, mRm * z3, mRpm * z3});
            for (const auto& z1 : plane_jk)
                for (const auto& z2 : plane_jk)
                    for (const auto& z3 : plane_jk)
                        consider_gh({z1, Rp * z1, z2, Rp * z2, z3, Rp * z3});
            for (const auto& z1 : axis_i)
                for (const auto& z2 : axis_i)
                    for (const auto& z3 : plane_jk)
                        for (const auto& z4 : plane_jk)
                            consider_gh({z1, z2, z3, Rp * z3, z4, Rp * z4});
            for (const auto& z1 : axis_i)
                for (const auto& z2 : axis_i)
                    for (const auto& z3 : axis_i)
                        for (const auto& z4 : axis_i)
                            for (const auto& z5 : plane_jk)
                                consider_gh({z1, z2, z3, z4, z5, Rp * z5});
            for (const auto& z1 : axis_i)
                for (const auto& z2 : axis_i)
                    for (const auto& z3 : axis_i)
                        for (const auto& z4 : axis_i)
                            for (const auto& z5 : axis_i)
                                consider_gh({z1, z2, z3, z4, z5, -z1 - z2 - z3 - z4 - z5});
            break;
        case 6: {
            const Mat3F* Rs[3] = {&mat_R_plus(), &mat_R_minus(), &mat_R_pm()};
            const ImVec zero = ImVec::zero();
            for (const auto& z1 : generic)
                consider_row6({zero, z1, mat_R_plus() * z1, mat_R_minus() * z1, mat_R_pm() * z1});
            for (const auto& z1 : surface)
                for (const auto& z2 : surface)
                    for (const auto* Ra : Rs)
                        for (const auto* Rb : Rs)
                            consider_row6({zero, z1, *Ra * z1, z2, *Rb * z2});
            for (const auto& z1 : any_axis)
                for (const auto& t1z : any_axis) {
                    if (!detail::on_axis(t1z, z1)) continue;
                    for (const auto& z2 : surface)
                        for (const auto* Rb : Rs)
                            consider_row6({zero, z1, t1z, z2, *Rb * z2});
                    for (const auto& z2 : any_axis)
                        for (const auto& t2z : any_axis) {
                            if (!detail::on_axis(t2z, z2)) continue;
                            consider_row6({zero, z1, t1z, z2, t2z});
                        }
                }
            break;
        }
        default: throw std::invalid_argument("enumerate_admissible: row must be 1..6");
    }

    std::vector<Zeta> out;
    out.reserve(accepted.size());
    for (auto& kv : accepted) out.push_back(kv.second);
    return out;
}

} // namespace kummer
