#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "kummer/ghspace.hpp"
#include "kummer/intlin.hpp"
#include "kummer/resdata.hpp"

namespace kummer {

struct requires_external_area : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct no_certificate : std::domain_error {
    using std::domain_error::domain_error;
};

/// Sphere source: a monopole segment (Gibbons-Hawking) or a root class
/// (Kronheimer).
struct SphereDesc {
    bool is_segment = true;
    ImVec z0, z1;  // segment endpoints
    RootVec theta; // root, stored with lex-positive sign

    static SphereDesc segment(ImVec a, ImVec b) {
        SphereDesc s;
        s.is_segment = true;
        s.z0 = std::move(a);
        s.z1 = std::move(b);
        return s;
    }
    static SphereDesc root(RootVec th) {
        for (const auto& r : th) {
            if (r.is_zero()) continue;
            if (r.sign() < 0)
                for (auto& q : th) q = -q;
            break;
        }
        SphereDesc s;
        s.is_segment = false;
        s.theta = std::move(th);
        return s;
    }
    std::string str() const {
        if (is_segment) return "segment " + z0.str() + " -> " + z1.str();
        return "root " + root_key(theta);
    }
};

/// Descriptor of a model coassociative: sphere source, orthonormal direction
/// xi1, lattice vectors xi2, xi3, base point, and the ambient Bieberbach
/// group with its fiber actions.
struct CoassocData {
    SphereDesc sphere;
    ImVec xi1_hat, xi2, xi3, base_point;
    BieberbachGroup group;
    GroupLabel gamma = GroupLabel::C(2);
    Zeta zeta = Zeta::gh({});
};

struct Condition {
    std::string id;
    bool pass = false;
    std::string witness;
};

enum class Status { Embedded, KFoldCover, ImmersedNonCovering, Indeterminate };

inline std::string status_str(Status s) {
    switch (s) {
        case Status::Embedded: return "embedded";
        case Status::KFoldCover: return "k-fold-cover-of-embedded";
        case Status::ImmersedNonCovering: return "immersed-non-covering";
        case Status::Indeterminate: return "indeterminate";
    }
    return "?";
}

// ---------------------------------------------------------------------------
// sphere counting

struct SphereSet {
    std::vector<SphereDesc> embedded;
    std::vector<SphereDesc> nodal;
};

/// Spheres aligned with xi1: Gibbons-Hawking segments whose open interior
/// avoids the monopole set, or Kronheimer roots with no aligned
/// decomposition theta = theta1 + theta2, |zeta(theta)| = |zeta(theta1)| +
/// |zeta(theta2)| (those are nodal and reported separately).
inline SphereSet count_spheres(const Zeta& z, const ImVec& xi1_hat) {
    SphereSet out;
    if (z.kind == ZetaKind::GibbonsHawking) {
        if (!gh_admissible(z))
            throw std::invalid_argument("count_spheres: parameter is not admissible");
        const auto& pts = z.gh_points;
        for (size_t a = 0; a < pts.size(); ++a)
            for (size_t b = a + 1; b < pts.size(); ++b) {
                ImVec d = pts[b] - pts[a];
                if (!cross(d, xi1_hat).is_zero()) continue;
                bool blocked = false;
                for (size_t c = 0; c < pts.size(); ++c) {
                    if (c == a || c == b) continue;
                    ImVec w = pts[c] - pts[a];
                    if (!cross(w, d).is_zero()) continue;
                    // w = t d with 0 < t < 1 blocks the open segment
                    FieldScalar t = inner(w, d) * d.norm2().inverse();
                    if (t.sign() > 0 && (FieldScalar::one() - t).sign() > 0) blocked = true;
                }
                auto lo = pts[a], hi = pts[b];
                if (lex_less(hi, lo)) std::swap(lo, hi);
                if (blocked)
                    out.nodal.push_back(SphereDesc::segment(lo, hi));
                else
                    out.embedded.push_back(SphereDesc::segment(lo, hi));
            }
    } else {
        const RootSystem& rs = z.root_system();
        if (!in_delta_circ(z.weight, rs))
            throw std::invalid_argument("count_spheres: weight lies on a wall");
        for (const auto& th : rs.roots) {
            SphereDesc cand = SphereDesc::root(th);
            if (!(root_key(cand.theta) == root_key(th))) continue; // keep one sign
            ImVec v = z.weight.evaluate(th);
            if (!cross(v, xi1_hat).is_zero()) continue;
            bool decomposable = false;
            for (const auto& th1 : rs.roots) {
                RootVec th2(th.size());
                for (size_t m = 0; m < th.size(); ++m) th2[m] = th[m] - th1[m];
                if (!rs.is_root(th2)) continue;
                ImVec v1 = z.weight.evaluate(th1);
                ImVec v2 = z.weight.evaluate(th2);
                // |v| = |v1| + |v2| for v = v1 + v2 means v1, v2 are aligned
                if (cross(v1, v2).is_zero() && inner(v1, v2).sign() >= 0) {
                    decomposable = true;
                    break;
                }
            }
            if (decomposable)
                out.nodal.push_back(cand);
            else
                out.embedded.push_back(cand);
        }
        auto by_key = [](const SphereDesc& a, const SphereDesc& b) {
            return root_key(a.theta) < root_key(b.theta);
        };
        std::sort(out.embedded.begin(), out.embedded.end(), by_key);
        std::sort(out.nodal.begin(), out.nodal.end(), by_key);
    }
    return out;
}

// ---------------------------------------------------------------------------
// assumption checks

inline std::vector<Condition> check_assumption(const CoassocData& data) {
    std::vector<Condition> out;
    // (i) sphere validity
    {
        Condition c{"sphere-valid", false, ""};
        if (data.sphere.is_segment) {
            if (data.zeta.kind != ZetaKind::GibbonsHawking) {
                c.witness = "segment sphere needs Gibbons-Hawking data";
            } else if (!gh_admissible(data.zeta)) {
                c.witness = "parameter is not admissible";
            } else {
                auto spheres = count_spheres(data.zeta, data.xi1_hat);
                for (const auto& s : spheres.embedded) {
                    if (detail::multiset_equal({s.z0, s.z1}, {data.sphere.z0, data.sphere.z1})) {
                        c.pass = true;
                        c.witness = "segment avoids the monopole set";
                    }
                }
                if (!c.pass) c.witness = "segment blocked or endpoints not aligned monopoles";
                // direction consistency: xi1 is the unit vector along z1 - z0
                ImVec d = data.sphere.z1 - data.sphere.z0;
                if (c.pass && (!cross(d, data.xi1_hat).is_zero() ||
                               data.xi1_hat.norm2() != FieldScalar::one())) {
                    c.pass = false;
                    c.witness = "xi1 is not the unit segment direction";
                }
            }
        } else {
            if (data.zeta.kind != ZetaKind::Kronheimer) {
                c.witness = "root sphere needs Kronheimer data";
            } else {
                const RootSystem& rs = data.zeta.root_system();
                ImVec v = data.zeta.weight.evaluate(data.sphere.theta);
                if (!rs.is_root(data.sphere.theta))
                    c.witness = "theta is not a root";
                else if (v.is_zero())
                    c.witness = "zeta(theta) = 0";
                else if (!cross(v, data.xi1_hat).is_zero() ||
                         data.xi1_hat.norm2() != FieldScalar::one())
                    c.witness = "xi1 is not the unit vector along zeta(theta)";
                else {
                    c.pass = true;
                    c.witness = "theta in Phi with zeta(theta) parallel to xi1";
                }
            }
        }
        out.push_back(c);
    }
    // (ii) xi2, xi3 in {xi1}^perp cap Lambda, linearly independent
    {
        Condition c{"xi-orthogonal-lattice", false, ""};
        bool in_lattice =
            data.group.lattice.contains(data.xi2) && data.group.lattice.contains(data.xi3);
        bool orth = inner(data.xi2, data.xi1_hat).is_zero() &&
                    inner(data.xi3, data.xi1_hat).is_zero();
        bool indep = !cross(data.xi2, data.xi3).is_zero();
        c.pass = in_lattice && orth && indep;
        c.witness = std::string(in_lattice ? "" : "not lattice vectors; ") +
                    (orth ? "" : "not orthogonal to xi1; ") + (indep ? "" : "dependent; ");
        if (c.pass) c.witness = "xi2, xi3 span a plane in {xi1}^perp cap Lambda";
        out.push_back(c);
    }
    // (ii') Sigma-invariance under rho(xi2), rho(xi3): the lattice acts
    // trivially on the fiber in this data model
    {
        Condition c{"sigma-invariant-xi", true, "lattice acts trivially on the fiber"};
        out.push_back(c);
    }
    return out;
}

inline bool all_pass(const std::vector<Condition>& cs) {
    for (const auto& c : cs)
        if (!c.pass) return false;
    return true;
}

// ---------------------------------------------------------------------------
// embedding classification

namespace detail {

struct Coset {
    Mat3F rot;
    ImVec tr; // reduced mod the lattice
    RotationH fiber;
    bool fiber_trivial = true;
    std::string name;
};

inline std::string coset_key(const LatticeIm& L, const Mat3F& rot, const ImVec& tr) {
    std::string s;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) s += rot.m[i][j].str() + ",";
    s += "|" + tr.str();
    (void)L;
    return s;
}

/// Reduces a translation modulo the lattice (coordinates into [0,1)).
inline ImVec reduce_mod_lattice(const LatticeIm& L, const ImVec& v) {
    ImVec c = L.coords_of(v);
    const FieldScalar* comp[3] = {&c.x, &c.y, &c.z};
    ImVec out = v;
    for (int i = 0; i < 3; ++i) {
        if (!comp[i]->is_rational())
            throw std::invalid_argument("bieberbach translation has irrational lattice coordinates");
        Rational r = comp[i]->rational_part();
        std::int64_t fl = r.floor();
        if (fl != 0) out = out - Rational(fl) * L.basis[i];
    }
    return out;
}

/// Finite list of cosets of the lattice in the Bieberbach group, with their
/// fiber actions.
inline std::vector<Coset> point_cosets(const BieberbachGroup& G) {
    std::vector<Coset> cosets;
    std::map<std::string, size_t> index;
    Coset id{Mat3F::identity(), ImVec::zero(), RotationH::identity(), true, "id"};
    cosets.push_back(id);
    index[coset_key(G.lattice, id.rot, id.tr)] = 0;
    std::vector<size_t> frontier = {0};
    while (!frontier.empty()) {
        size_t cur = frontier.back();
        frontier.pop_back();
        for (const auto& gen : G.extra_generators) {
            Coset g = cosets[cur];
            Mat3F rot = g.rot * gen.isom.rotation;
            ImVec tr = reduce_mod_lattice(G.lattice, g.rot * gen.isom.translation + g.tr);
            RotationH fiber = g.fiber;
            bool triv = g.fiber_trivial;
            if (gen.fiber) {
                fiber = triv ? *gen.fiber : compose(g.fiber, *gen.fiber);
                triv = false;
                if (fiber == RotationH::identity()) triv = true;
            }
            std::string key = coset_key(G.lattice, rot, tr);
            auto it = index.find(key);
            if (it == index.end()) {
                if (rot == Mat3F::identity() && !tr.is_zero())
                    throw std::logic_error("point_cosets: lattice is not maximal in the group");
                Coset nc{rot, tr, fiber, triv, g.name + "*" + gen.name};
                index[key] = cosets.size();
                cosets.push_back(nc);
                frontier.push_back(cosets.size() - 1);
                if (cosets.size() > 512)
                    throw std::logic_error("point_cosets: point group too large");
            } else {
                const Coset& existing = cosets[it->second];
                if (!(existing.fiber == fiber) || existing.fiber_trivial != triv)
                    throw std::logic_error("point_cosets: fiber action ill-defined on cosets");
            }
        }
    }
    return cosets;
}

enum class SphereRel { Same, Disjoint, Meets, Indeterminate };

/// Exact intersection test for closed segments in Im H.
inline bool segments_intersect(const ImVec& a0, const ImVec& a1, const ImVec& b0,
                               const ImVec& b1) {
    ImVec d1 = a1 - a0, d2 = b1 - b0, r = b0 - a0;
    ImVec n = cross(d1, d2);
    FieldScalar one = FieldScalar::one();
    if (n.is_zero()) {
        if (!cross(r, d1).is_zero()) return false; // parallel, offset
        FieldScalar len2 = d1.norm2();
        FieldScalar t0 = inner(r, d1) * len2.inverse();
        FieldScalar t1 = inner(b1 - a0, d1) * len2.inverse();
        if (t1 < t0) std::swap(t0, t1);
        return !(t1.sign() < 0 || (t0 - one).sign() > 0); // [t0,t1] meets [0,1]
    }
    // skew or crossing: need coplanarity
    if (!inner(r, n).is_zero()) return false;
    FieldScalar nn = n.norm2().inverse();
    FieldScalar t = inner(cross(r, d2), n) * nn;
    FieldScalar u = inner(cross(r, d1), n) * nn;
    return t.sign() >= 0 && (t - one).sign() <= 0 && u.sign() >= 0 && (u - one).sign() <= 0;
}

/// How the fiber action of the coset moves the sphere.
inline SphereRel sphere_relation(const Coset& g, const CoassocData& data, std::string* note) {
    if (g.fiber_trivial) return SphereRel::Same;
    if (data.sphere.is_segment) {
        auto base = gh_base_action(g.fiber);
        if (!base) {
            if (note) *note = "fiber action is not a bundle map; base action undecidable";
            return SphereRel::Indeterminate;
        }
        ImVec i0 = *base * data.sphere.z0;
        ImVec i1 = *base * data.sphere.z1;
        if (detail::multiset_equal({i0, i1}, {data.sphere.z0, data.sphere.z1}))
            return SphereRel::Same;
        return segments_intersect(i0, i1, data.sphere.z0, data.sphere.z1) ? SphereRel::Meets
                                                                          : SphereRel::Disjoint;
    }
    const RootSystem& rs = data.zeta.root_system();
    auto G = generate_subgroup(data.gamma);
    DiagramAut ad = mckay_automorphism(g.fiber, G, rs);
    auto A = kron_lift_witness(lambda2_plus(g.fiber), ad, data.zeta.weight, rs);
    if (!A) {
        if (note) *note = "no lift witness: group does not act on this parameter";
        return SphereRel::Indeterminate;
    }
    // theta' with zeta(theta') = L zeta(theta) is A^{-1} theta
    RootVec image = A->inverse().apply(data.sphere.theta);
    if (!rs.is_root(image)) throw std::logic_error("sphere_relation: image is not a root");
    RootVec neg(image.size());
    for (size_t m = 0; m < image.size(); ++m) neg[m] = -image[m];
    if (root_key(image) == root_key(data.sphere.theta) ||
        root_key(neg) == root_key(data.sphere.theta))
        return SphereRel::Same;
    // distinct holomorphic spheres: disjoint exactly when the root pairing
    // vanishes
    return dotQ(image, data.sphere.theta).is_zero() ? SphereRel::Disjoint : SphereRel::Meets;
}

/// Coordinates of an in-plane vector in the (xi2, xi3) basis.
inline std::pair<FieldScalar, FieldScalar> plane_coords(const CoassocData& d, const ImVec& w) {
    ImVec n = cross(d.xi2, d.xi3);
    FieldScalar nn = n.norm2().inverse();
    FieldScalar beta = inner(cross(d.xi2, w), n) * nn;
    FieldScalar alpha = inner(cross(w, d.xi3), n) * nn;
    return {alpha, beta};
}

/// Integer solvability of <v0 + sum_i c_i b_i, normal> = 0 over c in Z^3,
/// expanded over the 8 field-basis coordinates.
inline std::optional<ImVec> solve_plane_offset(const LatticeIm& L, const ImVec& v0,
                                               const ImVec& normal) {
    FieldScalar s0 = inner(v0, normal);
    FieldScalar si[3] = {inner(L.basis[0], normal), inner(L.basis[1], normal),
                         inner(L.basis[2], normal)};
    IntMat M(8, 3);
    std::vector<std::int64_t> rhs(8, 0);
    for (int b = 0; b < 8; ++b) {
        std::int64_t lcm = 1;
        auto bump = [&](const Rational& r) { lcm = std::lcm(lcm, r.den); };
        bump(s0.c[b]);
        for (int i = 0; i < 3; ++i) bump(si[i].c[b]);
        for (int i = 0; i < 3; ++i) M.a[b][i] = si[i].c[b].num * (lcm / si[i].c[b].den);
        rhs[b] = -s0.c[b].num * (lcm / s0.c[b].den);
    }
    auto sol = intlin::solve(M, rhs);
    if (!sol) return std::nullopt;
    return L.vector_of((*sol)[0], (*sol)[1], (*sol)[2]);
}

/// The rank-2 sublattice T = Lambda cap {normal}^perp, the index of
/// <xi2, xi3> inside it, and coset representatives of T / <xi2, xi3> in
/// (xi2, xi3)-coordinates.
struct PlaneLattice {
    std::int64_t index = 1;
    std::vector<std::pair<FieldScalar, FieldScalar>> coset_reps; // excludes 0
};

inline PlaneLattice plane_lattice(const CoassocData& d) {
    const LatticeIm& L = d.group.lattice;
    FieldScalar si[3] = {inner(L.basis[0], d.xi1_hat), inner(L.basis[1], d.xi1_hat),
                         inner(L.basis[2], d.xi1_hat)};
    IntMat M(8, 3);
    for (int b = 0; b < 8; ++b) {
        std::int64_t lcm = 1;
        for (int i = 0; i < 3; ++i) lcm = std::lcm(lcm, si[i].c[b].den);
        for (int i = 0; i < 3; ++i) M.a[b][i] = si[i].c[b].num * (lcm / si[i].c[b].den);
    }
    auto ker = intlin::kernel(M);
    if (ker.size() != 2)
        throw std::logic_error("plane_lattice: kernel rank " + std::to_string(ker.size()));
    ImVec k0 = L.vector_of(ker[0][0], ker[0][1], ker[0][2]);
    ImVec k1 = L.vector_of(ker[1][0], ker[1][1], ker[1][2]);
    auto coords = [&](const ImVec& v) {
        // v = alpha k0 + beta k1 inside the plane
        ImVec n = cross(k0, k1);
        FieldScalar nn = n.norm2().inverse();
        FieldScalar beta = inner(cross(k0, v), n) * nn;
        FieldScalar alpha = inner(cross(v, k1), n) * nn;
        if (!alpha.is_rational() || !beta.is_rational() || !alpha.rational_part().is_integer() ||
            !beta.rational_part().is_integer())
            throw std::logic_error("plane_lattice: xi not integral in the kernel basis");
        return std::make_pair(alpha.rational_part().num, beta.rational_part().num);
    };
    auto [a11, a21] = coords(d.xi2);
    auto [a12, a22] = coords(d.xi3);
    std::int64_t det = a11 * a22 - a12 * a21;
    PlaneLattice out;
    out.index = det < 0 ? -det : det;
    if (out.index > 1) {
        // representatives of T / <xi2, xi3> in xi-coordinates
        std::map<std::string, std::pair<FieldScalar, FieldScalar>> reps;
        for (std::int64_t a = 0; a < out.index; ++a)
            for (std::int64_t b = 0; b < out.index; ++b) {
                ImVec t = Rational(a) * k0 + Rational(b) * k1;
                auto [x, y] = plane_coords(d, t);
                // reduce mod Z^2
                auto fract = [](const FieldScalar& s) {
                    Rational r = s.rational_part();
                    return FieldScalar(r - Rational(r.floor()));
                };
                if (!x.is_rational() || !y.is_rational())
                    throw std::logic_error("plane_lattice: non-rational xi-coordinates");
                FieldScalar fx = fract(x), fy = fract(y);
                if (fx.is_zero() && fy.is_zero()) continue;
                reps.emplace(fx.str() + "|" + fy.str(), std::make_pair(fx, fy));
            }
        for (auto& kv : reps) out.coset_reps.push_back(kv.second);
        if (std::int64_t(out.coset_reps.size()) != out.index - 1)
            throw std::logic_error("plane_lattice: coset count mismatch");
    }
    return out;
}

/// Fixed points of the affine map x -> B x + tau on the torus
/// R^2 / Z^2 (coordinates in the xi2, xi3 basis).
inline bool torus_has_fixed_point(const std::array<std::array<std::int64_t, 2>, 2>& B,
                                  const FieldScalar& tau0, const FieldScalar& tau1) {
    std::int64_t k11 = B[0][0] - 1, k12 = B[0][1], k21 = B[1][0], k22 = B[1][1] - 1;
    std::int64_t det = k11 * k22 - k12 * k21;
    if (det != 0) return true; // (B - I) is invertible over R: solve for x
    auto is_int = [](const FieldScalar& s) {
        return s.is_rational() && s.rational_part().is_integer();
    };
    if (k11 == 0 && k12 == 0 && k21 == 0 && k22 == 0) return is_int(tau0) && is_int(tau1);
    // rank one: solvable iff the cokernel component of tau is integral
    std::int64_t m0, m1; // primitive left kernel of K
    if (k11 != 0 || k12 != 0) {
        m0 = -k21;
        m1 = k11;
        if (m0 == 0 && m1 == 0) { m0 = -k22; m1 = k12; }
    } else {
        m0 = 1;
        m1 = 0;
    }
    std::int64_t g = std::gcd(std::abs(m0), std::abs(m1));
    if (g > 1) { m0 /= g; m1 /= g; }
    FieldScalar proj = Rational(m0) * tau0 + Rational(m1) * tau1;
    return is_int(proj);
}

} // namespace detail

/// Verdict of the embedding classification.
struct Classification {
    Status status = Status::Embedded;
    int cover_degree = 1;
    std::vector<std::string> witnesses;
    std::vector<std::string> candidates; // populated for indeterminate verdicts
};

/// Stabilizer-based classification: the model immersion is an embedding iff
/// the subgroup preserving the affine plane base_point + span(xi2, xi3) and
/// the sphere is exactly <xi2, xi3>; a larger stabilizer acting freely gives
/// a k-fold cover of an embedded coassociative.
inline Classification classify_embedding(const CoassocData& data) {
    Classification out;
    if (!all_pass(check_assumption(data)))
        throw std::invalid_argument("classify_embedding: assumption checks fail");

    const ImVec& n_hat = data.xi1_hat;
    auto cosets = detail::point_cosets(data.group);
    detail::PlaneLattice plane = detail::plane_lattice(data);
    std::int64_t lattice_index = plane.index;

    struct Contributor {
        detail::Coset coset;
        ImVec in_plane_offset; // (B - I) q0 + v + lambda*, lies in the plane
    };
    std::vector<Contributor> contributors;
    bool violation = false;
    std::vector<std::string> indeterminate_notes;

    for (const auto& g : cosets) {
        if (g.rot == Mat3F::identity() && g.tr.is_zero()) continue; // lattice handled by index
        std::string note;
        detail::SphereRel rel = detail::sphere_relation(g, data, &note);
        ImVec rotated_normal = g.rot * n_hat;
        bool parallel = rotated_normal == n_hat || rotated_normal == -n_hat;
        if (!parallel) {
            // non-parallel planes in Im H always intersect
            if (rel == detail::SphereRel::Same || rel == detail::SphereRel::Meets) {
                violation = true;
                out.witnesses.push_back("coset " + g.name +
                                        " tilts the plane while meeting the sphere");
            } else if (rel == detail::SphereRel::Indeterminate) {
                indeterminate_notes.push_back("coset " + g.name + ": " + note);
            }
            continue;
        }
        ImVec v0 = g.rot * data.base_point - data.base_point + g.tr;
        auto lam = detail::solve_plane_offset(data.group.lattice, v0, n_hat);
        if (!lam) continue; // every lattice translate misses the plane
        if (rel == detail::SphereRel::Disjoint) continue;
        if (rel == detail::SphereRel::Meets) {
            violation = true;
            out.witnesses.push_back("coset " + g.name +
                                    " preserves the plane and moves the sphere onto itself");
            continue;
        }
        if (rel == detail::SphereRel::Indeterminate) {
            indeterminate_notes.push_back("coset " + g.name + ": " + note);
            continue;
        }
        contributors.push_back({g, v0 + *lam});
        out.witnesses.push_back("coset " + g.name + " stabilizes plane and sphere");
    }

    if (!indeterminate_notes.empty()) {
        out.status = Status::Indeterminate;
        out.candidates = indeterminate_notes;
        return out;
    }
    if (violation) {
        out.status = Status::ImmersedNonCovering;
        return out;
    }

    out.cover_degree = int(lattice_index) * int(contributors.size() + 1);
    if (out.cover_degree == 1) {
        out.status = Status::Embedded;
        return out;
    }

    // normality of <xi2, xi3> under every contributor, and freeness of the
    // induced affine maps on the torus
    for (const auto& c : contributors) {
        ImVec b2 = c.coset.rot * data.xi2;
        ImVec b3 = c.coset.rot * data.xi3;
        auto [a11, a21] = detail::plane_coords(data, b2);
        auto [a12, a22] = detail::plane_coords(data, b3);
        auto int_of = [](const FieldScalar& s) -> std::optional<std::int64_t> {
            if (!s.is_rational() || !s.rational_part().is_integer()) return std::nullopt;
            return s.rational_part().num;
        };
        auto i11 = int_of(a11), i21 = int_of(a21), i12 = int_of(a12), i22 = int_of(a22);
        if (!i11 || !i21 || !i12 || !i22) {
            out.status = Status::ImmersedNonCovering;
            out.witnesses.push_back("coset " + c.coset.name +
                                    " does not normalize <xi2, xi3>");
            return out;
        }
        auto [t0, t1] = detail::plane_coords(data, c.in_plane_offset);
        std::array<std::array<std::int64_t, 2>, 2> B{{{*i11, *i12}, {*i21, *i22}}};
        // every coset of T / <xi2, xi3> gives a distinct deck candidate
        bool fixed = detail::torus_has_fixed_point(B, t0, t1);
        for (const auto& rep : plane.coset_reps)
            fixed = fixed || detail::torus_has_fixed_point(B, t0 + rep.first, t1 + rep.second);
        if (fixed) {
            // the quotient map branches unless the sphere action is free
            // there; segment spheres fixed pointwise have fixed poles
            bool sphere_fixed_points_known = false;
            bool sphere_has_fixed_points = false;
            if (data.sphere.is_segment) {
                auto base = gh_base_action(c.coset.fiber);
                if (base && *base * data.sphere.z0 == data.sphere.z0 &&
                    *base * data.sphere.z1 == data.sphere.z1) {
                    sphere_fixed_points_known = true;
                    sphere_has_fixed_points = true; // the poles
                }
            }
            if (sphere_fixed_points_known && sphere_has_fixed_points) {
                out.status = Status::ImmersedNonCovering;
                out.witnesses.push_back("coset " + c.coset.name +
                                        " fixes a point of the torus and the sphere poles");
                return out;
            }
            out.status = Status::Indeterminate;
            out.candidates = {"k-fold-cover-of-embedded if the fiber action on the sphere is free",
                              "immersed-non-covering otherwise"};
            out.witnesses.push_back("coset " + c.coset.name +
                                    " fixes a torus point; sphere freeness undecided");
            return out;
        }
    }
    out.status = Status::KFoldCover;
    return out;
}

/// G-equivalence of two sphere choices over the same parameter: some group
/// element carries plane and sphere of one datum to the other.  Equivalent
/// data have identical images in the quotient.
inline bool data_equivalent(const CoassocData& d1, const CoassocData& d2) {
    if (d1.sphere.is_segment != d2.sphere.is_segment) return false;
    auto same_sphere = [&](const SphereDesc& a, const SphereDesc& b) {
        if (a.is_segment) return detail::multiset_equal({a.z0, a.z1}, {b.z0, b.z1});
        return root_key(a.theta) == root_key(b.theta);
    };
    if (same_sphere(d1.sphere, d2.sphere)) return true;
    auto cosets = detail::point_cosets(d1.group);
    const ImVec& n_hat = d1.xi1_hat;
    for (const auto& g : cosets) {
        ImVec rn = g.rot * n_hat;
        if (!(rn == n_hat || rn == -n_hat)) continue;
        ImVec v0 = g.rot * d1.base_point - d2.base_point + g.tr;
        if (!detail::solve_plane_offset(d1.group.lattice, v0, n_hat)) continue;
        // sphere image of d1 under g
        if (d1.sphere.is_segment) {
            auto base = gh_base_action(g.fiber);
            if (g.fiber_trivial) {
                if (same_sphere(d1.sphere, d2.sphere)) return true;
                continue;
            }
            if (!base) continue;
            SphereDesc img = SphereDesc::segment(*base * d1.sphere.z0, *base * d1.sphere.z1);
            if (same_sphere(img, d2.sphere)) return true;
        } else {
            if (g.fiber_trivial) continue;
            const RootSystem& rs = d1.zeta.root_system();
            auto G = generate_subgroup(d1.gamma);
            DiagramAut ad = mckay_automorphism(g.fiber, G, rs);
            auto A = kron_lift_witness(lambda2_plus(g.fiber), ad, d1.zeta.weight, rs);
            if (!A) continue;
            SphereDesc img = SphereDesc::root(A->inverse().apply(d1.sphere.theta));
            if (same_sphere(img, d2.sphere)) return true;
        }
    }
    return false;
}

// ---------------------------------------------------------------------------
// volumes

struct VolumeResult {
    double coefficient = 0; // vol(t) = coefficient * t^2
    double area = 0;
    std::string area_source;
};

/// covolume(xi2, xi3) * area(Sigma) * t^2.  Gibbons-Hawking sphere areas are
/// computed by quadrature; Kronheimer spheres need a supplied area.
inline VolumeResult model_volume_coefficient(const CoassocData& data,
                                             std::optional<double> supplied_area = std::nullopt) {
    VolumeResult out;
    if (supplied_area) {
        out.area = *supplied_area;
        out.area_source = "supplied";
    } else if (data.sphere.is_segment) {
        gh::GHConfig cfg;
        for (const auto& p : data.zeta.gh_points) {
            auto d = p.to_double();
            cfg.zeta.push_back(gh::Vec3{d[0], d[1], d[2]});
        }
        auto s0 = data.sphere.z0.to_double();
        auto s1 = data.sphere.z1.to_double();
        gh::Vec3 a{s0[0], s0[1], s0[2]}, b{s1[0], s1[1], s1[2]};
        // gauge axis perpendicular to the segment, so the strings leave it
        gh::Vec3 dir = (b - a).normalized();
        const gh::Vec3 axes[3] = {{0, 0, 1}, {0, 1, 0}, {1, 0, 0}};
        bool done = false;
        for (const auto& ax : axes) {
            if (std::abs(dot(ax, dir)) > 0.9) continue;
            cfg.gauge_axis = ax;
            try {
                out.area = gh::sphere_area(cfg, a, b).area;
                done = true;
                break;
            } catch (const gh::gauge_singular&) {
            }
        }
        if (!done) throw gh::gauge_singular("model_volume: no usable gauge axis");
        out.area_source = "quadrature";
    } else {
        throw requires_external_area(
            "model_volume: Kronheimer spheres need a supplied area (calibration-period "
            "normalization)");
    }
    out.coefficient = covolume(data.xi2, data.xi3).value * out.area;
    return out;
}

inline double model_volume(const CoassocData& data, double t,
                           std::optional<double> supplied_area = std::nullopt) {
    if (!(t >= 0)) throw std::invalid_argument("model_volume: t must be nonnegative");
    return model_volume_coefficient(data, supplied_area).coefficient * t * t;
}

/// b2_plus(M) = 1 + b1(Sigma); every sphere source has b1 = 0.
inline int family_dimension_from_b1(int b1_sigma) { return 1 + b1_sigma; }
inline int family_dimension(const CoassocData&) { return family_dimension_from_b1(0); }

/// Structured verdict for one coassociative datum.
struct CoassocReport {
    std::vector<Condition> conditions;
    Status status = Status::Indeterminate;
    int cover_degree = 1;
    double volume_coefficient = 0;
    int family_dimension = 1;
    std::string area_source;
    std::vector<std::string> witnesses;
    std::vector<std::string> candidates;
};

inline CoassocReport build_coassoc_report(const CoassocData& data,
                                          std::optional<double> supplied_area = std::nullopt) {
    CoassocReport rep;
    rep.conditions = check_assumption(data);
    rep.family_dimension = family_dimension(data);
    if (!all_pass(rep.conditions)) {
        rep.status = Status::Indeterminate;
        rep.candidates = {"assumption conditions fail; no classification"};
        return rep;
    }
    Classification cls = classify_embedding(data);
    rep.status = cls.status;
    rep.cover_degree = cls.cover_degree;
    rep.witnesses = cls.witnesses;
    rep.candidates = cls.candidates;
    auto vol = model_volume_coefficient(data, supplied_area);
    rep.volume_coefficient = vol.coefficient;
    rep.area_source = vol.area_source;
    return rep;
}

// ---------------------------------------------------------------------------
// flat model calibration residual

/// Evaluates the model 3-form phi = Vol - <sigma ^ omega> on coordinate
/// 3-frames tangent to the model coassociative in the flat Im H x H, with
/// Sigma an xi1-complex line.  Vanishes exactly when xi2, xi3 are orthogonal
/// to xi1.
inline double flat_model_residual(const std::array<double, 3>& xi1,
                                  const std::array<double, 3>& xi2,
                                  const std::array<double, 3>& xi3, int samples = 32) {
    struct V7 {
        std::array<double, 3> base{};
        std::array<double, 4> fiber{};
    };
    auto quat_left = [&](const std::array<double, 4>& p, const std::array<double, 4>& q) {
        return std::array<double, 4>{p[0] * q[0] - p[1] * q[1] - p[2] * q[2] - p[3] * q[3],
                                     p[0] * q[1] + p[1] * q[0] + p[2] * q[3] - p[3] * q[2],
                                     p[0] * q[2] - p[1] * q[3] + p[2] * q[0] + p[3] * q[1],
                                     p[0] * q[3] + p[1] * q[2] - p[2] * q[1] + p[3] * q[0]};
    };
    auto omega_a = [&](int a, const std::array<double, 4>& p, const std::array<double, 4>& q) {
        // omega_a(p, q) = <e_a * p, q>
        std::array<double, 4> e{};
        e[a + 1] = 1;
        auto ep = quat_left(e, p);
        return ep[0] * q[0] + ep[1] * q[1] + ep[2] * q[2] + ep[3] * q[3];
    };
    auto phi = [&](const V7& u, const V7& v, const V7& w) {
        double vol = u.base[0] * (v.base[1] * w.base[2] - v.base[2] * w.base[1]) -
                     u.base[1] * (v.base[0] * w.base[2] - v.base[2] * w.base[0]) +
                     u.base[2] * (v.base[0] * w.base[1] - v.base[1] * w.base[0]);
        double so = 0;
        for (int a = 0; a < 3; ++a) {
            so += u.base[a] * omega_a(a, v.fiber, w.fiber) -
                  v.base[a] * omega_a(a, u.fiber, w.fiber) +
                  w.base[a] * omega_a(a, u.fiber, v.fiber);
        }
        return vol - so;
    };

    V7 t2, t3;
    t2.base = xi2;
    t3.base = xi3;
    std::array<double, 4> xi1q{0, xi1[0], xi1[1], xi1[2]};
    double worst = 0;
    std::uint64_t state = 0x9e3779b97f4a7c15ull;
    auto rnd = [&]() {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        return double(state % 20011) / 20011.0 - 0.5;
    };
    for (int s = 0; s < samples; ++s) {
        V7 tv, tiv;
        std::array<double, 4> v{rnd(), rnd(), rnd(), rnd()};
        tv.fiber = v;
        tiv.fiber = quat_left(xi1q, v); // I_{xi1} v
        const V7* frame[4] = {&t2, &t3, &tv, &tiv};
        for (int skip = 0; skip < 4; ++skip) {
            const V7* tri[3];
            int n = 0;
            for (int m = 0; m < 4; ++m)
                if (m != skip) tri[n++] = frame[m];
            worst = std::max(worst, std::abs(phi(*tri[0], *tri[1], *tri[2])));
        }
    }
    return worst;
}

// ---------------------------------------------------------------------------
// perturbation certificate

struct CertificateInput {
    double beta = 2.5;
    double gamma = 1.0;
    double c = 1.0;
    double R = 1.0;
    std::optional<double> c_E; // defaults to c^2 (1 + R), always reported
};

struct CertificateResult {
    double T = 0;
    double c_E = 0;
    double radius_coefficient = 0; // r(t) = radius_coefficient * t^exponent
    double radius_exponent = 0;
};

/// Contraction conditions of the perturbation argument at scale t, with ball
/// radius r(t) = 2 c_E t^{beta-gamma}:
///   (a) c_E (r + t^beta) t^{-gamma} < 1
///   (b) c_E t^{beta-gamma} + c_E (r + t^beta) t^{-gamma} r <= r
///   (c) r < R
inline bool certificate_conditions(const CertificateInput& in, double c_E, double t) {
    double r = 2.0 * c_E * std::pow(t, in.beta - in.gamma);
    double contraction = c_E * (r + std::pow(t, in.beta)) * std::pow(t, -in.gamma);
    if (!(contraction < 1.0)) return false;
    if (!(c_E * std::pow(t, in.beta - in.gamma) + contraction * r <= r)) return false;
    return r < in.R;
}

/// Largest T (bisection to 1e-6 relative) such that the contraction
/// conditions hold for all t in (0, T).
inline CertificateResult perturbation_certificate(const CertificateInput& in) {
    if (!(in.beta > 0) || !(in.gamma > 0) || !(in.c > 0) || !(in.R > 0))
        throw std::invalid_argument("perturbation_certificate: constants must be positive");
    if (!(in.beta > 2.0 * in.gamma))
        throw no_certificate("perturbation_certificate: beta <= 2*gamma violates the hypothesis");
    CertificateResult out;
    out.c_E = in.c_E.value_or(in.c * in.c * (1.0 + in.R));
    out.radius_coefficient = 2.0 * out.c_E;
    out.radius_exponent = in.beta - in.gamma;

    // the condition quantities increase with t, so the set {conditions hold}
    // is an interval (0, T)
    double hi = 1.0;
    while (certificate_conditions(in, out.c_E, hi) && hi < 1e12) hi *= 2.0;
    double lo = hi / 2.0;
    if (!certificate_conditions(in, out.c_E, lo)) {
        lo = 1e-300;
        if (!certificate_conditions(in, out.c_E, 1e-12))
            throw no_certificate("perturbation_certificate: conditions fail at every scale");
    }
    for (int it = 0; it < 200 && (hi - lo) > 1e-6 * hi; ++it) {
        double mid = 0.5 * (lo + hi);
        if (certificate_conditions(in, out.c_E, mid))
            lo = mid;
        else
            hi = mid;
    }
    out.T = lo;
    return out;
}

} // namespace kummer
