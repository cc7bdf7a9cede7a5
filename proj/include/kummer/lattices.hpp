#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "kummer/imvec.hpp"
#include "kummer/quat.hpp"

namespace kummer {

struct degenerate_lattice : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct not_a_lattice_vector : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Rank-3 lattice in Im H given by an exact basis.
struct LatticeIm {
    std::array<ImVec, 3> basis;

    LatticeIm() : basis{ImVec::i(), ImVec::j(), ImVec::k()} {}
    LatticeIm(ImVec b0, ImVec b1, ImVec b2) : basis{b0, b1, b2} {
        if (basis_matrix().det().is_zero())
            throw degenerate_lattice("LatticeIm: basis is linearly dependent");
    }
    static LatticeIm standard() { return LatticeIm(); }

    Mat3F basis_matrix() const { return Mat3F::from_columns(basis[0], basis[1], basis[2]); }

    ImVec vector_of(std::int64_t a, std::int64_t b, std::int64_t c) const {
        return Rational(a) * basis[0] + Rational(b) * basis[1] + Rational(c) * basis[2];
    }

    /// Exact coordinates of v in this basis.
    ImVec coords_of(const ImVec& v) const { return solve3(basis_matrix(), v); }

    /// Integer coordinates if v is a lattice vector.
    std::optional<std::array<std::int64_t, 3>> integer_coords(const ImVec& v) const {
        ImVec c = coords_of(v);
        std::array<std::int64_t, 3> out{};
        const FieldScalar* comp[3] = {&c.x, &c.y, &c.z};
        for (int i = 0; i < 3; ++i) {
            if (!comp[i]->is_rational()) return std::nullopt;
            Rational r = comp[i]->rational_part();
            if (!r.is_integer()) return std::nullopt;
            out[i] = r.num;
        }
        return out;
    }
    bool contains(const ImVec& v) const { return integer_coords(v).has_value(); }
};

/// v is primitive: nonzero and not an m-fold multiple (m >= 2) of another
/// lattice vector, i.e. the gcd of its integer coordinates is 1.
inline bool is_primitive(const ImVec& v, const LatticeIm& L) {
    auto c = L.integer_coords(v);
    if (!c) throw not_a_lattice_vector("is_primitive: v is not in the lattice");
    auto [a, b, d] = *c;
    if (a == 0 && b == 0 && d == 0) return false;
    return gcd64(gcd64(a, b), d) == 1;
}

/// Parallelogram area sqrt(|u|^2 |v|^2 - <u,v>^2), kept as an exact square
/// plus a floating approximation.
struct Covolume {
    FieldScalar square;
    double value;
};
inline Covolume covolume(const ImVec& u, const ImVec& v) {
    FieldScalar s = u.norm2() * v.norm2() - inner(u, v) * inner(u, v);
    return {s, std::sqrt(std::max(0.0, s.to_double()))};
}

namespace detail {
inline ImVec lex_nonneg(const ImVec& v) { return v.lex_negative() ? -v : v; }
}

/// All linearly independent primitive pairs in {xi1}^perp cap L with integer
/// coordinates bounded by `height`, deduplicated up to order and sign:
/// the representative is lexicographically smallest under
/// {swap, negate-either}.
inline std::vector<std::pair<ImVec, ImVec>>
orthogonal_primitive_pairs(const ImVec& xi1_hat, const LatticeIm& L, int height) {
    if (xi1_hat.norm2() != FieldScalar::one())
        throw std::invalid_argument("orthogonal_primitive_pairs: xi1 must be a unit vector");
    std::vector<ImVec> candidates;
    for (std::int64_t a = -height; a <= height; ++a)
        for (std::int64_t b = -height; b <= height; ++b)
            for (std::int64_t c = -height; c <= height; ++c) {
                if (a == 0 && b == 0 && c == 0) continue;
                if (gcd64(gcd64(a, b), c) != 1) continue;
                ImVec v = L.vector_of(a, b, c);
                if (!inner(v, xi1_hat).is_zero()) continue;
                candidates.push_back(v);
            }
    std::vector<std::pair<ImVec, ImVec>> out;
    auto canon = [](ImVec u, ImVec v) {
        u = detail::lex_nonneg(u);
        v = detail::lex_nonneg(v);
        if (lex_less(v, u)) std::swap(u, v);
        return std::make_pair(u, v);
    };
    for (size_t i = 0; i < candidates.size(); ++i)
        for (size_t j = i + 1; j < candidates.size(); ++j) {
            const ImVec& u = candidates[i];
            const ImVec& v = candidates[j];
            if (cross(u, v).is_zero()) continue;
            auto p = canon(u, v);
            bool dup = false;
            for (const auto& q : out)
                if (q.first == p.first && q.second == p.second) { dup = true; break; }
            if (!dup) out.push_back(p);
        }
    std::sort(out.begin(), out.end(), [](const auto& p, const auto& q) {
        if (p.first != q.first) return lex_less(p.first, q.first);
        return lex_less(p.second, q.second);
    });
    return out;
}

/// First nonzero frequency of the flat torus R^2 / <xi2/t, xi3/t>: 2*pi times
/// the shortest nonzero dual-lattice vector length.  The squared shortest
/// dual length is exact (Lagrange-Gauss reduction of the dual Gram form), so
/// the t-scaling law is assertable without tolerance.
struct SpectralGap {
    FieldScalar dual_min_sq; // squared length of shortest dual vector
    double value;            // 2*pi*sqrt(dual_min_sq)
};

namespace detail {
/// Lagrange-Gauss reduction on the binary quadratic form given by an exact
/// 2x2 Gram matrix; returns the minimum of the form over nonzero integer
/// vectors.
inline FieldScalar lagrange_gauss_min(FieldScalar g11, FieldScalar g12, FieldScalar g22) {
    // invariant: work with basis vectors u, v tracked only through their Gram
    FieldScalar uu = g11, uv = g12, vv = g22;
    if ((uu * vv - uv * uv).sign() <= 0)
        throw degenerate_lattice("lagrange_gauss_min: form is not positive definite");
    if (vv < uu) std::swap(uu, vv); // |u| <= |v|
    for (int iter = 0; iter < 256; ++iter) {
        // v <- v - m u with m the nearest integer to <u,v>/<u,u>
        FieldScalar ratio = uv * uu.inverse();
        std::int64_t m = llround(ratio.to_double());
        // correct the rounding exactly: |ratio - m| <= 1/2
        FieldScalar half = frac(1, 2);
        while ((ratio - FieldScalar(m)).sign() > 0 && (ratio - FieldScalar(m)) > half) ++m;
        while ((FieldScalar(m) - ratio).sign() > 0 && (FieldScalar(m) - ratio) > half) --m;
        if (m != 0) {
            FieldScalar fm(m);
            FieldScalar new_vv = vv - FieldScalar(2) * fm * uv + fm * fm * uu;
            FieldScalar new_uv = uv - fm * uu;
            vv = new_vv;
            uv = new_uv;
        }
        if (vv >= uu) break; // reduced
        std::swap(uu, vv);
    }
    return uu;
}
} // namespace detail

inline SpectralGap spectral_gap(const ImVec& xi2, const ImVec& xi3, const Rational& t) {
    if (t.sign() <= 0) throw std::invalid_argument("spectral_gap: t must be positive");
    if (cross(xi2, xi3).is_zero())
        throw degenerate_lattice("spectral_gap: xi2, xi3 are linearly dependent");
    // Gram of the lattice <xi2/t, xi3/t>; dual Gram is its inverse
    FieldScalar t2 = FieldScalar(t * t);
    FieldScalar g11 = xi2.norm2(), g12 = inner(xi2, xi3), g22 = xi3.norm2();
    FieldScalar det = g11 * g22 - g12 * g12;
    FieldScalar inv_det = det.inverse();
    // dual Gram of the unscaled lattice, then multiply by t^2
    FieldScalar d11 = g22 * inv_det * t2;
    FieldScalar d12 = -(g12 * inv_det) * t2;
    FieldScalar d22 = g11 * inv_det * t2;
    FieldScalar min_sq = detail::lagrange_gauss_min(d11, d12, d22);
    return {min_sq, 2.0 * M_PI * std::sqrt(min_sq.to_double())};
}
/// Isometry of Im H: x |-> R x + v.
struct AffineIsom {
    Mat3F rotation;
    ImVec translation;

    AffineIsom() : rotation(Mat3F::identity()) {}
    AffineIsom(Mat3F R, ImVec v) : rotation(std::move(R)), translation(std::move(v)) {}

    ImVec apply(const ImVec& x) const { return rotation * x + translation; }
    friend AffineIsom compose(const AffineIsom& g1, const AffineIsom& g2) {
        return {g1.rotation * g2.rotation, g1.rotation * g2.translation + g1.translation};
    }
    friend bool operator==(const AffineIsom& a, const AffineIsom& b) {
        return a.rotation == b.rotation && a.translation == b.translation;
    }
};

/// Generator of a Bieberbach group together with its action on the ALE
/// fiber (empty fiber means the generator acts trivially there).
struct BieberbachGenerator {
    AffineIsom isom;
    std::optional<RotationH> fiber;
    std::string name;
};

/// Bieberbach group G < SO(Im H) x| Im H, generated by a rank-3 lattice and
/// finitely many extra generators; the lattice acts trivially on the fiber.
struct BieberbachGroup {
    LatticeIm lattice;
    std::vector<BieberbachGenerator> extra_generators;

    static BieberbachGroup lattice_only(LatticeIm L = LatticeIm::standard()) {
        return {std::move(L), {}};
    }

    /// Normality of the lattice: conjugating a lattice translation by any
    /// generator lands in the lattice.
    bool lattice_is_normal() const {
        for (const auto& g : extra_generators)
            for (const auto& b : lattice.basis)
                if (!lattice.contains(g.isom.rotation * b)) return false;
        return true;
    }
};

} // namespace kummer
