#pragma once

#include <stdexcept>
#include <string>

#include "kummer/field.hpp"
#include "kummer/imvec.hpp"

namespace kummer {

/// Quaternion with exact field coefficients: r + x*i + y*j + z*k,
/// with i^2 = j^2 = k^2 = ijk = -1.
struct Quat {
    FieldScalar r, x, y, z;

    Quat() = default;
    Quat(FieldScalar re, FieldScalar xi, FieldScalar yj, FieldScalar zk)
        : r(std::move(re)), x(std::move(xi)), y(std::move(yj)), z(std::move(zk)) {}
    Quat(std::int64_t n) : r(n) {}

    static Quat one() { return Quat(1); }
    static Quat i() { return {0, 1, 0, 0}; }
    static Quat j() { return {0, 0, 1, 0}; }
    static Quat k() { return {0, 0, 0, 1}; }
    static Quat from_imvec(const ImVec& v) { return {FieldScalar(), v.x, v.y, v.z}; }

    ImVec im() const { return {x, y, z}; }
    bool is_pure_imaginary() const { return r.is_zero(); }

    friend Quat operator+(const Quat& a, const Quat& b) {
        return {a.r + b.r, a.x + b.x, a.y + b.y, a.z + b.z};
    }
    friend Quat operator-(const Quat& a, const Quat& b) {
        return {a.r - b.r, a.x - b.x, a.y - b.y, a.z - b.z};
    }
    Quat operator-() const { return {-r, -x, -y, -z}; }
    friend Quat operator*(const FieldScalar& s, const Quat& q) {
        return {s * q.r, s * q.x, s * q.y, s * q.z};
    }

    // Hamilton product
    friend Quat operator*(const Quat& a, const Quat& b) {
        return {a.r * b.r - a.x * b.x - a.y * b.y - a.z * b.z,
                a.r * b.x + a.x * b.r + a.y * b.z - a.z * b.y,
                a.r * b.y - a.x * b.z + a.y * b.r + a.z * b.x,
                a.r * b.z + a.x * b.y - a.y * b.x + a.z * b.r};
    }

    Quat conj() const { return {r, -x, -y, -z}; }
    FieldScalar norm2() const { return r * r + x * x + y * y + z * z; }
    bool is_unit() const { return norm2() == FieldScalar::one(); }
    Quat inverse() const {
        FieldScalar n = norm2();
        if (n.is_zero()) throw std::domain_error("Quat: inverse of zero");
        FieldScalar s = n.inverse();
        Quat c = conj();
        return {s * c.r, s * c.x, s * c.y, s * c.z};
    }

    friend bool operator==(const Quat& a, const Quat& b) {
        return a.r == b.r && a.x == b.x && a.y == b.y && a.z == b.z;
    }
    friend bool operator!=(const Quat& a, const Quat& b) { return !(a == b); }

    /// First nonzero coefficient in (r, x, y, z) order is negative.
    bool lex_negative() const {
        int s = r.sign();
        if (s != 0) return s < 0;
        s = x.sign();
        if (s != 0) return s < 0;
        s = y.sign();
        if (s != 0) return s < 0;
        return z.sign() < 0;
    }

    std::string str() const {
        return "[" + r.str() + ", " + x.str() + ", " + y.str() + ", " + z.str() + "]";
    }
    /// Canonical key for hashing in group closures.
    std::string key() const {
        auto f = [](const FieldScalar& s) {
            std::string out;
            for (auto& q : s.c) out += q.str() + ",";
            return out;
        };
        return f(r) + "|" + f(x) + "|" + f(y) + "|" + f(z);
    }
};

struct invalid_rotation : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Rotation of H given by a pair of unit quaternions acting as
/// q |-> a * q * conj(b).  The pair is defined up to a simultaneous sign;
/// the stored representative has the first nonzero coordinate of `a`
/// positive so rotations hash and compare canonically.
struct RotationH {
    Quat a, b;

    RotationH() : a(Quat::one()), b(Quat::one()) {}
    RotationH(Quat a_, Quat b_) : a(std::move(a_)), b(std::move(b_)) {
        if (!a.is_unit() || !b.is_unit())
            throw invalid_rotation("RotationH: a and b must be unit quaternions");
        if (a.lex_negative()) {
            a = -a;
            b = -b;
        }
    }

    static RotationH identity() { return RotationH(); }
    /// The rotation q |-> a q conj(b) written with the literal right factor:
    /// map(a, c) is q |-> a q c.
    static RotationH left_right(const Quat& a, const Quat& c) {
        return RotationH(a, c.conj());
    }

    Quat apply(const Quat& q) const { return a * q * b.conj(); }

    friend RotationH compose(const RotationH& r1, const RotationH& r2) {
        return RotationH(r1.a * r2.a, r1.b * r2.b);
    }
    RotationH inverse() const { return RotationH(a.conj(), b.conj()); }

    friend bool operator==(const RotationH& p, const RotationH& q) {
        return p.a == q.a && p.b == q.b;
    }
    friend bool operator!=(const RotationH& p, const RotationH& q) { return !(p == q); }
};

inline Quat rotation_apply(const RotationH& R, const Quat& q) { return R.apply(q); }

/// Induced map on self-dual 2-vectors under the identification
/// Lambda^2_+ H ~ Im H: v |-> a v conj(a).  Orthogonal with det 1.
inline Mat3F lambda2_plus(const RotationH& R) {
    auto act = [&](const Quat& e) {
        Quat w = R.a * e * R.a.conj();
        return w.im();
    };
    return Mat3F::from_columns(act(Quat::i()), act(Quat::j()), act(Quat::k()));
}

} // namespace kummer
