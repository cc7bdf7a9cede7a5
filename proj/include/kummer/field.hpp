#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <stdexcept>
#include <string>

#include "kummer/rational.hpp"

namespace kummer {

/// Exact element of the real field Q(sqrt2, sqrt3, sqrt5), the coefficient
/// domain for all algebraic checks in this project.
///
/// Coordinates are stored over the basis
///   {1, s2, s3, s5, s6, s10, s15, s30},  s_n = sqrt(n),
/// indexed by a bitmask b in 0..7: bit 0 = sqrt2, bit 1 = sqrt3,
/// bit 2 = sqrt5.  Products of basis elements reduce along XOR of masks
/// with an integer carry from the shared primes, so the multiplication
/// table is fixed and associativity is machine-checkable.
///
/// Sign is decided exactly by descending the tower
///   Q(s2,s3,s5) / Q(s2,s3) / Q(s2) / Q:
/// sign(A + B*sqrt(n)) reduces to subfield signs of A, B and A^2 - n*B^2.
struct FieldScalar {
    std::array<Rational, 8> c{};

    FieldScalar() = default;
    FieldScalar(std::int64_t n) { c[0] = Rational(n); }
    FieldScalar(const Rational& r) { c[0] = r; }

    static FieldScalar zero() { return FieldScalar(); }
    static FieldScalar one() { return FieldScalar(1); }
    static FieldScalar basis(int mask, const Rational& coeff = Rational(1)) {
        FieldScalar x;
        x.c[mask] = coeff;
        return x;
    }
    static FieldScalar sqrt2() { return basis(1); }
    static FieldScalar sqrt3() { return basis(2); }
    static FieldScalar sqrt5() { return basis(4); }
    static FieldScalar sqrt6() { return basis(3); }

    static int radicand(int mask) {
        int r = 1;
        if (mask & 1) r *= 2;
        if (mask & 2) r *= 3;
        if (mask & 4) r *= 5;
        return r;
    }

    friend FieldScalar operator+(const FieldScalar& a, const FieldScalar& b) {
        FieldScalar r;
        for (int i = 0; i < 8; ++i) r.c[i] = a.c[i] + b.c[i];
        return r;
    }
    friend FieldScalar operator-(const FieldScalar& a, const FieldScalar& b) {
        FieldScalar r;
        for (int i = 0; i < 8; ++i) r.c[i] = a.c[i] - b.c[i];
        return r;
    }
    FieldScalar operator-() const {
        FieldScalar r;
        for (int i = 0; i < 8; ++i) r.c[i] = -c[i];
        return r;
    }
    friend FieldScalar operator*(const FieldScalar& a, const FieldScalar& b) {
        FieldScalar r;
        for (int i = 0; i < 8; ++i) {
            if (a.c[i].is_zero()) continue;
            for (int j = 0; j < 8; ++j) {
                if (b.c[j].is_zero()) continue;
                // shared primes square out: carry = product of primes in i&j
                int shared = i & j;
                std::int64_t carry = radicand(shared);
                r.c[i ^ j] += a.c[i] * b.c[j] * Rational(carry);
            }
        }
        return r;
    }
    FieldScalar& operator+=(const FieldScalar& o) { *this = *this + o; return *this; }
    FieldScalar& operator-=(const FieldScalar& o) { *this = *this - o; return *this; }
    FieldScalar& operator*=(const FieldScalar& o) { *this = *this * o; return *this; }

    bool is_zero() const {
        for (const auto& r : c) if (!r.is_zero()) return false;
        return true;
    }
    bool is_rational() const {
        for (int i = 1; i < 8; ++i) if (!c[i].is_zero()) return false;
        return true;
    }
    const Rational& rational_part() const { return c[0]; }

    /// Galois conjugate flipping the signs of the radicals in `mask`
    /// (bit 0: sqrt2 -> -sqrt2, etc.).
    FieldScalar conjugate(int mask) const {
        FieldScalar r = *this;
        for (int i = 0; i < 8; ++i)
            if (__builtin_popcount(i & mask) % 2 == 1) r.c[i] = -r.c[i];
        return r;
    }

    /// Field norm down to Q: product over all 8 embeddings.
    Rational norm_q() const {
        FieldScalar p = *this;
        for (int m = 1; m < 8; ++m) p *= conjugate(m);
        if (!p.is_rational())
            throw std::logic_error("FieldScalar: norm failed to land in Q");
        return p.rational_part();
    }

    FieldScalar inverse() const {
        if (is_zero()) throw std::domain_error("FieldScalar: inverse of zero");
        if (is_rational()) return FieldScalar(Rational(1) / c[0]);
        FieldScalar p = FieldScalar::one();
        for (int m = 1; m < 8; ++m) p *= conjugate(m);
        Rational n = (*this * p).rational_part();
        FieldScalar r;
        Rational inv = Rational(1) / n;
        for (int i = 0; i < 8; ++i) r.c[i] = p.c[i] * inv;
        return r;
    }
    friend FieldScalar operator/(const FieldScalar& a, const FieldScalar& b) {
        return a * b.inverse();
    }

    friend bool operator==(const FieldScalar& a, const FieldScalar& b) {
        return a.c == b.c;
    }
    friend bool operator!=(const FieldScalar& a, const FieldScalar& b) { return !(a == b); }

    int sign() const { return sign_q235(c); }
    friend bool operator<(const FieldScalar& a, const FieldScalar& b) {
        return (a - b).sign() < 0;
    }
    friend bool operator<=(const FieldScalar& a, const FieldScalar& b) {
        return (a - b).sign() <= 0;
    }
    friend bool operator>(const FieldScalar& a, const FieldScalar& b) { return b < a; }
    friend bool operator>=(const FieldScalar& a, const FieldScalar& b) { return b <= a; }

    FieldScalar abs() const { return sign() < 0 ? -*this : *this; }

    double to_double() const {
        static const double rad[8] = {1.0,
                                      std::sqrt(2.0), std::sqrt(3.0), std::sqrt(6.0),
                                      std::sqrt(5.0), std::sqrt(10.0), std::sqrt(15.0),
                                      std::sqrt(30.0)};
        // basis order here follows mask value: 1,s2,s3,s6,s5,s10,s15,s30
        double v = 0;
        for (int i = 0; i < 8; ++i) v += c[i].to_double() * rad[i];
        return v;
    }

    std::string str() const {
        static const char* name[8] = {"", "*s2", "*s3", "*s6", "*s5", "*s10", "*s15", "*s30"};
        std::string out;
        for (int i = 0; i < 8; ++i) {
            if (c[i].is_zero()) continue;
            if (!out.empty()) out += " + ";
            out += c[i].str() + name[i];
        }
        return out.empty() ? "0" : out;
    }

private:
    // sign of a + b*sqrt(n) given exact subfield signs
    static int sign_ext(int sa, int sb, const std::function<int()>& disc_sign) {
        if (sb == 0) return sa;
        if (sa == 0) return sb;
        if (sa == sb) return sa;
        // opposite signs: compare |a| with |b|sqrt(n) via a^2 - n b^2
        int sd = disc_sign();
        if (sd == 0)
            throw std::logic_error("FieldScalar: radical degenerated to subfield");
        return sa * sd;
    }

    static int sign_q(const Rational& a) { return a.sign(); }

    // Q(sqrt2): value a + b*sqrt2
    static int sign_q2(const Rational& a, const Rational& b) {
        return sign_ext(a.sign(), b.sign(), [&]() {
            return (a * a - Rational(2) * b * b).sign();
        });
    }

    // Q(sqrt2,sqrt3): coords over {1,s2,s3,s6} = masks {0,1,2,3}
    static int sign_q23(const std::array<Rational, 4>& v) {
        // split as A + B*sqrt3 with A,B in Q(sqrt2)
        const Rational &a0 = v[0], &a1 = v[1]; // A = a0 + a1 s2
        const Rational &b0 = v[2], &b1 = v[3]; // B = b0 + b1 s2
        return sign_ext(sign_q2(a0, a1), sign_q2(b0, b1), [&]() {
            // A^2 - 3 B^2 in Q(sqrt2)
            Rational d0 = a0 * a0 + Rational(2) * a1 * a1
                        - Rational(3) * (b0 * b0 + Rational(2) * b1 * b1);
            Rational d1 = Rational(2) * a0 * a1 - Rational(6) * b0 * b1;
            return sign_q2(d0, d1);
        });
    }

    static int sign_q235(const std::array<Rational, 8>& v) {
        // split as A + B*sqrt5 with A,B in Q(sqrt2,sqrt3);
        // masks without bit2 -> A, with bit2 -> B (in order 0,1,2,3)
        std::array<Rational, 4> A{v[0], v[1], v[2], v[3]};
        std::array<Rational, 4> B{v[4], v[5], v[6], v[7]};
        return sign_ext(sign_q23(A), sign_q23(B), [&]() {
            // A^2 - 5 B^2 in Q(sqrt2,sqrt3)
            auto sq = [](const std::array<Rational, 4>& x) {
                // (x0 + x1 s2 + x2 s3 + x3 s6)^2
                std::array<Rational, 4> r{};
                static const int mul_carry[4][4] = {{1, 1, 1, 1},
                                                    {1, 2, 1, 2},
                                                    {1, 1, 3, 3},
                                                    {1, 2, 3, 6}};
                for (int i = 0; i < 4; ++i)
                    for (int j = 0; j < 4; ++j)
                        r[i ^ j] += x[i] * x[j] * Rational(mul_carry[i][j]);
                return r;
            };
            auto A2 = sq(A), B2 = sq(B);
            std::array<Rational, 4> d;
            for (int i = 0; i < 4; ++i) d[i] = A2[i] - Rational(5) * B2[i];
            return sign_q23(d);
        });
    }
};

inline FieldScalar operator*(const Rational& r, const FieldScalar& x) {
    FieldScalar out;
    for (int i = 0; i < 8; ++i) out.c[i] = r * x.c[i];
    return out;
}

/// Half-integer constructor helper used all over the Bieberbach data.
inline FieldScalar frac(std::int64_t n, std::int64_t d) { return FieldScalar(Rational(n, d)); }

} // namespace kummer
