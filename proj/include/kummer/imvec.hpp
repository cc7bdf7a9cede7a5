#pragma once

#include <array>
#include <stdexcept>
#include <string>

#include "kummer/field.hpp"

namespace kummer {

/// Vector in Im H with exact coefficients, coordinates in the (i, j, k)
/// basis of the flat metric.
struct ImVec {
    FieldScalar x, y, z; // i, j, k components

    ImVec() = default;
    ImVec(FieldScalar xi, FieldScalar xj, FieldScalar xk)
        : x(std::move(xi)), y(std::move(xj)), z(std::move(xk)) {}
    static ImVec zero() { return {}; }
    static ImVec i(const FieldScalar& s = FieldScalar::one()) { return {s, 0, 0}; }
    static ImVec j(const FieldScalar& s = FieldScalar::one()) { return {0, s, 0}; }
    static ImVec k(const FieldScalar& s = FieldScalar::one()) { return {0, 0, s}; }
    static ImVec of_ints(std::int64_t a, std::int64_t b, std::int64_t c) {
        return {FieldScalar(a), FieldScalar(b), FieldScalar(c)};
    }

    friend ImVec operator+(const ImVec& a, const ImVec& b) {
        return {a.x + b.x, a.y + b.y, a.z + b.z};
    }
    friend ImVec operator-(const ImVec& a, const ImVec& b) {
        return {a.x - b.x, a.y - b.y, a.z - b.z};
    }
    ImVec operator-() const { return {-x, -y, -z}; }
    friend ImVec operator*(const FieldScalar& s, const ImVec& v) {
        return {s * v.x, s * v.y, s * v.z};
    }
    friend ImVec operator*(const Rational& s, const ImVec& v) {
        return {s * v.x, s * v.y, s * v.z};
    }
    friend bool operator==(const ImVec& a, const ImVec& b) {
        return a.x == b.x && a.y == b.y && a.z == b.z;
    }
    friend bool operator!=(const ImVec& a, const ImVec& b) { return !(a == b); }

    bool is_zero() const { return x.is_zero() && y.is_zero() && z.is_zero(); }

    friend FieldScalar inner(const ImVec& a, const ImVec& b) {
        return a.x * b.x + a.y * b.y + a.z * b.z;
    }
    friend ImVec cross(const ImVec& a, const ImVec& b) {
        return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
    }
    FieldScalar norm2() const { return inner(*this, *this); }

    /// Exact lexicographic order on (x, y, z); total order used for
    /// canonical forms and deduplication.
    friend bool lex_less(const ImVec& a, const ImVec& b) {
        int s = (a.x - b.x).sign();
        if (s != 0) return s < 0;
        s = (a.y - b.y).sign();
        if (s != 0) return s < 0;
        return (a.z - b.z).sign() < 0;
    }
    /// True if the first nonzero coordinate is negative.
    bool lex_negative() const {
        int s = x.sign();
        if (s != 0) return s < 0;
        s = y.sign();
        if (s != 0) return s < 0;
        return z.sign() < 0;
    }

    std::array<double, 3> to_double() const {
        return {x.to_double(), y.to_double(), z.to_double()};
    }
    std::string str() const {
        return "(" + x.str() + ", " + y.str() + ", " + z.str() + ")";
    }
};

/// 3x3 matrix over the exact field, acting on Im H.
struct Mat3F {
    std::array<std::array<FieldScalar, 3>, 3> m{};

    static Mat3F identity() {
        Mat3F r;
        for (int i = 0; i < 3; ++i) r.m[i][i] = FieldScalar::one();
        return r;
    }
    static Mat3F diag(std::int64_t a, std::int64_t b, std::int64_t c) {
        Mat3F r;
        r.m[0][0] = FieldScalar(a);
        r.m[1][1] = FieldScalar(b);
        r.m[2][2] = FieldScalar(c);
        return r;
    }
    static Mat3F from_columns(const ImVec& c0, const ImVec& c1, const ImVec& c2) {
        Mat3F r;
        const ImVec* cols[3] = {&c0, &c1, &c2};
        for (int j = 0; j < 3; ++j) {
            r.m[0][j] = cols[j]->x;
            r.m[1][j] = cols[j]->y;
            r.m[2][j] = cols[j]->z;
        }
        return r;
    }

    friend ImVec operator*(const Mat3F& A, const ImVec& v) {
        return {A.m[0][0] * v.x + A.m[0][1] * v.y + A.m[0][2] * v.z,
                A.m[1][0] * v.x + A.m[1][1] * v.y + A.m[1][2] * v.z,
                A.m[2][0] * v.x + A.m[2][1] * v.y + A.m[2][2] * v.z};
    }
    friend Mat3F operator*(const Mat3F& A, const Mat3F& B) {
        Mat3F r;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                FieldScalar s;
                for (int k = 0; k < 3; ++k) s += A.m[i][k] * B.m[k][j];
                r.m[i][j] = s;
            }
        return r;
    }
    ImVec col(int j) const { return {m[0][j], m[1][j], m[2][j]}; }
    Mat3F operator-() const {
        Mat3F r;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) r.m[i][j] = -m[i][j];
        return r;
    }
    Mat3F transpose() const {
        Mat3F r;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) r.m[i][j] = m[j][i];
        return r;
    }
    FieldScalar det() const {
        return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
             - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
             + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
    }
    friend bool operator==(const Mat3F& a, const Mat3F& b) { return a.m == b.m; }
    friend bool operator!=(const Mat3F& a, const Mat3F& b) { return !(a == b); }

    bool is_orthogonal() const {
        Mat3F p = transpose() * *this;
        return p == identity();
    }
};

/// Solves A x = b exactly (Cramer); throws on singular A.
inline ImVec solve3(const Mat3F& A, const ImVec& b) {
    FieldScalar d = A.det();
    if (d.is_zero()) throw std::domain_error("solve3: singular matrix");
    auto replace_col = [&](int j) {
        Mat3F M = A;
        M.m[0][j] = b.x;
        M.m[1][j] = b.y;
        M.m[2][j] = b.z;
        return M.det();
    };
    FieldScalar inv = d.inverse();
    return {replace_col(0) * inv, replace_col(1) * inv, replace_col(2) * inv};
}

} // namespace kummer
