#pragma once

#include <cstdint>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <vector>

namespace kummer {

/// Small integer matrices over int64 with Smith-form solvers, enough for the
/// affine-plane and torus fixed-point bookkeeping (systems are at most 8x3).
struct IntMat {
    int rows = 0, cols = 0;
    std::vector<std::vector<std::int64_t>> a;

    IntMat() = default;
    IntMat(int r, int c) : rows(r), cols(c), a(r, std::vector<std::int64_t>(c, 0)) {}
};

namespace intlin {

struct SmithResult {
    IntMat D;                                 // diagonalized matrix
    std::vector<std::vector<std::int64_t>> U; // rows x rows, D = U * M * V
    std::vector<std::vector<std::int64_t>> V; // cols x cols
};

inline SmithResult smith_form(IntMat M) {
    const int R = M.rows, C = M.cols;
    SmithResult s;
    s.U.assign(R, std::vector<std::int64_t>(R, 0));
    s.V.assign(C, std::vector<std::int64_t>(C, 0));
    for (int i = 0; i < R; ++i) s.U[i][i] = 1;
    for (int i = 0; i < C; ++i) s.V[i][i] = 1;

    auto row_op = [&](int i, int j, std::int64_t f) { // row_i -= f * row_j
        for (int c = 0; c < C; ++c) M.a[i][c] -= f * M.a[j][c];
        for (int c = 0; c < R; ++c) s.U[i][c] -= f * s.U[j][c];
    };
    auto col_op = [&](int i, int j, std::int64_t f) { // col_i -= f * col_j
        for (int r = 0; r < R; ++r) M.a[r][i] -= f * M.a[r][j];
        for (int r = 0; r < C; ++r) s.V[r][i] -= f * s.V[r][j];
    };
    auto row_swap = [&](int i, int j) {
        std::swap(M.a[i], M.a[j]);
        std::swap(s.U[i], s.U[j]);
    };
    auto col_swap = [&](int i, int j) {
        for (int r = 0; r < R; ++r) std::swap(M.a[r][i], M.a[r][j]);
        for (int r = 0; r < C; ++r) std::swap(s.V[r][i], s.V[r][j]);
    };

    int t = 0;
    while (t < R && t < C) {
        // find a pivot
        int pr = -1, pc = -1;
        std::int64_t best = 0;
        for (int r = t; r < R; ++r)
            for (int c = t; c < C; ++c) {
                std::int64_t v = std::abs(M.a[r][c]);
                if (v != 0 && (best == 0 || v < best)) { best = v; pr = r; pc = c; }
            }
        if (pr < 0) break;
        row_swap(t, pr);
        col_swap(t, pc);
        bool again = true;
        while (again) {
            again = false;
            for (int r = t + 1; r < R; ++r) {
                if (M.a[r][t] == 0) continue;
                std::int64_t f = M.a[r][t] / M.a[t][t];
                row_op(r, t, f);
                if (M.a[r][t] != 0) { row_swap(t, r); again = true; }
            }
            for (int c = t + 1; c < C; ++c) {
                if (M.a[t][c] == 0) continue;
                std::int64_t f = M.a[t][c] / M.a[t][t];
                col_op(c, t, f);
                if (M.a[t][c] != 0) { col_swap(t, c); again = true; }
            }
        }
        ++t;
    }
    s.D = M;
    return s;
}

/// One integer solution of M x = d, if any.
inline std::optional<std::vector<std::int64_t>> solve(const IntMat& M,
                                                      const std::vector<std::int64_t>& d) {
    SmithResult s = smith_form(M);
    const int R = M.rows, C = M.cols;
    // D y = U d, x = V y
    std::vector<std::int64_t> ud(R, 0);
    for (int r = 0; r < R; ++r)
        for (int c = 0; c < R; ++c) ud[r] += s.U[r][c] * d[c];
    std::vector<std::int64_t> y(C, 0);
    for (int r = 0; r < R; ++r) {
        std::int64_t diag = (r < C) ? s.D.a[r][r] : 0;
        if (diag == 0) {
            if (ud[r] != 0) return std::nullopt;
        } else {
            if (ud[r] % diag != 0) return std::nullopt;
            y[r] = ud[r] / diag;
        }
    }
    std::vector<std::int64_t> x(C, 0);
    for (int r = 0; r < C; ++r)
        for (int c = 0; c < C; ++c) x[r] += s.V[r][c] * y[c];
    return x;
}

/// Basis of the integer kernel lattice of M.
inline std::vector<std::vector<std::int64_t>> kernel(const IntMat& M) {
    SmithResult s = smith_form(M);
    const int C = M.cols;
    std::vector<std::vector<std::int64_t>> out;
    for (int c = 0; c < C; ++c) {
        std::int64_t diag = (c < M.rows) ? s.D.a[c][c] : 0;
        if (c >= M.rows || diag == 0) {
            std::vector<std::int64_t> v(C, 0);
            for (int r = 0; r < C; ++r) v[r] = s.V[r][c];
            out.push_back(v);
        }
    }
    return out;
}

} // namespace intlin
} // namespace kummer
