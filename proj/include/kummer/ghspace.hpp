#pragma once

#include <array>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

namespace kummer::gh {

struct singular_point : std::domain_error {
    using std::domain_error::domain_error;
};
struct gauge_singular : std::domain_error {
    using std::domain_error::domain_error;
};
struct invalid_segment : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct Vec3 {
    double x = 0, y = 0, z = 0;

    friend Vec3 operator+(Vec3 a, Vec3 b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
    friend Vec3 operator-(Vec3 a, Vec3 b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
    friend Vec3 operator*(double s, Vec3 v) { return {s * v.x, s * v.y, s * v.z}; }
    Vec3 operator-() const { return {-x, -y, -z}; }
    double operator[](int i) const { return i == 0 ? x : (i == 1 ? y : z); }
    double& operator[](int i) { return i == 0 ? x : (i == 1 ? y : z); }
    friend double dot(Vec3 a, Vec3 b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
    friend Vec3 cross(Vec3 a, Vec3 b) {
        return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
    }
    double norm() const { return std::sqrt(x * x + y * y + z * z); }
    Vec3 normalized() const {
        double n = norm();
        return {x / n, y / n, z / n};
    }
};

/// Sampling parameters for the desk-scale verification of the
/// Gibbons-Hawking geometry over a monopole configuration.
struct GHConfig {
    std::vector<Vec3> zeta;
    Vec3 gauge_axis{0, 0, 1}; // Dirac strings run along -gauge_axis from each monopole
    double h = 0.08;          // finite-difference spacing
    double extent = 4.0;      // sample region |q| <= extent
    double exclusion = 0.32;  // radius of excluded balls around the monopoles
    int seg_nodes = 64;       // Gauss-Legendre nodes along sphere segments
    int fiber_nodes = 64;     // fiber-angle nodes of the sphere quadrature
};

/// f_zeta(q) = sum_a 1 / (2 |q - zeta_a|), the harmonic monopole potential.
inline double f_zeta(const GHConfig& cfg, Vec3 q) {
    double f = 0;
    for (const auto& z : cfg.zeta) {
        double r = (q - z).norm();
        if (r < 1e-13) throw singular_point("f_zeta: q lies on a monopole point");
        f += 0.5 / r;
    }
    return f;
}

namespace detail {
/// Axial (Dirac-string) potential of a unit monopole at `center` with the
/// string along -axis: A = (1/2)(1 - cos theta) dphi, so that dA = -*df,
/// making the coordinate triple omega_a = theta ^ dx_a + f dx_b ^ dx_c closed.
inline Vec3 axial_potential(Vec3 q, Vec3 center, Vec3 axis) {
    Vec3 w = q - center;
    double r = w.norm();
    double zc = dot(w, axis);
    double rho2 = r * r - zc * zc;
    if (rho2 < 1e-24) {
        // regular on the half-line above the monopole (the limit vanishes),
        // singular on the string below it
        if (zc > 0) return Vec3{};
        throw gauge_singular("axial_potential: point lies on the Dirac string");
    }
    double c = 0.5 * (1.0 - zc / r);
    Vec3 dphi = cross(axis, w);
    return (c / rho2) * dphi;
}

inline double dist_to_string(Vec3 q, Vec3 center, Vec3 axis) {
    // string ray: center - s*axis, s >= 0
    Vec3 w = q - center;
    double s = std::max(0.0, -dot(w, axis));
    Vec3 d = w + s * axis;
    return d.norm();
}

inline std::pair<std::vector<double>, std::vector<double>> gauss_legendre(int n) {
    // Newton iteration on Legendre polynomials, nodes on (0, 1)
    std::vector<double> x(n), w(n);
    for (int i = 0; i < n; ++i) {
        double t = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        for (int it = 0; it < 100; ++it) {
            double p0 = 1, p1 = t;
            for (int k = 2; k <= n; ++k) {
                double p2 = ((2 * k - 1) * t * p1 - (k - 1) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            double dp = n * (t * p1 - p0) / (t * t - 1);
            double dt = p1 / dp;
            t -= dt;
            if (std::abs(dt) < 1e-15) break;
        }
        double p0 = 1, p1 = t;
        for (int k = 2; k <= n; ++k) {
            double p2 = ((2 * k - 1) * t * p1 - (k - 1) * p0) / k;
            p0 = p1;
            p1 = p2;
        }
        double dp = n * (t * p1 - p0) / (t * t - 1);
        x[i] = 0.5 * (1 - t);
        w[i] = 1.0 / ((1 - t * t) * dp * dp);
    }
    return {x, w};
}
} // namespace detail

/// Total connection coefficients A_i(q) in the per-monopole axial gauge.
inline Vec3 connection(const GHConfig& cfg, Vec3 q) {
    Vec3 A;
    for (const auto& z : cfg.zeta) A = A + detail::axial_potential(q, z, cfg.gauge_axis);
    return A;
}

using Mat4 = std::array<std::array<double, 4>, 4>;

/// Pointwise sample of the hyperkahler triple in the coordinate frame
/// (psi, x1, x2, x3), theta = dpsi + A_i dx^i.
struct TripleSample {
    Vec3 point;
    double f = 0;
    Vec3 theta_coeffs;
    std::array<Mat4, 3> omega; // the three 2-forms, antisymmetric components
    Mat4 metric;
    Mat4 metric_inv;
};

inline TripleSample hyperkahler_triple(const GHConfig& cfg, Vec3 q) {
    for (const auto& z : cfg.zeta)
        if (detail::dist_to_string(q, z, cfg.gauge_axis) < 1e-9)
            throw gauge_singular("hyperkahler_triple: point lies on a Dirac string");
    TripleSample s;
    s.point = q;
    s.f = f_zeta(cfg, q);
    s.theta_coeffs = connection(cfg, q);
    const Vec3& A = s.theta_coeffs;

    for (int a = 1; a <= 3; ++a) {
        Mat4& F = s.omega[a - 1];
        for (auto& row : F) row.fill(0.0);
        // theta ^ dx_a
        F[0][a] += 1.0;
        F[a][0] -= 1.0;
        for (int i = 1; i <= 3; ++i) {
            if (i == a) continue;
            F[i][a] += A[i - 1];
            F[a][i] -= A[i - 1];
        }
        // f dx_b ^ dx_c, cyclic (a, b, c)
        int b = a % 3 + 1, c = b % 3 + 1;
        F[b][c] += s.f;
        F[c][b] -= s.f;
    }

    for (auto& row : s.metric) row.fill(0.0);
    s.metric[0][0] = 1.0 / s.f;
    for (int i = 1; i <= 3; ++i) {
        s.metric[0][i] = s.metric[i][0] = A[i - 1] / s.f;
        for (int j = 1; j <= 3; ++j)
            s.metric[i][j] = (i == j ? s.f : 0.0) + A[i - 1] * A[j - 1] / s.f;
    }
    for (auto& row : s.metric_inv) row.fill(0.0);
    double a2 = dot(A, A);
    s.metric_inv[0][0] = s.f + a2 / s.f;
    for (int i = 1; i <= 3; ++i) {
        s.metric_inv[0][i] = s.metric_inv[i][0] = -A[i - 1] / s.f;
        s.metric_inv[i][i] = 1.0 / s.f;
    }
    return s;
}

/// Metric inner product of 2-forms at a sample.
inline double form_inner(const Mat4& F, const Mat4& H, const Mat4& ginv) {
    double s = 0;
    for (int m = 0; m < 4; ++m)
        for (int n = 0; n < 4; ++n)
            for (int r = 0; r < 4; ++r)
                for (int t = 0; t < 4; ++t) s += F[m][n] * H[r][t] * ginv[m][r] * ginv[n][t];
    return 0.5 * s;
}

/// Hodge star of a 2-form at a sample, orientation (psi, x1, x2, x3);
/// sqrt(det g) = f for the Gibbons-Hawking metric.
inline Mat4 hodge_star(const Mat4& F, const TripleSample& s) {
    static const int eps[24][5] = {
        {0, 1, 2, 3, 1},  {0, 1, 3, 2, -1}, {0, 2, 1, 3, -1}, {0, 2, 3, 1, 1},
        {0, 3, 1, 2, 1},  {0, 3, 2, 1, -1}, {1, 0, 2, 3, -1}, {1, 0, 3, 2, 1},
        {1, 2, 0, 3, 1},  {1, 2, 3, 0, -1}, {1, 3, 0, 2, -1}, {1, 3, 2, 0, 1},
        {2, 0, 1, 3, 1},  {2, 0, 3, 1, -1}, {2, 1, 0, 3, -1}, {2, 1, 3, 0, 1},
        {2, 3, 0, 1, 1},  {2, 3, 1, 0, -1}, {3, 0, 1, 2, -1}, {3, 0, 2, 1, 1},
        {3, 1, 0, 2, 1},  {3, 1, 2, 0, -1}, {3, 2, 0, 1, -1}, {3, 2, 1, 0, 1}};
    // raise both indices
    Mat4 Fup{};
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) {
            double v = 0;
            for (int r = 0; r < 4; ++r)
                for (int t = 0; t < 4; ++t) v += s.metric_inv[a][r] * s.metric_inv[b][t] * F[r][t];
            Fup[a][b] = v;
        }
    Mat4 out{};
    for (const auto& e : eps) out[e[0]][e[1]] += 0.5 * s.f * e[4] * Fup[e[2]][e[3]];
    return out;
}

/// Offset grid over |q| <= extent with the exclusion balls removed.
inline std::vector<Vec3> grid_points(const GHConfig& cfg, double spacing) {
    std::vector<Vec3> pts;
    int n = int(std::floor(cfg.extent / spacing));
    for (int i = -n; i < n; ++i)
        for (int j = -n; j < n; ++j)
            for (int k = -n; k < n; ++k) {
                Vec3 q{(i + 0.5) * spacing, (j + 0.5) * spacing, (k + 0.5) * spacing};
                if (q.norm() > cfg.extent) continue;
                bool ok = true;
                for (const auto& z : cfg.zeta)
                    if ((q - z).norm() < cfg.exclusion) { ok = false; break; }
                if (ok) pts.push_back(q);
            }
    return pts;
}

/// Centered-difference Laplacian of a scalar field.
inline double fd_laplacian(const std::function<double(Vec3)>& fn, Vec3 q, double h) {
    double c = fn(q), s = 0;
    for (int d = 0; d < 3; ++d) {
        Vec3 e;
        e[d] = h;
        s += fn(q + e) + fn(q - e) - 2 * c;
    }
    return s / (h * h);
}

/// Max FD Laplacian of f_zeta over the evaluation set; order h^2.
inline double harmonic_residual(const GHConfig& cfg, const std::vector<Vec3>& points, double h) {
    auto fn = [&](Vec3 q) { return f_zeta(cfg, q); };
    double worst = 0;
    for (const auto& q : points) worst = std::max(worst, std::abs(fd_laplacian(fn, q, h)));
    return worst;
}
inline double harmonic_residual(const GHConfig& cfg) {
    return harmonic_residual(cfg, grid_points(cfg, cfg.h), cfg.h);
}

/// Evaluation set for exterior-derivative tests: grid points that also keep
/// clear of the Dirac strings.
inline std::vector<Vec3> string_safe_points(const GHConfig& cfg, const std::vector<Vec3>& points,
                                            double margin) {
    std::vector<Vec3> out;
    for (const auto& q : points) {
        bool ok = true;
        for (const auto& z : cfg.zeta)
            if (detail::dist_to_string(q, z, cfg.gauge_axis) < margin) { ok = false; break; }
        if (ok) out.push_back(q);
    }
    return out;
}

/// Max FD exterior derivative of the triple over the evaluation set.  The
/// (0,i,j) components of each d(omega_a) vanish identically (the dpsi row is
/// constant), so the residual is carried by the spatial 3-form component
///   d(omega_a)_{123} = @_1 F_{23} + @_2 F_{31} + @_3 F_{12}.
/// With `zero_theta` the connection term is dropped, a control whose
/// residual converges to |grad f| instead of zero.
inline double closure_residual(const GHConfig& cfg, const std::vector<Vec3>& points, double h,
                               bool zero_theta = false) {
    auto spatial = [&](Vec3 q, int a, int row, int col) {
        double f = f_zeta(cfg, q);
        Vec3 A = zero_theta ? Vec3{} : connection(cfg, q);
        int b = a % 3 + 1, c = b % 3 + 1;
        double v = 0;
        if (row == b && col == c) v += f;
        if (row == c && col == b) v -= f;
        if (!zero_theta) {
            if (col == a && row != a) v += A[row - 1];
            if (row == a && col != a) v -= A[col - 1];
        }
        return v;
    };
    double worst = 0;
    for (const auto& q : points) {
        for (int a = 1; a <= 3; ++a) {
            double d123 = 0;
            const int comps[3][2] = {{2, 3}, {3, 1}, {1, 2}};
            for (int d = 0; d < 3; ++d) {
                Vec3 e;
                e[d] = h;
                d123 += (spatial(q + e, a, comps[d][0], comps[d][1]) -
                         spatial(q - e, a, comps[d][0], comps[d][1])) /
                        (2 * h);
            }
            worst = std::max(worst, std::abs(d123));
        }
    }
    return worst;
}

/// Result of the ALE comparison against the one-center flat model.
struct DecayFit {
    double slope = 0;                 // d log(norm) / d log(r), r the flat-model radius
    std::vector<double> radii;        // flat-model radii r (base radius r^2)
    std::vector<double> norms;        // max difference norm per radius
    bool unreliable = false;          // radii do not clear the monopole region
    bool flat = false;                // all norms at rounding level, slope meaningless
};

/// Compares the Gibbons-Hawking triple against the flat model of the same
/// total charge through the radial-matching identification: the connections
/// are put in a common radial gauge by subtracting d(chi) with
/// chi(x) = -int_{|x|}^inf (A - A_0)_radial, then
///   Delta omega_a = (A - A_0 - d chi) ^ dx_a + (f - f_0) dx_b ^ dx_c
/// is measured in the flat-model metric.
inline DecayFit ale_decay_fit(const GHConfig& cfg, const std::vector<double>& radii) {
    DecayFit fit;
    fit.radii = radii;
    const double N = double(cfg.zeta.size());
    const Vec3 axis = cfg.gauge_axis;
    double zmax = 0;
    for (const auto& z : cfg.zeta) zmax = std::max(zmax, z.norm());
    for (double r : radii)
        if (r * r <= zmax + 1.0) fit.unreliable = true;

    auto delta_A = [&](Vec3 y) {
        Vec3 a = connection(cfg, y);
        Vec3 a0 = N * detail::axial_potential(y, Vec3{}, axis);
        return a - a0;
    };
    static const auto gl = detail::gauss_legendre(48);
    auto chi = [&](Vec3 y) {
        // -int_{|y|}^inf (Delta A . yhat) ds  via s = |y| / u
        double R = y.norm();
        Vec3 dir = y.normalized();
        double total = 0;
        for (size_t k = 0; k < gl.first.size(); ++k) {
            double u = gl.first[k];
            double s = R / u;
            total += gl.second[k] * dot(delta_A(s * dir), dir) * (R / (u * u));
        }
        return -total;
    };

    // deterministic direction sample away from the string cones
    std::vector<Vec3> dirs;
    for (int i = 0; i < 64; ++i) {
        double zc = -1.0 + 2.0 * (i + 0.5) / 64.0;
        double phi = 2.399963229728653 * i; // golden-angle spiral
        double rho = std::sqrt(1 - zc * zc);
        Vec3 d{rho * std::cos(phi), rho * std::sin(phi), zc};
        if (std::abs(dot(d, axis)) > std::cos(M_PI / 6)) continue;
        dirs.push_back(d);
    }

    for (double r : radii) {
        double Rb = r * r;
        double worst = 0;
        for (const auto& dir : dirs) {
            Vec3 x = Rb * dir;
            double f0 = N / (2 * Rb);
            double df = f_zeta(cfg, x) - f0;
            Vec3 dA = delta_A(x);
            double hfd = 1e-4 * Rb;
            Vec3 dchi;
            for (int d = 0; d < 3; ++d) {
                Vec3 e;
                e[d] = hfd;
                dchi[d] = (chi(x + e) - chi(x - e)) / (2 * hfd);
            }
            Vec3 Am = dA - dchi;
            // Delta omega_a is purely spatial; flat-model norm sums
            // (1/f0^2) * (component^2) over independent index pairs
            double total = 0;
            for (int a = 1; a <= 3; ++a) {
                int b = a % 3 + 1, c = b % 3 + 1;
                double comp_bc = df;                // on (b, c)
                double comp_ba = Am[b - 1];         // A_m ^ dx_a on (b, a)
                double comp_ca = Am[c - 1];         // on (c, a)
                total += comp_bc * comp_bc + comp_ba * comp_ba + comp_ca * comp_ca;
            }
            worst = std::max(worst, std::sqrt(total) / f0);
        }
        fit.norms.push_back(worst);
    }

    double floor_norm = 0;
    for (double n : fit.norms) floor_norm = std::max(floor_norm, n);
    if (floor_norm < 1e-12) {
        fit.flat = true;
        return fit;
    }
    // least-squares slope of log(norm) against log(r)
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int n = int(radii.size());
    for (int i = 0; i < n; ++i) {
        double lx = std::log(radii[i]), ly = std::log(fit.norms[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    fit.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    return fit;
}

/// Area of the holomorphic sphere over the segment [z0, z1], by quadrature
/// of the induced metric, cross-checked against the calibration period
/// int_Sigma <omega, xi_hat>.  The fiber circle has period 2*pi; this
/// normalization is recorded in reports.
struct SphereArea {
    double area = 0;
    double calibration = 0;
    double relative_gap = 0;
};

inline SphereArea sphere_area(const GHConfig& cfg, Vec3 z0, Vec3 z1) {
    SphereArea out;
    Vec3 xi = z1 - z0;
    double len = xi.norm();
    if (len < 1e-15) return out; // degenerate segment
    // the open segment must avoid the other monopole points
    for (const auto& z : cfg.zeta) {
        Vec3 w = z - z0;
        double t = dot(w, xi) / (len * len);
        if (t > 1e-12 && t < 1 - 1e-12 && (w - t * xi).norm() < 1e-12)
            throw invalid_segment("sphere_area: segment passes through a monopole point");
    }
    // interior quadrature nodes must stay off the Dirac strings
    auto gl = detail::gauss_legendre(cfg.seg_nodes);
    for (size_t k = 0; k < gl.first.size(); ++k) {
        Vec3 x = z0 + gl.first[k] * xi;
        for (const auto& z : cfg.zeta)
            if (detail::dist_to_string(x, z, cfg.gauge_axis) < 1e-9)
                throw gauge_singular("sphere_area: quadrature node on a Dirac string; "
                                     "choose another gauge_axis");
    }
    double dpsi = 2.0 * M_PI / cfg.fiber_nodes;
    std::array<double, 4> tangent_s{0, xi.x, xi.y, xi.z};
    std::array<double, 4> tangent_psi{1, 0, 0, 0};
    for (size_t k = 0; k < gl.first.size(); ++k) {
        Vec3 x = z0 + gl.first[k] * xi;
        TripleSample sample = hyperkahler_triple(cfg, x);
        // induced metric on (s, psi) from the sampled ambient metric
        auto pair = [&](const std::array<double, 4>& u, const std::array<double, 4>& v) {
            double s = 0;
            for (int m = 0; m < 4; ++m)
                for (int n = 0; n < 4; ++n) s += u[m] * sample.metric[m][n] * v[n];
            return s;
        };
        double gss = pair(tangent_s, tangent_s);
        double gsp = pair(tangent_s, tangent_psi);
        double gpp = pair(tangent_psi, tangent_psi);
        double sq = std::sqrt(std::max(0.0, gss * gpp - gsp * gsp));
        // calibration integrand: sum_a xihat_a * omega_a(d_s, d_psi) from the
        // sampled 2-forms
        double cal = 0;
        for (int a = 1; a <= 3; ++a) {
            double oa = 0;
            for (int m = 0; m < 4; ++m)
                for (int n = 0; n < 4; ++n)
                    oa += tangent_s[m] * sample.omega[a - 1][m][n] * tangent_psi[n];
            cal += (xi[a - 1] / len) * oa;
        }
        for (int p = 0; p < cfg.fiber_nodes; ++p) {
            out.area += gl.second[k] * dpsi * sq;
            out.calibration += gl.second[k] * dpsi * cal;
        }
    }
    out.calibration = std::abs(out.calibration);
    out.relative_gap = std::abs(out.area - out.calibration) / std::max(out.area, 1e-300);
    return out;
}

} // namespace kummer::gh
