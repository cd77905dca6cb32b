#pragma once

#include <cmath>
#include <stdexcept>

// Plane vectors and 2x2 linear maps, with the handful of exact
// decompositions (SPD eigen, SVD, polar) the optimizers rely on.

namespace bmr {

inline constexpr double kPi = 3.14159265358979323846;

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
    Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
    Vec2 operator-() const { return {-x, -y}; }
    Vec2 operator*(double s) const { return {x * s, y * s}; }
};

inline Vec2 operator*(double s, Vec2 v) { return v * s; }
inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double norm2(Vec2 v) { return v.x * v.x + v.y * v.y; }
inline double norm(Vec2 v) { return std::hypot(v.x, v.y); }
// 90-degree counterclockwise rotation.
inline Vec2 perp(Vec2 v) { return {-v.y, v.x}; }

// Angle in [0, 2*pi).
inline double angle_of(Vec2 v) {
    double a = std::atan2(v.y, v.x);
    return a < 0 ? a + 2.0 * kPi : a;
}

// Reduce an angle to [0, pi); directions of a symmetric body are lines.
inline double mod_pi(double a) {
    a = std::fmod(a, kPi);
    return a < 0 ? a + kPi : a;
}

inline Vec2 unit_dir(double theta) { return {std::cos(theta), std::sin(theta)}; }

// Row-major 2x2 matrix [[a, b], [c, d]].
struct LinearMap2 {
    double a = 1.0, b = 0.0, c = 0.0, d = 1.0;

    Vec2 apply(Vec2 v) const { return {a * v.x + b * v.y, c * v.x + d * v.y}; }
    double det() const { return a * d - b * c; }

    LinearMap2 operator*(const LinearMap2& o) const {
        return {a * o.a + b * o.c, a * o.b + b * o.d,
                c * o.a + d * o.c, c * o.b + d * o.d};
    }
    LinearMap2 transpose() const { return {a, c, b, d}; }

    bool invertible() const {
        double scale = std::fmax(std::fmax(std::fabs(a), std::fabs(b)),
                                 std::fmax(std::fabs(c), std::fabs(d)));
        return std::fabs(det()) > 1e-12 * scale * scale;
    }

    LinearMap2 inverse() const {
        if (!invertible()) throw std::invalid_argument("LinearMap2: singular matrix");
        double idet = 1.0 / det();
        return {d * idet, -b * idet, -c * idet, a * idet};
    }

    static LinearMap2 identity() { return {}; }
    static LinearMap2 rotation(double phi) {
        double cs = std::cos(phi), sn = std::sin(phi);
        return {cs, -sn, sn, cs};
    }
    static LinearMap2 diag(double p, double q) { return {p, 0.0, 0.0, q}; }
};

// Determinant-one symmetric positive-definite stretch by lam along angle phi
// (and by 1/lam across it). lam == 1 returns the exact identity so that
// optimizers sitting on the identity stay there bit-for-bit.
inline LinearMap2 spd_stretch(double lam, double phi) {
    if (lam == 1.0) return LinearMap2::identity();
    double cs = std::cos(phi), sn = std::sin(phi);
    double u = lam, v = 1.0 / lam;
    return {cs * cs * u + sn * sn * v, cs * sn * (u - v),
            cs * sn * (u - v), sn * sn * u + cs * cs * v};
}

// Eigen-decomposition of a symmetric 2x2 matrix [[a, b], [b, d]].
// Returns eigenvalues with e1 >= e2 and the angle of the e1 eigenvector.
struct SymEigen2 {
    double e1 = 0.0, e2 = 0.0;
    double angle = 0.0;  // in [0, pi)
};

inline SymEigen2 sym_eigen(double a, double b, double d) {
    double tr = a + d;
    double diff = a - d;
    double disc = std::sqrt(diff * diff + 4.0 * b * b);
    SymEigen2 r;
    r.e1 = 0.5 * (tr + disc);
    r.e2 = 0.5 * (tr - disc);
    if (disc == 0.0) {
        r.angle = 0.0;  // isotropic: any direction works
    } else {
        r.angle = mod_pi(0.5 * std::atan2(2.0 * b, diff));
    }
    return r;
}

// Singular values of an arbitrary 2x2 matrix, s1 >= s2 >= 0.
struct Singular2 {
    double s1 = 0.0, s2 = 0.0;
};

inline Singular2 singular_values(const LinearMap2& m) {
    // Eigenvalues of M^T M.
    double a = m.a * m.a + m.c * m.c;
    double b = m.a * m.b + m.c * m.d;
    double d = m.b * m.b + m.d * m.d;
    SymEigen2 e = sym_eigen(a, b, d);
    return {std::sqrt(std::fmax(e.e1, 0.0)), std::sqrt(std::fmax(e.e2, 0.0))};
}

// Ratio of singular values, >= 1. Identity-coset deviation measure: two maps
// lie in the same scaled-rotation coset iff this ratio of T1*T2^-1 is 1.
inline double singular_ratio(const LinearMap2& m) {
    Singular2 s = singular_values(m);
    if (s.s2 <= 0.0) throw std::invalid_argument("singular_ratio: singular matrix");
    return s.s1 / s.s2;
}

// Symmetric positive-definite factor P of the polar decomposition M = Q * P.
inline LinearMap2 polar_spd_factor(const LinearMap2& m) {
    // P = sqrt(M^T M); closed form for SPD 2x2: (S + sqrt(det S) I) / sqrt(tr S + 2 sqrt(det S)).
    double a = m.a * m.a + m.c * m.c;
    double b = m.a * m.b + m.c * m.d;
    double d = m.b * m.b + m.d * m.d;
    double sdet = std::sqrt(std::fmax(a * d - b * b, 0.0));
    double denom = std::sqrt(a + d + 2.0 * sdet);
    if (denom <= 0.0) throw std::invalid_argument("polar_spd_factor: singular matrix");
    return {(a + sdet) / denom, b / denom, b / denom, (d + sdet) / denom};
}

// Rescale to determinant one (for SPD maps: the canonical coset representative).
inline LinearMap2 normalize_det(const LinearMap2& m) {
    double dt = m.det();
    if (dt <= 0.0) throw std::invalid_argument("normalize_det: determinant must be positive");
    double s = 1.0 / std::sqrt(dt);
    return {m.a * s, m.b * s, m.c * s, m.d * s};
}

}  // namespace bmr
