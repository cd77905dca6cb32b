#include "bmround/envelopes.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace bmr {

namespace {

constexpr double kDomainSlack = 1e-9;
const double kEllMin = 1.0 / std::sqrt(2.0);

double clamp_domain(double ell, const char* who) {
    if (ell < kEllMin - kDomainSlack || ell > 1.0 + kDomainSlack) {
        throw std::domain_error(std::string(who) +
                                ": ell outside [2^-1/2, 1]");
    }
    return std::clamp(ell, kEllMin, 1.0);
}

}  // namespace

double area_upper_envelope(double ell) {
    const double e = clamp_domain(ell, "area_upper_envelope");
    return kPi - 4.0 * std::acos(e) + 4.0 * e * std::sqrt(1.0 - e * e);
}

double area_lower_envelope(double ell) {
    const double e = clamp_domain(ell, "area_lower_envelope");
    return (kPi - 4.0 * std::acos(e)) * e * e + 4.0 * e * std::sqrt(1.0 - e * e);
}

EnvelopeDerivatives envelope_derivatives(double ell) {
    const double e = clamp_domain(ell, "envelope_derivatives");
    const double root = std::sqrt(1.0 - e * e);
    EnvelopeDerivatives d;
    d.upper = 8.0 * root;
    d.lower = 2.0 * kPi * e + 4.0 * root - 8.0 * e * std::acos(e);
    return d;
}

EnvelopeScan scan_envelope_bounds(int n, Exec exec) {
    if (n < 2) throw std::invalid_argument("scan_envelope_bounds: n must be >= 2");
    // Fixed chunk count independent of thread count, with a serial reduction
    // over chunk minima, keeps the result identical for both policies.
    const std::size_t chunks = 256;
    const double inf = std::numeric_limits<double>::infinity();
    std::vector<double> up(chunks, inf), lo(chunks, inf), gap(chunks, inf);
    const std::size_t total = static_cast<std::size_t>(n);
    for_index(exec, chunks, [&](std::size_t c) {
        const std::size_t begin = c * total / chunks;
        const std::size_t end = (c + 1) * total / chunks;
        double mu = inf, ml = inf, mg = inf;
        for (std::size_t k = begin; k < end; ++k) {
            const double ell =
                kEllMin + (1.0 - kEllMin) * static_cast<double>(k) /
                              static_cast<double>(total - 1);
            const double upper = area_upper_envelope(ell);
            const double lower = area_lower_envelope(ell);
            mu = std::fmin(mu, 4.0 * ell * ell - upper);
            ml = std::fmin(ml, lower - 2.0);
            mg = std::fmin(mg, upper - lower);
        }
        up[c] = mu;
        lo[c] = ml;
        gap[c] = mg;
    });
    EnvelopeScan s{inf, inf, inf};
    for (std::size_t c = 0; c < chunks; ++c) {
        s.min_upper_slack = std::fmin(s.min_upper_slack, up[c]);
        s.min_lower_slack = std::fmin(s.min_lower_slack, lo[c]);
        s.min_gap = std::fmin(s.min_gap, gap[c]);
    }
    return s;
}

AreaBoundsReport verify_area_bounds(const SymmetricConvexBody& body,
                                    const RoundingResult& r, double tol) {
    AreaBoundsReport rep;
    rep.ell = r.inner / r.outer;
    // det(t_star) = 1, so the image area is the body area exactly.
    rep.area = body.area() / (r.outer * r.outer);
    rep.lower_ok = rep.area >= 2.0 - tol;
    rep.upper_ok = rep.area <= 4.0 * rep.ell * rep.ell + tol;
    if (rep.ell >= kEllMin - std::fmax(kDomainSlack, tol) && rep.ell <= 1.0 + kDomainSlack) {
        const double e = std::clamp(rep.ell, kEllMin, 1.0);
        rep.envelope_ok = rep.area >= area_lower_envelope(e) - tol &&
                          rep.area <= area_upper_envelope(e) + tol;
    } else {
        rep.envelope_ok = false;
    }
    rep.k_outer_factor = kPi / rep.area;
    rep.k_inner_factor = rep.area / (kPi * rep.ell * rep.ell);
    return rep;
}

Ellipse john_ellipse(const SymmetricConvexBody& body, double tol) {
    if (!(tol > 0.0)) throw std::invalid_argument("john_ellipse: tol must be positive");
    // The centered ellipse {x : x^T X^-1 x <= 1} (X symmetric positive
    // definite) lies inside the half-plane {x : n.x <= c} iff n^T X n <= c^2,
    // so the maximal-area inscribed ellipse solves
    //
    //     maximize log det X   subject to   n_e^T X n_e <= c_e^2,
    //
    // a concave 3-variable problem with linear constraints.  It is solved on
    // the log-barrier central path with damped Newton steps; the objective
    // gap after the last stage is below m / t_final <= tol, so the ellipse
    // area is within relative tol of optimal.
    const std::vector<Vec2>& half = body.half_ring();
    const std::size_t m = half.size();
    // Constraint row e: dot(coef[e], (x11, x12, x22)) <= rhs[e].
    std::vector<std::array<double, 3>> coef(m);
    std::vector<double> rhs(m);
    for (std::size_t i = 0; i < m; ++i) {
        const Vec2 a = half[i];
        const Vec2 b = (i + 1 < m) ? half[i + 1] : -half[0];
        const Vec2 edge = b - a;
        const Vec2 n{edge.y, -edge.x};
        coef[i] = {n.x * n.x, 2.0 * n.x * n.y, n.y * n.y};
        const double c = dot(n, a);
        rhs[i] = c * c;
    }
    // Strictly feasible start: a disk slightly smaller than the incircle.
    const double r0 = 0.9 * body.inner_radius();
    std::array<double, 3> x{r0 * r0, 0.0, r0 * r0};

    const auto slack = [&](const std::array<double, 3>& p, std::size_t e) {
        return rhs[e] - (coef[e][0] * p[0] + coef[e][1] * p[1] + coef[e][2] * p[2]);
    };
    const auto detx = [](const std::array<double, 3>& p) {
        return p[0] * p[2] - p[1] * p[1];
    };
    const auto barrier_value = [&](const std::array<double, 3>& p, double t,
                                   bool* feasible) {
        const double d = detx(p);
        if (!(d > 0.0) || !(p[0] > 0.0)) {
            *feasible = false;
            return 0.0;
        }
        double f = -t * std::log(d);
        for (std::size_t e = 0; e < m; ++e) {
            const double s = slack(p, e);
            if (!(s > 0.0)) {
                *feasible = false;
                return 0.0;
            }
            f -= std::log(s);
        }
        *feasible = true;
        return f;
    };

    double t = 1.0;
    const double t_final = double(m) / tol;
    while (true) {
        for (int iter = 0; iter < 80; ++iter) {
            const double d = detx(x);
            // Gradient and Hessian of -t log det X in (x11, x12, x22).
            const std::array<double, 3> dd{x[2], -2.0 * x[1], x[0]};
            std::array<double, 3> g{-t * dd[0] / d, -t * dd[1] / d,
                                    -t * dd[2] / d};
            double h[3][3];
            // -t * (D''/D - D' D'^T / D^2); D'' has the constant pattern below.
            const double inv_d = 1.0 / d;
            const double inv_d2 = inv_d * inv_d;
            h[0][0] = t * dd[0] * dd[0] * inv_d2;
            h[1][1] = t * (2.0 * inv_d + dd[1] * dd[1] * inv_d2);
            h[2][2] = t * dd[2] * dd[2] * inv_d2;
            h[0][1] = t * dd[0] * dd[1] * inv_d2;
            h[0][2] = t * (-inv_d + dd[0] * dd[2] * inv_d2);
            h[1][2] = t * dd[1] * dd[2] * inv_d2;
            for (std::size_t e = 0; e < m; ++e) {
                const double s = slack(x, e);
                const double inv_s = 1.0 / s;
                const double inv_s2 = inv_s * inv_s;
                for (int i = 0; i < 3; ++i) {
                    g[i] += coef[e][i] * inv_s;
                    for (int j = i; j < 3; ++j) {
                        h[i][j] += coef[e][i] * coef[e][j] * inv_s2;
                    }
                }
            }
            h[1][0] = h[0][1];
            h[2][0] = h[0][2];
            h[2][1] = h[1][2];
            // Solve h * step = -g (3x3 Cholesky; h is positive definite).
            const double l11 = std::sqrt(h[0][0]);
            const double l21 = h[1][0] / l11, l31 = h[2][0] / l11;
            const double l22 = std::sqrt(h[1][1] - l21 * l21);
            const double l32 = (h[2][1] - l31 * l21) / l22;
            const double l33 = std::sqrt(h[2][2] - l31 * l31 - l32 * l32);
            const double y1 = -g[0] / l11;
            const double y2 = (-g[1] - l21 * y1) / l22;
            const double y3 = (-g[2] - l31 * y1 - l32 * y2) / l33;
            std::array<double, 3> step;
            step[2] = y3 / l33;
            step[1] = (y2 - l32 * step[2]) / l22;
            step[0] = (y1 - l21 * step[1] - l31 * step[2]) / l11;
            const double decrement2 =
                -(g[0] * step[0] + g[1] * step[1] + g[2] * step[2]);
            if (!(decrement2 > 1e-14 * t)) break;
            bool feasible = false;
            const double f0 = barrier_value(x, t, &feasible);
            double alpha = 1.0;
            std::array<double, 3> next = x;
            for (int back = 0; back < 60; ++back) {
                next = {x[0] + alpha * step[0], x[1] + alpha * step[1],
                        x[2] + alpha * step[2]};
                bool ok = false;
                const double f1 = barrier_value(next, t, &ok);
                if (ok && f1 <= f0 - 0.25 * alpha * decrement2) break;
                alpha *= 0.5;
                next = x;
            }
            if (next == x) break;  // line search exhausted: converged
            x = next;
        }
        if (t >= t_final) break;
        t = std::fmin(t * 10.0, t_final);
    }
    const SymEigen2 eig = sym_eigen(x[0], x[1], x[2]);
    return make_ellipse(std::sqrt(eig.e1), std::sqrt(eig.e2), eig.angle);
}

DilatationFactors dilatation_factors(const SymmetricConvexBody& body,
                                     const LinearMap2& t) {
    const SymmetricConvexBody image = body.apply_map(t);
    const double area = body.area() * std::fabs(t.det());
    DilatationFactors f;
    f.outer = kPi * image.outer_radius() * image.outer_radius() / area;
    f.inner = area / (kPi * image.inner_radius() * image.inner_radius());
    return f;
}

}  // namespace bmr
