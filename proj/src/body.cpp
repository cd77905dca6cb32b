#include "bmround/body.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace bmr {

namespace {

// Convexity slack for cross products, relative to the squared size scale.
constexpr double kConvexTolPolygon = 1e-12;
constexpr double kConvexTolRadial = 1e-9;  // resampled bodies carry a little noise
constexpr double kSymmetryTol = 1e-9;
constexpr int kMaxRadialSamples = 1 << 16;

bool finite_vec(Vec2 v) { return std::isfinite(v.x) && std::isfinite(v.y); }

[[noreturn]] void fail(ValidationError::Kind kind, const std::string& msg) {
    throw ValidationError(kind, msg);
}

}  // namespace

// ---------------------------------------------------------------- Ellipse

Ellipse make_ellipse(double a, double b, double angle) {
    if (!(a > 0.0) || !(b > 0.0) || !std::isfinite(a) || !std::isfinite(b) ||
        !std::isfinite(angle)) {
        throw std::invalid_argument("make_ellipse: axes must be positive and finite");
    }
    Ellipse e;
    if (a >= b) {
        e.semi_major = a;
        e.semi_minor = b;
        e.angle = mod_pi(angle);
    } else {
        e.semi_major = b;
        e.semi_minor = a;
        e.angle = mod_pi(angle + 0.5 * kPi);
    }
    return e;
}

LinearMap2 Ellipse::shape_map() const {
    if (semi_major == semi_minor) return LinearMap2::diag(semi_major, semi_major);
    LinearMap2 r = LinearMap2::rotation(angle);
    return r * LinearMap2::diag(semi_major, semi_minor) * r.transpose();
}

double Ellipse::gauge(Vec2 p) const {
    double cs = std::cos(angle), sn = std::sin(angle);
    double u = (cs * p.x + sn * p.y) / semi_major;
    double v = (-sn * p.x + cs * p.y) / semi_minor;
    return std::hypot(u, v);
}

Vec2 Ellipse::boundary_point(double t) const {
    double cs = std::cos(angle), sn = std::sin(angle);
    double u = semi_major * std::cos(t), v = semi_minor * std::sin(t);
    return {cs * u - sn * v, sn * u + cs * v};
}

Ellipse map_ellipse(const LinearMap2& t, const Ellipse& e) {
    if (!t.invertible()) throw std::invalid_argument("map_ellipse: singular map");
    // Image of M(disk) under T is the left polar factor sqrt(X X^T) of X = T M
    // applied to the disk; the orthogonal factor only reparametrizes.
    LinearMap2 x = t * e.shape_map();
    LinearMap2 p = polar_spd_factor(x.transpose());
    SymEigen2 eg = sym_eigen(p.a, p.b, p.d);
    return make_ellipse(eg.e1, eg.e2, eg.angle);
}

// --------------------------------------------------- SymmetricConvexBody

void SymmetricConvexBody::build_edges() {
    int m = (int)pts_.size();
    angles_.resize(m);
    if (kind_ == BodyKind::radial) {
        for (int i = 0; i < m; ++i) angles_[i] = double(i) * kPi / double(m);
    } else {
        for (int i = 0; i < m; ++i) angles_[i] = angle_of(pts_[i]);
    }
    edge_n_.resize(m);
    edge_c_.resize(m);
    edge_dist_.resize(m);
    inner_ = std::numeric_limits<double>::infinity();
    outer_ = 0.0;
    for (int i = 0; i < m; ++i) {
        Vec2 p = pts_[i];
        Vec2 q = (i + 1 < m) ? pts_[i + 1] : -pts_[0];
        Vec2 d = q - p;
        Vec2 n{d.y, -d.x};  // outward normal of a counterclockwise ring
        double c = dot(n, p);
        if (!(c > 0.0)) {
            fail(ValidationError::Kind::origin_not_interior,
                 "body: origin is not strictly interior");
        }
        edge_n_[i] = n;
        edge_c_[i] = c;
        edge_dist_[i] = c / norm(n);
        inner_ = std::fmin(inner_, edge_dist_[i]);
        outer_ = std::fmax(outer_, norm(p));
    }
    if (inner_ / outer_ < kThinnessLimit) {
        fail(ValidationError::Kind::too_thin,
             "body: inner/outer radius below the degeneracy limit 1e-6");
    }
    if (kind_ == BodyKind::polygon) {
        double s = 0.0;
        for (int i = 0; i < m; ++i) {
            Vec2 q = (i + 1 < m) ? pts_[i + 1] : -pts_[0];
            s += cross(pts_[i], q);
        }
        area_ = s;  // full symmetric shoelace: twice the half ring, halved
    } else {
        double s = 0.0;
        for (double r : samples_) s += r * r;
        area_ = s * kPi / double(m);
    }
}

SymmetricConvexBody SymmetricConvexBody::polygon(const std::vector<Vec2>& vertices) {
    size_t n = vertices.size();
    if (n < 4) fail(ValidationError::Kind::bad_input, "polygon: need at least 4 vertices");
    if (n % 2 != 0) {
        fail(ValidationError::Kind::asymmetric,
             "polygon: symmetric bodies need an even vertex count");
    }
    for (Vec2 v : vertices) {
        if (!finite_vec(v)) fail(ValidationError::Kind::bad_input, "polygon: non-finite vertex");
    }
    std::vector<Vec2> v = vertices;
    double signed_area = 0.0;
    double scale2 = 0.0;
    for (size_t i = 0; i < n; ++i) {
        signed_area += cross(v[i], v[(i + 1) % n]);
        scale2 = std::fmax(scale2, norm2(v[i]));
    }
    if (signed_area == 0.0) fail(ValidationError::Kind::nonconvex, "polygon: zero area");
    if (signed_area < 0.0) std::reverse(v.begin(), v.end());

    for (size_t i = 0; i < n; ++i) {
        if (norm2(v[(i + 1) % n] - v[i]) <= 1e-24 * scale2) {
            fail(ValidationError::Kind::bad_input, "polygon: duplicate vertices");
        }
    }
    for (size_t i = 0; i < n; ++i) {
        Vec2 e1 = v[(i + 1) % n] - v[i];
        Vec2 e2 = v[(i + 2) % n] - v[(i + 1) % n];
        if (cross(e1, e2) < -kConvexTolPolygon * scale2) {
            fail(ValidationError::Kind::nonconvex, "polygon: not convex");
        }
    }
    size_t m = n / 2;
    double sym_tol = kSymmetryTol * std::sqrt(scale2);
    for (size_t i = 0; i < m; ++i) {
        if (norm(v[i + m] + v[i]) > sym_tol) {
            fail(ValidationError::Kind::asymmetric,
                 "polygon: vertex set is not closed under negation");
        }
    }
    for (size_t i = 0; i < n; ++i) {
        if (cross(v[i], v[(i + 1) % n]) <= 0.0) {
            fail(ValidationError::Kind::origin_not_interior,
                 "polygon: origin is not strictly interior");
        }
    }
    // Keep the half starting at the smallest angle; the other half is the
    // exact reflection from here on, regardless of input rounding.
    size_t i0 = 0;
    double best = angle_of(v[0]);
    for (size_t i = 1; i < n; ++i) {
        double a = angle_of(v[i]);
        if (a < best) {
            best = a;
            i0 = i;
        }
    }
    SymmetricConvexBody body;
    body.kind_ = BodyKind::polygon;
    body.pts_.resize(m);
    for (size_t k = 0; k < m; ++k) body.pts_[k] = v[(i0 + k) % n];
    for (size_t k = 1; k < m; ++k) {
        if (angle_of(body.pts_[k]) <= angle_of(body.pts_[k - 1])) {
            fail(ValidationError::Kind::nonconvex, "polygon: vertex angles not increasing");
        }
    }
    body.build_edges();
    return body;
}

SymmetricConvexBody SymmetricConvexBody::radial(const std::vector<double>& samples) {
    size_t m = samples.size();
    if (m < 4) fail(ValidationError::Kind::bad_input, "radial: need at least 4 samples");
    double scale2 = 0.0;
    for (double r : samples) {
        if (!std::isfinite(r)) fail(ValidationError::Kind::bad_input, "radial: non-finite sample");
        if (r < 0.0) fail(ValidationError::Kind::bad_input, "radial: negative sample");
        if (r == 0.0) {
            fail(ValidationError::Kind::origin_not_interior,
                 "radial: zero sample puts the origin on the boundary");
        }
        scale2 = std::fmax(scale2, r * r);
    }
    SymmetricConvexBody body;
    body.kind_ = BodyKind::radial;
    body.samples_ = samples;
    body.pts_.resize(m);
    for (size_t k = 0; k < m; ++k) {
        body.pts_[k] = samples[k] * unit_dir(double(k) * kPi / double(m));
    }
    // Convexity of the chord ring; the wrap edge continues into the
    // reflected half, so checking one half covers the whole ring.
    auto edge_vec = [&](size_t i) -> Vec2 {
        Vec2 p = body.pts_[i];
        Vec2 q = (i + 1 < m) ? body.pts_[i + 1] : -body.pts_[0];
        return q - p;
    };
    for (size_t i = 0; i < m; ++i) {
        Vec2 a = edge_vec(i);
        Vec2 b = (i + 1 < m) ? edge_vec(i + 1) : -edge_vec(0);
        if (cross(a, b) < -kConvexTolRadial * scale2) {
            fail(ValidationError::Kind::nonconvex, "radial: samples are not convex");
        }
    }
    body.build_edges();
    return body;
}

namespace {

// Periodic trapezoid quadrature of the area for a radial function sampled at
// m uniform angles on [0, pi).
template <class Fn>
double quad_area(const Fn& radius, int m) {
    double s = 0.0;
    for (int k = 0; k < m; ++k) {
        double r = radius(double(k) * kPi / double(m));
        s += r * r;
    }
    return s * kPi / double(m);
}

template <class Fn>
SymmetricConvexBody radial_from_function(const Fn& radius) {
    int m = kDefaultRadialSamples;
    double prev = quad_area(radius, m);
    while (2 * m <= kMaxRadialSamples) {
        double next = quad_area(radius, 2 * m);
        if (std::fabs(next - prev) <= 1e-8 * std::fabs(next)) break;
        m *= 2;
        prev = next;
    }
    std::vector<double> rs(m);
    for (int k = 0; k < m; ++k) rs[k] = radius(double(k) * kPi / double(m));
    return SymmetricConvexBody::radial(rs);
}

}  // namespace

SymmetricConvexBody SymmetricConvexBody::lp_ball(double p) {
    if (!(p >= 1.0) || !std::isfinite(p)) {
        fail(ValidationError::Kind::bad_input, "lp_ball: p must be in [1, inf)");
    }
    return radial_from_function([p](double th) {
        double c = std::fabs(std::cos(th)), s = std::fabs(std::sin(th));
        return std::pow(std::pow(c, p) + std::pow(s, p), -1.0 / p);
    });
}

SymmetricConvexBody SymmetricConvexBody::lp_ball_inf() {
    return polygon({{1.0, 1.0}, {-1.0, 1.0}, {-1.0, -1.0}, {1.0, -1.0}});
}

SymmetricConvexBody SymmetricConvexBody::from_ellipse(const Ellipse& e, int samples) {
    if (samples < 4) throw std::invalid_argument("from_ellipse: too few samples");
    std::vector<double> rs(samples);
    for (int k = 0; k < samples; ++k) {
        rs[k] = 1.0 / e.gauge(unit_dir(double(k) * kPi / double(samples)));
    }
    return radial(rs);
}

std::vector<Vec2> SymmetricConvexBody::full_ring() const {
    std::vector<Vec2> out;
    out.reserve(2 * pts_.size());
    for (Vec2 p : pts_) out.push_back(p);
    for (Vec2 p : pts_) out.push_back(-p);
    return out;
}

const std::vector<double>& SymmetricConvexBody::radial_samples() const {
    if (kind_ != BodyKind::radial) {
        throw std::logic_error("radial_samples: body is not in radial representation");
    }
    return samples_;
}

int SymmetricConvexBody::wedge_index(double lifted_angle) const {
    int m = (int)pts_.size();
    int i;
    if (kind_ == BodyKind::radial) {
        i = (int)std::floor(lifted_angle * double(m) / kPi);
    } else {
        auto it = std::upper_bound(angles_.begin(), angles_.end(), lifted_angle);
        i = (int)(it - angles_.begin()) - 1;
    }
    return std::clamp(i, 0, m - 1);
}

double SymmetricConvexBody::gauge(Vec2 p) const {
    if (!finite_vec(p)) throw std::invalid_argument("gauge: non-finite point");
    if (p.x == 0.0 && p.y == 0.0) return 0.0;
    double th = mod_pi(angle_of(p));
    if (th < angles_[0]) th += kPi;
    int i = wedge_index(th);
    return std::fabs(dot(edge_n_[i], p)) / edge_c_[i];
}

Vec2 SymmetricConvexBody::radial_point(double theta) const {
    Vec2 u = unit_dir(theta);
    double th = mod_pi(theta);
    if (th < angles_[0]) th += kPi;
    int i = wedge_index(th);
    double denom = std::fabs(dot(edge_n_[i], u));
    return (edge_c_[i] / denom) * u;
}

SymmetricConvexBody SymmetricConvexBody::apply_map(const LinearMap2& t) const {
    if (!t.invertible()) throw std::invalid_argument("apply_map: singular map");
    if (kind_ == BodyKind::polygon) {
        std::vector<Vec2> full;
        full.reserve(2 * pts_.size());
        for (Vec2 p : pts_) full.push_back(t.apply(p));
        for (Vec2 p : pts_) full.push_back(-t.apply(p));
        return polygon(full);
    }
    // Resample the image radial function through the source gauge:
    // gauge_{TA}(u) = gauge_A(T^-1 u).
    LinearMap2 ti = t.inverse();
    int m = (int)samples_.size();
    std::vector<double> rs(m);
    for (int k = 0; k < m; ++k) {
        rs[k] = 1.0 / gauge(ti.apply(unit_dir(double(k) * kPi / double(m))));
    }
    return radial(rs);
}

}  // namespace bmr
