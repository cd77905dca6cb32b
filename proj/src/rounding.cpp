#include "bmround/rounding.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "bmround/compass.hpp"
#include "bmround/rng.hpp"

namespace bmr {

namespace {

// Contacts closer than this (radians, mod pi) are one touching feature split
// by floating-point jitter; they merge to their circular midpoint.
constexpr double kContactMergeGap = 1e-3;

// Circumradius and inradius of T A evaluated directly on the half ring of
// boundary points: the image circumradius is the largest |T z_i| and the
// inradius is the smallest distance from the origin to an image edge line
// (feet of those perpendiculars always land inside the segments because the
// origin is interior).  One pass, no body re-validation.
struct RadiusPair {
    double inner;
    double outer;
};

RadiusPair image_radii(const std::vector<Vec2>& half, const LinearMap2& t) {
    const std::size_t m = half.size();
    const Vec2 first = t.apply(half[0]);
    Vec2 prev = first;
    double outer2 = norm2(first);
    double inner = std::numeric_limits<double>::infinity();
    for (std::size_t i = 1; i <= m; ++i) {
        const Vec2 w = (i < m) ? t.apply(half[i]) : -first;
        outer2 = std::fmax(outer2, norm2(w));
        inner = std::fmin(inner, std::fabs(cross(prev, w)) / norm(w - prev));
        prev = w;
    }
    return {inner, std::sqrt(outer2)};
}

LinearMap2 map_from(double u, double phi) {
    return spd_stretch(std::exp(u), phi);
}

// Circular merge of near-coincident angles in [0, pi).  Returns cluster
// midpoints, sorted ascending.
std::vector<double> merge_clusters(std::vector<double> angles) {
    if (angles.size() < 2) return angles;
    std::sort(angles.begin(), angles.end());
    const std::size_t n = angles.size();
    // Find the largest circular gap; clusters are walked starting after it.
    std::size_t split = n - 1;  // gap between angles[split] and its successor
    double largest = angles[0] + kPi - angles[n - 1];
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const double gap = angles[i + 1] - angles[i];
        if (gap > largest) {
            largest = gap;
            split = i;
        }
    }
    if (largest <= kContactMergeGap) {
        // Everything is one wrap-around cluster; any representative works and
        // callers treat this as a full circle anyway.
        return {angles[0]};
    }
    std::vector<double> merged;
    std::size_t i = (split + 1) % n;
    std::size_t consumed = 0;
    while (consumed < n) {
        // Accumulate one cluster, lifting angles continuously past the wrap.
        const double base = angles[i];
        double prev_lift = base;
        double sum = base;
        std::size_t count = 1;
        ++consumed;
        i = (i + 1) % n;
        while (consumed < n) {
            double lift = angles[i];
            while (lift < prev_lift) lift += kPi;
            if (lift - prev_lift > kContactMergeGap) break;
            sum += lift;
            ++count;
            prev_lift = lift;
            ++consumed;
            i = (i + 1) % n;
        }
        merged.push_back(mod_pi(sum / static_cast<double>(count)));
    }
    std::sort(merged.begin(), merged.end());
    return merged;
}

struct SearchOutcome {
    double u = 0.0;
    double phi = 0.0;
    double value = 0.0;
    bool converged = true;
};

// Grid scan plus compass refinement over (u, phi) for one body.
SearchOutcome search_one(const SymmetricConvexBody& body,
                         const RoundingOptions& opts) {
    const std::vector<Vec2>& half = body.half_ring();
    const double log_lam_max =
        std::log(2.0 * body.outer_radius() / body.inner_radius());
    const int n = std::max(2, opts.grid_n);
    const std::vector<double> grid = ratio_grid(body, log_lam_max, n, opts.exec);
    // Strict-inequality argmin in row-major order resolves ties toward the
    // lexicographically smallest (u, phi); in particular u = 0 grid points
    // keep the identity map bit-exact when it is optimal.
    std::size_t best = 0;
    for (std::size_t k = 1; k < grid.size(); ++k) {
        if (grid[k] < grid[best]) best = k;
    }
    const double du = log_lam_max / (n - 1);
    const double dphi = kPi / n;
    const double u0 = static_cast<double>(best / static_cast<std::size_t>(n)) * du;
    const double phi0 =
        static_cast<double>(best % static_cast<std::size_t>(n)) * dphi;
    CompassResult ref = compass_minimize(
        [&](double u, double phi) {
            const RadiusPair r = image_radii(half, map_from(u, phi));
            return r.outer / r.inner;
        },
        u0, phi0, du, dphi, opts.tol);
    SearchOutcome out;
    out.u = ref.x;
    out.phi = ref.y;
    out.value = ref.value;
    out.converged = ref.converged;
    return out;
}

}  // namespace

double ratio(const SymmetricConvexBody& body, const LinearMap2& t) {
    if (!t.invertible()) throw std::invalid_argument("ratio: map is singular");
    const RadiusPair r = image_radii(body.half_ring(), t);
    return r.outer / r.inner;
}

std::vector<double> ratio_grid(const SymmetricConvexBody& body,
                               double log_lam_max, int grid_n, Exec exec) {
    if (grid_n < 2) throw std::invalid_argument("ratio_grid: grid_n must be >= 2");
    const std::vector<Vec2>& half = body.half_ring();
    const double du = log_lam_max / (grid_n - 1);
    const double dphi = kPi / grid_n;
    std::vector<double> values(static_cast<std::size_t>(grid_n) * grid_n);
    for_index(exec, static_cast<std::size_t>(grid_n), [&](std::size_t i) {
        const double u = static_cast<double>(i) * du;
        for (int j = 0; j < grid_n; ++j) {
            const LinearMap2 t = map_from(u, static_cast<double>(j) * dphi);
            const RadiusPair r = image_radii(half, t);
            values[i * grid_n + j] = r.outer / r.inner;
        }
    });
    return values;
}

ContactSet contact_points(const SymmetricConvexBody& body, const LinearMap2& t,
                          double tol) {
    const std::vector<Vec2>& half = body.half_ring();
    const std::size_t m = half.size();
    std::vector<Vec2> w(m);
    for (std::size_t i = 0; i < m; ++i) w[i] = t.apply(half[i]);
    const RadiusPair r = image_radii(half, t);

    ContactSet cs;
    for (std::size_t i = 0; i < m; ++i) {
        if (norm(w[i]) >= r.outer * (1.0 - tol)) {
            cs.outer.push_back(mod_pi(angle_of(w[i])));
        }
    }
    for (std::size_t i = 0; i < m; ++i) {
        const Vec2 a = w[i];
        const Vec2 b = (i + 1 < m) ? w[i + 1] : -w[0];
        const double d = std::fabs(cross(a, b)) / norm(b - a);
        if (d <= r.inner * (1.0 + tol)) {
            // Direction of the foot of the perpendicular from the origin.
            const Vec2 e = b - a;
            const Vec2 normal{e.y, -e.x};
            cs.inner.push_back(mod_pi(angle_of(normal)));
        }
    }
    cs.outer = merge_clusters(std::move(cs.outer));
    cs.inner = merge_clusters(std::move(cs.inner));
    cs.full_circle = r.inner >= r.outer * (1.0 - 2.0 * tol);
    return cs;
}

bool alternation_certificate(const ContactSet& contacts) {
    if (contacts.full_circle) return true;
    if (contacts.outer.size() < 2 || contacts.inner.size() < 2) return false;
    struct Event {
        double angle;
        int label;  // 0 = outer, 1 = inner
    };
    std::vector<Event> ev;
    ev.reserve(contacts.outer.size() + contacts.inner.size());
    for (double a : contacts.outer) ev.push_back({a, 0});
    for (double a : contacts.inner) ev.push_back({a, 1});
    std::sort(ev.begin(), ev.end(), [](const Event& x, const Event& y) {
        return x.angle < y.angle || (x.angle == y.angle && x.label < y.label);
    });
    int changes = 0;
    for (std::size_t i = 0; i < ev.size(); ++i) {
        if (ev[i].label != ev[(i + 1) % ev.size()].label) ++changes;
    }
    return changes >= 4;
}

double stretch_ratio_bound(double lam, double ell, double theta) {
    const double theta_ell = std::acos(std::clamp(ell, 0.0, 1.0));
    const double ca = std::cos(theta + theta_ell);
    const double sa = std::sin(theta + theta_ell);
    const double cb = std::cos(theta);
    const double sb = std::sin(theta);
    const double num = lam * lam * ca * ca + sa * sa;
    const double den = ell * ell * (lam * lam * cb * cb + sb * sb);
    return num / den;
}

double stretch_ratio_bound_derivative(double lam, double ell, double theta) {
    const double theta_ell = std::acos(std::clamp(ell, 0.0, 1.0));
    const double cb = std::cos(theta);
    const double sb = std::sin(theta);
    const double den = sb * sb + lam * lam * cb * cb;
    return -2.0 * lam * std::sqrt(std::fmax(0.0, 1.0 - ell * ell)) *
           std::sin(2.0 * theta + theta_ell) / (ell * ell * den * den);
}

std::optional<StretchProbe> improvement_stretch(const SymmetricConvexBody& body,
                                                const LinearMap2& t, double tol) {
    const ContactSet cs = contact_points(body, t, tol);
    if (alternation_certificate(cs)) return std::nullopt;

    // All inner contacts fit in an arc shorter than pi (mod pi): locate it as
    // the complement of their largest circular gap, and stretch along its
    // bisector.  With no alternation this strictly decreases the ratio.
    const std::vector<double>& in = cs.inner;
    StretchProbe probe;
    const RadiusPair r = image_radii(body.half_ring(), t);
    probe.theta_ell = std::acos(std::clamp(r.inner / r.outer, 0.0, 1.0));
    if (in.size() == 1) {
        probe.direction = in[0];
        probe.theta = 0.0;
    } else {
        std::size_t split = in.size() - 1;
        double largest = in[0] + kPi - in[in.size() - 1];
        for (std::size_t i = 0; i + 1 < in.size(); ++i) {
            const double gap = in[i + 1] - in[i];
            if (gap > largest) {
                largest = gap;
                split = i;
            }
        }
        const double start = in[(split + 1) % in.size()];
        const double arc = kPi - largest;  // lifted arc end = start + arc
        probe.direction = mod_pi(start + 0.5 * arc);
        probe.theta = 0.5 * arc;
    }
    probe.derivative =
        stretch_ratio_bound_derivative(1.0, r.inner / r.outer, probe.theta);
    return probe;
}

RoundingResult minimize_ratio(const SymmetricConvexBody& body,
                              const RoundingOptions& opts) {
    const int restarts = std::max(1, opts.restarts);
    Rng rng(opts.seed);

    bool have_best = false;
    double best_value = std::numeric_limits<double>::infinity();
    LinearMap2 best_map = LinearMap2::identity();
    bool all_converged = true;

    for (int r = 0; r < restarts; ++r) {
        LinearMap2 pre = LinearMap2::identity();
        if (r > 0) {
            // Random invertible det-1 pre-map: rotate, then stretch.  The
            // search then runs in different coordinates, probing for other
            // local minima; results are pulled back through the pre-map.
            Rng sub = rng.substream(static_cast<std::uint64_t>(r));
            const double alpha = sub.uniform(0.0, kPi);
            const double lam = std::exp(sub.uniform(0.0, std::log(2.0)));
            const double beta = sub.uniform(0.0, kPi);
            pre = LinearMap2::rotation(alpha) * spd_stretch(lam, beta);
        }
        const SymmetricConvexBody probe_body =
            (r == 0) ? body : body.apply_map(pre);
        const SearchOutcome sr = search_one(probe_body, opts);
        all_converged = all_converged && sr.converged;

        LinearMap2 candidate;
        if (r == 0) {
            double u = sr.u;
            double phi = sr.phi;
            if (u < 0.0) {  // diag(e^u, e^-u) with u<0 is the phi+pi/2 coset
                u = -u;
                phi += 0.5 * kPi;
            }
            candidate = spd_stretch(std::exp(u), mod_pi(phi));
        } else {
            // Found T' minimizing on pre(A); then T' * pre rounds A, and its
            // SPD polar factor is the coset representative.
            const LinearMap2 x = map_from(sr.u, sr.phi) * pre;
            candidate = normalize_det(polar_spd_factor(x));
        }
        const double value = ratio(body, candidate);
        if (!have_best || value < best_value) {
            have_best = true;
            best_value = value;
            best_map = candidate;
        }
    }

    RoundingResult result;
    result.t_star = best_map;
    const RadiusPair rp = image_radii(body.half_ring(), best_map);
    result.inner = rp.inner;
    result.outer = rp.outer;
    result.rho = rp.outer / rp.inner;
    result.contacts = contact_points(body, best_map, opts.contact_tol);
    result.certified = alternation_certificate(result.contacts);

    if (!all_converged) {
        throw OptimizerError(
            "minimize_ratio: compass refinement exhausted its evaluation budget",
            result);
    }
    return result;
}

Ellipse canonical_ellipse(const RoundingResult& r) {
    return map_ellipse(r.t_star.inverse(),
                       make_ellipse(r.inner, r.inner, 0.0));
}

bool same_canonical_ellipse(const LinearMap2& t1, const LinearMap2& t2,
                            double tol) {
    return singular_ratio(t1 * t2.inverse()) <= 1.0 + tol;
}

}  // namespace bmr
