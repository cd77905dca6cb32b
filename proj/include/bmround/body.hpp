#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "bmround/vec2.hpp"

// Origin-symmetric convex bodies in the plane, in one of two representations:
//
//  - polygon: an explicit vertex list (counterclockwise, closed under v -> -v);
//  - radial:  samples r_k > 0 of the radial function at the uniform angles
//             theta_k = k*pi/m on [0, pi), extended by symmetry.
//
// Internally both reduce to a "half ring": boundary points with ascending
// angles spanning half a turn; the other half is the exact reflection. All
// pointwise geometry (gauge, radial points, inner/outer radius) treats the
// radial representation as the inscribed chord polygon of its samples, which
// keeps the gauge exactly convex (triangle inequality holds to rounding
// error). Area is the one exception: for radial bodies it uses the periodic
// trapezoid rule on r^2/2, which is spectrally accurate for smooth radial
// functions (and exact for the disk), as the chord polygon area is not. The
// two conventions agree to ~4e-7 relative at the default resolution.

namespace bmr {

enum class BodyKind { polygon, radial };

class ValidationError : public std::runtime_error {
  public:
    enum class Kind { asymmetric, nonconvex, origin_not_interior, too_thin, bad_input };

    ValidationError(Kind kind, const std::string& msg)
        : std::runtime_error(msg), kind_(kind) {}
    Kind kind() const { return kind_; }

  private:
    Kind kind_;
};

// Default angular resolution for materialized radial bodies (samples on [0, pi)).
inline constexpr int kDefaultRadialSamples = 2048;
// Bodies thinner than this (inner/outer radius) are rejected as degenerate.
inline constexpr double kThinnessLimit = 1e-6;

struct Ellipse {
    double semi_major = 1.0;
    double semi_minor = 1.0;
    double angle = 0.0;  // direction of the major axis, in [0, pi)

    // SPD map taking the unit disk onto this ellipse.
    LinearMap2 shape_map() const;
    // Minkowski gauge of the ellipse (1 on the boundary).
    double gauge(Vec2 p) const;
    // Boundary point at ellipse parameter t.
    Vec2 boundary_point(double t) const;
    double axis_ratio() const { return semi_major / semi_minor; }
    double area() const { return kPi * semi_major * semi_minor; }
};

// Normalizes axis order and angle range; throws on non-positive axes.
Ellipse make_ellipse(double a, double b, double angle);
// Image of an ellipse under an invertible linear map.
Ellipse map_ellipse(const LinearMap2& t, const Ellipse& e);

class SymmetricConvexBody {
  public:
    // Validating factories. Throw ValidationError on bad input.
    static SymmetricConvexBody polygon(const std::vector<Vec2>& vertices);
    static SymmetricConvexBody radial(const std::vector<double>& samples);
    // Unit ball of the l_p norm; p in [1, inf). Materialized as radial,
    // refining the sample count until the area quadrature stabilizes to 1e-8.
    static SymmetricConvexBody lp_ball(double p);
    // l_inf unit ball, materialized exactly as the square [-1,1]^2.
    static SymmetricConvexBody lp_ball_inf();
    // Radial materialization of an ellipse.
    static SymmetricConvexBody from_ellipse(const Ellipse& e,
                                            int samples = kDefaultRadialSamples);

    BodyKind kind() const { return kind_; }
    // Boundary points with ascending angles covering half a turn. For
    // polygons these are vertices; for radial bodies, the sample points.
    const std::vector<Vec2>& half_ring() const { return pts_; }
    // Full boundary ring (half ring followed by its reflection).
    std::vector<Vec2> full_ring() const;
    // Radial samples (radial bodies only).
    const std::vector<double>& radial_samples() const;

    // Minkowski gauge: inf { t > 0 : p/t inside the body }. Positively
    // homogeneous and symmetric by construction.
    double gauge(Vec2 p) const;
    // Boundary point in direction theta (gauge == 1 there).
    Vec2 radial_point(double theta) const;
    // Radius of the largest origin-centered disk inside the body.
    double inner_radius() const { return inner_; }
    // Radius of the smallest origin-centered disk containing the body.
    double outer_radius() const { return outer_; }
    double area() const { return area_; }

    // Image of the body under an invertible linear map. Polygons map
    // exactly; radial bodies are resampled on the same angular grid.
    SymmetricConvexBody apply_map(const LinearMap2& t) const;

  private:
    SymmetricConvexBody() = default;
    void build_edges();
    int wedge_index(double lifted_angle) const;

    BodyKind kind_ = BodyKind::polygon;
    std::vector<Vec2> pts_;        // half ring, ascending angles
    std::vector<double> angles_;   // angle of pts_[i], in [angles_[0], angles_[0] + pi)
    std::vector<double> samples_;  // radial representation only
    // Edge i runs from pts_[i] to pts_[i+1] (the last edge to -pts_[0]).
    std::vector<Vec2> edge_n_;     // outward normals (unnormalized)
    std::vector<double> edge_c_;   // line offsets: edge lies on { n.x = c }, c > 0
    std::vector<double> edge_dist_;  // distance from origin to the edge line
    double inner_ = 0.0, outer_ = 0.0, area_ = 0.0;
};

}  // namespace bmr
