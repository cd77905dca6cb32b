#pragma once

#include "bmround/body.hpp"
#include "bmround/parallel.hpp"
#include "bmround/rounding.hpp"

// Sharp area envelopes for rounded symmetric convex bodies.  Normalize a
// rounded body (one whose ratio cannot be improved by any area-preserving
// linear map) so its circumradius is 1 and let ell in [2^-1/2, 1] be its
// inradius.  Its area then lies between two explicit envelopes, attained by
// the intersection and the convex hull of the unit disk with a symmetric
// lens/slab configuration:
//
//   upper(ell) = pi - 4 acos(ell) + 4 ell sqrt(1 - ell^2)
//   lower(ell) = (pi - 4 acos(ell)) ell^2 + 4 ell sqrt(1 - ell^2)
//
// Both equal 2 at ell = 2^-1/2 and pi at ell = 1.  On the whole domain
// lower(ell) >= 2 and upper(ell) <= 4 ell^2, so undoing the normalization
// gives the sharp bounds 2 L^2 <= |T A| <= 4 l^2 at the rounding minimizer
// (L = circumradius, l = inradius of T A).

namespace bmr {

// Domain [2^-1/2, 1]; arguments within 1e-9 outside are clamped, anything
// further out throws std::domain_error.
double area_upper_envelope(double ell);
double area_lower_envelope(double ell);

struct EnvelopeDerivatives {
    double upper;  // 8 sqrt(1 - ell^2)
    double lower;  // 2 pi ell + 4 sqrt(1 - ell^2) - 8 ell acos(ell)
};
EnvelopeDerivatives envelope_derivatives(double ell);

// Minimum slacks of the envelope inequalities over a dense ell-grid:
//   upper_slack = 4 ell^2 - upper(ell) >= 0   (upper bound dominates 4 l^2)
//   lower_slack = lower(ell) - 2       >= 0   (lower bound dominates 2 L^2)
//   gap         = upper(ell) - lower(ell) >= 0
// Chunked so serial and parallel execution reduce identically.
struct EnvelopeScan {
    double min_upper_slack;
    double min_lower_slack;
    double min_gap;
};
EnvelopeScan scan_envelope_bounds(int n, Exec exec);

// Checks the area bounds for one body at its rounding map.  All quantities
// are scale-invariant: the image T*A is normalized by its circumradius, and
// its area equals |A| * det(T*) = |A| exactly (the map has determinant one),
// so no resampling error enters.
struct AreaBoundsReport {
    double ell;   // inradius / circumradius of T* A
    double area;  // |T* A| / circumradius^2
    bool lower_ok;     // area >= 2 - tol
    bool upper_ok;     // area <= 4 ell^2 + tol
    bool envelope_ok;  // lower(ell) - tol <= area <= upper(ell) + tol
    double k_outer_factor;  // pi * circumradius^2 / |T* A|   <= pi/2 + tol
    double k_inner_factor;  // |T* A| / (pi * inradius^2)     <= 4/pi + tol
};
AreaBoundsReport verify_area_bounds(const SymmetricConvexBody& body,
                                    const RoundingResult& r, double tol = 1e-6);

// Largest-area ellipse inscribed in the body (centered, by symmetry).  The
// ellipse {x : x^T X^-1 x <= 1} fits in the edge half-plane {n.x <= c} iff
// n^T X n <= c^2, so this is a concave max-log-det problem in the three
// entries of X with one linear constraint per edge; it is solved to relative
// area accuracy tol by log-barrier Newton steps along the central path.
Ellipse john_ellipse(const SymmetricConvexBody& body, double tol = 1e-10);

// Quasiconformal dilatation factors of the linear interpolation between the
// body's norm and the canonical round one, at the map t:
//   outer: pi * circumradius(tA)^2 / |tA|  (circumscribed-circle comparison)
//   inner: |tA| / (pi * inradius(tA)^2)    (inscribed-circle comparison)
// At the rounding minimizer these are at most pi/2 and 4/pi, the product at
// most 2.
struct DilatationFactors {
    double outer;
    double inner;
};
DilatationFactors dilatation_factors(const SymmetricConvexBody& body,
                                     const LinearMap2& t);

}  // namespace bmr
