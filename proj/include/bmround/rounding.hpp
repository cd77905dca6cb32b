#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "bmround/body.hpp"
#include "bmround/parallel.hpp"

// Rounding of a symmetric convex body A: find the area-preserving linear map
// T minimizing the ratio
//
//     ratio(A, T) = circumradius(T A) / inradius(T A).
//
// The ratio is invariant under rotating T on the left and scaling it, so the
// search runs over the symmetric positive-definite determinant-one coset
// representatives T(u, phi) = R(phi) diag(e^u, e^-u) R(-phi); the domain is
// the strip u in [0, log(2 L/l)], phi in [0, pi).  A coarse grid scan picks a
// basin, 8-direction compass search refines it.  Optional restarts rerun the
// search on randomly pre-transformed copies of the body and pull the results
// back, which probes for distinct local minima (there are none: the minimizer
// coset is unique, and the uniqueness batch experiment checks this).

namespace bmr {

struct RoundingOptions {
    int grid_n = 200;            // coarse scan resolution per axis in (u, phi)
    int restarts = 1;            // total searches; > 1 adds pre-mapped reruns
    double tol = 1e-9;           // compass step threshold in (u, phi)
    double contact_tol = 1e-5;   // relative slack for boundary contact detection
    std::uint64_t seed = 0;      // seeds the restart pre-maps
    Exec exec = Exec::parallel;  // grid-scan execution policy
};

// Boundary contact angles of the image body T A, folded mod pi (the body is
// symmetric, so contacts come in antipodal pairs).  `outer` holds directions
// of vertices/samples on the circumscribed circle, `inner` directions where
// the inscribed circle touches the boundary.  Nearby detections are merged
// into single representative angles.
struct ContactSet {
    std::vector<double> outer;
    std::vector<double> inner;
    bool full_circle = false;  // inradius == circumradius at the tolerance
};

struct RoundingResult {
    LinearMap2 t_star = LinearMap2::identity();  // SPD, det 1
    double rho = 1.0;    // circumradius / inradius of the image
    double inner = 0.0;  // inradius of T* A
    double outer = 0.0;  // circumradius of T* A
    ContactSet contacts;
    bool certified = false;  // optimality certificate held at t_star
};

// First-order descent data for a one-parameter stretch at a candidate map.
// If the contact pattern does not alternate, every inner contact lies in a
// closed arc of length < pi (mod pi); stretching along that arc's bisector
// with factor lam > 1 keeps the circumradius at 1 and multiplies the ratio
// bound by stretch_ratio_bound(lam, ell, theta), whose lam-derivative at
// lam = 1 is negative -- an explicit improvement direction.
struct StretchProbe {
    double direction = 0.0;   // stretch axis angle in [0, pi)
    double derivative = 0.0;  // d/dlam stretch_ratio_bound at lam = 1
    double theta = 0.0;       // half-width of the inner-contact arc, in [0, pi/2)
    double theta_ell = 0.0;   // arccos(inradius / circumradius)
};

// Raised when compass refinement exhausts its evaluation budget before the
// steps shrink below tolerance; carries the best point found for diagnosis.
class OptimizerError : public std::runtime_error {
  public:
    OptimizerError(const std::string& msg, RoundingResult best_so_far)
        : std::runtime_error(msg), best(std::move(best_so_far)) {}
    RoundingResult best;
};

// circumradius(T A) / inradius(T A); T must be invertible.
double ratio(const SymmetricConvexBody& body, const LinearMap2& t);

// Full table of ratio values over the (u, phi) grid: u_i = i * log_lam_max /
// (grid_n - 1), phi_j = j * pi / grid_n, row-major i * grid_n + j.  Exposed
// for the benchmark; results are bit-identical across execution policies.
std::vector<double> ratio_grid(const SymmetricConvexBody& body,
                               double log_lam_max, int grid_n, Exec exec);

RoundingResult minimize_ratio(const SymmetricConvexBody& body,
                              const RoundingOptions& opts = {});

ContactSet contact_points(const SymmetricConvexBody& body, const LinearMap2& t,
                          double tol = 1e-5);

// True when the contact pattern certifies optimality: either the image is a
// circle at tolerance, or outer and inner contacts alternate around the
// half-circle (at least 4 cyclic label changes).
bool alternation_certificate(const ContactSet& contacts);

// Empty when the certificate already holds; otherwise the explicit descent
// direction described at StretchProbe.
std::optional<StretchProbe> improvement_stretch(const SymmetricConvexBody& body,
                                                const LinearMap2& t,
                                                double tol = 1e-5);

// Ratio bound along the one-parameter stretch: the image of the unit disk
// cover stays inside an ellipse, and the inner-contact arc controls how the
// inscribed radius shrinks.  ell = inradius/circumradius before stretching,
// theta = half-width of the inner-contact arc.
double stretch_ratio_bound(double lam, double ell, double theta);
// Closed-form d/dlam of the above; negative iff 2 theta + arccos(ell) < pi.
double stretch_ratio_bound_derivative(double lam, double ell, double theta);

// The ellipse T*^-1(inradius disk) inscribed in A: the canonical ellipse of
// the body.  Distinct minimizing maps differ by a rotation, so this ellipse
// does not depend on the restart that produced t_star.
Ellipse canonical_ellipse(const RoundingResult& r);

// Whether t1 and t2 lie in the same rotation-scaling coset: all singular
// values of t1 * t2^-1 agree to relative tolerance tol.
bool same_canonical_ellipse(const LinearMap2& t1, const LinearMap2& t2,
                            double tol);

}  // namespace bmr
