#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "bmround/envelopes.hpp"
#include "bmround/random_body.hpp"
#include "bmround/rng.hpp"
#include "test_helpers.hpp"

using namespace bmr;
using doctest::Approx;

TEST_SUITE_BEGIN("envelopes");

namespace {
const double kEllMin = std::sqrt(0.5);
}

TEST_CASE("envelope endpoint identities") {
    // Both envelopes equal 2 at ell = 2^-1/2 (the square, normalized) and pi
    // at ell = 1 (the disk).
    CHECK(area_upper_envelope(kEllMin) == Approx(2.0).epsilon(1e-14));
    CHECK(area_lower_envelope(kEllMin) == Approx(2.0).epsilon(1e-14));
    CHECK(area_upper_envelope(1.0) == Approx(kPi).epsilon(1e-14));
    CHECK(area_lower_envelope(1.0) == Approx(kPi).epsilon(1e-14));
}

TEST_CASE("envelope frozen reference values") {
    CHECK(area_upper_envelope(0.8) == Approx(2.48758821841665569).epsilon(1e-15));
    CHECK(area_lower_envelope(0.8) == Approx(2.28325645978665964).epsilon(1e-15));
    CHECK(area_upper_envelope(0.92) == Approx(2.97298884781788217).epsilon(1e-15));
    CHECK(area_lower_envelope(0.92) == Approx(2.73786882929364841).epsilon(1e-15));
    const EnvelopeDerivatives d = envelope_derivatives(0.8);
    CHECK(d.upper == Approx(4.8).epsilon(1e-15));
    CHECK(d.lower == Approx(3.30814114946664911).epsilon(1e-15));
}

TEST_CASE("envelope derivatives match finite differences") {
    Rng rng(31);
    for (int k = 0; k < 200; ++k) {
        const double ell = rng.uniform(kEllMin + 1e-4, 1.0 - 1e-4);
        const double h = 1e-6;
        const EnvelopeDerivatives d = envelope_derivatives(ell);
        const double fd_up =
            (area_upper_envelope(ell + h) - area_upper_envelope(ell - h)) /
            (2 * h);
        const double fd_lo =
            (area_lower_envelope(ell + h) - area_lower_envelope(ell - h)) /
            (2 * h);
        CHECK(d.upper == Approx(fd_up).epsilon(1e-7));
        CHECK(d.lower == Approx(fd_lo).epsilon(1e-7));
    }
}

TEST_CASE("domain handling") {
    CHECK_THROWS_AS(area_upper_envelope(0.5), std::domain_error);
    CHECK_THROWS_AS(area_lower_envelope(1.1), std::domain_error);
    // Arguments within the 1e-9 slack clamp instead of throwing.
    CHECK(area_upper_envelope(kEllMin - 5e-10) == Approx(2.0).epsilon(1e-12));
    CHECK(area_lower_envelope(1.0 + 5e-10) == Approx(kPi).epsilon(1e-12));
}

TEST_CASE("envelope dominance over a dense grid") {
    // 4 ell^2 dominates the upper envelope, the lower envelope dominates 2,
    // and the upper envelope dominates the lower everywhere.
    const EnvelopeScan s = scan_envelope_bounds(1000000, Exec::serial);
    CHECK(s.min_upper_slack >= -1e-10);
    CHECK(s.min_lower_slack >= -1e-10);
    CHECK(s.min_gap >= -1e-10);
}

TEST_CASE("area bounds on exactly solvable bodies") {
    // Square: ell = 2^-1/2, normalized area exactly 2 -- both bounds tight.
    {
        const SymmetricConvexBody sq = bmrtest::unit_square();
        const RoundingResult r = minimize_ratio(sq);
        const AreaBoundsReport rep = verify_area_bounds(sq, r);
        CHECK(rep.ell == Approx(kEllMin).epsilon(1e-12));
        CHECK(rep.area == Approx(2.0).epsilon(1e-12));
        CHECK(rep.lower_ok);
        CHECK(rep.upper_ok);
        CHECK(rep.envelope_ok);
        CHECK(rep.k_outer_factor == Approx(kPi / 2).epsilon(1e-12));
        CHECK(rep.k_inner_factor == Approx(4.0 / kPi).epsilon(1e-12));
    }
    // Hexagon: ell = sqrt(3)/2, normalized area 3 sqrt(3) / 2.
    {
        const SymmetricConvexBody hex = bmrtest::hexagon();
        const RoundingResult r = minimize_ratio(hex);
        const AreaBoundsReport rep = verify_area_bounds(hex, r);
        CHECK(rep.ell == Approx(std::sqrt(3.0) / 2).epsilon(1e-12));
        CHECK(rep.area == Approx(2.59807621135331594).epsilon(1e-12));
        CHECK(rep.lower_ok);
        CHECK(rep.upper_ok);
        CHECK(rep.envelope_ok);
    }
    // Disk: ell = 1, area pi; dilatation factors are 1.
    {
        const SymmetricConvexBody disk = SymmetricConvexBody::lp_ball(2.0);
        const RoundingResult r = minimize_ratio(disk);
        const AreaBoundsReport rep = verify_area_bounds(disk, r, 1e-4);
        CHECK(rep.ell == Approx(1.0).epsilon(1e-6));
        CHECK(rep.area == Approx(kPi).epsilon(1e-6));
        CHECK(rep.envelope_ok);
        CHECK(rep.k_outer_factor == Approx(1.0).epsilon(1e-5));
        CHECK(rep.k_inner_factor == Approx(1.0).epsilon(1e-5));
    }
}

TEST_CASE("area bounds hold on random bodies") {
    for (int k = 0; k < 40; ++k) {
        const SymmetricConvexBody body =
            random_body(batch_seed(901, k), 4 + k % 17);
        const RoundingResult r = minimize_ratio(body);
        const AreaBoundsReport rep = verify_area_bounds(body, r);
        CHECK(rep.lower_ok);
        CHECK(rep.upper_ok);
        CHECK(rep.envelope_ok);
        CHECK(rep.k_outer_factor <= kPi / 2 + 1e-6);
        CHECK(rep.k_inner_factor <= 4.0 / kPi + 1e-6);
        CHECK(rep.k_outer_factor * rep.k_inner_factor <= 2.0 + 1e-6);
    }
}

TEST_CASE("largest inscribed ellipse of named bodies") {
    // Square: the unit disk.
    {
        const Ellipse e = john_ellipse(bmrtest::unit_square());
        CHECK(e.semi_major == Approx(1.0).epsilon(1e-8));
        CHECK(e.semi_minor == Approx(1.0).epsilon(1e-8));
    }
    // Rectangle [-2,2] x [-1,1]: semi-axes (2, 1) along the axes.
    {
        const Ellipse e = john_ellipse(bmrtest::rectangle_2x1());
        CHECK(e.semi_major == Approx(2.0).epsilon(1e-8));
        CHECK(e.semi_minor == Approx(1.0).epsilon(1e-8));
        CHECK(std::fmin(e.angle, kPi - e.angle) == Approx(0.0).epsilon(1e-6));
    }
    // Hexagon: the inscribed circle of radius sqrt(3)/2.
    {
        const Ellipse e = john_ellipse(bmrtest::hexagon());
        CHECK(e.semi_major == Approx(std::sqrt(3.0) / 2).epsilon(1e-8));
        CHECK(e.semi_minor == Approx(std::sqrt(3.0) / 2).epsilon(1e-8));
    }
    // A body that is an ellipse recovers itself.
    {
        const Ellipse target = make_ellipse(1.9, 0.7, 0.4);
        const SymmetricConvexBody body =
            SymmetricConvexBody::from_ellipse(target);
        const Ellipse e = john_ellipse(body);
        CHECK(e.semi_major == Approx(1.9).epsilon(1e-5));
        CHECK(e.semi_minor == Approx(0.7).epsilon(1e-5));
        CHECK(e.angle == Approx(0.4).epsilon(1e-4));
    }
}

TEST_CASE("inscribed ellipse inclusions with the sqrt(2) blow-up") {
    for (int k = 0; k < 20; ++k) {
        const SymmetricConvexBody body =
            random_body(batch_seed(7001, k), 5 + k % 12);
        const Ellipse e = john_ellipse(body);
        // E sits inside the body ...
        for (int s = 0; s < 256; ++s) {
            const Vec2 p = e.boundary_point(2 * kPi * s / 256);
            CHECK(body.gauge(p) <= 1.0 + 1e-6);
        }
        // ... and sqrt(2) E covers it (checked at the vertices, which is
        // enough for a convex body against a convex cover).
        for (const Vec2& v : body.full_ring()) {
            CHECK(e.gauge(v) <= std::sqrt(2.0) + 1e-6);
        }
    }
}

TEST_CASE("dilatation factors against direct geometry") {
    const SymmetricConvexBody rect = bmrtest::rectangle_2x1();
    // At the identity: circumradius sqrt(5), inradius 1, area 8.
    const DilatationFactors f0 =
        dilatation_factors(rect, LinearMap2::identity());
    CHECK(f0.outer == Approx(kPi * 5.0 / 8.0).epsilon(1e-12));
    CHECK(f0.inner == Approx(8.0 / kPi).epsilon(1e-12));
    // At the minimizer: image is the square with side 2 sqrt(2).
    const RoundingResult r = minimize_ratio(rect);
    const DilatationFactors f1 = dilatation_factors(rect, r.t_star);
    CHECK(f1.outer == Approx(kPi / 2).epsilon(1e-7));
    CHECK(f1.inner == Approx(4.0 / kPi).epsilon(1e-7));
}

TEST_SUITE_END();
