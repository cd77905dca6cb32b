#pragma once

#include <string>

#include "bmround/body.hpp"
#include "bmround/rounding.hpp"

namespace bmr {

// Two-panel SVG: left, the rounded image T*A with its inscribed and
// circumscribed circles and the contact directions; right, the original body
// with its canonical ellipse, the scaled copy rho * E (which circumscribes
// the body), and the largest inscribed ellipse.  When the body is already
// round at tolerance the circles coincide and the panel says so.
std::string svg_report(const SymmetricConvexBody& body, const RoundingResult& r,
                       const Ellipse& canonical, const Ellipse& inscribed);

}  // namespace bmr
