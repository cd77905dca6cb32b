#pragma once

#include <memory>
#include <string>

#include "bmround/body.hpp"
#include "bmround/ellipse_field.hpp"

// JSON schemas.
//
// Body:
//   {"type": "polygon", "vertices": [[x, y], ...]}   full symmetric ring
//   {"type": "radial", "samples": [r_0, ..., r_{m-1}]}   radii at angles
//       k*pi/m, k = 0..m-1 (the other half follows by symmetry)
//   {"type": "lp", "p": 2.5}  or  {"type": "lp", "p": "inf"}   unit lp ball
//
// Norm field:
//   {"rect": [x0, y0, x1, y1], "nx": 2, "ny": 1, "cells": [body, ...]}
//       row-major cells, bottom row first
//   {"constant": body, "rect": [x0, y0, x1, y1]}   rect defaults to the
//       unit square
//
// Parse errors and invalid geometry raise ValidationError (bad_input for
// malformed JSON); serialization keeps full double precision.

namespace bmr {

SymmetricConvexBody parse_body_json(const std::string& text);
std::string body_to_json(const SymmetricConvexBody& body);

SymmetricConvexBody load_body_file(const std::string& path);

NormField parse_field_json(const std::string& text);
NormField load_field_file(const std::string& path);

std::string read_text_file(const std::string& path);

}  // namespace bmr
