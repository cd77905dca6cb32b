#pragma once

#include <array>
#include <stdexcept>
#include <string>
#include <vector>

#include "bmround/ellipse_field.hpp"

// Discrete conformal modulus of a curve family in a rectangle carrying a
// piecewise-constant field of norms.  Cells are squares of side h; a density
// rho >= 0 per cell is sought minimizing the weighted energy
//
//     sum_c w_c rho_c^2,   w_c = (pi / |B_c|) h^2,
//
// (|B_c| = Euclidean area of the cell's unit ball; for the Euclidean norm
// w_c = h^2) subject to rho-length >= 1 for every admissible curve.  Curve
// lengths are measured in the cell norms: a step between neighboring cell
// centers contributes half its norm-length in each cell, and curves enter
// and leave the domain through half steps at the source and sink sides.
// Admissible curves follow cell-center steps under the family's connectivity
// (axis: E/W/N/S; diag adds the two diagonals).  The constraint set is built
// lazily: shortest rho-length paths (Dijkstra from a virtual source) are
// added as cutting planes until the minimum path length reaches 1 within
// feas_tol, and the restricted quadratic program is re-solved by dual
// coordinate ascent after each batch.

namespace bmr {

struct GridDomain {
    int nx = 0, ny = 0;
    double h = 0.0;
    Rect rect;
    // Row-major iy * nx + ix.
    std::vector<double> weight;  // (pi / |B_c|) h^2
    // Norm-lengths of the four step vectors (h,0), (0,h), (h,h), (-h,h) in
    // each cell's norm (symmetric, so opposite steps have equal length).
    std::vector<std::array<double, 4>> step;
};

// Squares the field's rectangle into n cells across: nx = n, ny chosen so
// cells are square (ny = round(n * height / width), at least 1); requires
// the aspect ratio to make exactly square cells possible within 1e-9.
GridDomain build_grid(const NormField& field, int n);

enum class Connectivity { axis, diag };

// Which boundary cells curves start from / end at.  Kind::side names either
// a rectangle side ("left", "right", "top", "bottom") or, for families on
// the inscribed diamond sub-domain, one of its staircase sides ("sw", "ne",
// "nw", "se"); selecting a diamond side restricts the domain to the cells
// whose centers satisfy |x - cx| + |y - cy| <= half-width.  Kind::arc
// selects boundary cells of the rectangle whose center direction from the
// rectangle center lies in [a0, a1] (radians, counterclockwise).
struct BoundarySelector {
    enum class Kind { side, arc } kind = Kind::side;
    std::string side = "left";
    double a0 = 0.0, a1 = 0.0;
};

struct CurveFamilySpec {
    BoundarySelector source;
    BoundarySelector sink;
    Connectivity connectivity = Connectivity::axis;
};

// JSON schema: {"source": "left" | {"arc": [a0, a1]}, "sink": ...,
//               "connectivity": "axis" | "diag"}.
CurveFamilySpec parse_family_json(const std::string& text);

struct ModulusOptions {
    double feas_tol = 1e-4;  // stop when min path length >= 1 - feas_tol
    double qp_tol = 1e-8;    // relative energy change per dual sweep to stop
    int max_rounds = 0;      // cutting-plane rounds; 0 = 10 * max(nx, ny)
    int max_sweeps = 2000;   // dual coordinate ascent sweeps per round
};

struct ModulusResult {
    double value = 0.0;           // minimized energy = discrete modulus
    std::vector<double> density;  // optimal rho, row-major over the full grid
    int rounds = 0;               // cutting-plane rounds used
    int constraint_count = 0;     // path constraints generated
    double min_path_length = 0.0; // rho-length of the shortest admissible curve
};

// Raised when the cutting-plane loop fails to reach feasibility.
class SolverError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

ModulusResult discrete_modulus(const GridDomain& grid,
                               const CurveFamilySpec& family,
                               const ModulusOptions& opts = {});

// Ratio Mod_Euclid(nu Gamma) / Mod_field(Gamma) for a constant field: nu is
// the field's affine uniformizer, and the numerator is computed on the same
// grid with every cell carrying the pulled-back unit ball nu^-1(disk), which
// makes the two discretizations share their staircase error.
double modulus_ratio(const NormField& field, const CurveFamilySpec& family,
                     int n, const ModulusOptions& opts = {},
                     const RoundingOptions& ropts = {});

}  // namespace bmr
