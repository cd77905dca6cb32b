#pragma once

#include <complex>
#include <memory>
#include <vector>

#include "bmround/body.hpp"
#include "bmround/parallel.hpp"
#include "bmround/rounding.hpp"

// A measurable field of norms on a rectangle, piecewise constant on a grid of
// cells, each norm given by its unit ball (a symmetric convex body).  Rounding
// every cell's unit ball produces a field of canonical ellipses, i.e. a
// Beltrami coefficient: the complex dilatation a quasiconformal map must have
// to straighten the field.  An ellipse with axis ratio K >= 1 and major-axis
// angle alpha corresponds to mu = ((K - 1)/(K + 1)) e^{2 i alpha}.

namespace bmr {

struct Rect {
    double x0 = 0.0, y0 = 0.0, x1 = 1.0, y1 = 1.0;
    double width() const { return x1 - x0; }
    double height() const { return y1 - y0; }
};

class NormField {
  public:
    // Uniform grid of nx * ny cells over rect; cells[iy * nx + ix] is the
    // unit ball of the norm on cell (ix, iy).  Bodies are shared: repeated
    // cells may point at one object, and consumers exploit that to round
    // each distinct body once.
    NormField(Rect rect, int nx, int ny,
              std::vector<std::shared_ptr<const SymmetricConvexBody>> cells);

    static NormField constant(std::shared_ptr<const SymmetricConvexBody> body,
                              Rect rect);

    const Rect& rect() const { return rect_; }
    int nx() const { return nx_; }
    int ny() const { return ny_; }
    const SymmetricConvexBody& cell(int ix, int iy) const;
    const std::shared_ptr<const SymmetricConvexBody>& cell_ptr(int ix,
                                                               int iy) const;
    // True when every cell shares one body object.
    bool is_constant() const;

  private:
    Rect rect_;
    int nx_, ny_;
    std::vector<std::shared_ptr<const SymmetricConvexBody>> cells_;
};

// Dilatation of the ellipse: mu = ((K-1)/(K+1)) e^{2 i alpha} where K is the
// axis ratio and alpha the major-axis angle.  Zero for circles.
std::complex<double> ellipse_to_beltrami(const Ellipse& e);

struct FieldBeltrami {
    int nx = 0, ny = 0;
    std::vector<std::complex<double>> mu;  // row-major iy * nx + ix
    double max_abs = 0.0;
};

// Rounds each distinct cell body once, converts canonical ellipses to
// Beltrami coefficients.  Cells whose rounded ratio is below 1 + 1e-9 are
// already round: their coefficient is exactly zero.
FieldBeltrami field_to_beltrami(const NormField& field,
                                const RoundingOptions& opts = {});

// The rounding map of the body: the area-preserving linear change of
// coordinates after which the norm's unit ball is as round as possible.
LinearMap2 affine_uniformizer(const SymmetricConvexBody& body,
                              const RoundingOptions& opts = {});

}  // namespace bmr
