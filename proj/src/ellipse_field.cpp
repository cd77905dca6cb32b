#include "bmround/ellipse_field.hpp"

#include <cmath>
#include <stdexcept>
#include <unordered_map>

namespace bmr {

namespace {
constexpr double kRoundTol = 1e-9;  // rho below 1 + this counts as a circle
}

NormField::NormField(
    Rect rect, int nx, int ny,
    std::vector<std::shared_ptr<const SymmetricConvexBody>> cells)
    : rect_(rect), nx_(nx), ny_(ny), cells_(std::move(cells)) {
    if (nx_ < 1 || ny_ < 1) {
        throw std::invalid_argument("NormField: grid must be at least 1x1");
    }
    if (!(rect_.x1 > rect_.x0) || !(rect_.y1 > rect_.y0)) {
        throw std::invalid_argument("NormField: empty rectangle");
    }
    if (cells_.size() != static_cast<std::size_t>(nx_) * ny_) {
        throw std::invalid_argument("NormField: cell count does not match grid");
    }
    for (const auto& c : cells_) {
        if (!c) throw std::invalid_argument("NormField: null cell body");
    }
}

NormField NormField::constant(std::shared_ptr<const SymmetricConvexBody> body,
                              Rect rect) {
    if (!body) throw std::invalid_argument("NormField: null body");
    std::vector<std::shared_ptr<const SymmetricConvexBody>> cells{std::move(body)};
    return NormField(rect, 1, 1, std::move(cells));
}

const SymmetricConvexBody& NormField::cell(int ix, int iy) const {
    return *cell_ptr(ix, iy);
}

const std::shared_ptr<const SymmetricConvexBody>& NormField::cell_ptr(
    int ix, int iy) const {
    if (ix < 0 || ix >= nx_ || iy < 0 || iy >= ny_) {
        throw std::out_of_range("NormField::cell: index out of range");
    }
    return cells_[static_cast<std::size_t>(iy) * nx_ + ix];
}

bool NormField::is_constant() const {
    for (const auto& c : cells_) {
        if (c.get() != cells_.front().get()) return false;
    }
    return true;
}

std::complex<double> ellipse_to_beltrami(const Ellipse& e) {
    const double k = e.axis_ratio();
    const double mag = (k - 1.0) / (k + 1.0);
    if (mag == 0.0) return {0.0, 0.0};
    return std::polar(mag, 2.0 * e.angle);
}

FieldBeltrami field_to_beltrami(const NormField& field,
                                const RoundingOptions& opts) {
    // Round each distinct body object once (cells alias shared bodies).
    std::vector<const SymmetricConvexBody*> distinct;
    std::unordered_map<const SymmetricConvexBody*, std::size_t> index;
    const int nx = field.nx(), ny = field.ny();
    for (int iy = 0; iy < ny; ++iy) {
        for (int ix = 0; ix < nx; ++ix) {
            const SymmetricConvexBody* p = field.cell_ptr(ix, iy).get();
            if (index.emplace(p, distinct.size()).second) distinct.push_back(p);
        }
    }
    std::vector<std::complex<double>> per_body(distinct.size());
    // Parallelize across distinct bodies; each rounding search itself runs
    // serially so results never depend on the thread count.
    RoundingOptions cell_opts = opts;
    cell_opts.exec = Exec::serial;
    for_index(opts.exec, distinct.size(), [&](std::size_t k) {
        const RoundingResult r = minimize_ratio(*distinct[k], cell_opts);
        per_body[k] = (r.rho < 1.0 + kRoundTol)
                          ? std::complex<double>(0.0, 0.0)
                          : ellipse_to_beltrami(canonical_ellipse(r));
    });
    FieldBeltrami out;
    out.nx = nx;
    out.ny = ny;
    out.mu.resize(static_cast<std::size_t>(nx) * ny);
    for (int iy = 0; iy < ny; ++iy) {
        for (int ix = 0; ix < nx; ++ix) {
            const std::size_t k = index.at(field.cell_ptr(ix, iy).get());
            const std::complex<double> mu = per_body[k];
            out.mu[static_cast<std::size_t>(iy) * nx + ix] = mu;
            out.max_abs = std::fmax(out.max_abs, std::abs(mu));
        }
    }
    return out;
}

LinearMap2 affine_uniformizer(const SymmetricConvexBody& body,
                              const RoundingOptions& opts) {
    return minimize_ratio(body, opts).t_star;
}

}  // namespace bmr
