#include "bmround/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace bmr {

namespace {

constexpr double kPanel = 420.0;   // pixels per panel
constexpr double kMargin = 30.0;

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

// Maps body coordinates to pixel coordinates of panel `index` (0 or 1),
// y flipped, scaled so `radius` fits with the margin.
struct PanelMap {
    double scale;
    double cx, cy;
    PanelMap(int index, double radius)
        : scale((kPanel / 2.0 - kMargin) / radius),
          cx(index * kPanel + kPanel / 2.0),
          cy(kPanel / 2.0) {}
    double x(double v) const { return cx + scale * v; }
    double y(double v) const { return cy - scale * v; }
};

void polyline(std::ostringstream& out, const PanelMap& pm,
              const std::vector<Vec2>& ring, const std::string& stroke,
              const std::string& fill) {
    out << "  <polygon points=\"";
    for (const Vec2& p : ring) {
        out << fmt(pm.x(p.x)) << ',' << fmt(pm.y(p.y)) << ' ';
    }
    out << "\" fill=\"" << fill << "\" stroke=\"" << stroke
        << "\" stroke-width=\"1.5\"/>\n";
}

void circle(std::ostringstream& out, const PanelMap& pm, double r,
            const std::string& stroke, const std::string& dash) {
    out << "  <circle cx=\"" << fmt(pm.cx) << "\" cy=\"" << fmt(pm.cy)
        << "\" r=\"" << fmt(pm.scale * r) << "\" fill=\"none\" stroke=\""
        << stroke << "\" stroke-width=\"1.2\"";
    if (!dash.empty()) out << " stroke-dasharray=\"" << dash << "\"";
    out << "/>\n";
}

void ellipse_path(std::ostringstream& out, const PanelMap& pm, const Ellipse& e,
                  const std::string& stroke, const std::string& dash) {
    out << "  <ellipse cx=\"" << fmt(pm.cx) << "\" cy=\"" << fmt(pm.cy)
        << "\" rx=\"" << fmt(pm.scale * e.semi_major) << "\" ry=\""
        << fmt(pm.scale * e.semi_minor) << "\" transform=\"rotate("
        << fmt(-e.angle * 180.0 / kPi) << ' ' << fmt(pm.cx) << ' ' << fmt(pm.cy)
        << ")\" fill=\"none\" stroke=\"" << stroke << "\" stroke-width=\"1.2\"";
    if (!dash.empty()) out << " stroke-dasharray=\"" << dash << "\"";
    out << "/>\n";
}

void label(std::ostringstream& out, double x, double y,
           const std::string& text) {
    out << "  <text x=\"" << fmt(x) << "\" y=\"" << fmt(y)
        << "\" font-family=\"sans-serif\" font-size=\"13\">" << text
        << "</text>\n";
}

}  // namespace

std::string svg_report(const SymmetricConvexBody& body, const RoundingResult& r,
                       const Ellipse& canonical, const Ellipse& inscribed) {
    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\""
        << fmt(2 * kPanel) << "\" height=\"" << fmt(kPanel + 40.0)
        << "\" viewBox=\"0 0 " << fmt(2 * kPanel) << ' ' << fmt(kPanel + 40.0)
        << "\">\n";
    out << "  <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

    // Left panel: the rounded image with its two circles and contacts.
    const SymmetricConvexBody image = body.apply_map(r.t_star);
    PanelMap left(0, r.outer * 1.05);
    polyline(out, left, image.full_ring(), "#1a6faa", "#e8f1f8");
    circle(out, left, r.outer, "#c0392b", "");
    circle(out, left, r.inner, "#27ae60", "");
    for (double a : r.contacts.outer) {
        const Vec2 p = r.outer * unit_dir(a);
        for (double s : {1.0, -1.0}) {
            out << "  <circle cx=\"" << fmt(left.x(s * p.x)) << "\" cy=\""
                << fmt(left.y(s * p.y))
                << "\" r=\"4\" fill=\"#c0392b\"/>\n";
        }
    }
    for (double a : r.contacts.inner) {
        const Vec2 p = r.inner * unit_dir(a);
        for (double s : {1.0, -1.0}) {
            out << "  <circle cx=\"" << fmt(left.x(s * p.x)) << "\" cy=\""
                << fmt(left.y(s * p.y))
                << "\" r=\"4\" fill=\"#27ae60\"/>\n";
        }
    }
    {
        std::ostringstream title;
        title << "rounded image, ratio " << fmt(r.rho)
              << (r.certified ? " (certified)" : " (not certified)");
        label(out, kMargin, kPanel + 20.0, title.str());
        if (r.rho < 1.0 + 1e-6) {
            label(out, kMargin, kPanel + 36.0,
                  "inscribed and circumscribed circles coincide");
        }
    }

    // Right panel: the body with canonical, scaled-canonical and largest
    // inscribed ellipses.
    const double reach =
        std::fmax(body.outer_radius(), r.rho * canonical.semi_major);
    PanelMap right(1, reach * 1.05);
    polyline(out, right, body.full_ring(), "#1a6faa", "none");
    ellipse_path(out, right, canonical, "#27ae60", "");
    ellipse_path(out, right,
                 make_ellipse(r.rho * canonical.semi_major,
                              r.rho * canonical.semi_minor, canonical.angle),
                 "#c0392b", "6 3");
    ellipse_path(out, right, inscribed, "#8e44ad", "2 3");
    label(out, kPanel + kMargin, kPanel + 20.0,
          "body with canonical ellipse (solid), scaled copy (dashed), largest "
          "inscribed ellipse (dotted)");

    out << "</svg>\n";
    return out.str();
}

}  // namespace bmr
