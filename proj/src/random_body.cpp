#include "bmround/random_body.hpp"

#include <algorithm>
#include <stdexcept>

#include "bmround/rng.hpp"

namespace bmr {

namespace {

// Monotone-chain convex hull, counterclockwise, collinear points dropped.
// Exact floating-point comparisons: a point-symmetric input set yields a
// point-symmetric hull bit for bit, because cross(-u, -v) == cross(u, v)
// exactly and the lexicographic order of the set is symmetric.
std::vector<Vec2> convex_hull(std::vector<Vec2> pts) {
    std::sort(pts.begin(), pts.end(), [](const Vec2& a, const Vec2& b) {
        return a.x < b.x || (a.x == b.x && a.y < b.y);
    });
    pts.erase(std::unique(pts.begin(), pts.end(),
                          [](const Vec2& a, const Vec2& b) {
                              return a.x == b.x && a.y == b.y;
                          }),
              pts.end());
    const std::size_t n = pts.size();
    if (n < 3) return pts;
    std::vector<Vec2> hull(2 * n);
    std::size_t k = 0;
    for (std::size_t i = 0; i < n; ++i) {  // lower chain
        while (k >= 2 &&
               cross(hull[k - 1] - hull[k - 2], pts[i] - hull[k - 2]) <= 0.0) {
            --k;
        }
        hull[k++] = pts[i];
    }
    const std::size_t lower = k + 1;
    for (std::size_t i = n - 1; i-- > 0;) {  // upper chain
        while (k >= lower &&
               cross(hull[k - 1] - hull[k - 2], pts[i] - hull[k - 2]) <= 0.0) {
            --k;
        }
        hull[k++] = pts[i];
    }
    hull.resize(k - 1);  // last point repeats the first
    return hull;
}

}  // namespace

std::uint64_t batch_seed(std::uint64_t seed, std::uint64_t index) {
    // One splitmix64 step over a mixed input: distinct (seed, index) pairs
    // land in decorrelated streams.
    Rng mix(seed ^ (index * 0x9e3779b97f4a7c15ull) ^ 0xa0761d6478bd642full);
    return mix.next_u64();
}

SymmetricConvexBody random_body(std::uint64_t seed, int points) {
    const int k = std::clamp(points, 3, 256);
    Rng master(seed);
    for (std::uint64_t attempt = 0; attempt < 64; ++attempt) {
        Rng rng = master.substream(attempt);
        std::vector<Vec2> pts;
        pts.reserve(2 * static_cast<std::size_t>(k));
        for (int i = 0; i < k; ++i) {
            const double angle = rng.uniform(0.0, kPi);
            const double radius = rng.uniform(0.25, 1.0);
            const Vec2 p = radius * unit_dir(angle);
            pts.push_back(p);
            pts.push_back(-p);
        }
        const std::vector<Vec2> hull = convex_hull(std::move(pts));
        if (hull.size() < 4) continue;
        try {
            return SymmetricConvexBody::polygon(hull);
        } catch (const ValidationError&) {
            continue;  // thin or otherwise degenerate draw; resample
        }
    }
    throw std::runtime_error("random_body: could not draw a valid body");
}

}  // namespace bmr
