#pragma once

#include <cstdint>
#include <vector>

#include "bmround/envelopes.hpp"
#include "bmround/parallel.hpp"
#include "bmround/rounding.hpp"

// Batch experiments over randomly generated bodies.  Bodies are derived
// purely from (seed, index), so results are identical whichever order or
// execution policy processes them.

namespace bmr {

struct BoundsRow {
    int seed_index = 0;
    double rho = 0.0;
    AreaBoundsReport report;
    bool certified = false;
};

// Rounds `count` random polygons and checks the sharp area bounds and the
// dilatation factors for each.
std::vector<BoundsRow> run_bounds_batch(std::uint64_t seed, int count,
                                        const RoundingOptions& opts,
                                        double bounds_tol = 1e-6);

struct UniquenessRow {
    int seed_index = 0;
    double rho = 0.0;
    // Largest relative deviation of singular values of T_i T_j^-1 over all
    // restart pairs; zero means every restart found the same coset.
    double max_coset_deviation = 0.0;
    bool same_ellipse = false;  // deviation within tolerance
};

// Rounds each body `restarts` times from independently pre-transformed
// starts and measures how far apart the resulting maps' cosets are.  Bodies
// whose optimal ratio is below min_rho are skipped (every map is then close
// to optimal and cosets are not comparable).
std::vector<UniquenessRow> run_uniqueness_batch(std::uint64_t seed, int count,
                                                int restarts, double tol,
                                                const RoundingOptions& opts,
                                                double min_rho = 1.001);

}  // namespace bmr
