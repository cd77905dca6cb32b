#include "bmround/experiments.hpp"

#include <algorithm>
#include <cmath>

#include "bmround/random_body.hpp"
#include "bmround/rng.hpp"

namespace bmr {

namespace {

// Point count for the i-th random body: varied so batches mix simple and
// complex shapes.
int batch_points(std::uint64_t seed, std::uint64_t index) {
    Rng rng(batch_seed(seed ^ 0x5bf03635ull, index));
    return 4 + static_cast<int>(rng.next_below(17));  // 4..20
}

}  // namespace

std::vector<BoundsRow> run_bounds_batch(std::uint64_t seed, int count,
                                        const RoundingOptions& opts,
                                        double bounds_tol) {
    std::vector<BoundsRow> rows(static_cast<std::size_t>(std::max(0, count)));
    RoundingOptions body_opts = opts;
    body_opts.exec = Exec::serial;  // parallelism lives at the batch level
    for_index(opts.exec, rows.size(), [&](std::size_t i) {
        const SymmetricConvexBody body =
            random_body(batch_seed(seed, i), batch_points(seed, i));
        const RoundingResult r = minimize_ratio(body, body_opts);
        BoundsRow& row = rows[i];
        row.seed_index = static_cast<int>(i);
        row.rho = r.rho;
        row.report = verify_area_bounds(body, r, bounds_tol);
        row.certified = r.certified;
    });
    return rows;
}

std::vector<UniquenessRow> run_uniqueness_batch(std::uint64_t seed, int count,
                                                int restarts, double tol,
                                                const RoundingOptions& opts,
                                                double min_rho) {
    // Candidate bodies are scanned in index order and the first `count` with
    // a genuinely non-round optimum are kept, so the selection is
    // deterministic; candidates are prepared in parallel ahead of the scan.
    const int want = std::max(0, count);
    const int runs = std::max(2, restarts);
    RoundingOptions body_opts = opts;
    body_opts.exec = Exec::serial;

    std::vector<UniquenessRow> out;
    out.reserve(static_cast<std::size_t>(want));
    const std::size_t chunk = static_cast<std::size_t>(std::max(8, want));
    std::size_t base = 0;
    while (out.size() < static_cast<std::size_t>(want) && base < 64u * chunk) {
        std::vector<UniquenessRow> rows(chunk);
        std::vector<char> keep(chunk, 0);
        for_index(opts.exec, chunk, [&](std::size_t k) {
            const std::size_t index = base + k;
            const SymmetricConvexBody body =
                random_body(batch_seed(seed, index), batch_points(seed, index));
            // Restart r uses r+1 searches: identity plus r pre-mapped reruns,
            // each a fresh local search whose result is pulled back.
            std::vector<LinearMap2> maps;
            double rho = 0.0;
            for (int r = 0; r < runs; ++r) {
                RoundingOptions one = body_opts;
                one.restarts = 1;
                one.seed = batch_seed(seed ^ 0x7ee5u, index * 131 + r);
                if (r > 0) {
                    // Re-round a pre-transformed copy and pull the map back.
                    Rng rng(one.seed);
                    const double alpha = rng.uniform(0.0, kPi);
                    const double lam = std::exp(rng.uniform(0.0, std::log(2.0)));
                    const double beta = rng.uniform(0.0, kPi);
                    const LinearMap2 pre =
                        LinearMap2::rotation(alpha) * spd_stretch(lam, beta);
                    const RoundingResult rr =
                        minimize_ratio(body.apply_map(pre), one);
                    maps.push_back(
                        normalize_det(polar_spd_factor(rr.t_star * pre)));
                } else {
                    const RoundingResult rr = minimize_ratio(body, one);
                    maps.push_back(rr.t_star);
                    rho = rr.rho;
                }
            }
            if (rho <= min_rho) return;  // too round to compare cosets
            UniquenessRow row;
            row.seed_index = static_cast<int>(index);
            row.rho = rho;
            for (std::size_t a = 0; a < maps.size(); ++a) {
                for (std::size_t b = a + 1; b < maps.size(); ++b) {
                    row.max_coset_deviation =
                        std::fmax(row.max_coset_deviation,
                                  singular_ratio(maps[a] * maps[b].inverse()) -
                                      1.0);
                }
            }
            row.same_ellipse = row.max_coset_deviation <= tol;
            rows[k] = row;
            keep[k] = 1;
        });
        for (std::size_t k = 0;
             k < chunk && out.size() < static_cast<std::size_t>(want); ++k) {
            if (keep[k]) out.push_back(rows[k]);
        }
        base += chunk;
    }
    return out;
}

}  // namespace bmr
