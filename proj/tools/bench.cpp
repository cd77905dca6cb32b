// Benchmark: serial versus OpenMP execution of the parallel kernels (search
// grid scan, batch experiments, envelope scan, field cells), verifying on the
// way that both policies produce identical results.

#include <chrono>
#include <cstdio>
#include <memory>

#include "bmround/ellipse_field.hpp"
#include "bmround/envelopes.hpp"
#include "bmround/experiments.hpp"
#include "bmround/parallel.hpp"
#include "bmround/random_body.hpp"
#include "bmround/rounding.hpp"

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

template <class F>
void report(const char* name, F&& run) {
    const auto t_serial = Clock::now();
    const bool equal_serial = run(bmr::Exec::serial);
    const double serial = seconds_since(t_serial);
    const auto t_parallel = Clock::now();
    const bool equal_parallel = run(bmr::Exec::parallel);
    const double parallel = seconds_since(t_parallel);
    std::printf("%-18s serial %8.3fs   parallel %8.3fs   speedup %5.2fx   %s\n",
                name, serial, parallel, serial / parallel,
                (equal_serial && equal_parallel) ? "results match"
                                                 : "RESULTS DIFFER");
}

}  // namespace

int main() {
    std::printf("threads available: %d\n", bmr::max_threads());

    const bmr::SymmetricConvexBody body = bmr::random_body(7, 14);

    {
        const std::vector<double> reference =
            bmr::ratio_grid(body, 1.0, 400, bmr::Exec::serial);
        report("grid scan", [&](bmr::Exec exec) {
            return bmr::ratio_grid(body, 1.0, 400, exec) == reference;
        });
    }
    {
        const auto reference = bmr::run_bounds_batch(3, 60, [] {
            bmr::RoundingOptions o;
            o.grid_n = 60;
            o.exec = bmr::Exec::serial;
            return o;
        }());
        report("bounds batch", [&](bmr::Exec exec) {
            bmr::RoundingOptions o;
            o.grid_n = 60;
            o.exec = exec;
            const auto rows = bmr::run_bounds_batch(3, 60, o);
            if (rows.size() != reference.size()) return false;
            for (std::size_t i = 0; i < rows.size(); ++i) {
                if (rows[i].rho != reference[i].rho) return false;
            }
            return true;
        });
    }
    {
        const bmr::EnvelopeScan reference =
            bmr::scan_envelope_bounds(20000000, bmr::Exec::serial);
        report("envelope scan", [&](bmr::Exec exec) {
            const bmr::EnvelopeScan s = bmr::scan_envelope_bounds(20000000, exec);
            return s.min_upper_slack == reference.min_upper_slack &&
                   s.min_lower_slack == reference.min_lower_slack &&
                   s.min_gap == reference.min_gap;
        });
    }
    {
        // Field of distinct cells: each rounded independently.
        std::vector<std::shared_ptr<const bmr::SymmetricConvexBody>> cells;
        for (int i = 0; i < 24; ++i) {
            cells.push_back(std::make_shared<const bmr::SymmetricConvexBody>(
                bmr::random_body(100 + i, 10)));
        }
        const bmr::NormField field(bmr::Rect{0, 0, 6, 4}, 6, 4, cells);
        bmr::RoundingOptions opts;
        opts.grid_n = 80;
        opts.exec = bmr::Exec::serial;
        const bmr::FieldBeltrami reference = bmr::field_to_beltrami(field, opts);
        report("field cells", [&](bmr::Exec exec) {
            bmr::RoundingOptions o;
            o.grid_n = 80;
            o.exec = exec;
            const bmr::FieldBeltrami f = bmr::field_to_beltrami(field, o);
            return f.mu == reference.mu;
        });
    }
    return 0;
}
