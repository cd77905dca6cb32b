#pragma once

#include <algorithm>
#include <cmath>

// Derivative-free 2D local refinement: 8-direction compass (pattern) search
// with step halving. Accepts only strict improvement, so a start sitting
// exactly on an optimum (e.g. the identity map) never drifts off it.

namespace bmr {

struct CompassResult {
    double x = 0.0, y = 0.0;
    double value = 0.0;
    long evals = 0;
    bool converged = true;  // steps shrank below tol within the eval budget
};

template <class F>
CompassResult compass_minimize(F&& f, double x0, double y0, double step_x,
                               double step_y, double tol, long max_evals = 1000000) {
    static constexpr int dx[8] = {1, -1, 0, 0, 1, 1, -1, -1};
    static constexpr int dy[8] = {0, 0, 1, -1, 1, -1, 1, -1};
    CompassResult r;
    r.x = x0;
    r.y = y0;
    r.value = f(x0, y0);
    r.evals = 1;
    while (std::fmax(step_x, step_y) > tol) {
        if (r.evals >= max_evals) {
            r.converged = false;
            break;
        }
        int best = -1;
        double best_val = r.value;
        for (int k = 0; k < 8; ++k) {
            double v = f(r.x + dx[k] * step_x, r.y + dy[k] * step_y);
            ++r.evals;
            if (v < best_val) {
                best_val = v;
                best = k;
            }
        }
        if (best >= 0) {
            r.x += dx[best] * step_x;
            r.y += dy[best] * step_y;
            r.value = best_val;
        } else {
            step_x *= 0.5;
            step_y *= 0.5;
        }
    }
    return r;
}

}  // namespace bmr
