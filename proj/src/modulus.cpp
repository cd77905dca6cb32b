#include "bmround/modulus.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <queue>
#include <unordered_set>

#include <json.hpp>

namespace bmr {

namespace {

// Neighbor table: E, W, N, S, NE, SW, NW, SE.  step_class maps each to the
// canonical step vector whose norm-length is precomputed per cell
// ((h,0), (0,h), (h,h), (-h,h)); opposite directions share a class because
// cell norms are symmetric.
constexpr int kDx[8] = {1, -1, 0, 0, 1, -1, -1, 1};
constexpr int kDy[8] = {0, 0, 1, -1, 1, -1, 1, -1};
constexpr int kStepClass[8] = {0, 0, 1, 1, 2, 2, 3, 3};

struct FamilyInstance {
    std::vector<char> active;            // cell participates in the domain
    std::vector<int> source_cells;
    std::vector<double> source_entry;    // norm-length from center to boundary
    std::vector<int> sink_cells;
    std::vector<double> sink_exit;
    int dir_count = 4;                   // 4 = axis, 8 = axis + diagonals
};

bool is_diamond_side(const std::string& s) {
    return s == "sw" || s == "ne" || s == "nw" || s == "se";
}

bool is_rect_side(const std::string& s) {
    return s == "left" || s == "right" || s == "top" || s == "bottom";
}

// The body of the norm on a grid cell (fields may be coarser than the grid).
const SymmetricConvexBody& field_cell(const NormField& field,
                                      const GridDomain& g, int ix, int iy) {
    const double x = g.rect.x0 + (ix + 0.5) * g.h;
    const double y = g.rect.y0 + (iy + 0.5) * g.h;
    int fx = static_cast<int>((x - field.rect().x0) / field.rect().width() *
                              field.nx());
    int fy = static_cast<int>((y - field.rect().y0) / field.rect().height() *
                              field.ny());
    fx = std::clamp(fx, 0, field.nx() - 1);
    fy = std::clamp(fy, 0, field.ny() - 1);
    return field.cell(fx, fy);
}

FamilyInstance materialize(const GridDomain& g, const CurveFamilySpec& spec) {
    const int nx = g.nx, ny = g.ny;
    const std::size_t cells = static_cast<std::size_t>(nx) * ny;
    FamilyInstance inst;
    inst.active.assign(cells, 1);
    inst.dir_count = spec.connectivity == Connectivity::diag ? 8 : 4;

    const bool diamond =
        (spec.source.kind == BoundarySelector::Kind::side &&
         is_diamond_side(spec.source.side)) ||
        (spec.sink.kind == BoundarySelector::Kind::side &&
         is_diamond_side(spec.sink.side));
    const double cx = 0.5 * (g.rect.x0 + g.rect.x1);
    const double cy = 0.5 * (g.rect.y0 + g.rect.y1);
    const double halfwidth = 0.5 * std::fmin(g.rect.x1 - g.rect.x0,
                                             g.rect.y1 - g.rect.y0);
    const auto center = [&](int ix, int iy) {
        return Vec2{g.rect.x0 + (ix + 0.5) * g.h, g.rect.y0 + (iy + 0.5) * g.h};
    };
    if (diamond) {
        for (int iy = 0; iy < ny; ++iy) {
            for (int ix = 0; ix < nx; ++ix) {
                const Vec2 c = center(ix, iy);
                const bool in = std::fabs(c.x - cx) + std::fabs(c.y - cy) <=
                                halfwidth + 1e-12 * halfwidth;
                inst.active[static_cast<std::size_t>(iy) * nx + ix] = in ? 1 : 0;
            }
        }
    }
    const auto active_at = [&](int ix, int iy) {
        if (ix < 0 || ix >= nx || iy < 0 || iy >= ny) return false;
        return inst.active[static_cast<std::size_t>(iy) * nx + ix] != 0;
    };

    // Entry/exit length: norm-length (in the cell's own norm) of the segment
    // from the cell center to the domain boundary along the crossing
    // direction of the selected side.
    const auto collect = [&](const BoundarySelector& sel, std::vector<int>* out,
                             std::vector<double>* len) {
        if (sel.kind == BoundarySelector::Kind::side && is_rect_side(sel.side)) {
            const bool horizontal = sel.side == "left" || sel.side == "right";
            const int step_class = horizontal ? 0 : 1;
            if (sel.side == "left" || sel.side == "right") {
                const int ix = sel.side == "left" ? 0 : nx - 1;
                for (int iy = 0; iy < ny; ++iy) {
                    if (!active_at(ix, iy)) continue;
                    const std::size_t c = static_cast<std::size_t>(iy) * nx + ix;
                    out->push_back(static_cast<int>(c));
                    len->push_back(0.5 * g.step[c][step_class]);
                }
            } else {
                const int iy = sel.side == "bottom" ? 0 : ny - 1;
                for (int ix = 0; ix < nx; ++ix) {
                    if (!active_at(ix, iy)) continue;
                    const std::size_t c = static_cast<std::size_t>(iy) * nx + ix;
                    out->push_back(static_cast<int>(c));
                    len->push_back(0.5 * g.step[c][step_class]);
                }
            }
        } else if (sel.kind == BoundarySelector::Kind::side) {
            // Diamond staircase side: active cells whose step across that
            // side leaves the diamond.  Crossing direction is the diagonal;
            // the distance t along it to the side line |x-cx| + |y-cy| =
            // halfwidth is margin/2, and its norm-length is (t/h) times the
            // precomputed diagonal step length (gauge is homogeneous).
            int dx = 0, dy = 0;
            if (sel.side == "sw") { dx = -1; dy = -1; }
            if (sel.side == "ne") { dx = 1; dy = 1; }
            if (sel.side == "nw") { dx = -1; dy = 1; }
            if (sel.side == "se") { dx = 1; dy = -1; }
            const int step_class = (dx == dy) ? 2 : 3;
            for (int iy = 0; iy < ny; ++iy) {
                for (int ix = 0; ix < nx; ++ix) {
                    if (!active_at(ix, iy)) continue;
                    if (active_at(ix + dx, iy + dy)) continue;
                    const Vec2 c = center(ix, iy);
                    const double margin =
                        halfwidth - std::fabs(c.x - cx) - std::fabs(c.y - cy);
                    const double t = 0.5 * std::fmax(0.0, margin);
                    const std::size_t cell =
                        static_cast<std::size_t>(iy) * nx + ix;
                    out->push_back(static_cast<int>(cell));
                    len->push_back(t / g.h * g.step[cell][step_class]);
                }
            }
        } else {
            // Arc selector: rectangle boundary cells whose center direction
            // from the rectangle center lies in [a0, a1] (mod 2 pi).
            const double full = 2.0 * kPi;
            double a0 = std::fmod(sel.a0, full);
            double a1 = std::fmod(sel.a1, full);
            if (a0 < 0) a0 += full;
            if (a1 < 0) a1 += full;
            const auto in_arc = [&](double a) {
                if (a0 <= a1) return a >= a0 && a <= a1;
                return a >= a0 || a <= a1;  // wrapping interval
            };
            for (int iy = 0; iy < ny; ++iy) {
                for (int ix = 0; ix < nx; ++ix) {
                    const bool boundary =
                        ix == 0 || ix == nx - 1 || iy == 0 || iy == ny - 1;
                    if (!boundary || !active_at(ix, iy)) continue;
                    const Vec2 c = center(ix, iy);
                    double a = std::atan2(c.y - cy, c.x - cx);
                    if (a < 0) a += full;
                    if (!in_arc(a)) continue;
                    // Crossing direction: perpendicular of the nearest side.
                    const double off_x = c.x - cx, off_y = c.y - cy;
                    const bool use_x =
                        (ix == 0 || ix == nx - 1) &&
                        (!(iy == 0 || iy == ny - 1) ||
                         std::fabs(off_x) >= std::fabs(off_y));
                    const std::size_t cell =
                        static_cast<std::size_t>(iy) * nx + ix;
                    out->push_back(static_cast<int>(cell));
                    len->push_back(0.5 * g.step[cell][use_x ? 0 : 1]);
                }
            }
        }
        if (out->empty()) {
            throw std::invalid_argument(
                "curve family: boundary selector matched no cells");
        }
    };
    collect(spec.source, &inst.source_cells, &inst.source_entry);
    collect(spec.sink, &inst.sink_cells, &inst.sink_exit);
    return inst;
}

// One shortest-path pass (Dijkstra from a virtual source over all source
// cells).  Costs are rho-lengths; ties resolve by cell index via the queue
// ordering, keeping runs deterministic.
struct PathSearch {
    std::vector<double> dist;
    std::vector<int> parent;      // previous cell on the tree, -1 at sources
    double min_total = std::numeric_limits<double>::infinity();
};

PathSearch shortest_paths(const GridDomain& g, const FamilyInstance& inst,
                          const std::vector<double>& rho) {
    const int nx = g.nx, ny = g.ny;
    const std::size_t cells = static_cast<std::size_t>(nx) * ny;
    PathSearch ps;
    ps.dist.assign(cells, std::numeric_limits<double>::infinity());
    ps.parent.assign(cells, -1);
    using Item = std::pair<double, int>;  // (distance, cell)
    std::priority_queue<Item, std::vector<Item>, std::greater<Item>> pq;
    for (std::size_t k = 0; k < inst.source_cells.size(); ++k) {
        const int c = inst.source_cells[k];
        const double d = rho[c] * inst.source_entry[k];
        if (d < ps.dist[c]) {
            ps.dist[c] = d;
            pq.push({d, c});
        }
    }
    while (!pq.empty()) {
        const auto [d, c] = pq.top();
        pq.pop();
        if (d > ps.dist[c]) continue;
        const int ix = c % nx, iy = c / nx;
        for (int k = 0; k < inst.dir_count; ++k) {
            const int jx = ix + kDx[k], jy = iy + kDy[k];
            if (jx < 0 || jx >= nx || jy < 0 || jy >= ny) continue;
            const int j = jy * nx + jx;
            if (!inst.active[j]) continue;
            const int sc = kStepClass[k];
            const double w =
                0.5 * (rho[c] * g.step[c][sc] + rho[j] * g.step[j][sc]);
            const double nd = d + w;
            if (nd < ps.dist[j]) {
                ps.dist[j] = nd;
                ps.parent[j] = c;
                pq.push({nd, j});
            }
        }
    }
    for (std::size_t k = 0; k < inst.sink_cells.size(); ++k) {
        const int c = inst.sink_cells[k];
        if (ps.dist[c] == std::numeric_limits<double>::infinity()) continue;
        ps.min_total =
            std::fmin(ps.min_total, ps.dist[c] + rho[c] * inst.sink_exit[k]);
    }
    return ps;
}

struct Constraint {
    std::vector<std::pair<int, double>> coef;  // (cell, length), cell ascending
    double denom = 0.0;                        // (1/2) sum coef^2 / weight
    double y = 0.0;                            // dual variable
};

std::uint64_t path_signature(const std::vector<int>& cells) {
    std::uint64_t h = 1469598103934665603ull;
    for (int c : cells) {
        h ^= static_cast<std::uint64_t>(c) + 0x9e3779b97f4a7c15ull;
        h *= 1099511628211ull;
    }
    return h;
}

}  // namespace

GridDomain build_grid(const NormField& field, int n) {
    if (n < 1) throw std::invalid_argument("build_grid: n must be >= 1");
    GridDomain g;
    g.rect = field.rect();
    g.nx = n;
    g.h = g.rect.width() / n;
    const double ny_exact = g.rect.height() / g.h;
    g.ny = std::max(1, static_cast<int>(std::lround(ny_exact)));
    if (std::fabs(ny_exact - g.ny) > 1e-9 * std::fmax(1.0, ny_exact)) {
        throw std::invalid_argument(
            "build_grid: rectangle aspect ratio does not admit square cells");
    }
    const std::size_t cells = static_cast<std::size_t>(g.nx) * g.ny;
    g.weight.resize(cells);
    g.step.resize(cells);
    const double h = g.h;
    for (int iy = 0; iy < g.ny; ++iy) {
        for (int ix = 0; ix < g.nx; ++ix) {
            const std::size_t c = static_cast<std::size_t>(iy) * g.nx + ix;
            const SymmetricConvexBody& body = field_cell(field, g, ix, iy);
            g.weight[c] = kPi / body.area() * h * h;
            g.step[c][0] = body.gauge(Vec2{h, 0.0});
            g.step[c][1] = body.gauge(Vec2{0.0, h});
            g.step[c][2] = body.gauge(Vec2{h, h});
            g.step[c][3] = body.gauge(Vec2{-h, h});
        }
    }
    return g;
}

CurveFamilySpec parse_family_json(const std::string& text) {
    const nlohmann::json j = nlohmann::json::parse(text);
    const auto read_selector = [](const nlohmann::json& v) {
        BoundarySelector sel;
        if (v.is_string()) {
            sel.kind = BoundarySelector::Kind::side;
            sel.side = v.get<std::string>();
            if (!is_rect_side(sel.side) && !is_diamond_side(sel.side)) {
                throw std::invalid_argument("curve family: unknown side '" +
                                            sel.side + "'");
            }
        } else if (v.is_object() && v.contains("arc")) {
            sel.kind = BoundarySelector::Kind::arc;
            const auto& arc = v.at("arc");
            if (!arc.is_array() || arc.size() != 2) {
                throw std::invalid_argument(
                    "curve family: arc must be [a0, a1]");
            }
            sel.a0 = arc.at(0).get<double>();
            sel.a1 = arc.at(1).get<double>();
        } else {
            throw std::invalid_argument(
                "curve family: selector must be a side name or {\"arc\":[a0,a1]}");
        }
        return sel;
    };
    CurveFamilySpec spec;
    spec.source = read_selector(j.at("source"));
    spec.sink = read_selector(j.at("sink"));
    if (j.contains("connectivity")) {
        const std::string c = j.at("connectivity").get<std::string>();
        if (c == "axis") {
            spec.connectivity = Connectivity::axis;
        } else if (c == "diag") {
            spec.connectivity = Connectivity::diag;
        } else {
            throw std::invalid_argument(
                "curve family: connectivity must be 'axis' or 'diag'");
        }
    }
    return spec;
}

ModulusResult discrete_modulus(const GridDomain& g,
                               const CurveFamilySpec& family,
                               const ModulusOptions& opts) {
    const FamilyInstance inst = materialize(g, family);
    const std::size_t cells = g.weight.size();
    std::vector<double> rho(cells, 0.0);
    std::vector<Constraint> cons;
    std::unordered_set<std::uint64_t> seen;
    const int max_rounds =
        opts.max_rounds > 0 ? opts.max_rounds : 10 * std::max(g.nx, g.ny);

    const auto energy = [&]() {
        double e = 0.0;
        for (std::size_t c = 0; c < cells; ++c) {
            e += g.weight[c] * rho[c] * rho[c];
        }
        return e;
    };

    // Dual coordinate ascent over the current constraint set, warm-started.
    const auto solve_qp = [&](int max_sweeps) {
        double prev = energy();
        for (int sweep = 0; sweep < max_sweeps; ++sweep) {
            for (Constraint& con : cons) {
                double dot_val = 0.0;
                for (const auto& [c, a] : con.coef) dot_val += a * rho[c];
                const double delta =
                    std::fmax(-con.y, (1.0 - dot_val) / con.denom);
                if (delta == 0.0) continue;
                con.y += delta;
                for (const auto& [c, a] : con.coef) {
                    rho[c] += delta * a / (2.0 * g.weight[c]);
                }
            }
            const double e = energy();
            if (std::fabs(e - prev) <= opts.qp_tol * std::fmax(e, 1e-30)) break;
            prev = e;
        }
    };

    // Adds the tree path to each sink as a constraint row; rows hold pure
    // lengths, so paths found under any search density are valid admissible
    // curves.  When only_violated is set, sinks whose rho-length under the
    // current density already reaches 1 - feas_tol are skipped.
    std::vector<double> coef(cells, 0.0);
    const auto add_paths = [&](const PathSearch& ps, bool only_violated) {
        int added = 0;
        for (std::size_t k = 0; k < inst.sink_cells.size(); ++k) {
            const int sink = inst.sink_cells[k];
            if (ps.dist[sink] == std::numeric_limits<double>::infinity()) {
                continue;
            }
            if (only_violated) {
                const double total =
                    ps.dist[sink] + rho[sink] * inst.sink_exit[k];
                if (total >= 1.0 - opts.feas_tol) continue;
            }
            std::vector<int> path;
            for (int c = sink; c != -1; c = ps.parent[c]) path.push_back(c);
            std::reverse(path.begin(), path.end());
            if (!seen.insert(path_signature(path)).second) continue;
            // Entry length of the tree's source cell.
            const int src = path.front();
            double entry = 0.0;
            for (std::size_t s = 0; s < inst.source_cells.size(); ++s) {
                if (inst.source_cells[s] == src) {
                    entry = inst.source_entry[s];
                    break;
                }
            }
            coef[src] += entry;
            coef[sink] += inst.sink_exit[k];
            for (std::size_t i = 0; i + 1 < path.size(); ++i) {
                const int a = path[i], b = path[i + 1];
                const int ax = a % g.nx, ay = a / g.nx;
                const int bx = b % g.nx, by = b / g.nx;
                int dir = 0;
                for (int d = 0; d < 8; ++d) {
                    if (ax + kDx[d] == bx && ay + kDy[d] == by) {
                        dir = d;
                        break;
                    }
                }
                const int sc = kStepClass[dir];
                coef[a] += 0.5 * g.step[a][sc];
                coef[b] += 0.5 * g.step[b][sc];
            }
            Constraint con;
            for (int c : path) {
                if (coef[c] != 0.0) {
                    con.coef.push_back({c, coef[c]});
                    coef[c] = 0.0;
                }
            }
            std::sort(con.coef.begin(), con.coef.end());
            con.denom = 0.0;
            for (const auto& [c, a] : con.coef) {
                con.denom += 0.5 * a * a / g.weight[c];
            }
            cons.push_back(std::move(con));
            ++added;
        }
        return added;
    };

    ModulusResult res;
    const bool debug = std::getenv("BMROUND_MODULUS_DEBUG") != nullptr;

    {
        // Seed: tree paths under the uniform metric, one per sink, added
        // unconditionally.  This gives the program a structured backbone (for
        // side-to-side families, the straight crossings), so the first QP
        // solve already lifts the density everywhere that matters and later
        // searches run on real costs instead of threading zero-cost cells.
        const std::vector<double> ones(cells, 1.0);
        add_paths(shortest_paths(g, inst, ones), false);
        solve_qp(opts.max_sweeps);
    }

    int stalled = 0;
    for (int round = 1; round <= max_rounds; ++round) {
        const PathSearch ps = shortest_paths(g, inst, rho);
        if (debug) {
            std::fprintf(stderr, "round %d: min_path %.9f cons %zu energy %.9f\n",
                         round, ps.min_total, cons.size(), energy());
        }
        res.min_path_length = ps.min_total;
        res.rounds = round;
        if (ps.min_total >= 1.0 - opts.feas_tol) {
            res.value = energy();
            res.density = rho;
            res.constraint_count = static_cast<int>(cons.size());
            return res;
        }
        if (add_paths(ps, true) == 0) {
            // Every violated path is already constrained; the QP has not
            // pushed them to length 1 yet.  Grind it further.
            ++stalled;
            if (stalled > 3) {
                throw SolverError(
                    "discrete_modulus: no progress towards feasibility "
                    "(shortest path length " +
                    std::to_string(ps.min_total) + ")");
            }
            solve_qp(opts.max_sweeps * 10);
        } else {
            stalled = 0;
            solve_qp(opts.max_sweeps);
        }
    }
    throw SolverError("discrete_modulus: feasibility not reached in " +
                      std::to_string(max_rounds) + " rounds");
}

double modulus_ratio(const NormField& field, const CurveFamilySpec& family,
                     int n, const ModulusOptions& opts,
                     const RoundingOptions& ropts) {
    if (!field.is_constant()) {
        throw std::invalid_argument(
            "modulus_ratio: defined for constant fields only");
    }
    const SymmetricConvexBody& body = field.cell(0, 0);
    const LinearMap2 nu = affine_uniformizer(body, ropts);
    // Mod_Euclid of the image family, computed in the original coordinates:
    // the Euclidean norm pulls back through nu to the norm with unit ball
    // nu^-1(disk), and the same grid is reused so both discretizations share
    // their staircase error.
    auto pulled = std::make_shared<const SymmetricConvexBody>(
        SymmetricConvexBody::from_ellipse(
            map_ellipse(nu.inverse(), make_ellipse(1.0, 1.0, 0.0))));
    const NormField image_field = NormField::constant(pulled, field.rect());
    const double mod_image =
        discrete_modulus(build_grid(image_field, n), family, opts).value;
    const double mod_field =
        discrete_modulus(build_grid(field, n), family, opts).value;
    return mod_image / mod_field;
}

}  // namespace bmr
