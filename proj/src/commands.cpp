#include "bmround/commands.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>

#include "bmround/body_io.hpp"
#include "bmround/envelopes.hpp"
#include "bmround/experiments.hpp"
#include "bmround/svg.hpp"

namespace bmr {

namespace {

std::string num(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

RoundingOptions rounding_options(const CommonOptions& common) {
    RoundingOptions opts;
    opts.grid_n = common.grid_n;
    opts.restarts = common.restarts;
    opts.tol = common.tol;
    opts.seed = common.seed;
    opts.exec = common.parallel ? Exec::parallel : Exec::serial;
    return opts;
}

}  // namespace

int cmd_rho(const std::string& body_path, const CommonOptions& common,
            std::ostream& out, std::ostream& err) {
    RoundingResult r;
    try {
        const SymmetricConvexBody body = load_body_file(body_path);
        r = minimize_ratio(body, rounding_options(common));
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
    out << "rho " << num(r.rho) << '\n';
    out << "map " << num(r.t_star.a) << ' ' << num(r.t_star.b) << ' '
        << num(r.t_star.c) << ' ' << num(r.t_star.d) << '\n';
    out << "inner " << num(r.inner) << '\n';
    out << "outer " << num(r.outer) << '\n';
    out << "certified " << (r.certified ? "true" : "false") << '\n';
    out << "outer_contacts";
    for (double a : r.contacts.outer) out << ' ' << num(a);
    out << '\n';
    out << "inner_contacts";
    for (double a : r.contacts.inner) out << ' ' << num(a);
    out << '\n';
    return r.certified ? 0 : 2;
}

int cmd_verify_bounds(const CommonOptions& common, std::ostream& out,
                      std::ostream& err) {
    std::vector<BoundsRow> rows;
    try {
        rows = run_bounds_batch(common.seed, common.count,
                                rounding_options(common));
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
    out << "seed_index,rho,ell,area,lower_ok,upper_ok,envelope_ok,"
           "K_O_factor,K_I_factor,certified\n";
    bool all_ok = true;
    for (const BoundsRow& row : rows) {
        const AreaBoundsReport& rep = row.report;
        out << row.seed_index << ',' << num(row.rho) << ',' << num(rep.ell)
            << ',' << num(rep.area) << ',' << (rep.lower_ok ? 1 : 0) << ','
            << (rep.upper_ok ? 1 : 0) << ',' << (rep.envelope_ok ? 1 : 0) << ','
            << num(rep.k_outer_factor) << ',' << num(rep.k_inner_factor) << ','
            << (row.certified ? 1 : 0) << '\n';
        all_ok = all_ok && rep.lower_ok && rep.upper_ok && rep.envelope_ok &&
                 row.certified;
    }
    return all_ok ? 0 : 3;
}

int cmd_uniqueness(const CommonOptions& common, std::ostream& out,
                   std::ostream& err) {
    std::vector<UniquenessRow> rows;
    try {
        rows = run_uniqueness_batch(common.seed, common.count, common.restarts,
                                    1e-3, rounding_options(common));
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
    out << "seed_index,rho,max_coset_deviation,same_ellipse\n";
    bool all_ok = !rows.empty();
    for (const UniquenessRow& row : rows) {
        out << row.seed_index << ',' << num(row.rho) << ','
            << num(row.max_coset_deviation) << ',' << (row.same_ellipse ? 1 : 0)
            << '\n';
        all_ok = all_ok && row.same_ellipse;
    }
    return all_ok ? 0 : 3;
}

int cmd_modulus(const std::string& field_path, const std::string& family_path,
                const std::vector<int>& resolutions,
                const CommonOptions& common, std::ostream& out,
                std::ostream& err) {
    const RoundingOptions ropts = rounding_options(common);
    const double lo = 2.0 / kPi - 0.06;
    const double hi = 4.0 / kPi + 0.06;
    bool in_band = true;
    try {
        const NormField field = load_field_file(field_path);
        const CurveFamilySpec family =
            parse_family_json(read_text_file(family_path));
        out << "n,mod_field,mod_euclid,ratio\n";
        for (int n : resolutions) {
            const ModulusOptions mopts;
            const double mod_field =
                discrete_modulus(build_grid(field, n), family, mopts).value;
            double mod_euclid = mod_field;
            double ratio_val = 1.0;
            if (field.is_constant()) {
                ratio_val = modulus_ratio(field, family, n, mopts, ropts);
                mod_euclid = ratio_val * mod_field;
            }
            out << n << ',' << num(mod_field) << ',' << num(mod_euclid) << ','
                << num(ratio_val) << '\n';
            in_band = in_band && ratio_val >= lo && ratio_val <= hi;
        }
    } catch (const SolverError& e) {
        err << "error: " << e.what() << '\n';
        return 4;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
    return in_band ? 0 : 3;
}

int cmd_svg(const std::string& body_path, const std::string& out_path,
            const CommonOptions& common, std::ostream& out, std::ostream& err) {
    try {
        const SymmetricConvexBody body = load_body_file(body_path);
        const RoundingResult r = minimize_ratio(body, rounding_options(common));
        const Ellipse canonical = canonical_ellipse(r);
        const Ellipse inscribed = john_ellipse(body);
        const std::string svg = svg_report(body, r, canonical, inscribed);
        std::ofstream file(out_path, std::ios::binary);
        if (!file) {
            err << "error: cannot write " << out_path << '\n';
            return 1;
        }
        file << svg;
        out << "wrote " << out_path << '\n';
        return 0;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
}

}  // namespace bmr
