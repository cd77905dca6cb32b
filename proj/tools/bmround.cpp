// Command-line interface for rounding symmetric convex bodies, checking the
// sharp area bounds, probing minimizer uniqueness, and computing discrete
// conformal moduli on norm fields.

#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "bmround/commands.hpp"

int main(int argc, char** argv) {
    CLI::App app{"rounding of planar symmetric convex bodies"};
    app.require_subcommand(1);
    // Accept the shared options after the subcommand name as well.
    app.fallthrough();

    bmr::CommonOptions common;
    bool serial = false;
    app.add_option("--seed", common.seed, "random seed for generated bodies");
    app.add_option("--count", common.count, "number of bodies in a batch");
    app.add_option("--restarts", common.restarts,
                   "rounding searches per body (1 = no restarts)");
    app.add_option("--grid-n", common.grid_n,
                   "coarse search grid resolution per axis");
    app.add_option("--tol", common.tol, "search refinement tolerance");
    app.add_flag("--serial", serial, "disable parallel execution");

    std::string body_path;
    std::string field_path;
    std::string family_path;
    std::string out_path;
    std::vector<int> resolutions{16, 32, 64};

    CLI::App* rho = app.add_subcommand(
        "rho", "round one body and report the optimal ratio");
    rho->add_option("body", body_path, "body JSON file")->required();

    CLI::App* bounds = app.add_subcommand(
        "verify-bounds",
        "check the sharp area bounds on a batch of random bodies (CSV)");

    CLI::App* uniq = app.add_subcommand(
        "uniqueness",
        "compare rounding maps across restarts on random bodies (CSV)");

    CLI::App* modulus = app.add_subcommand(
        "modulus", "discrete modulus of a curve family on a norm field (CSV)");
    modulus->add_option("field", field_path, "norm field JSON file")->required();
    modulus->add_option("family", family_path, "curve family JSON file")
        ->required();
    modulus->add_option("--resolutions", resolutions,
                        "grid resolutions to evaluate");

    CLI::App* svg = app.add_subcommand(
        "svg", "render the rounding of one body to an SVG file");
    svg->add_option("body", body_path, "body JSON file")->required();
    svg->add_option("--out", out_path, "output SVG path")->required();

    CLI11_PARSE(app, argc, argv);
    common.parallel = !serial;

    if (rho->parsed()) {
        return bmr::cmd_rho(body_path, common, std::cout, std::cerr);
    }
    if (bounds->parsed()) {
        return bmr::cmd_verify_bounds(common, std::cout, std::cerr);
    }
    if (uniq->parsed()) {
        return bmr::cmd_uniqueness(common, std::cout, std::cerr);
    }
    if (modulus->parsed()) {
        return bmr::cmd_modulus(field_path, family_path, resolutions, common,
                                std::cout, std::cerr);
    }
    if (svg->parsed()) {
        return bmr::cmd_svg(body_path, out_path, common, std::cout, std::cerr);
    }
    return 1;
}
