#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "bmround/modulus.hpp"
#include "bmround/rounding.hpp"

// Command implementations behind the CLI, separated so tests can drive them
// directly.  Each returns a process exit code:
//   0  success (and, where applicable, all checked properties hold)
//   1  unreadable input or invalid geometry
//   2  rounding finished but without an optimality certificate
//   3  a checked property failed
//   4  the modulus solver failed to converge
// Numeric output is printed with up to 17 significant digits so values
// round-trip exactly.

namespace bmr {

struct CommonOptions {
    std::uint64_t seed = 1;
    int count = 100;
    int restarts = 5;
    int grid_n = 200;
    double tol = 1e-9;
    bool parallel = true;
};

// Rounds one body (JSON file) and reports the map, the ratio and the
// certificate.
int cmd_rho(const std::string& body_path, const CommonOptions& common,
            std::ostream& out, std::ostream& err);

// Batch of random bodies; CSV of the sharp area bound checks.
int cmd_verify_bounds(const CommonOptions& common, std::ostream& out,
                      std::ostream& err);

// Batch of random bodies, several rounding restarts each; CSV of how far the
// restart cosets deviate.
int cmd_uniqueness(const CommonOptions& common, std::ostream& out,
                   std::ostream& err);

// Discrete modulus of a curve family (JSON) on a norm field (JSON) for each
// grid resolution; CSV of field modulus, uniformized Euclidean modulus and
// their ratio.
int cmd_modulus(const std::string& field_path, const std::string& family_path,
                const std::vector<int>& resolutions,
                const CommonOptions& common, std::ostream& out,
                std::ostream& err);

// Renders the rounding of one body (JSON file) to an SVG file.
int cmd_svg(const std::string& body_path, const std::string& out_path,
            const CommonOptions& common, std::ostream& out, std::ostream& err);

}  // namespace bmr
