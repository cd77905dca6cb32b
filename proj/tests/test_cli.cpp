#include <doctest.h>
#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

// End-to-end tests of the command line binary: exit codes, CSV headers, and
// rerun determinism.  The binary path is injected by the build.

namespace {

struct CliRun {
    int exit_code = -1;
    std::string out;
};

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    out << text;
}

CliRun run_cli(const std::string& args) {
    const std::string out_path = "/tmp/bmround_cli_out.txt";
    const std::string cmd = std::string(BMROUND_CLI_PATH) + " " + args + " >" +
                            out_path + " 2>/tmp/bmround_cli_err.txt";
    const int status = std::system(cmd.c_str());
    CliRun run;
    run.exit_code = (status >= 0 && WIFEXITED(status)) ? WEXITSTATUS(status) : -1;
    run.out = slurp(out_path);
    return run;
}

const char* kSquare = R"({"type": "lp", "p": "inf"})";
const char* kLinfField = R"({"constant": {"type": "lp", "p": "inf"}})";
const char* kLrFamily =
    R"({"source": "left", "sink": "right", "connectivity": "axis"})";

}  // namespace

TEST_SUITE_BEGIN("cli");

TEST_CASE("rho reports the square's ratio and exits 0 when certified") {
    write_file("/tmp/bmround_cli_square.json", kSquare);
    const CliRun run = run_cli("rho /tmp/bmround_cli_square.json");
    CHECK(run.exit_code == 0);
    CHECK(run.out.find("rho 1.4142135623730951") != std::string::npos);
    CHECK(run.out.find("map 1 0 0 1") != std::string::npos);
    CHECK(run.out.find("certified true") != std::string::npos);
}

TEST_CASE("rho on a malformed body exits 1") {
    write_file("/tmp/bmround_cli_bad.json", "{\"type\": \"nope\"}");
    const CliRun run = run_cli("rho /tmp/bmround_cli_bad.json");
    CHECK(run.exit_code == 1);
}

TEST_CASE("missing input file exits 1") {
    const CliRun run = run_cli("rho /tmp/bmround_cli_missing.json");
    CHECK(run.exit_code == 1);
}

TEST_CASE("verify-bounds emits its CSV header and exits 0 on a batch") {
    const CliRun run = run_cli("verify-bounds --seed 2 --count 8 --grid-n 80");
    CHECK(run.exit_code == 0);
    CHECK(run.out.rfind("seed_index,rho,ell,area,lower_ok,upper_ok,"
                        "envelope_ok,K_O_factor,K_I_factor,certified\n",
                        0) == 0);
    // Header plus one line per body.
    int lines = 0;
    for (char ch : run.out) lines += ch == '\n';
    CHECK(lines == 9);
}

TEST_CASE("verify-bounds reruns are byte identical") {
    const CliRun a = run_cli("verify-bounds --seed 9 --count 6 --grid-n 80");
    const CliRun b = run_cli("verify-bounds --seed 9 --count 6 --grid-n 80");
    CHECK(a.exit_code == 0);
    CHECK(a.out == b.out);
    const CliRun serial =
        run_cli("verify-bounds --seed 9 --count 6 --grid-n 80 --serial");
    CHECK(serial.out == a.out);
}

TEST_CASE("uniqueness emits its CSV header and agreement column") {
    const CliRun run =
        run_cli("uniqueness --seed 4 --count 3 --restarts 3 --grid-n 80");
    CHECK(run.exit_code == 0);
    CHECK(run.out.rfind("seed_index,rho,max_coset_deviation,same_ellipse\n",
                        0) == 0);
    CHECK(run.out.find(",1\n") != std::string::npos);
}

TEST_CASE("modulus emits per-resolution rows and stays in the ratio band") {
    write_file("/tmp/bmround_cli_field.json", kLinfField);
    write_file("/tmp/bmround_cli_family.json", kLrFamily);
    const CliRun run = run_cli(
        "modulus /tmp/bmround_cli_field.json /tmp/bmround_cli_family.json "
        "--resolutions 8 16");
    CHECK(run.exit_code == 0);
    CHECK(run.out.rfind("n,mod_field,mod_euclid,ratio\n", 0) == 0);
    CHECK(run.out.find("\n8,") != std::string::npos);
    CHECK(run.out.find("\n16,") != std::string::npos);
    // Last CSV column of the first data row is the ratio, expected 4/pi.
    std::stringstream rows(run.out);
    std::string line;
    std::getline(rows, line);  // header
    REQUIRE(std::getline(rows, line));
    const double ratio = std::strtod(line.substr(line.rfind(',') + 1).c_str(),
                                     nullptr);
    CHECK(ratio == doctest::Approx(4.0 / 3.14159265358979324).epsilon(1e-9));
}

TEST_CASE("modulus with a malformed family exits 1") {
    write_file("/tmp/bmround_cli_field.json", kLinfField);
    write_file("/tmp/bmround_cli_badfam.json", R"({"source": "somewhere"})");
    const CliRun run = run_cli(
        "modulus /tmp/bmround_cli_field.json /tmp/bmround_cli_badfam.json");
    CHECK(run.exit_code == 1);
}

TEST_CASE("svg writes a drawing") {
    write_file("/tmp/bmround_cli_square.json", kSquare);
    const std::string out_path = "/tmp/bmround_cli_out.svg";
    std::remove(out_path.c_str());
    const CliRun run =
        run_cli("svg /tmp/bmround_cli_square.json --out " + out_path);
    CHECK(run.exit_code == 0);
    const std::string svg = slurp(out_path);
    CHECK(svg.find("<svg") != std::string::npos);
    CHECK(svg.find("</svg>") != std::string::npos);
    std::remove(out_path.c_str());
}

TEST_SUITE_END();
