// cli_tests.cpp — end-to-end runs of the spinchan binary and its artifacts

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "spinchan/io.hpp"

using namespace spinchan;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;

    TempDir() {
        std::string name = (fs::temp_directory_path() / "spinchan_cli_XXXXXX").string();
        if (mkdtemp(name.data()) == nullptr) {
            throw std::runtime_error("TempDir: mkdtemp failed");
        }
        path = name;
    }
    ~TempDir() { fs::remove_all(path); }
};

std::string binary() {
    const char* bin = std::getenv("SPINCHAN_BIN");
    REQUIRE_MESSAGE(bin != nullptr, "SPINCHAN_BIN must point at the spinchan binary");
    return bin;
}

// Exit code of `spinchan <args>`, stdout/stderr discarded.
int run(const std::string& args) {
    const std::string cmd = binary() + " " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    REQUIRE(status != -1);
    return WEXITSTATUS(status);
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE_MESSAGE(in.good(), "missing file: " << path.string());
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

// CSV cells per line, header included.
std::vector<std::vector<std::string>> parse_csv(const fs::path& path) {
    std::vector<std::vector<std::string>> table;
    std::istringstream lines(slurp(path));
    std::string line;
    while (std::getline(lines, line)) {
        std::vector<std::string> cells;
        std::istringstream fields(line);
        std::string cell;
        while (std::getline(fields, cell, ',')) {
            cells.push_back(cell);
        }
        table.push_back(std::move(cells));
    }
    return table;
}

}  // namespace

TEST_CASE("version flag reports and exits cleanly") {
    CHECK(run("--version") == 0);
}

TEST_CASE("spectrum: modulated ladder lands in spectrum.csv") {
    TempDir dir;
    REQUIRE(run("spectrum --family modulated --n 5 --lambda 1 --site 1,3 --out " +
                dir.path.string()) == 0);

    const auto table = parse_csv(dir.path / "spectrum.csv");
    REQUIRE(table.size() == 6);
    CHECK(table[0] == std::vector<std::string>{"k", "energy"});
    const double expected[] = {-4.0, -2.0, 0.0, 2.0, 4.0};
    for (int k = 0; k < 5; ++k) {
        CHECK(std::abs(std::stod(table[k + 1][1]) - expected[k]) < 1e-9);
    }

    const auto populations = parse_csv(dir.path / "populations.csv");
    CHECK(populations[0] == std::vector<std::string>{"k", "p_1", "p_3"});
    double sum = 0.0;
    for (int k = 1; k <= 5; ++k) {
        sum += std::stod(populations[k][1]);
    }
    CHECK(std::abs(sum - 1.0) < 1e-9);

    CHECK(validate_manifest(dir.path / "manifest.json"));
}

TEST_CASE("evolve: coherent mirror transfer peaks at pi/(2 lambda)") {
    TempDir dir;
    REQUIRE(run("evolve --family modulated --n 7 --lambda 1 --gamma 0 "
                "--t0 0 --t1 3.14159265358979312 --points 3 --obs F --out " +
                dir.path.string()) == 0);
    const auto table = parse_csv(dir.path / "evolve.csv");
    REQUIRE(table.size() == 4);
    CHECK(table[0] == std::vector<std::string>{"t", "F"});
    CHECK(std::abs(std::stod(table[1][1])) < 1e-12);          // nothing moved at t = 0
    CHECK(std::abs(std::stod(table[2][1]) - 1.0) < 1e-9);     // t = pi/2
}

TEST_CASE("evolve: artifacts are byte-identical across runs") {
    TempDir first;
    TempDir second;
    const std::string args =
        "evolve --family uniform --n 6 --j 1 --gamma 0.2 --t0 0 --t1 8 --points 41 "
        "--obs F,Fbar,alpha,C_1_3,c_2 --out ";
    REQUIRE(run(args + first.path.string()) == 0);
    REQUIRE(run(args + second.path.string()) == 0);
    CHECK(file_checksum(first.path / "evolve.csv") ==
          file_checksum(second.path / "evolve.csv"));
    const auto header = parse_csv(first.path / "evolve.csv")[0];
    CHECK(header == std::vector<std::string>{"t", "F", "Fbar", "alpha", "C_1_3", "c_2"});
}

TEST_CASE("steady: table carries formula, numeric value, and their gap") {
    TempDir dir;
    REQUIRE(run("steady --family uniform --quantity F --n-min 2 --n-max 6 --out " +
                dir.path.string()) == 0);
    const auto table = parse_csv(dir.path / "steady.csv");
    REQUIRE(table.size() == 6);
    CHECK(table[0] == std::vector<std::string>{"N", "formula_value", "numeric_value", "abs_diff"});
    for (int row = 1; row <= 5; ++row) {
        const int n = 1 + row;
        CHECK(std::abs(std::stod(table[row][1]) - 3.0 / (2.0 * (n + 1))) < 1e-12);
        CHECK(std::stod(table[row][3]) < 1e-10);
    }
}

TEST_CASE("steady: distributed-pair limit vanishes on odd chains") {
    TempDir dir;
    REQUIRE(run("steady --family modulated --quantity C_distribution --n-min 2 --n-max 5 "
                "--out " + dir.path.string()) == 0);
    const auto table = parse_csv(dir.path / "steady.csv");
    REQUIRE(table.size() == 5);
    CHECK(table[1][1] == "0.500000000000");   // N = 2
    CHECK(table[2][1] == "0.00000000000");    // N = 3: odd, nothing survives
    CHECK(table[3][1] == "0.375000000000");   // N = 4
    CHECK(table[4][1] == "0.00000000000");    // N = 5
    for (int row = 1; row <= 4; ++row) {
        CHECK(std::stod(table[row][3]) < 1e-9);
    }
}

TEST_CASE("sweep: gamma grid reports one optimum per rate") {
    TempDir dir;
    REQUIRE(run("sweep --param gamma --family modulated --n 5 --lambda 1 "
                "--grid 0.1,0.2,0.3 --out " + dir.path.string()) == 0);
    const auto table = parse_csv(dir.path / "sweep.csv");
    REQUIRE(table.size() == 4);
    CHECK(table[0] == std::vector<std::string>{"param", "value", "t_at_max"});
    // maxima decay and arrive earlier as the rate grows
    CHECK(std::stod(table[1][1]) > std::stod(table[2][1]));
    CHECK(std::stod(table[2][1]) > std::stod(table[3][1]));
    CHECK(std::stod(table[1][2]) > std::stod(table[3][2]));

    const nlohmann::json meta = nlohmann::json::parse(slurp(dir.path / "sweep_meta.json"));
    CHECK(meta.at("parameter").get<std::string>() == "gamma");
    CHECK(meta.at("channel").at("family").get<std::string>() == "modulated");
    CHECK(validate_manifest(dir.path / "manifest.json"));
}

TEST_CASE("design: even chains get a field recommendation") {
    TempDir dir;
    REQUIRE(run("design --family modified-b --n 4 --j 1 --j0 0.1 --gamma 0 --out " +
                dir.path.string()) == 0);
    const nlohmann::json report = nlohmann::json::parse(slurp(dir.path / "design.json"));
    CHECK(report.at("parity").get<std::string>() == "even");
    CHECK(report.at("t_c").get<double>() ==
          doctest::Approx(M_PI / (2.0 * report.at("e0").get<double>())).epsilon(1e-12));
    REQUIRE(report.contains("field"));
    // field size pinned to half the splitting; its sign alternates with N
    const double e0 = report.at("e0").get<double>();
    const double b_star = report.at("field").at("b_star").get<double>();
    CHECK(std::abs(std::abs(b_star) - e0 / 2.0) < 0.05 * e0);
    CHECK(report.at("field").at("fbar_max").get<double>() > 0.9);
}

TEST_CASE("verify: three propagator routes agree end to end") {
    TempDir dir;
    REQUIRE(run("verify --family uniform --n 4 --j 1 --gamma 0.1 --t0 0 --t-max 5 --points 6 "
                "--out " + dir.path.string()) == 0);
    const auto table = parse_csv(dir.path / "verify.csv");
    REQUIRE(table.size() == 7);
    CHECK(table[0] ==
          std::vector<std::string>{"t", "eig_vs_kraus", "eig_vs_rk4", "kraus_vs_rk4"});
    for (size_t row = 1; row < table.size(); ++row) {
        for (int col = 1; col <= 3; ++col) {
            CHECK(std::stod(table[row][col]) < 1e-8);
        }
    }
}

TEST_CASE("config file fills gaps but explicit flags win") {
    TempDir dir;
    const fs::path cfg = dir.path / "run.json";
    {
        std::ofstream out(cfg);
        out << R"({"family": "modulated", "n": 5, "lambda": 1.0})" << "\n";
    }
    REQUIRE(run("spectrum --config " + cfg.string() + " --n 3 --out " + dir.path.string()) == 0);
    const auto table = parse_csv(dir.path / "spectrum.csv");
    REQUIRE(table.size() == 4);  // n = 3 from the command line
    // family still came from the config: ladder spacing 2 lambda
    CHECK(std::abs(std::stod(table[1][1]) + 2.0) < 1e-9);
    CHECK(std::abs(std::stod(table[2][1]) - 0.0) < 1e-9);
    CHECK(std::abs(std::stod(table[3][1]) - 2.0) < 1e-9);
}

TEST_CASE("out dir falls back to SPINCHAN_OUT_DIR") {
    TempDir dir;
    const std::string cmd = "SPINCHAN_OUT_DIR=" + dir.path.string() + " " + binary() +
                            " spectrum --family uniform --n 3 --j 1 >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    REQUIRE(status != -1);
    CHECK(WEXITSTATUS(status) == 0);
    CHECK(fs::exists(dir.path / "spectrum.csv"));
    CHECK(validate_manifest(dir.path / "manifest.json"));
}

TEST_CASE("usage errors exit with 2") {
    TempDir dir;
    const std::string out = " --out " + dir.path.string();
    CHECK(run("spectrum --family uniform" + out) == 2);                  // missing --n
    CHECK(run("spectrum --family heisenberg --n 4" + out) == 2);         // unknown family
    CHECK(run("evolve --family uniform --n 4 --obs Q_3" + out) == 2);    // unknown observable
    CHECK(run("evolve --family uniform --n 4 --t1 -1" + out) == 2);      // empty time window
    CHECK(run("steady --family modulated --quantity Fbar" + out) == 2);  // undefined combination
    CHECK(run("steady --family modified-a --quantity F" + out) == 2);    // no closed form
    CHECK(run("sweep --param j1" + out) == 2);                           // unknown parameter
    CHECK(run("design --family uniform --n 5" + out) == 2);              // nothing to design
    CHECK(run("--definitely-not-a-flag") == 2);                          // parser error
    CHECK(run("spectrum --config " + dir.path.string() + "/none.json --n 3" + out) == 2);
}

TEST_CASE("environment failures exit with 3") {
    // /dev/null is not a directory, so artifact writing must fail loudly
    CHECK(run("spectrum --family uniform --n 3 --j 1 --out /dev/null/sub") == 3);
}
