// io_tests.cpp — byte-stable formatting, CSV layout, checksums, and manifests

#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "spinchan/io.hpp"

using namespace spinchan;
namespace fs = std::filesystem;

namespace {

// Scratch directory removed when the test ends.
struct TempDir {
    fs::path path;

    TempDir() {
        std::string name = (fs::temp_directory_path() / "spinchan_io_XXXXXX").string();
        if (mkdtemp(name.data()) == nullptr) {
            throw std::runtime_error("TempDir: mkdtemp failed");
        }
        path = name;
    }
    ~TempDir() { fs::remove_all(path); }
};

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace

TEST_CASE("numbers format to 12 significant digits with a fixed/scientific split") {
    CHECK(format_number(0.0) == "0.00000000000");
    CHECK(format_number(-0.0) == "0.00000000000");
    CHECK(format_number(1.0) == "1.00000000000");
    CHECK(format_number(-1.5) == "-1.50000000000");
    CHECK(format_number(0.5) == "0.500000000000");
    CHECK(format_number(3.141592653589793) == "3.14159265359");
    CHECK(format_number(123456.789) == "123456.789000");
    CHECK(format_number(1e12) == "1000000000000");
    // the switch to scientific sits exactly at |x| = 1e-4
    CHECK(format_number(1e-4) == "0.000100000000000");
    CHECK(format_number(9.9999e-5) == "9.99990000000e-05");
    CHECK(format_number(-2.5e-11) == "-2.50000000000e-11");
}

TEST_CASE("csv files are comma-separated with LF endings and a header") {
    TempDir dir;
    const fs::path file = dir.path / "table.csv";
    write_csv(file, {"a", "b"}, std::vector<std::vector<std::string>>{{"1", "x"}, {"2", "y"}});
    CHECK(slurp(file) == "a,b\n1,x\n2,y\n");

    CHECK_THROWS_AS(write_csv(file, {}, std::vector<std::vector<std::string>>{}),
                    std::invalid_argument);
    CHECK_THROWS_AS(
        write_csv(file, {"a", "b"}, std::vector<std::vector<std::string>>{{"only one"}}),
        std::invalid_argument);
}

TEST_CASE("numeric csv rows go through the canonical formatter") {
    TempDir dir;
    const fs::path file = dir.path / "numbers.csv";
    write_csv(file, {"t", "f"}, std::vector<std::vector<double>>{{0.0, 0.25}, {1.0, 5e-5}});
    CHECK(slurp(file) ==
          "t,f\n"
          "0.00000000000,0.250000000000\n"
          "1.00000000000,5.00000000000e-05\n");
}

TEST_CASE("atomic writes create parents and leave no temp files behind") {
    TempDir dir;
    const fs::path file = dir.path / "nested" / "deeper" / "note.txt";
    write_text_atomic(file, "payload\n");
    CHECK(slurp(file) == "payload\n");
    CHECK_FALSE(fs::exists(file.string() + ".tmp"));

    // overwrite works the same way
    write_text_atomic(file, "second\n");
    CHECK(slurp(file) == "second\n");
}

TEST_CASE("checksum is FNV-1a 64 of the raw bytes") {
    TempDir dir;
    const fs::path abc = dir.path / "abc.bin";
    write_text_atomic(abc, "abc");
    CHECK(file_checksum(abc) == "e71fa2190541574b");

    const fs::path empty = dir.path / "empty.bin";
    write_text_atomic(empty, "");
    CHECK(file_checksum(empty) == "cbf29ce484222325");  // offset basis, nothing mixed in

    CHECK_THROWS_AS(file_checksum(dir.path / "missing.bin"), std::runtime_error);
}

TEST_CASE("identical content gives identical checksums across paths") {
    TempDir dir;
    write_csv(dir.path / "one.csv", {"x"}, std::vector<std::vector<double>>{{1.25}});
    write_csv(dir.path / "two.csv", {"x"}, std::vector<std::vector<double>>{{1.25}});
    CHECK(file_checksum(dir.path / "one.csv") == file_checksum(dir.path / "two.csv"));
}

TEST_CASE("manifests record and re-verify their artifacts") {
    TempDir dir;
    write_text_atomic(dir.path / "a.csv", "h\n1\n");
    write_text_atomic(dir.path / "b.csv", "h\n2\n");
    const nlohmann::json config{{"command", "demo"}};
    write_manifest(dir.path / "manifest.json", config, 0.125, {"a.csv", "b.csv"});

    const nlohmann::json manifest = nlohmann::json::parse(slurp(dir.path / "manifest.json"));
    CHECK(manifest.at("version").get<std::string>() == kVersion);
    CHECK(manifest.at("wall_seconds").get<double>() == 0.125);
    CHECK(manifest.at("config").at("command").get<std::string>() == "demo");
    REQUIRE(manifest.at("files").size() == 2);
    CHECK(manifest.at("files")[0].at("name").get<std::string>() == "a.csv");

    CHECK(validate_manifest(dir.path / "manifest.json"));

    SUBCASE("a modified artifact fails validation") {
        write_text_atomic(dir.path / "a.csv", "h\n1\ntampered\n");
        CHECK_FALSE(validate_manifest(dir.path / "manifest.json"));
    }
    SUBCASE("a missing artifact fails validation") {
        fs::remove(dir.path / "b.csv");
        CHECK_FALSE(validate_manifest(dir.path / "manifest.json"));
    }
    SUBCASE("garbage manifests fail validation without throwing") {
        write_text_atomic(dir.path / "manifest.json", "not json");
        CHECK_FALSE(validate_manifest(dir.path / "manifest.json"));
        CHECK_FALSE(validate_manifest(dir.path / "no_such_manifest.json"));
    }
}
