// io.cpp — deterministic artifacts: number formatting, CSV tables, run manifests

#include "spinchan/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace spinchan {

namespace fs = std::filesystem;

std::string format_number(double x) {
    char buf[360];
    if (x == 0.0) {  // normalize -0.0 too
        std::snprintf(buf, sizeof buf, "%.11f", 0.0);
        return buf;
    }
    const double ax = std::abs(x);
    if (ax < 1e-4) {
        std::snprintf(buf, sizeof buf, "%.11e", x);
        return buf;
    }
    const int magnitude = static_cast<int>(std::floor(std::log10(ax)));
    const int decimals = std::max(0, 11 - magnitude);
    std::snprintf(buf, sizeof buf, "%.*f", decimals, x);
    return buf;
}

void write_text_atomic(const fs::path& path, const std::string& content) {
    if (!path.parent_path().empty()) {
        fs::create_directories(path.parent_path());
    }
    const fs::path temp = path.string() + ".tmp";
    {
        std::ofstream out(temp, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw std::runtime_error("write_text_atomic: cannot open " + temp.string());
        }
        out << content;
        if (!out.good()) {
            throw std::runtime_error("write_text_atomic: write failed for " + temp.string());
        }
    }
    fs::rename(temp, path);
}

void write_csv(const fs::path& path, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows) {
    if (header.empty()) {
        throw std::invalid_argument("write_csv: header row is mandatory");
    }
    std::string content;
    const auto append_row = [&content](const std::vector<std::string>& cells) {
        for (size_t i = 0; i < cells.size(); ++i) {
            if (i > 0) content += ',';
            content += cells[i];
        }
        content += '\n';
    };
    append_row(header);
    for (const auto& row : rows) {
        if (row.size() != header.size()) {
            throw std::invalid_argument("write_csv: row width differs from header");
        }
        append_row(row);
    }
    write_text_atomic(path, content);
}

void write_csv(const fs::path& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows) {
    std::vector<std::vector<std::string>> cells;
    cells.reserve(rows.size());
    for (const auto& row : rows) {
        std::vector<std::string> line;
        line.reserve(row.size());
        for (const double x : row) {
            line.push_back(format_number(x));
        }
        cells.push_back(std::move(line));
    }
    write_csv(path, header, cells);
}

std::string file_checksum(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("file_checksum: cannot open " + path.string());
    }
    std::uint64_t hash = 14695981039346656037ULL;  // FNV-1a offset basis
    char chunk[4096];
    while (in.read(chunk, sizeof chunk), in.gcount() > 0) {
        for (std::streamsize i = 0; i < in.gcount(); ++i) {
            hash ^= static_cast<unsigned char>(chunk[i]);
            hash *= 1099511628211ULL;  // FNV prime
        }
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(hash));
    return buf;
}

void write_manifest(const fs::path& path, const nlohmann::json& config, double wall_seconds,
                    const std::vector<std::string>& files) {
    nlohmann::json manifest;
    manifest["version"] = kVersion;
    manifest["wall_seconds"] = wall_seconds;
    manifest["config"] = config;
    manifest["files"] = nlohmann::json::array();
    for (const std::string& name : files) {
        manifest["files"].push_back(
            {{"name", name}, {"fnv1a64", file_checksum(path.parent_path() / name)}});
    }
    write_text_atomic(path, manifest.dump(2) + "\n");
}

bool validate_manifest(const fs::path& path) {
    std::ifstream in(path);
    if (!in) {
        return false;
    }
    nlohmann::json manifest;
    try {
        in >> manifest;
        for (const auto& entry : manifest.at("files")) {
            const fs::path file = path.parent_path() / entry.at("name").get<std::string>();
            if (!fs::exists(file)) {
                return false;
            }
            if (file_checksum(file) != entry.at("fnv1a64").get<std::string>()) {
                return false;
            }
        }
    } catch (const std::exception&) {
        return false;
    }
    return true;
}

}  // namespace spinchan
