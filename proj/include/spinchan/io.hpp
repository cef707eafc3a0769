// io.hpp — deterministic artifacts: number formatting, CSV tables, run manifests

#pragma once

#include <json.hpp>

#include <filesystem>
#include <string>
#include <vector>

namespace spinchan {

inline constexpr const char* kVersion = "spinchan 1.0.0";

// 12 significant digits, scientific below |x| = 1e-4, fixed otherwise; the
// decimal separator is '.' regardless of locale, so artifacts are byte-stable.
std::string format_number(double x);

// Write a whole text file atomically: temp file in the same directory, then
// rename. Parent directories are created as needed.
void write_text_atomic(const std::filesystem::path& path, const std::string& content);

// Comma-separated table, LF line endings, mandatory header row, no quoting
// (cells must already be plain text; use format_number for doubles).
void write_csv(const std::filesystem::path& path, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows);

// Convenience overload formatting every cell with format_number.
void write_csv(const std::filesystem::path& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows);

// FNV-1a 64-bit checksum of the file's bytes, as 16 lowercase hex digits.
std::string file_checksum(const std::filesystem::path& path);

// Provenance record written next to every artifact: echoes the effective
// config, the tool version, wall time, and a checksum per produced file
// (paths relative to the manifest's directory).
void write_manifest(const std::filesystem::path& path, const nlohmann::json& config,
                    double wall_seconds, const std::vector<std::string>& files);

// True iff every file a manifest lists exists next to it with a matching
// checksum.
bool validate_manifest(const std::filesystem::path& path);

}  // namespace spinchan
