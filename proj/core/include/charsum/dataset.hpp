#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "charsum/config.hpp"
#include "charsum/verify.hpp"

namespace charsum::io {

inline constexpr int kDatasetVersion = 1;

/// Exact CSV header row.
const std::string& csv_header();

/// One CSV row, reals with 12 significant digits, no trailing newline.
std::string csv_row(const verify::DiscriminantRecord& r);
/// Inverse of csv_row; membership fields stay unset.
verify::DiscriminantRecord parse_csv_row(const std::string& line);

/// FNV-1a 64 over the concatenated row lines, each terminated by '\n'.
std::uint64_t rows_checksum(const std::vector<verify::DiscriminantRecord>& records);
std::string checksum_hex(std::uint64_t checksum);

struct Dataset {
  Config config;
  std::vector<verify::DiscriminantRecord> records;
  std::uint64_t checksum = 0;
};

/// Full file text: config comment line, header, rows, footer.
std::string render_dataset(const Config& cfg, const std::vector<verify::DiscriminantRecord>& records);

/// Writes `path` and the JSON sidecar `path` + ".json"; returns the checksum.
/// Throws std::runtime_error when a file cannot be written.
std::uint64_t write_dataset(const std::filesystem::path& path, const Config& cfg,
                            const std::vector<verify::DiscriminantRecord>& records);

/// Parses and checks the footer row count and checksum.
/// Throws std::runtime_error on a missing file or a corrupt dataset.
Dataset read_dataset(const std::filesystem::path& path);

/// Configs describe the same experiment (thread count is ignored).
bool same_experiment(const Config& a, const Config& b);

}  // namespace charsum::io
