// Minimal CSV tables: header row, RFC 4180 quoting, LF line endings and
// shortest round-trip formatting for doubles (at most 17 significant digits).
#pragma once

#include <cstdio>
#include <filesystem>
#include <memory>
#include <string>
#include <variant>
#include <vector>

namespace penalfr::io {

using Cell = std::variant<double, long long, std::string>;

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<Cell>> rows;

  /// Throws std::invalid_argument if the row width differs from the header.
  void add_row(std::vector<Cell> row);
};

std::string format_double(double v);
std::string format_cell(const Cell& c);

/// Throws std::invalid_argument for a ragged table, std::runtime_error on I/O
/// failure.
void write_csv(const CsvTable& table, const std::filesystem::path& path);
std::string to_csv_string(const CsvTable& table);

/// Parses text written by write_csv. Every cell comes back as a string.
struct CsvText {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};
CsvText parse_csv(const std::string& text);
CsvText read_csv(const std::filesystem::path& path);

/// Row-at-a-time writer for long runs. Opening with `keep_rows` rewrites the
/// file with the header plus the first `keep_rows` data rows of the existing
/// file (used when resuming), then appends.
class CsvStream {
 public:
  CsvStream(const std::filesystem::path& path, std::vector<std::string> header, std::size_t keep_rows = 0);
  void row(const std::vector<Cell>& cells);
  void flush();

 private:
  std::filesystem::path path_;
  std::size_t width_;
  std::FILE* f_ = nullptr;
  struct Closer {
    void operator()(std::FILE* f) const {
      if (f) std::fclose(f);
    }
  };
  std::unique_ptr<std::FILE, Closer> owner_;
};

}  // namespace penalfr::io
