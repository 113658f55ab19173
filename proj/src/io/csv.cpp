#include "penalfr/io/csv.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace penalfr::io {

void CsvTable::add_row(std::vector<Cell> row) {
  if (row.size() != header.size()) {
    throw std::invalid_argument("csv: row has " + std::to_string(row.size()) + " cells, header has " +
                                std::to_string(header.size()));
  }
  rows.push_back(std::move(row));
}

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

namespace {

std::string quote(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  out += '"';
  return out;
}

}  // namespace

std::string format_cell(const Cell& c) {
  if (const auto* d = std::get_if<double>(&c)) return format_double(*d);
  if (const auto* i = std::get_if<long long>(&c)) return std::to_string(*i);
  return quote(std::get<std::string>(c));
}

std::string to_csv_string(const CsvTable& table) {
  std::string out;
  for (std::size_t i = 0; i < table.header.size(); ++i) {
    if (i) out += ',';
    out += quote(table.header[i]);
  }
  out += '\n';
  for (const auto& row : table.rows) {
    if (row.size() != table.header.size()) throw std::invalid_argument("csv: ragged table");
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      out += format_cell(row[i]);
    }
    out += '\n';
  }
  return out;
}

void write_csv(const CsvTable& table, const std::filesystem::path& path) {
  const std::string text = to_csv_string(table);
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw std::runtime_error("csv: cannot open '" + path.string() + "' for writing");
  f.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!f) throw std::runtime_error("csv: write to '" + path.string() + "' failed");
}

CsvText parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> records;
  std::vector<std::string> record;
  std::string field;
  bool in_quotes = false;
  bool any = false;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char ch = text[i];
    if (in_quotes) {
      if (ch == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          in_quotes = false;
        }
      } else {
        field += ch;
      }
      continue;
    }
    any = true;
    if (ch == '"') {
      in_quotes = true;
    } else if (ch == ',') {
      record.push_back(std::move(field));
      field.clear();
    } else if (ch == '\n') {
      record.push_back(std::move(field));
      field.clear();
      records.push_back(std::move(record));
      record.clear();
      any = false;
    } else if (ch != '\r') {
      field += ch;
    }
  }
  if (in_quotes) throw std::runtime_error("csv: unterminated quoted field");
  if (any) {
    record.push_back(std::move(field));
    records.push_back(std::move(record));
  }
  CsvText out;
  if (records.empty()) return out;
  out.header = std::move(records.front());
  out.rows.assign(std::make_move_iterator(records.begin() + 1), std::make_move_iterator(records.end()));
  return out;
}

CsvText read_csv(const std::filesystem::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("csv: cannot open '" + path.string() + "'");
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_csv(ss.str());
}

CsvStream::CsvStream(const std::filesystem::path& path, std::vector<std::string> header, std::size_t keep_rows)
    : path_(path), width_(header.size()) {
  CsvTable head;
  head.header = std::move(header);
  std::string text = to_csv_string(head);
  if (keep_rows > 0 && std::filesystem::exists(path)) {
    const CsvText old = read_csv(path);
    for (std::size_t r = 0; r < std::min(keep_rows, old.rows.size()); ++r) {
      for (std::size_t i = 0; i < old.rows[r].size(); ++i) {
        if (i) text += ',';
        text += quote(old.rows[r][i]);
      }
      text += '\n';
    }
  }
  f_ = std::fopen(path.string().c_str(), "wb");
  if (!f_) throw std::runtime_error("csv: cannot open '" + path.string() + "' for writing");
  owner_.reset(f_);
  std::fwrite(text.data(), 1, text.size(), f_);
}

void CsvStream::row(const std::vector<Cell>& cells) {
  if (cells.size() != width_) throw std::invalid_argument("csv: row width does not match the header");
  std::string line;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) line += ',';
    line += format_cell(cells[i]);
  }
  line += '\n';
  if (std::fwrite(line.data(), 1, line.size(), f_) != line.size()) {
    throw std::runtime_error("csv: write to '" + path_.string() + "' failed");
  }
}

void CsvStream::flush() { std::fflush(f_); }

}  // namespace penalfr::io
