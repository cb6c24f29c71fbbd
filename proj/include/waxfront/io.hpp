#pragma once

// CSV and JSON output. Numbers go out with 17 significant digits, CSV uses
// ',' separators and LF line endings and always carries a header.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <string>
#include <vector>

#include <json.hpp>

#include "waxfront/errors.hpp"

namespace waxfront::io {

inline std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

class CsvWriter {
 public:
  explicit CsvWriter(std::vector<std::string> header) : header_(std::move(header)) {}

  void row(std::initializer_list<double> values) { row(std::vector<double>(values)); }
  void row(const std::vector<double>& values) {
    std::string line;
    for (std::size_t i = 0; i < values.size(); ++i) {
      if (i) line += ',';
      line += fmt(values[i]);
    }
    body_ += line;
    body_ += '\n';
  }
  /// Pre-formatted cells, for rows with text columns.
  void raw_row(const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) body_ += ',';
      body_ += cells[i];
    }
    body_ += '\n';
  }

  std::string str() const {
    std::string out;
    for (std::size_t i = 0; i < header_.size(); ++i) {
      if (i) out += ',';
      out += header_[i];
    }
    out += '\n';
    return out + body_;
  }

  void save(const std::filesystem::path& path) const { write_text(path, str()); }

  static void write_text(const std::filesystem::path& path, const std::string& text) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream f(path, std::ios::binary);
    if (!f) throw Error("cannot open " + path.string() + " for writing");
    f << text;
  }

 private:
  std::vector<std::string> header_;
  std::string body_;
};

inline void write_json(const std::filesystem::path& path, const nlohmann::json& j) {
  CsvWriter::write_text(path, j.dump(2) + "\n");
}

inline std::string read_text(const std::filesystem::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw Error("cannot read " + path.string());
  return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
}

}  // namespace waxfront::io
