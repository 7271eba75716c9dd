#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "config.hpp"

namespace ionspin::cli {

/// 17 significant digits; NaN and infinities spelled out.
std::string number(double v);

class CsvFile {
 public:
  CsvFile(const RunConfig& config, std::vector<std::string> columns);

  void meta(const std::string& line);
  void row(const std::vector<std::string>& cells);
  void write(const std::filesystem::path& path) const;

 private:
  std::vector<std::string> meta_;
  std::vector<std::string> columns_;
  std::vector<std::string> rows_;
};

void write_json(const std::filesystem::path& path, nlohmann::ordered_json body);

struct CsvTable {
  std::vector<std::string> meta;  // without the leading "# "
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;

  std::size_t column(const std::string& name) const;
  double value(std::size_t row, const std::string& name) const;
};

CsvTable read_csv(const std::filesystem::path& path);
nlohmann::json read_json(const std::filesystem::path& path);

}  // namespace ionspin::cli
