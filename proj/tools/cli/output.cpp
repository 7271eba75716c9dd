#include "output.hpp"

#include <cmath>
#include <fmt/format.h>
#include <fstream>
#include <sstream>

#include "ionspin/error.hpp"

namespace ionspin::cli {
namespace {

std::string join(const std::vector<std::string>& cells) {
  std::string out;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) out += ',';
    out += cells[i];
  }
  return out;
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

void save(const std::filesystem::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ConfigError(fmt::format("cannot write {}", path.string()));
  f << text;
}

}  // namespace

std::string number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return fmt::format("{:.17g}", v);
}

CsvFile::CsvFile(const RunConfig& config, std::vector<std::string> columns)
    : columns_(std::move(columns)) {
  meta_.push_back("ionspin " + config.command);
  meta_.push_back("config: " + to_json(config).dump());
}

void CsvFile::meta(const std::string& line) { meta_.push_back(line); }

void CsvFile::row(const std::vector<std::string>& cells) { rows_.push_back(join(cells)); }

void CsvFile::write(const std::filesystem::path& path) const {
  std::string text;
  for (const auto& m : meta_) text += "# " + m + "\n";
  text += join(columns_) + "\n";
  for (const auto& r : rows_) text += r + "\n";
  save(path, text);
}

void write_json(const std::filesystem::path& path, nlohmann::ordered_json body) {
  save(path, body.dump(2) + "\n");
}

std::size_t CsvTable::column(const std::string& name) const {
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (columns[i] == name) return i;
  }
  throw ConfigError(fmt::format("CSV has no column '{}'", name));
}

double CsvTable::value(std::size_t row, const std::string& name) const {
  const std::string& cell = rows.at(row).at(column(name));
  if (cell.empty()) return std::nan("");
  return std::stod(cell);
}

CsvTable read_csv(const std::filesystem::path& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError(fmt::format("cannot read {}", path.string()));
  CsvTable t;
  std::string line;
  bool header = false;
  while (std::getline(f, line)) {
    if (line.rfind("# ", 0) == 0) {
      t.meta.push_back(line.substr(2));
    } else if (!header) {
      t.columns = split(line);
      header = true;
    } else if (!line.empty()) {
      t.rows.push_back(split(line));
      if (t.rows.back().size() != t.columns.size()) {
        throw NumericalError(fmt::format("{}: row {} has {} cells, expected {}", path.string(),
                                         t.rows.size(), t.rows.back().size(), t.columns.size()));
      }
    }
  }
  return t;
}

nlohmann::json read_json(const std::filesystem::path& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError(fmt::format("cannot read {}", path.string()));
  return nlohmann::json::parse(f);
}

}  // namespace ionspin::cli
