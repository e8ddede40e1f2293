#include "ait/report.hpp"

#include <fstream>

#include "ait/errors.hpp"

namespace ait {

namespace {

std::string quote(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

CsvTable::CsvTable(std::vector<std::string> columns) : columns_(std::move(columns)) {}

void CsvTable::provenance(const std::string& key, const std::string& value) {
  header_.emplace_back(key, value);
}

void CsvTable::row(std::vector<std::string> cells) {
  if (cells.size() != columns_.size()) {
    throw Error(ErrorKind::kInvalidArgument, "row has " + std::to_string(cells.size()) +
                                                 " cells, table has " +
                                                 std::to_string(columns_.size()) + " columns");
  }
  rows_.push_back(std::move(cells));
}

std::string CsvTable::str() const {
  std::string out;
  for (const auto& [k, v] : header_) out += "# " + k + "=" + v + "\n";
  auto line = [&out](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out += ',';
      out += quote(cells[i]);
    }
    out += '\n';
  };
  line(columns_);
  for (const auto& r : rows_) line(r);
  return out;
}

void CsvTable::write(const std::filesystem::path& path) const {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorKind::kInvalidArgument, "cannot write " + path.string());
  f << str();
}

std::string cell(const std::optional<std::uint64_t>& v) {
  return v ? std::to_string(*v) : "top";
}

std::string cell(const std::optional<std::int64_t>& v) {
  return v ? std::to_string(*v) : "top";
}

}  // namespace ait
