#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace ait {

// CSV with a provenance header: "# key=value" lines, then the column row,
// then data rows. Output is byte-stable for identical inputs.
class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> columns);

  void provenance(const std::string& key, const std::string& value);
  void row(std::vector<std::string> cells);

  const std::vector<std::pair<std::string, std::string>>& header() const { return header_; }
  const std::vector<std::string>& columns() const { return columns_; }
  const std::vector<std::vector<std::string>>& rows() const { return rows_; }

  std::string str() const;
  void write(const std::filesystem::path& path) const;

 private:
  std::vector<std::pair<std::string, std::string>> header_;
  std::vector<std::string> columns_;
  std::vector<std::vector<std::string>> rows_;
};

// Undiscovered values are written as "top".
std::string cell(const std::optional<std::uint64_t>& v);
std::string cell(const std::optional<std::int64_t>& v);

}  // namespace ait
