#pragma once

#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace vigilance {

/// Shortest text that round-trips: "%.17g" semantics.
std::string FormatDouble(double v);

/// Creates `dir` if needed and throws ConfigError("dir", ...) when it is not
/// a writable directory.
void EnsureWritableDir(const std::filesystem::path& dir);

class CsvWriter {
 public:
  CsvWriter(const std::filesystem::path& path,
            const std::vector<std::string>& header);

  CsvWriter& Cell(double v);
  CsvWriter& Cell(long long v);
  CsvWriter& Cell(std::string_view v);
  void EndRow();

 private:
  std::ofstream out_;
  std::filesystem::path path_;
  bool row_started_ = false;
};

void WriteJson(const std::filesystem::path& path, const nlohmann::json& doc);

}  // namespace vigilance
