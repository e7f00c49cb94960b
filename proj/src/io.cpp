#include "vigilance/io.hpp"

#include <fmt/format.h>

#include <system_error>

#include "vigilance/errors.hpp"

namespace vigilance {

std::string FormatDouble(double v) { return fmt::format("{:.17g}", v); }

void EnsureWritableDir(const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec || !std::filesystem::is_directory(dir)) {
    throw ConfigError("dir", "cannot create output directory " + dir.string());
  }
  const auto probe = dir / ".vg_write_probe";
  {
    std::ofstream f(probe);
    if (!f) {
      throw ConfigError("dir", "output directory not writable: " + dir.string());
    }
  }
  std::filesystem::remove(probe, ec);
}

CsvWriter::CsvWriter(const std::filesystem::path& path,
                     const std::vector<std::string>& header)
    : out_(path), path_(path) {
  if (!out_) throw Error("cannot open " + path.string() + " for writing");
  for (const auto& h : header) Cell(h);
  EndRow();
}

CsvWriter& CsvWriter::Cell(std::string_view v) {
  if (row_started_) out_ << ',';
  out_ << v;
  row_started_ = true;
  return *this;
}

CsvWriter& CsvWriter::Cell(double v) { return Cell(FormatDouble(v)); }

CsvWriter& CsvWriter::Cell(long long v) { return Cell(std::to_string(v)); }

void CsvWriter::EndRow() {
  out_ << '\n';
  row_started_ = false;
  if (!out_) throw Error("write failed: " + path_.string());
}

void WriteJson(const std::filesystem::path& path, const nlohmann::json& doc) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open " + path.string() + " for writing");
  out << doc.dump(2) << '\n';
  if (!out) throw Error("write failed: " + path.string());
}

}  // namespace vigilance
