#ifndef DRSS_CSV_HPP
#define DRSS_CSV_HPP

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace drss {

// Minimal CSV support for the toolkit's own outputs: comma-separated,
// header row, UTF-8, LF line endings, no quoting (cells are numbers, flags
// and short identifiers; a cell containing a comma, quote or newline is a
// bug and is rejected at write time).
//
// Columns whose values are inherently non-deterministic carry a "_nondet"
// suffix in the header (wall-clock times); csv_equal_deterministic skips
// them so determinism can be asserted byte-for-byte on everything else.
class CsvTable {
 public:
  CsvTable() = default;
  explicit CsvTable(std::vector<std::string> header);

  void add_row(std::vector<std::string> cells);

  const std::vector<std::string>& header() const { return header_; }
  const std::vector<std::vector<std::string>>& rows() const { return rows_; }

  // Header and rows joined with LF, trailing LF included.
  std::string to_text() const;

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

// Numeric cell formatting. Doubles use the shortest representation that
// round-trips, so equal values always produce equal bytes.
std::string format_u64(std::uint64_t value);
std::string format_double(double value);
std::string format_flag(bool value);  // "1" / "0"

// Parses text produced by CsvTable (or equivalent). Throws IoError on
// missing header or ragged rows.
CsvTable parse_csv_text(const std::string& text);
CsvTable read_csv_file(const std::filesystem::path& path);

// Whole-file read/write. write_file_atomic stages to a sibling temp file
// and renames, so a failed command never leaves a half-written output.
std::string read_text_file(const std::filesystem::path& path);
void write_file_atomic(const std::filesystem::path& path,
                       const std::string& contents);

// Byte equality over headers and all cells except columns whose name ends
// in "_nondet".
bool csv_equal_deterministic(const CsvTable& a, const CsvTable& b);

}  // namespace drss

#endif  // DRSS_CSV_HPP
