#include "drss/csv.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <string_view>
#include <system_error>

#include "drss/errors.hpp"

namespace drss {

namespace {

void check_cell(const std::string& cell) {
  if (cell.find_first_of(",\"\n\r") != std::string::npos) {
    throw IoError("csv cell contains a delimiter or newline: " + cell);
  }
}

}  // namespace

CsvTable::CsvTable(std::vector<std::string> header)
    : header_(std::move(header)) {
  if (header_.empty()) throw IoError("csv header must not be empty");
  for (const std::string& name : header_) check_cell(name);
}

void CsvTable::add_row(std::vector<std::string> cells) {
  if (cells.size() != header_.size()) {
    throw IoError("csv row has " + std::to_string(cells.size()) +
                  " cells, header has " + std::to_string(header_.size()));
  }
  for (const std::string& cell : cells) check_cell(cell);
  rows_.push_back(std::move(cells));
}

std::string CsvTable::to_text() const {
  std::string out;
  auto emit = [&out](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i != 0) out += ',';
      out += cells[i];
    }
    out += '\n';
  };
  emit(header_);
  for (const auto& row : rows_) emit(row);
  return out;
}

std::string format_u64(std::uint64_t value) {
  char buf[24];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, ptr);
}

std::string format_double(double value) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  if (ec != std::errc()) throw IoError("double formatting failed");
  return std::string(buf, ptr);
}

std::string format_flag(bool value) { return value ? "1" : "0"; }

namespace {

std::vector<std::string> split_line(std::string_view line) {
  std::vector<std::string> cells;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      cells.emplace_back(line.substr(start));
      return cells;
    }
    cells.emplace_back(line.substr(start, comma - start));
    start = comma + 1;
  }
}

}  // namespace

CsvTable parse_csv_text(const std::string& text) {
  std::vector<std::vector<std::string>> lines;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string::npos) end = text.size();
    std::string_view line(text.data() + start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (!line.empty()) lines.push_back(split_line(line));
    start = end + 1;
  }
  if (lines.empty()) throw IoError("csv text has no header row");

  CsvTable table(std::move(lines.front()));
  for (std::size_t i = 1; i < lines.size(); ++i) {
    table.add_row(std::move(lines[i]));
  }
  return table;
}

CsvTable read_csv_file(const std::filesystem::path& path) {
  return parse_csv_text(read_text_file(path));
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string() + " for reading");
  std::string contents((std::istreambuf_iterator<char>(in)),
                       std::istreambuf_iterator<char>());
  if (in.bad()) throw IoError("read failed on " + path.string());
  return contents;
}

void write_file_atomic(const std::filesystem::path& path,
                       const std::string& contents) {
  const std::filesystem::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open " + tmp.string() + " for writing");
    out.write(contents.data(), std::streamsize(contents.size()));
    out.flush();
    if (!out) {
      std::remove(tmp.string().c_str());
      throw IoError("write failed on " + tmp.string());
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    throw IoError("cannot move " + tmp.string() + " to " + path.string() +
                  ": " + ec.message());
  }
}

bool csv_equal_deterministic(const CsvTable& a, const CsvTable& b) {
  if (a.header() != b.header()) return false;
  if (a.rows().size() != b.rows().size()) return false;

  std::vector<bool> compare(a.header().size());
  for (std::size_t c = 0; c < a.header().size(); ++c) {
    const std::string& name = a.header()[c];
    static constexpr std::string_view suffix = "_nondet";
    compare[c] = name.size() < suffix.size() ||
                 std::string_view(name).substr(name.size() - suffix.size()) !=
                     suffix;
  }
  for (std::size_t r = 0; r < a.rows().size(); ++r) {
    for (std::size_t c = 0; c < a.header().size(); ++c) {
      if (compare[c] && a.rows()[r][c] != b.rows()[r][c]) return false;
    }
  }
  return true;
}

}  // namespace drss
