#include "csv.hpp"

#include <charconv>
#include <system_error>

#include "errors.hpp"

namespace volkit::csv {

std::vector<std::string> split(std::string_view line, char delim) {
  std::vector<std::string> fields;
  size_t start = 0;
  for (size_t i = 0; i <= line.size(); ++i) {
    if (i == line.size() || line[i] == delim) {
      fields.emplace_back(line.substr(start, i - start));
      start = i + 1;
    }
  }
  return fields;
}

std::vector<Row> read_file(const std::filesystem::path& path, char delim) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open file: " + path.string());
  std::vector<Row> rows;
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    rows.push_back(Row{line_no, split(line, delim)});
  }
  return rows;
}

std::string format_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

bool parse_double(std::string_view field, double& out) {
  // Trim surrounding spaces.
  size_t b = field.find_first_not_of(" \t");
  if (b == std::string_view::npos) return false;
  size_t e = field.find_last_not_of(" \t");
  field = field.substr(b, e - b + 1);
  auto res = std::from_chars(field.data(), field.data() + field.size(), out);
  return res.ec == std::errc() && res.ptr == field.data() + field.size();
}

AtomicWriter::AtomicWriter(std::filesystem::path dest)
    : dest_(std::move(dest)), tmp_(dest_.string() + ".tmp") {
  if (dest_.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(dest_.parent_path(), ec);
  }
  out_.open(tmp_, std::ios::binary | std::ios::trunc);
  if (!out_) throw DataError("cannot open for writing: " + tmp_.string());
}

AtomicWriter::~AtomicWriter() {
  if (!committed_) {
    out_.close();
    std::error_code ec;
    std::filesystem::remove(tmp_, ec);
  }
}

void AtomicWriter::commit() {
  out_.flush();
  if (!out_) throw DataError("write failed: " + tmp_.string());
  out_.close();
  std::filesystem::rename(tmp_, dest_);
  committed_ = true;
}

}  // namespace volkit::csv
