#pragma once

#include <filesystem>
#include <fstream>
#include <string>
#include <string_view>
#include <vector>

namespace volkit::csv {

struct Row {
  size_t line_no = 0;  // 1-based line in the source file
  std::vector<std::string> fields;
};

// Reads a delimited text file. Blank lines are skipped. Throws DataError
// if the file cannot be opened.
std::vector<Row> read_file(const std::filesystem::path& path, char delim = ',');

std::vector<std::string> split(std::string_view line, char delim = ',');

// Shortest round-trip decimal representation of a double (re-parsing the
// string recovers the identical bits).
std::string format_double(double v);

// Strict double parser; the whole field must be consumed.
bool parse_double(std::string_view field, double& out);

// Write-then-rename file writer: the destination appears only when commit()
// succeeds, so an interrupted run never leaves a partial file behind.
class AtomicWriter {
 public:
  explicit AtomicWriter(std::filesystem::path dest);
  ~AtomicWriter();

  AtomicWriter(const AtomicWriter&) = delete;
  AtomicWriter& operator=(const AtomicWriter&) = delete;

  std::ostream& stream() { return out_; }

  template <typename T>
  AtomicWriter& operator<<(const T& v) {
    out_ << v;
    return *this;
  }

  void commit();

 private:
  std::filesystem::path dest_;
  std::filesystem::path tmp_;
  std::ofstream out_;
  bool committed_ = false;
};

}  // namespace volkit::csv
