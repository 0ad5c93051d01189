#pragma once

#include <string>
#include <vector>

namespace tariffot {

/// Minimal RFC-4180-style CSV: fields containing commas, quotes or
/// newlines are quoted, embedded quotes doubled. Numbers are formatted
/// with up to 12 significant digits so identical inputs produce identical
/// bytes.
class CsvWriter {
 public:
  CsvWriter& field(const std::string& s);
  CsvWriter& field(double v);
  CsvWriter& field(int v);
  CsvWriter& end_row();
  CsvWriter& blank_row();

  const std::string& str() const { return out_; }
  void write_file(const std::string& path) const;

 private:
  std::string out_;
  bool row_open_ = false;
};

std::string format_double(double v, int significant_digits = 12);

/// Parses a CSV produced by CsvWriter (quoting rules included).
std::vector<std::vector<std::string>> parse_csv(const std::string& text);
std::vector<std::vector<std::string>> read_csv_file(const std::string& path);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

}  // namespace tariffot
