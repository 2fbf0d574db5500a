#pragma once

#include <istream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace chroma_infer::csv {

// Minimal RFC 4180 reader: comma separated, double-quote escaping, header row
// required. Blank lines are skipped.
class Table {
 public:
  static Table parse(std::istream& in, std::string_view source = "<stream>");
  static Table load(const std::string& path);

  const std::vector<std::string>& header() const { return header_; }
  std::size_t rows() const { return rows_.size(); }
  const std::vector<std::string>& row(std::size_t i) const { return rows_[i]; }

  // Index of a required column; throws parse error naming the source if absent.
  std::size_t column(std::string_view name) const;
  bool has_column(std::string_view name) const;

  // Field accessors report "<source>:<line>" on conversion failure.
  const std::string& text(std::size_t row, std::size_t col) const;
  double number(std::size_t row, std::size_t col) const;
  long integer(std::size_t row, std::size_t col) const;
  bool boolean(std::size_t row, std::size_t col) const;

  std::string where(std::size_t row) const;

 private:
  std::string source_;
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
  std::vector<std::size_t> lines_;
};

std::vector<std::string> split_line(std::string_view line);

// Quotes a field when it contains a comma, quote or newline.
std::string escape(std::string_view field);

}  // namespace chroma_infer::csv
