#include "chroma_infer/csv.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>

#include "chroma_infer/error.hpp"

namespace chroma_infer::csv {

namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

}  // namespace

std::vector<std::string> split_line(std::string_view line) {
  std::vector<std::string> fields;
  std::string field;
  bool quoted = false;
  bool was_quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char ch = line[i];
    if (quoted) {
      if (ch == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          field.push_back('"');
          ++i;
        } else {
          quoted = false;
        }
      } else {
        field.push_back(ch);
      }
    } else if (ch == '"') {
      if (!was_quoted) field = trim(field);
      quoted = true;
      was_quoted = true;
    } else if (ch == ',') {
      fields.push_back(was_quoted ? field : trim(field));
      field.clear();
      was_quoted = false;
    } else if (!(was_quoted && (ch == ' ' || ch == '\t'))) {
      field.push_back(ch);
    }
  }
  if (quoted) throw Error(ErrorCode::parse, "unterminated quoted field");
  fields.push_back(was_quoted ? field : trim(field));
  return fields;
}

std::string escape(std::string_view field) {
  if (field.find_first_of(",\"\n") == std::string_view::npos) return std::string(field);
  std::string out = "\"";
  for (char ch : field) {
    if (ch == '"') out.push_back('"');
    out.push_back(ch);
  }
  out.push_back('"');
  return out;
}

Table Table::parse(std::istream& in, std::string_view source) {
  Table t;
  t.source_ = std::string(source);
  std::string line;
  std::size_t line_no = 0;
  bool have_header = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (line_no == 1 && line.starts_with("\xEF\xBB\xBF")) line.erase(0, 3);
    if (trim(line).empty()) continue;
    std::vector<std::string> fields;
    try {
      fields = split_line(line);
    } catch (const Error& e) {
      throw Error(ErrorCode::parse, t.source_ + ":" + std::to_string(line_no) + ": " + e.what());
    }
    if (!have_header) {
      t.header_ = std::move(fields);
      have_header = true;
      continue;
    }
    if (fields.size() != t.header_.size()) {
      throw Error(ErrorCode::parse, t.source_ + ":" + std::to_string(line_no) + ": expected " +
                                        std::to_string(t.header_.size()) + " fields, found " +
                                        std::to_string(fields.size()));
    }
    t.rows_.push_back(std::move(fields));
    t.lines_.push_back(line_no);
  }
  if (!have_header) throw Error(ErrorCode::parse, t.source_ + ": missing header row");
  return t;
}

Table Table::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::io, "cannot open " + path);
  return parse(in, path);
}

bool Table::has_column(std::string_view name) const {
  return std::find(header_.begin(), header_.end(), name) != header_.end();
}

std::size_t Table::column(std::string_view name) const {
  const auto it = std::find(header_.begin(), header_.end(), name);
  if (it == header_.end()) {
    throw Error(ErrorCode::parse, source_ + ": missing column '" + std::string(name) + "'");
  }
  return static_cast<std::size_t>(it - header_.begin());
}

std::string Table::where(std::size_t row) const {
  return source_ + ":" + std::to_string(lines_.at(row));
}

const std::string& Table::text(std::size_t row, std::size_t col) const {
  return rows_.at(row).at(col);
}

double Table::number(std::size_t row, std::size_t col) const {
  const std::string& s = text(row, col);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
    throw Error(ErrorCode::parse, where(row) + ": '" + s + "' is not a number (column " +
                                      header_[col] + ")");
  }
  return value;
}

long Table::integer(std::size_t row, std::size_t col) const {
  const std::string& s = text(row, col);
  long value = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
    throw Error(ErrorCode::parse, where(row) + ": '" + s + "' is not an integer (column " +
                                      header_[col] + ")");
  }
  return value;
}

bool Table::boolean(std::size_t row, std::size_t col) const {
  std::string s = text(row, col);
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  if (s == "1" || s == "true" || s == "yes") return true;
  if (s == "0" || s == "false" || s == "no") return false;
  throw Error(ErrorCode::parse, where(row) + ": '" + s + "' is not a boolean (column " +
                                    header_[col] + ")");
}

}  // namespace chroma_infer::csv
