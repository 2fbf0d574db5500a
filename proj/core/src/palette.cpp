#include "chroma_infer/palette.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>

#include "chroma_infer/csv.hpp"
#include "chroma_infer/error.hpp"

namespace chroma_infer::color {

Palette::Palette(std::vector<PaletteEntry> entries) : entries_(std::move(entries)) {
  std::set<int> seen;
  for (const auto& e : entries_) {
    if (!seen.insert(e.index).second) {
      throw Error(ErrorCode::validation, "duplicate palette index " + std::to_string(e.index));
    }
  }
}

Palette Palette::parse_csv(std::istream& in, std::string_view source) {
  const csv::Table t = csv::Table::parse(in, source);
  const std::size_t ci = t.column("index"), cx = t.column("x"), cy = t.column("y"),
                    cY = t.column("Y"), cL = t.column("L"), ca = t.column("a"),
                    cb = t.column("b"), cC = t.column("C"), ch = t.column("h");
  std::vector<PaletteEntry> entries;
  entries.reserve(t.rows());
  for (std::size_t r = 0; r < t.rows(); ++r) {
    PaletteEntry e;
    e.index = static_cast<int>(t.integer(r, ci));
    e.xyy = {t.number(r, cx), t.number(r, cy), t.number(r, cY)};
    e.lab = {t.number(r, cL), t.number(r, ca), t.number(r, cb)};
    e.lch = {t.number(r, cL), t.number(r, cC), t.number(r, ch)};
    try {
      validate(e.xyy);
      validate(e.lab);
    } catch (const Error& err) {
      throw Error(ErrorCode::parse, t.where(r) + ": " + err.what());
    }
    entries.push_back(e);
  }
  return Palette(std::move(entries));
}

Palette Palette::load_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::io, "cannot open " + path);
  return parse_csv(in, path);
}

bool Palette::contains(int index) const {
  return std::any_of(entries_.begin(), entries_.end(),
                     [index](const PaletteEntry& e) { return e.index == index; });
}

const PaletteEntry& Palette::at(int index) const {
  const auto it = std::find_if(entries_.begin(), entries_.end(),
                               [index](const PaletteEntry& e) { return e.index == index; });
  if (it == entries_.end()) {
    throw Error(ErrorCode::lookup, "palette has no color " + std::to_string(index));
  }
  return *it;
}

std::vector<ConsistencyIssue> Palette::check_consistency(double tolerance,
                                                         const WhitePoint& wp) const {
  std::vector<ConsistencyIssue> issues;
  auto check = [&](int index, const char* column, double tab, double conv, bool angular) {
    double diff = std::abs(tab - conv);
    if (angular) diff = std::min(diff, 360.0 - diff);
    if (diff > tolerance) issues.push_back({index, column, tab, conv});
  };
  for (const auto& e : entries_) {
    const LabColor lab = xyy_to_lab(e.xyy, wp);
    check(e.index, "L", e.lab.L, lab.L, false);
    check(e.index, "a", e.lab.a, lab.a, false);
    check(e.index, "b", e.lab.b, lab.b, false);
    const LchColor lch = lab_to_lch(e.lab);
    check(e.index, "C", e.lch.C, lch.C, false);
    // Hue is meaningless for achromatic rows.
    if (e.lch.C > 0.05) check(e.index, "h", e.lch.h, lch.h, true);
  }
  return issues;
}

Palette load_uw71(const std::string& path) {
  Palette p = Palette::load_csv(path);
  if (p.size() != kUw71Size) {
    throw Error(ErrorCode::validation, path + ": expected 71 colors, found " +
                                           std::to_string(p.size()));
  }
  const auto issues = p.check_consistency();
  if (!issues.empty()) {
    const auto& i = issues.front();
    throw Error(ErrorCode::validation,
                path + ": color " + std::to_string(i.index) + " column " + i.column +
                    " tabulated " + std::to_string(i.tabulated) + " but converts to " +
                    std::to_string(i.converted),
                std::to_string(issues.size()) + " inconsistent values");
  }
  return p;
}

}  // namespace chroma_infer::color
