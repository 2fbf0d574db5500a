#pragma once

#include <istream>
#include <span>
#include <string>
#include <vector>

#include "chroma_infer/color.hpp"

namespace chroma_infer::color {

struct PaletteEntry {
  int index = 0;
  XyYColor xyy;
  LabColor lab;
  LchColor lch;
};

struct ConsistencyIssue {
  int index = 0;
  std::string column;
  double tabulated = 0.0;
  double converted = 0.0;
};

/// An indexed set of reference colors carrying coordinates in three spaces.
class Palette {
 public:
  Palette() = default;
  explicit Palette(std::vector<PaletteEntry> entries);

  /// CSV with header `index,x,y,Y,L,a,b,C,h`.
  static Palette parse_csv(std::istream& in, std::string_view source = "<stream>");
  static Palette load_csv(const std::string& path);

  std::span<const PaletteEntry> entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  bool contains(int index) const;
  /// Throws ErrorCode::lookup for unknown indices.
  const PaletteEntry& at(int index) const;

  /// Rows whose tabulated Lab/LCh columns disagree with the converted xyY
  /// columns by more than `tolerance` (hue compared on the circle).
  std::vector<ConsistencyIssue> check_consistency(
      double tolerance = 0.05, const WhitePoint& wp = WhitePoint::d65()) const;

 private:
  std::vector<PaletteEntry> entries_;
};

inline constexpr std::size_t kUw71Size = 71;

/// Loads the University of Wisconsin 71 palette and verifies it has 71 rows
/// whose coordinates agree across spaces within 0.05.
Palette load_uw71(const std::string& path);

}  // namespace chroma_infer::color
