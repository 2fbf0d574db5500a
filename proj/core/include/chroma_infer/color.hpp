#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <string>

namespace chroma_infer::color {

/// CIE 1931 chromaticity plus luminance. Y is on the 0..100 scale.
struct XyYColor {
  double x = 0.0;
  double y = 0.0;
  double Y = 0.0;
};

struct XyzColor {
  double X = 0.0;
  double Y = 0.0;
  double Z = 0.0;
};

struct LabColor {
  double L = 0.0;
  double a = 0.0;
  double b = 0.0;

  friend auto operator<=>(const LabColor&, const LabColor&) = default;
};

/// Cylindrical CIELAB. Hue in degrees, normalized to [0, 360).
struct LchColor {
  double L = 0.0;
  double C = 0.0;
  double h = 0.0;
};

struct WhitePoint {
  double x = 0.0;
  double y = 0.0;
  double Y = 100.0;

  XyzColor xyz() const;

  /// CIE 1931 2-degree D65, from tristimulus (95.047, 100, 108.883).
  static WhitePoint d65();
};

/// 8-bit gamma-encoded sRGB. `clipped` is set when any channel fell outside
/// the display gamut before quantization.
struct Srgb8 {
  std::uint8_t r = 0;
  std::uint8_t g = 0;
  std::uint8_t b = 0;
  bool clipped = false;

  std::string hex() const;
  friend bool operator==(const Srgb8&, const Srgb8&) = default;
};

void validate(const XyYColor& c);
void validate(const LabColor& c);

XyzColor xyy_to_xyz(const XyYColor& c);
XyYColor xyz_to_xyy(const XyzColor& c, const WhitePoint& wp);

LabColor xyz_to_lab(const XyzColor& c, const WhitePoint& wp);
XyzColor lab_to_xyz(const LabColor& c, const WhitePoint& wp);

/// Throws ErrorCode::invalid_input for non-finite or out-of-domain input.
LabColor xyy_to_lab(const XyYColor& c, const WhitePoint& wp = WhitePoint::d65());

/// Inverse of xyy_to_lab. Black (L* = 0) has no chromaticity; the white
/// point's chromaticity is returned with Y = 0.
XyYColor lab_to_xyy(const LabColor& c, const WhitePoint& wp = WhitePoint::d65());

/// Hue is 0 when chroma is below 1e-9.
LchColor lab_to_lch(const LabColor& c);
LabColor lch_to_lab(const LchColor& c);

/// IEC 61966-2-1 sRGB. Out-of-gamut channels are clipped and flagged.
Srgb8 lab_to_srgb(const LabColor& c, const WhitePoint& wp = WhitePoint::d65());

/// |a.L - b.L|
double lightness_difference(const LabColor& a, const LabColor& b);

inline constexpr std::size_t kScaleSteps = 10;

/// Ten CIELAB points linearly interpolated from a light to a dark endpoint.
class ColorScale {
 public:
  const std::array<LabColor, kScaleSteps>& steps() const { return steps_; }
  const LabColor& light_endpoint() const { return steps_.front(); }
  const LabColor& dark_endpoint() const { return steps_.back(); }
  double lightness_delta() const { return lightness_delta_; }

  // Palette indices of the endpoints when the scale was built from a palette.
  std::optional<int> light_index;
  std::optional<int> dark_index;

 private:
  friend ColorScale interpolate_scale(const LabColor& light, const LabColor& dark);

  std::array<LabColor, kScaleSteps> steps_{};
  double lightness_delta_ = 0.0;
};

/// Requires light.L > dark.L, otherwise throws ErrorCode::ordering.
ColorScale interpolate_scale(const LabColor& light, const LabColor& dark);

}  // namespace chroma_infer::color
