#include "chroma_infer/color.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>

#include "chroma_infer/error.hpp"

namespace chroma_infer::color {

namespace {

constexpr double kDelta = 6.0 / 29.0;
constexpr double kDelta3 = kDelta * kDelta * kDelta;

double lab_f(double t) {
  return t > kDelta3 ? std::cbrt(t) : t / (3.0 * kDelta * kDelta) + 4.0 / 29.0;
}

double lab_f_inv(double u) {
  return u > kDelta ? u * u * u : 3.0 * kDelta * kDelta * (u - 4.0 / 29.0);
}

bool finite(double v) { return std::isfinite(v); }

double srgb_encode(double linear) {
  return linear <= 0.0031308 ? 12.92 * linear : 1.055 * std::pow(linear, 1.0 / 2.4) - 0.055;
}

void require_valid_white(const WhitePoint& wp) {
  if (!finite(wp.x) || !finite(wp.y) || !finite(wp.Y) || wp.x <= 0.0 || wp.y <= 0.0 ||
      wp.x + wp.y >= 1.0 || wp.Y <= 0.0) {
    throw Error(ErrorCode::invalid_input, "invalid white point");
  }
}

}  // namespace

XyzColor WhitePoint::xyz() const {
  return {x / y * Y, Y, (1.0 - x - y) / y * Y};
}

WhitePoint WhitePoint::d65() {
  constexpr double X = 95.047, Y = 100.0, Z = 108.883;
  constexpr double sum = X + Y + Z;
  return {X / sum, Y / sum, 100.0};
}

std::string Srgb8::hex() const {
  char buf[8];
  std::snprintf(buf, sizeof buf, "#%02x%02x%02x", r, g, b);
  return buf;
}

void validate(const XyYColor& c) {
  if (!finite(c.x) || !finite(c.y) || !finite(c.Y)) {
    throw Error(ErrorCode::invalid_input, "xyY color has non-finite coordinates");
  }
  if (c.x <= 0.0 || c.y <= 0.0 || c.x + c.y >= 1.0) {
    throw Error(ErrorCode::invalid_input, "xyY chromaticity outside the open triangle x>0, y>0, x+y<1");
  }
  if (c.Y < 0.0 || c.Y > 100.0 + 1e-9) {
    throw Error(ErrorCode::invalid_input, "xyY luminance outside [0, 100]");
  }
}

void validate(const LabColor& c) {
  if (!finite(c.L) || !finite(c.a) || !finite(c.b)) {
    throw Error(ErrorCode::invalid_input, "Lab color has non-finite coordinates");
  }
  if (c.L < 0.0 || c.L > 100.0 + 1e-9) {
    throw Error(ErrorCode::invalid_input, "Lab lightness outside [0, 100]");
  }
}

XyzColor xyy_to_xyz(const XyYColor& c) {
  return {c.x / c.y * c.Y, c.Y, (1.0 - c.x - c.y) / c.y * c.Y};
}

XyYColor xyz_to_xyy(const XyzColor& c, const WhitePoint& wp) {
  const double sum = c.X + c.Y + c.Z;
  if (c.Y <= 0.0 || sum <= 0.0) return {wp.x, wp.y, 0.0};
  return {c.X / sum, c.Y / sum, c.Y};
}

LabColor xyz_to_lab(const XyzColor& c, const WhitePoint& wp) {
  const XyzColor n = wp.xyz();
  const double fx = lab_f(c.X / n.X);
  const double fy = lab_f(c.Y / n.Y);
  const double fz = lab_f(c.Z / n.Z);
  return {116.0 * fy - 16.0, 500.0 * (fx - fy), 200.0 * (fy - fz)};
}

XyzColor lab_to_xyz(const LabColor& c, const WhitePoint& wp) {
  const XyzColor n = wp.xyz();
  const double fy = (c.L + 16.0) / 116.0;
  const double fx = fy + c.a / 500.0;
  const double fz = fy - c.b / 200.0;
  return {n.X * lab_f_inv(fx), n.Y * lab_f_inv(fy), n.Z * lab_f_inv(fz)};
}

LabColor xyy_to_lab(const XyYColor& c, const WhitePoint& wp) {
  validate(c);
  require_valid_white(wp);
  return xyz_to_lab(xyy_to_xyz(c), wp);
}

XyYColor lab_to_xyy(const LabColor& c, const WhitePoint& wp) {
  validate(c);
  require_valid_white(wp);
  if (c.L == 0.0) return {wp.x, wp.y, 0.0};
  return xyz_to_xyy(lab_to_xyz(c, wp), wp);
}

LchColor lab_to_lch(const LabColor& c) {
  const double chroma = std::hypot(c.a, c.b);
  if (chroma < 1e-9) return {c.L, chroma, 0.0};
  double h = std::atan2(c.b, c.a) * 180.0 / std::numbers::pi;
  if (h < 0.0) h += 360.0;
  if (h >= 360.0) h -= 360.0;
  return {c.L, chroma, h};
}

LabColor lch_to_lab(const LchColor& c) {
  const double rad = c.h * std::numbers::pi / 180.0;
  return {c.L, c.C * std::cos(rad), c.C * std::sin(rad)};
}

Srgb8 lab_to_srgb(const LabColor& c, const WhitePoint& wp) {
  validate(c);
  require_valid_white(wp);
  const XyzColor xyz = lab_to_xyz(c, wp);
  const double X = xyz.X / 100.0, Y = xyz.Y / 100.0, Z = xyz.Z / 100.0;
  const double linear[3] = {
      3.2404542 * X - 1.5371385 * Y - 0.4985314 * Z,
      -0.9692660 * X + 1.8760108 * Y + 0.0415560 * Z,
      0.0556434 * X - 0.2040259 * Y + 1.0572252 * Z,
  };
  // Half a code value of slack so white and black do not report clipping.
  constexpr double slack = 0.5 / 255.0;
  Srgb8 out;
  std::uint8_t* channels[3] = {&out.r, &out.g, &out.b};
  for (int i = 0; i < 3; ++i) {
    const double encoded = linear[i] < 0.0 ? 12.92 * linear[i] : srgb_encode(linear[i]);
    if (encoded < -slack || encoded > 1.0 + slack) out.clipped = true;
    const double q = std::round(std::clamp(encoded, 0.0, 1.0) * 255.0);
    *channels[i] = static_cast<std::uint8_t>(q);
  }
  return out;
}

double lightness_difference(const LabColor& a, const LabColor& b) {
  return std::abs(a.L - b.L);
}

ColorScale interpolate_scale(const LabColor& light, const LabColor& dark) {
  validate(light);
  validate(dark);
  if (!(light.L > dark.L)) {
    throw Error(ErrorCode::ordering, "light endpoint must have higher L* than dark endpoint");
  }
  ColorScale scale;
  constexpr double last = static_cast<double>(kScaleSteps - 1);
  for (std::size_t i = 0; i < kScaleSteps; ++i) {
    const double t = static_cast<double>(i) / last;
    scale.steps_[i] = {light.L + (dark.L - light.L) * t, light.a + (dark.a - light.a) * t,
                       light.b + (dark.b - light.b) * t};
  }
  scale.steps_.front() = light;
  scale.steps_.back() = dark;
  scale.lightness_delta_ = light.L - dark.L;
  return scale;
}

}  // namespace chroma_infer::color
