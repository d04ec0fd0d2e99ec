#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace ternwave {

/// Row-major plane of real samples.
struct Plane {
  std::size_t width = 0;
  std::size_t height = 0;
  std::vector<double> data;

  Plane() = default;
  Plane(std::size_t w, std::size_t h, double fill = 0.0) : width(w), height(h), data(w * h, fill) {}

  double& at(std::size_t x, std::size_t y) { return data[y * width + x]; }
  double at(std::size_t x, std::size_t y) const { return data[y * width + x]; }
  std::size_t size() const noexcept { return data.size(); }

  friend bool operator==(const Plane&, const Plane&) = default;
};

/// Decoded integer raster: 1 (gray) or 3 (RGB) interleaved channels.
struct RasterImage {
  std::size_t width = 0;
  std::size_t height = 0;
  std::size_t channels = 3;
  unsigned maxval = 255;
  std::vector<std::uint16_t> samples;
};

/// Full-range BT.601 YCbCr, y in [0,1], cb/cr in [-0.5,0.5]. No chroma
/// subsampling.
struct ImagePlanes {
  std::size_t width = 0;
  std::size_t height = 0;
  Plane y, cb, cr;
  unsigned bit_depth = 8;

  const Plane& channel(std::size_t c) const { return c == 0 ? y : (c == 1 ? cb : cr); }
  Plane& channel(std::size_t c) { return c == 0 ? y : (c == 1 ? cb : cr); }
};

namespace bt601 {
inline constexpr double kr = 0.299;
inline constexpr double kb = 0.114;
inline constexpr double kg = 1.0 - kr - kb;
}  // namespace bt601

ImagePlanes rgb_to_ycbcr(const RasterImage& image);

/// Back to RGB in [0,1] without quantisation.
std::array<Plane, 3> ycbcr_to_rgb_planes(const ImagePlanes& planes);

/// Back to an integer raster with the given maxval (rounded, clamped).
RasterImage ycbcr_to_rgb(const ImagePlanes& planes, unsigned maxval = 255);

}  // namespace ternwave
