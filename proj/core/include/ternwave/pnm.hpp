#pragma once

#include <iosfwd>
#include <string>

#include "ternwave/image.hpp"

namespace ternwave {

/// Binary P5 (gray) / P6 (RGB) pixmaps, maxval 1..65535 (two big-endian
/// bytes per sample above 255). Throws DecodeError naming `source`.
RasterImage read_pnm(std::istream& in, const std::string& source = "<stream>");
RasterImage read_pnm(const std::string& path);

void write_pnm(std::ostream& out, const RasterImage& image);
void write_pnm(const std::string& path, const RasterImage& image);

/// True when PNG decoding was compiled in.
bool png_supported() noexcept;

/// Dispatches on the file signature: P5/P6, or PNG when supported.
RasterImage read_image(const std::string& path);

/// read_image followed by rgb_to_ycbcr.
ImagePlanes ingest_image(const std::string& path);

}  // namespace ternwave
