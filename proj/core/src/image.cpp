#include "ternwave/image.hpp"

#include <algorithm>
#include <cmath>

#include "ternwave/error.hpp"

namespace ternwave {

ImagePlanes rgb_to_ycbcr(const RasterImage& image) {
  if (image.channels != 1 && image.channels != 3)
    throw InvalidArgument("rgb_to_ycbcr: expected 1 or 3 channels");
  if (image.maxval == 0 || image.maxval > 65535)
    throw InvalidArgument("rgb_to_ycbcr: maxval out of range");
  if (image.samples.size() != image.width * image.height * image.channels)
    throw InvalidArgument("rgb_to_ycbcr: sample count does not match dimensions");

  using namespace bt601;
  ImagePlanes out;
  out.width = image.width;
  out.height = image.height;
  out.bit_depth = image.maxval > 255 ? 16 : 8;
  out.y = Plane(image.width, image.height);
  out.cb = Plane(image.width, image.height);
  out.cr = Plane(image.width, image.height);

  const double scale = 1.0 / image.maxval;
  const std::size_t count = image.width * image.height;
  for (std::size_t i = 0; i < count; ++i) {
    if (image.channels == 1) {
      out.y.data[i] = image.samples[i] * scale;
      continue;
    }
    const double r = image.samples[3 * i] * scale;
    const double g = image.samples[3 * i + 1] * scale;
    const double b = image.samples[3 * i + 2] * scale;
    const double y = kr * r + kg * g + kb * b;
    out.y.data[i] = y;
    out.cb.data[i] = 0.5 * (b - y) / (1.0 - kb);
    out.cr.data[i] = 0.5 * (r - y) / (1.0 - kr);
  }
  return out;
}

std::array<Plane, 3> ycbcr_to_rgb_planes(const ImagePlanes& planes) {
  const std::size_t w = planes.width, h = planes.height;
  for (const Plane* p : {&planes.y, &planes.cb, &planes.cr})
    if (p->width != w || p->height != h || p->data.size() != w * h)
      throw InvalidArgument("ycbcr_to_rgb: plane dimensions differ");

  using namespace bt601;
  std::array<Plane, 3> rgb{Plane(w, h), Plane(w, h), Plane(w, h)};
  for (std::size_t i = 0; i < w * h; ++i) {
    const double y = planes.y.data[i];
    const double r = y + 2.0 * (1.0 - kr) * planes.cr.data[i];
    const double b = y + 2.0 * (1.0 - kb) * planes.cb.data[i];
    rgb[0].data[i] = r;
    rgb[1].data[i] = (y - kr * r - kb * b) / kg;
    rgb[2].data[i] = b;
  }
  return rgb;
}

RasterImage ycbcr_to_rgb(const ImagePlanes& planes, unsigned maxval) {
  if (maxval == 0 || maxval > 65535) throw InvalidArgument("ycbcr_to_rgb: maxval out of range");
  const auto rgb = ycbcr_to_rgb_planes(planes);
  RasterImage out;
  out.width = planes.width;
  out.height = planes.height;
  out.channels = 3;
  out.maxval = maxval;
  out.samples.resize(planes.width * planes.height * 3);
  for (std::size_t i = 0; i < planes.width * planes.height; ++i)
    for (std::size_t c = 0; c < 3; ++c) {
      const double v = std::clamp(std::round(rgb[c].data[i] * maxval), 0.0, double(maxval));
      out.samples[3 * i + c] = static_cast<std::uint16_t>(v);
    }
  return out;
}

}  // namespace ternwave
