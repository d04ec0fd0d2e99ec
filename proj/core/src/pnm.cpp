#include "ternwave/pnm.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <stdexcept>

#include "ternwave/error.hpp"

#ifdef TERNWAVE_HAVE_PNG
#include <png.h>
#endif

namespace ternwave {

namespace {

// Whitespace and '#' comments between header tokens.
void skip_separators(std::istream& in) {
  for (;;) {
    const int c = in.peek();
    if (c == '#') {
      in.ignore(std::numeric_limits<std::streamsize>::max(), '\n');
    } else if (c != EOF && std::isspace(c)) {
      in.get();
    } else {
      return;
    }
  }
}

std::size_t read_header_number(std::istream& in, const std::string& source, const char* what) {
  skip_separators(in);
  std::size_t value = 0;
  bool any = false;
  while (std::isdigit(in.peek())) {
    value = value * 10 + static_cast<std::size_t>(in.get() - '0');
    any = true;
    if (value > (std::size_t{1} << 31)) throw DecodeError(source + ": " + what + " too large");
  }
  if (!any) throw DecodeError(source + ": malformed header (" + what + ")");
  return value;
}

}  // namespace

RasterImage read_pnm(std::istream& in, const std::string& source) {
  char magic[2] = {};
  if (!in.read(magic, 2) || magic[0] != 'P' || (magic[1] != '5' && magic[1] != '6'))
    throw DecodeError(source + ": not a binary P5/P6 pixmap");

  RasterImage img;
  img.channels = magic[1] == '6' ? 3 : 1;
  img.width = read_header_number(in, source, "width");
  img.height = read_header_number(in, source, "height");
  const std::size_t maxval = read_header_number(in, source, "maxval");
  if (img.width == 0 || img.height == 0) throw DecodeError(source + ": empty image");
  if (maxval == 0 || maxval > 65535) throw DecodeError(source + ": maxval out of range");
  img.maxval = static_cast<unsigned>(maxval);
  if (!std::isspace(in.get())) throw DecodeError(source + ": malformed header");

  const std::size_t count = img.width * img.height * img.channels;
  const std::size_t bytes_per = maxval > 255 ? 2 : 1;
  std::vector<unsigned char> raw(count * bytes_per);
  if (!in.read(reinterpret_cast<char*>(raw.data()), static_cast<std::streamsize>(raw.size())))
    throw DecodeError(source + ": truncated pixel data");

  img.samples.resize(count);
  for (std::size_t i = 0; i < count; ++i) {
    const unsigned v = bytes_per == 2 ? (unsigned{raw[2 * i]} << 8) | raw[2 * i + 1] : raw[i];
    if (v > maxval) throw DecodeError(source + ": sample exceeds maxval");
    img.samples[i] = static_cast<std::uint16_t>(v);
  }
  return img;
}

RasterImage read_pnm(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DecodeError(path + ": cannot open");
  return read_pnm(in, path);
}

void write_pnm(std::ostream& out, const RasterImage& img) {
  if (img.channels != 1 && img.channels != 3)
    throw InvalidArgument("write_pnm: channels must be 1 or 3");
  if (img.samples.size() != img.width * img.height * img.channels)
    throw InvalidArgument("write_pnm: sample count does not match dimensions");
  out << (img.channels == 3 ? "P6" : "P5") << '\n'
      << img.width << ' ' << img.height << '\n'
      << img.maxval << '\n';
  const bool wide = img.maxval > 255;
  for (std::uint16_t s : img.samples) {
    if (wide) out.put(static_cast<char>(s >> 8));
    out.put(static_cast<char>(s & 0xff));
  }
  if (!out) throw std::runtime_error("write_pnm: write failed");
}

void write_pnm(const std::string& path, const RasterImage& image) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  write_pnm(out, image);
}

bool png_supported() noexcept {
#ifdef TERNWAVE_HAVE_PNG
  return true;
#else
  return false;
#endif
}

namespace {

#ifdef TERNWAVE_HAVE_PNG
// The simplified API only hands out 16-bit data in linear light, so every
// PNG is read as 8-bit sRGB-coded samples.
RasterImage read_png(const std::string& path) {
  png_image png{};
  png.version = PNG_IMAGE_VERSION;
  if (!png_image_begin_read_from_file(&png, path.c_str()))
    throw DecodeError(path + ": " + png.message);
  const bool gray = (png.format & PNG_FORMAT_FLAG_COLOR) == 0;
  png.format = gray ? PNG_FORMAT_GRAY : PNG_FORMAT_RGB;

  RasterImage img;
  img.width = png.width;
  img.height = png.height;
  img.channels = gray ? 1 : 3;
  img.maxval = 255;
  std::vector<png_byte> buf(PNG_IMAGE_SIZE(png));
  if (!png_image_finish_read(&png, nullptr, buf.data(), 0, nullptr)) {
    const std::string msg = png.message;
    png_image_free(&png);
    throw DecodeError(path + ": " + msg);
  }
  img.samples.assign(buf.begin(), buf.end());
  return img;
}
#endif

}  // namespace

RasterImage read_image(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DecodeError(path + ": cannot open");
  std::array<char, 8> sig{};
  in.read(sig.data(), sig.size());
  const auto got = in.gcount();
  static constexpr std::array<unsigned char, 8> kPng{0x89, 'P', 'N', 'G', '\r', '\n', 0x1a, '\n'};
  if (got == 8 && std::equal(kPng.begin(), kPng.end(), sig.begin(),
                             [](unsigned char a, char b) { return a == static_cast<unsigned char>(b); })) {
#ifdef TERNWAVE_HAVE_PNG
    return read_png(path);
#else
    throw DecodeError(path + ": PNG input was not enabled at build time");
#endif
  }
  in.clear();
  in.seekg(0);
  return read_pnm(in, path);
}

ImagePlanes ingest_image(const std::string& path) { return rgb_to_ycbcr(read_image(path)); }

}  // namespace ternwave
