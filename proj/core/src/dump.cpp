#include "ternwave/dump.hpp"

#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <type_traits>

#include "ternwave/error.hpp"

namespace ternwave {

namespace {

template <typename T>
void put_le(std::ostream& out, T value) {
  using U = std::conditional_t<sizeof(T) == 8, std::uint64_t, std::uint32_t>;
  U bits;
  std::memcpy(&bits, &value, sizeof bits);
  unsigned char bytes[sizeof(U)];
  for (std::size_t i = 0; i < sizeof(U); ++i) bytes[i] = static_cast<unsigned char>(bits >> (8 * i));
  out.write(reinterpret_cast<const char*>(bytes), sizeof bytes);
}

template <typename T>
T get_le(std::istream& in) {
  using U = std::conditional_t<sizeof(T) == 8, std::uint64_t, std::uint32_t>;
  unsigned char bytes[sizeof(U)];
  if (!in.read(reinterpret_cast<char*>(bytes), sizeof bytes))
    throw DecodeError("coefficient dump truncated");
  U bits = 0;
  for (std::size_t i = 0; i < sizeof(U); ++i) bits |= static_cast<U>(bytes[i]) << (8 * i);
  T value;
  std::memcpy(&value, &bits, sizeof value);
  return value;
}

std::uint32_t kind_code(WaveletKind kind) {
  switch (kind) {
    case WaveletKind::TernaryI: return 0;
    case WaveletKind::TernaryII: return 1;
    case WaveletKind::Cdf97: return 2;
  }
  return 2;
}

void append(std::vector<double>& to, const std::vector<double>& from) {
  to.insert(to.end(), from.begin(), from.end());
}

}  // namespace

CoefficientDump make_dump(const std::vector<Subbands1D>& pyramid,
                          const TernaryCircuitSpec& spec) {
  if (pyramid.empty()) throw InvalidArgument("make_dump: empty pyramid");
  CoefficientDump d;
  d.magic = "TWV1";
  d.kind = spec.cascade() == Cascade::SiteCentered ? 0 : 1;
  d.depth = static_cast<std::uint32_t>(spec.depth());
  for (const auto& level : pyramid) d.level_sizes.push_back(level.plan.n);
  append(d.values, pyramid.back().sca);
  for (auto it = pyramid.rbegin(); it != pyramid.rend(); ++it) {
    append(d.values, it->wav_plus);
    append(d.values, it->wav_minus);
  }
  return d;
}

CoefficientDump make_dump(const std::vector<Bands97>& pyramid) {
  if (pyramid.empty()) throw InvalidArgument("make_dump: empty pyramid");
  CoefficientDump d;
  d.magic = "CDF1";
  d.kind = 2;
  for (const auto& level : pyramid) d.level_sizes.push_back(level.approx.size() + level.detail.size());
  append(d.values, pyramid.back().approx);
  for (auto it = pyramid.rbegin(); it != pyramid.rend(); ++it) append(d.values, it->detail);
  return d;
}

CoefficientDump make_dump(const std::vector<Pyramid2D>& channels) {
  if (channels.empty()) throw InvalidArgument("make_dump: no channels");
  const Pyramid2D& first = channels.front();
  CoefficientDump d;
  d.magic = first.kind == WaveletKind::Cdf97 ? "CDF1" : "TWV1";
  d.kind = kind_code(first.kind);
  d.depth = first.kind == WaveletKind::Cdf97
                ? 0
                : static_cast<std::uint32_t>(ternary_spec(first.kind).depth());
  d.dims = 2;
  d.channels = static_cast<std::uint32_t>(channels.size());
  d.width = first.width;
  d.height = first.height;
  for (const auto& g : first.levels) {
    d.level_sizes.push_back(g.width);
    d.level_sizes.push_back(g.height);
  }
  for (const auto& p : channels) {
    if (p.kind != first.kind || p.width != first.width || p.height != first.height ||
        p.level_count() != first.level_count())
      throw InvalidArgument("make_dump: channel pyramids differ in shape");
    append(d.values, p.coeffs.data);
  }
  return d;
}

void write_dump(std::ostream& out, const CoefficientDump& d) {
  if (d.magic.size() != 4) throw InvalidArgument("dump magic must be 4 bytes");
  out.write(d.magic.data(), 4);
  put_le(out, d.kind);
  put_le(out, d.depth);
  put_le(out, static_cast<std::uint32_t>(d.level_count()));
  put_le(out, d.dims);
  for (auto s : d.level_sizes) put_le(out, s);
  if (d.dims == 2) {
    put_le(out, d.channels);
    put_le(out, d.width);
    put_le(out, d.height);
  }
  for (double v : d.values) put_le(out, v);
  if (!out) throw std::runtime_error("failed writing coefficient dump");
}

void write_dump(const std::string& path, const CoefficientDump& dump) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  write_dump(out, dump);
}

CoefficientDump read_dump(std::istream& in) {
  CoefficientDump d;
  d.magic.resize(4);
  if (!in.read(d.magic.data(), 4)) throw DecodeError("coefficient dump truncated");
  if (d.magic != "TWV1" && d.magic != "CDF1") throw DecodeError("not a coefficient dump");
  d.kind = get_le<std::uint32_t>(in);
  d.depth = get_le<std::uint32_t>(in);
  const auto levels = get_le<std::uint32_t>(in);
  d.dims = get_le<std::uint32_t>(in);
  if (d.dims != 1 && d.dims != 2) throw DecodeError("dump has unsupported dimensionality");
  if (d.kind > 2) throw DecodeError("dump has unknown wavelet kind");
  std::uint64_t count = 0;
  for (std::uint32_t l = 0; l < levels * d.dims; ++l) d.level_sizes.push_back(get_le<std::uint64_t>(in));
  if (d.dims == 1) {
    count = levels ? d.level_sizes.front() : 0;
  } else {
    d.channels = get_le<std::uint32_t>(in);
    d.width = get_le<std::uint64_t>(in);
    d.height = get_le<std::uint64_t>(in);
    count = std::uint64_t{d.channels} * d.width * d.height;
  }
  if (count > (std::uint64_t{1} << 32)) throw DecodeError("dump size is implausible");
  d.values.reserve(count);
  for (std::uint64_t i = 0; i < count; ++i) d.values.push_back(get_le<double>(in));
  return d;
}

std::vector<Subbands1D> ternary_pyramid_from_dump(const CoefficientDump& d) {
  if (d.magic != "TWV1" || d.dims != 1 || d.kind > 1 || d.level_sizes.empty())
    throw DecodeError("not a 1-D ternary dump");
  const Cascade cascade = d.kind == 0 ? Cascade::SiteCentered : Cascade::EdgeCentered;
  std::vector<Subbands1D> pyramid;
  for (auto n : d.level_sizes) {
    Subbands1D b;
    b.plan = plan_level(static_cast<std::size_t>(n), cascade);
    pyramid.push_back(std::move(b));
  }
  for (std::size_t l = 0; l + 1 < pyramid.size(); ++l)
    if (pyramid[l].plan.n_sca != pyramid[l + 1].plan.n)
      throw DecodeError("dump level lengths do not chain");

  std::size_t pos = 0;
  auto take = [&](std::size_t count) {
    if (pos + count > d.values.size()) throw DecodeError("dump holds too few coefficients");
    std::vector<double> v(d.values.begin() + static_cast<std::ptrdiff_t>(pos),
                          d.values.begin() + static_cast<std::ptrdiff_t>(pos + count));
    pos += count;
    return v;
  };
  pyramid.back().sca = take(pyramid.back().plan.n_sca);
  for (auto it = pyramid.rbegin(); it != pyramid.rend(); ++it) {
    it->wav_plus = take(it->plan.n_wav_plus);
    it->wav_minus = take(it->plan.n_wav_minus);
  }
  if (pos != d.values.size()) throw DecodeError("dump holds extra coefficients");
  return pyramid;
}

}  // namespace ternwave
