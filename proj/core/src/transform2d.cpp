#include "ternwave/transform2d.hpp"

#include <numeric>

#include "ternwave/error.hpp"

namespace ternwave {

namespace {

std::size_t offset_of(const std::vector<std::size_t>& bands, std::size_t index) {
  return std::accumulate(bands.begin(), bands.begin() + static_cast<std::ptrdiff_t>(index),
                         std::size_t{0});
}

void transform_rows(Plane& p, std::size_t w, std::size_t h, const LineTransform& t,
                    bool inverse) {
  std::vector<double> line(w), out(w);
  for (std::size_t y = 0; y < h; ++y) {
    double* row = p.data.data() + y * p.width;
    std::copy(row, row + w, line.begin());
    inverse ? t.inverse(line, out) : t.forward(line, out);
    std::copy(out.begin(), out.end(), row);
  }
}

void transform_columns(Plane& p, std::size_t w, std::size_t h, const LineTransform& t,
                       bool inverse) {
  std::vector<double> line(h), out(h);
  for (std::size_t x = 0; x < w; ++x) {
    for (std::size_t y = 0; y < h; ++y) line[y] = p.at(x, y);
    inverse ? t.inverse(line, out) : t.forward(line, out);
    for (std::size_t y = 0; y < h; ++y) p.at(x, y) = out[y];
  }
}

}  // namespace

SubbandRect Pyramid2D::subband(std::size_t level, std::size_t by, std::size_t bx) const {
  const LevelGeometry& g = levels.at(level);
  if (by >= g.y_bands.size() || bx >= g.x_bands.size())
    throw InvalidArgument("subband index out of range");
  return {offset_of(g.x_bands, bx), offset_of(g.y_bands, by), g.x_bands[bx], g.y_bands[by]};
}

std::vector<std::uint32_t> Pyramid2D::scan_order() const {
  std::vector<std::uint32_t> order;
  order.reserve(coeffs.size());
  auto emit = [&](const SubbandRect& r) {
    for (std::size_t y = r.y0; y < r.y0 + r.height; ++y)
      for (std::size_t x = r.x0; x < r.x0 + r.width; ++x)
        order.push_back(static_cast<std::uint32_t>(y * coeffs.width + x));
  };
  if (levels.empty()) {
    emit({0, 0, width, height});
    return order;
  }
  for (std::size_t l = 0; l < levels.size(); ++l) {
    const bool coarsest = l + 1 == levels.size();
    for (std::size_t by = 0; by < levels[l].y_bands.size(); ++by)
      for (std::size_t bx = 0; bx < levels[l].x_bands.size(); ++bx) {
        if (by == 0 && bx == 0 && !coarsest) continue;
        emit(subband(l, by, bx));
      }
  }
  return order;
}

std::vector<LevelGeometry> plan_2d(WaveletKind kind, std::size_t width, std::size_t height,
                                   std::size_t max_levels) {
  const auto line = make_line_transform(kind);
  std::vector<LevelGeometry> levels;
  std::size_t w = width, h = height;
  while (levels.size() < max_levels && w >= line->min_length() && h >= line->min_length()) {
    LevelGeometry g;
    g.width = w;
    g.height = h;
    g.x_bands = line->band_sizes(w);
    g.y_bands = line->band_sizes(h);
    if (kind != WaveletKind::Cdf97) {
      const Cascade cascade = ternary_spec(kind).cascade();
      g.x_plan = plan_level(w, cascade);
      g.y_plan = plan_level(h, cascade);
    }
    w = g.x_bands[0];
    h = g.y_bands[0];
    levels.push_back(std::move(g));
  }
  return levels;
}

Pyramid2D forward2d(const Plane& plane, WaveletKind kind, std::size_t max_levels) {
  if (plane.data.size() != plane.width * plane.height)
    throw InvalidArgument("forward2d: plane storage does not match its dimensions");
  Pyramid2D pyr;
  pyr.kind = kind;
  pyr.width = plane.width;
  pyr.height = plane.height;
  pyr.levels = plan_2d(kind, plane.width, plane.height, max_levels);
  pyr.coeffs = plane;

  const auto line = make_line_transform(kind);
  for (const LevelGeometry& g : pyr.levels) {
    transform_rows(pyr.coeffs, g.width, g.height, *line, false);
    transform_columns(pyr.coeffs, g.width, g.height, *line, false);
  }
  return pyr;
}

Plane inverse2d(const Pyramid2D& pyramid) {
  if (pyramid.coeffs.width != pyramid.width || pyramid.coeffs.height != pyramid.height ||
      pyramid.coeffs.data.size() != pyramid.width * pyramid.height)
    throw InvalidArgument("inverse2d: coefficient plane does not match pyramid size");
  const auto expected =
      plan_2d(pyramid.kind, pyramid.width, pyramid.height, pyramid.levels.size());
  if (expected.size() != pyramid.levels.size())
    throw InvalidArgument("inverse2d: pyramid has more levels than its size allows");
  for (std::size_t l = 0; l < expected.size(); ++l)
    if (expected[l].width != pyramid.levels[l].width ||
        expected[l].height != pyramid.levels[l].height ||
        expected[l].x_bands != pyramid.levels[l].x_bands ||
        expected[l].y_bands != pyramid.levels[l].y_bands)
      throw InvalidArgument("inverse2d: malformed level geometry");

  Plane out = pyramid.coeffs;
  const auto line = make_line_transform(pyramid.kind);
  for (auto it = pyramid.levels.rbegin(); it != pyramid.levels.rend(); ++it) {
    transform_columns(out, it->width, it->height, *line, true);
    transform_rows(out, it->width, it->height, *line, true);
  }
  return out;
}

Pyramid2D zeros_like(const Pyramid2D& like) {
  Pyramid2D z = like;
  std::fill(z.coeffs.data.begin(), z.coeffs.data.end(), 0.0);
  return z;
}

}  // namespace ternwave
