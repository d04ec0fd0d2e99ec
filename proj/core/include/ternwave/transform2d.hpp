#pragma once

// Separable multi-level 2-D transforms in the usual nested (Mallat) layout:
// each level transforms every row then every column of the current scaling
// region in place, and the next level recurses on the top-left
// scaling x scaling block.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "ternwave/image.hpp"
#include "ternwave/ternary.hpp"
#include "ternwave/wavelet.hpp"

namespace ternwave {

struct LevelGeometry {
  std::size_t width = 0;   // region transformed at this level
  std::size_t height = 0;
  std::vector<std::size_t> x_bands;  // band widths along a row
  std::vector<std::size_t> y_bands;  // band heights along a column
  std::optional<LevelPlan> x_plan;   // ternary only
  std::optional<LevelPlan> y_plan;
};

struct SubbandRect {
  std::size_t x0 = 0, y0 = 0, width = 0, height = 0;
};

struct Pyramid2D {
  WaveletKind kind = WaveletKind::TernaryI;
  std::size_t width = 0;
  std::size_t height = 0;
  std::vector<LevelGeometry> levels;  // finest first
  Plane coeffs;

  std::size_t level_count() const noexcept { return levels.size(); }
  std::size_t bands_per_axis() const noexcept { return kind == WaveletKind::Cdf97 ? 2 : 3; }
  std::size_t coefficient_count() const noexcept { return coeffs.size(); }

  /// Rectangle of subband (by, bx) at a level; band 0 is the scaling band.
  SubbandRect subband(std::size_t level, std::size_t by, std::size_t bx) const;

  /// Flat coefficient indices in canonical scan order: level (finest first),
  /// subband in grid order, row-major within the subband. Scaling x scaling
  /// blocks appear only at the coarsest level.
  std::vector<std::uint32_t> scan_order() const;
};

/// Level geometry a w x h plane would get with at most max_levels levels.
std::vector<LevelGeometry> plan_2d(WaveletKind kind, std::size_t width, std::size_t height,
                                   std::size_t max_levels);

/// Planes smaller than the family minimum in either direction produce a
/// zero-level (identity) pyramid.
Pyramid2D forward2d(const Plane& plane, WaveletKind kind, std::size_t max_levels);
Plane inverse2d(const Pyramid2D& pyramid);

/// Pyramid of the same shape as `like` with every coefficient zeroed.
Pyramid2D zeros_like(const Pyramid2D& like);

}  // namespace ternwave
