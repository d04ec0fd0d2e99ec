#pragma once

#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

#include "ternwave/image.hpp"

namespace ternwave {

/// MS-SSIM settings. Defaults follow the original multi-scale SSIM
/// publication: five scales, 11-tap Gaussian window with sigma 1.5,
/// K1 = 0.01, K2 = 0.03.
struct MsSsimParams {
  std::size_t scales = 5;
  std::vector<double> weights = default_weights();
  double sigma = 1.5;
  std::size_t radius = 5;
  double k1 = 0.01;
  double k2 = 0.03;
  double dynamic_range = 1.0;

  std::size_t window() const noexcept { return 2 * radius + 1; }

  /// {0.0448, 0.2856, 0.3001, 0.2363, 0.1333} normalised to sum to 1.
  static std::vector<double> default_weights();
};

enum class MsSsimChannels { Y, YCbCrMean };
std::optional<MsSsimChannels> parse_msssim_channels(std::string_view name);
std::string_view to_string(MsSsimChannels c);

/// Per-window SSIM over the 'valid' region: (w - window + 1) x (h - window + 1).
Plane ssim_map(const Plane& a, const Plane& b, const MsSsimParams& params = {});
double ssim(const Plane& a, const Plane& b, const MsSsimParams& params = {});

/// Number of scales actually used for a w x h image: the largest count not
/// above params.scales that keeps the coarsest scale at least one window
/// wide. Zero when even the full-resolution image is smaller than a window.
std::size_t effective_scales(std::size_t width, std::size_t height, const MsSsimParams& params);

/// Luminance at the coarsest scale, contrast-structure at every scale,
/// combined with the weights. Negative per-scale terms are clamped to zero
/// before exponentiation. Throws InvalidArgument on a dimension mismatch and
/// TooShort when the image is smaller than one window.
double ms_ssim(const Plane& a, const Plane& b, const MsSsimParams& params = {});

/// Y only, or the mean over Y, Cb + 0.5 and Cr + 0.5.
double ms_ssim(const ImagePlanes& a, const ImagePlanes& b, MsSsimChannels channels,
               const MsSsimParams& params = {});

/// 2x2 box average followed by decimation; odd trailing rows/columns dropped.
Plane downsample_dyadic(const Plane& plane);

/// Debug aid only.
double psnr(const Plane& a, const Plane& b, double peak = 1.0);

}  // namespace ternwave
