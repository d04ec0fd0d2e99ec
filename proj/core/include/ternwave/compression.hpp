#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ternwave/image.hpp"
#include "ternwave/metrics.hpp"
#include "ternwave/transform2d.hpp"
#include "ternwave/wavelet.hpp"

namespace ternwave {

enum class ThresholdScope { Global, PerChannel };
std::optional<ThresholdScope> parse_threshold_scope(std::string_view name);
std::string_view to_string(ThresholdScope scope);

/// MS-SSIM level a compressed image must reach; strictly inside (0, 1).
class QualityTarget {
 public:
  explicit QualityTarget(double ms_ssim_min);
  double value() const noexcept { return value_; }

  static constexpr double kHigh = 0.99;
  static constexpr double kMedium = 0.98;
  static constexpr double kLow = 0.95;

 private:
  double value_;
};

using ChannelPyramids = std::vector<Pyramid2D>;

std::size_t total_coefficients(const ChannelPyramids& pyramids);

/// Order in which coefficients survive thresholding: descending magnitude,
/// ties by scan order (channel, level, subband, row-major index).
class CoefficientRanking {
 public:
  struct Entry {
    std::uint32_t channel;
    std::uint32_t index;  // flat index into the channel's coefficient plane
  };

  CoefficientRanking(const ChannelPyramids& pyramids, ThresholdScope scope);

  std::size_t total() const noexcept { return total_; }

  /// Copy of `pyramids` keeping exactly m coefficients.
  ChannelPyramids keep(const ChannelPyramids& pyramids, std::size_t m) const;
  /// Same, restricted to one channel.
  Pyramid2D keep_channel(const ChannelPyramids& pyramids, std::size_t m,
                         std::size_t channel) const;

 private:
  std::vector<std::size_t> quotas(std::size_t m) const;

  ThresholdScope scope_;
  std::size_t total_ = 0;
  std::vector<std::vector<Entry>> order_;  // one list (global) or one per channel
};

/// Keeps the m largest-magnitude coefficients and zeroes the rest. Per-channel
/// scope splits m evenly, remainder going to the earlier channels.
/// Throws InvalidArgument when m exceeds the coefficient count.
void threshold_keep_m(ChannelPyramids& pyramids, std::size_t m,
                      ThresholdScope scope = ThresholdScope::Global);

struct CompressionOptions {
  ThresholdScope scope = ThresholdScope::Global;
  MsSsimChannels channels = MsSsimChannels::Y;
  MsSsimParams params;
  std::size_t max_levels = std::numeric_limits<std::size_t>::max();
  std::size_t guard_window = 8;
};

/// Luma is coded as y - kLumaLevelShift so that an empty pyramid decodes to
/// a flat mid-gray image; chroma is already centred on zero.
inline constexpr double kLumaLevelShift = 0.5;

/// Forward transform of each channel, keep m, inverse. Output is YCbCr;
/// convert with ycbcr_to_rgb when RGB is needed.
ImagePlanes reconstruct_at_m(const ImagePlanes& image, WaveletKind wavelet, std::size_t m,
                             const CompressionOptions& options = {});

struct CompressionResult {
  WaveletKind wavelet = WaveletKind::TernaryI;
  std::size_t m_min = 0;
  std::size_t total = 0;
  std::size_t levels = 0;
  double achieved = 0.0;        // MS-SSIM at m_min
  double achieved_below = 0.0;  // MS-SSIM at m_min - 1 (NaN when m_min == 0)
  bool non_monotone = false;
  std::size_t scan_lo = 0;  // guard window actually examined
  std::size_t scan_hi = 0;
  std::size_t evaluations = 0;
};

/// MS-SSIM of the reconstruction as a function of the kept count m, with the
/// forward transforms and the ranking computed once.
class QualityCurve {
 public:
  QualityCurve(const ImagePlanes& image, WaveletKind wavelet, const CompressionOptions& options);

  std::size_t total() const noexcept { return ranking_.total(); }
  std::size_t levels() const noexcept;
  /// Memoised.
  double operator()(std::size_t m);
  std::size_t evaluations() const noexcept { return cache_.size(); }

 private:
  const ImagePlanes& image_;
  CompressionOptions options_;
  ChannelPyramids pyramids_;
  CoefficientRanking ranking_;
  std::map<std::size_t, double> cache_;
};

/// Binary search for the smallest m whose reconstruction meets the target,
/// then a +-guard_window linear scan around the crossover. The returned m_min
/// always satisfies achieved >= target > achieved_below; non_monotone records
/// whether the scan saw the score dip below the target above m_min or had
/// to walk further down. Throws UnattainableQuality when even m = total fails.
CompressionResult min_coeffs_for_quality(const ImagePlanes& image, WaveletKind wavelet,
                                         QualityTarget target,
                                         const CompressionOptions& options = {});

/// 1 - m_tern / m_cdf. Throws InvalidArgument when m_cdf == 0.
double relative_performance(std::size_t m_tern, std::size_t m_cdf);

struct BenchmarkRecord {
  std::string image_id;
  WaveletKind ternary = WaveletKind::TernaryI;
  WaveletKind baseline = WaveletKind::Cdf97;
  double target = QualityTarget::kHigh;
  std::size_t m_tern = 0;
  std::size_t m_cdf = 0;
  double beta_c = 0.0;
};

}  // namespace ternwave
