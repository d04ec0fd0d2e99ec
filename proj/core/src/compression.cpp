#include "ternwave/compression.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ternwave/error.hpp"

namespace ternwave {

std::optional<ThresholdScope> parse_threshold_scope(std::string_view name) {
  if (name == "global") return ThresholdScope::Global;
  if (name == "per-channel") return ThresholdScope::PerChannel;
  return std::nullopt;
}

std::string_view to_string(ThresholdScope scope) {
  return scope == ThresholdScope::Global ? "global" : "per-channel";
}

QualityTarget::QualityTarget(double ms_ssim_min) : value_(ms_ssim_min) {
  if (!(ms_ssim_min > 0.0 && ms_ssim_min < 1.0))
    throw InvalidArgument("quality target must lie strictly inside (0, 1)");
}

std::size_t total_coefficients(const ChannelPyramids& pyramids) {
  std::size_t total = 0;
  for (const auto& p : pyramids) total += p.coefficient_count();
  return total;
}

// ---------------------------------------------------------------------------

CoefficientRanking::CoefficientRanking(const ChannelPyramids& pyramids, ThresholdScope scope)
    : scope_(scope), total_(total_coefficients(pyramids)) {
  order_.resize(scope == ThresholdScope::Global ? 1 : pyramids.size());
  for (std::size_t c = 0; c < pyramids.size(); ++c) {
    auto& list = order_[scope == ThresholdScope::Global ? 0 : c];
    for (std::uint32_t idx : pyramids[c].scan_order())
      list.push_back({static_cast<std::uint32_t>(c), idx});
  }
  for (auto& list : order_)
    std::stable_sort(list.begin(), list.end(), [&](const Entry& a, const Entry& b) {
      return std::abs(pyramids[a.channel].coeffs.data[a.index]) >
             std::abs(pyramids[b.channel].coeffs.data[b.index]);
    });
}

std::vector<std::size_t> CoefficientRanking::quotas(std::size_t m) const {
  if (m > total_)
    throw InvalidArgument("cannot keep " + std::to_string(m) + " of " + std::to_string(total_) +
                          " coefficients");
  if (scope_ == ThresholdScope::Global) return {m};
  const std::size_t channels = order_.size();
  std::vector<std::size_t> q(channels, m / channels);
  for (std::size_t c = 0; c < m % channels; ++c) ++q[c];
  for (std::size_t c = 0; c < channels; ++c)
    if (q[c] > order_[c].size())
      throw InvalidArgument("per-channel quota exceeds the channel's coefficient count");
  return q;
}

ChannelPyramids CoefficientRanking::keep(const ChannelPyramids& pyramids, std::size_t m) const {
  ChannelPyramids out;
  out.reserve(pyramids.size());
  for (const auto& p : pyramids) out.push_back(zeros_like(p));
  const auto q = quotas(m);
  for (std::size_t l = 0; l < order_.size(); ++l)
    for (std::size_t i = 0; i < q[l]; ++i) {
      const Entry& e = order_[l][i];
      out[e.channel].coeffs.data[e.index] = pyramids[e.channel].coeffs.data[e.index];
    }
  return out;
}

Pyramid2D CoefficientRanking::keep_channel(const ChannelPyramids& pyramids, std::size_t m,
                                           std::size_t channel) const {
  Pyramid2D out = zeros_like(pyramids.at(channel));
  const auto q = quotas(m);
  for (std::size_t l = 0; l < order_.size(); ++l)
    for (std::size_t i = 0; i < q[l]; ++i) {
      const Entry& e = order_[l][i];
      if (e.channel == channel)
        out.coeffs.data[e.index] = pyramids[e.channel].coeffs.data[e.index];
    }
  return out;
}

void threshold_keep_m(ChannelPyramids& pyramids, std::size_t m, ThresholdScope scope) {
  const CoefficientRanking ranking(pyramids, scope);
  pyramids = ranking.keep(pyramids, m);
}

// ---------------------------------------------------------------------------

namespace {

ChannelPyramids forward_channels(const ImagePlanes& image, WaveletKind wavelet,
                                 std::size_t max_levels) {
  ChannelPyramids out;
  Plane y = image.y;
  for (double& v : y.data) v -= kLumaLevelShift;
  out.push_back(forward2d(y, wavelet, max_levels));
  for (std::size_t c = 1; c < 3; ++c) out.push_back(forward2d(image.channel(c), wavelet, max_levels));
  return out;
}

Plane inverse_channel(const Pyramid2D& p, std::size_t c) {
  Plane out = inverse2d(p);
  if (c == 0)
    for (double& v : out.data) v += kLumaLevelShift;
  return out;
}

}  // namespace

ImagePlanes reconstruct_at_m(const ImagePlanes& image, WaveletKind wavelet, std::size_t m,
                             const CompressionOptions& options) {
  const ChannelPyramids pyramids = forward_channels(image, wavelet, options.max_levels);
  const CoefficientRanking ranking(pyramids, options.scope);
  const ChannelPyramids kept = ranking.keep(pyramids, m);
  ImagePlanes out = image;
  for (std::size_t c = 0; c < 3; ++c) out.channel(c) = inverse_channel(kept[c], c);
  return out;
}

QualityCurve::QualityCurve(const ImagePlanes& image, WaveletKind wavelet,
                           const CompressionOptions& options)
    : image_(image),
      options_(options),
      pyramids_(forward_channels(image, wavelet, options.max_levels)),
      ranking_(pyramids_, options.scope) {}

std::size_t QualityCurve::levels() const noexcept {
  return pyramids_.empty() ? 0 : pyramids_.front().level_count();
}

double QualityCurve::operator()(std::size_t m) {
  if (auto it = cache_.find(m); it != cache_.end()) return it->second;
  double score = 0.0;
  if (options_.channels == MsSsimChannels::Y) {
    const Plane y = inverse_channel(ranking_.keep_channel(pyramids_, m, 0), 0);
    score = ms_ssim(image_.y, y, options_.params);
  } else {
    const ChannelPyramids kept = ranking_.keep(pyramids_, m);
    ImagePlanes approx = image_;
    for (std::size_t c = 0; c < 3; ++c) approx.channel(c) = inverse_channel(kept[c], c);
    score = ms_ssim(image_, approx, options_.channels, options_.params);
  }
  cache_.emplace(m, score);
  return score;
}

CompressionResult min_coeffs_for_quality(const ImagePlanes& image, WaveletKind wavelet,
                                         QualityTarget target,
                                         const CompressionOptions& options) {
  QualityCurve curve(image, wavelet, options);
  const double goal = target.value();
  const std::size_t total = curve.total();

  CompressionResult r;
  r.wavelet = wavelet;
  r.total = total;
  r.levels = curve.levels();

  const double best = curve(total);
  if (best < goal)
    throw UnattainableQuality("MS-SSIM target " + std::to_string(goal) +
                                  " unreachable: keeping every coefficient gives " +
                                  std::to_string(best),
                              best);

  if (curve(0) >= goal) {
    r.m_min = 0;
    r.achieved = curve(0);
    r.achieved_below = std::nan("");
    r.evaluations = curve.evaluations();
    return r;
  }

  std::size_t lo = 0, hi = total;  // curve(lo) < goal <= curve(hi)
  while (hi - lo > 1) {
    const std::size_t mid = lo + (hi - lo) / 2;
    (curve(mid) >= goal ? hi : lo) = mid;
  }

  const std::size_t g = options.guard_window;
  r.scan_lo = hi > g ? hi - g : 1;
  r.scan_hi = std::min(total, hi + g);
  std::size_t m_min = hi;
  for (std::size_t m = r.scan_lo; m <= r.scan_hi; ++m)
    if (curve(m) >= goal) {
      m_min = m;
      break;
    }
  for (std::size_t m = m_min + 1; m <= r.scan_hi; ++m)
    if (curve(m) < goal) r.non_monotone = true;
  // The scan window's lower edge passed: keep walking down until the bracket closes.
  while (m_min > 0 && curve(m_min - 1) >= goal) {
    --m_min;
    r.non_monotone = true;
    r.scan_lo = std::min(r.scan_lo, m_min);
  }

  r.m_min = m_min;
  r.achieved = curve(m_min);
  r.achieved_below = curve(m_min - 1);
  r.evaluations = curve.evaluations();
  return r;
}

double relative_performance(std::size_t m_tern, std::size_t m_cdf) {
  if (m_cdf == 0) throw InvalidArgument("relative_performance: m_cdf must be positive");
  return 1.0 - static_cast<double>(m_tern) / static_cast<double>(m_cdf);
}

}  // namespace ternwave
