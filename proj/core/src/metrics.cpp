#include "ternwave/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "ternwave/error.hpp"

namespace ternwave {

namespace {

void require_same_dims(const Plane& a, const Plane& b) {
  if (a.width != b.width || a.height != b.height)
    throw InvalidArgument("image dimensions differ: " + std::to_string(a.width) + "x" +
                          std::to_string(a.height) + " vs " + std::to_string(b.width) + "x" +
                          std::to_string(b.height));
}

std::vector<double> gaussian_taps(const MsSsimParams& p) {
  const auto r = static_cast<std::ptrdiff_t>(p.radius);
  std::vector<double> taps;
  for (std::ptrdiff_t i = -r; i <= r; ++i)
    taps.push_back(std::exp(-double(i * i) / (2.0 * p.sigma * p.sigma)));
  const double sum = std::accumulate(taps.begin(), taps.end(), 0.0);
  for (double& t : taps) t /= sum;
  return taps;
}

// Separable 'valid' filtering.
Plane filter_valid(const Plane& in, const std::vector<double>& taps) {
  const std::size_t k = taps.size();
  const std::size_t ow = in.width - k + 1, oh = in.height - k + 1;
  Plane tmp(ow, in.height);
  for (std::size_t y = 0; y < in.height; ++y) {
    const double* row = in.data.data() + y * in.width;
    for (std::size_t x = 0; x < ow; ++x) {
      double s = 0.0;
      for (std::size_t i = 0; i < k; ++i) s += taps[i] * row[x + i];
      tmp.at(x, y) = s;
    }
  }
  Plane out(ow, oh);
  for (std::size_t y = 0; y < oh; ++y)
    for (std::size_t x = 0; x < ow; ++x) {
      double s = 0.0;
      for (std::size_t i = 0; i < k; ++i) s += taps[i] * tmp.at(x, y + i);
      out.at(x, y) = s;
    }
  return out;
}

Plane product(const Plane& a, const Plane& b) {
  Plane out(a.width, a.height);
  for (std::size_t i = 0; i < a.size(); ++i) out.data[i] = a.data[i] * b.data[i];
  return out;
}

struct SsimTerms {
  double mean_ssim = 0.0;  // mean of l * cs
  double mean_cs = 0.0;
  Plane map;
};

SsimTerms ssim_terms(const Plane& a, const Plane& b, const MsSsimParams& p, bool keep_map) {
  require_same_dims(a, b);
  if (a.width < p.window() || a.height < p.window())
    throw TooShort("image smaller than the " + std::to_string(p.window()) + "-pixel SSIM window");
  const auto taps = gaussian_taps(p);
  const double c1 = (p.k1 * p.dynamic_range) * (p.k1 * p.dynamic_range);
  const double c2 = (p.k2 * p.dynamic_range) * (p.k2 * p.dynamic_range);

  const Plane mu_a = filter_valid(a, taps);
  const Plane mu_b = filter_valid(b, taps);
  const Plane aa = filter_valid(product(a, a), taps);
  const Plane bb = filter_valid(product(b, b), taps);
  const Plane ab = filter_valid(product(a, b), taps);

  SsimTerms t;
  if (keep_map) t.map = Plane(mu_a.width, mu_a.height);
  double sum_ssim = 0.0, sum_cs = 0.0;
  for (std::size_t i = 0; i < mu_a.size(); ++i) {
    const double ma = mu_a.data[i], mb = mu_b.data[i];
    const double va = aa.data[i] - ma * ma;
    const double vb = bb.data[i] - mb * mb;
    const double cov = ab.data[i] - ma * mb;
    const double l = (2.0 * ma * mb + c1) / (ma * ma + mb * mb + c1);
    const double cs = (2.0 * cov + c2) / (va + vb + c2);
    sum_ssim += l * cs;
    sum_cs += cs;
    if (keep_map) t.map.data[i] = l * cs;
  }
  const auto count = static_cast<double>(mu_a.size());
  t.mean_ssim = sum_ssim / count;
  t.mean_cs = sum_cs / count;
  return t;
}

}  // namespace

std::vector<double> MsSsimParams::default_weights() {
  std::vector<double> w{0.0448, 0.2856, 0.3001, 0.2363, 0.1333};
  const double sum = std::accumulate(w.begin(), w.end(), 0.0);
  for (double& v : w) v /= sum;
  return w;
}

std::optional<MsSsimChannels> parse_msssim_channels(std::string_view name) {
  if (name == "y") return MsSsimChannels::Y;
  if (name == "ycbcr-mean") return MsSsimChannels::YCbCrMean;
  return std::nullopt;
}

std::string_view to_string(MsSsimChannels c) {
  return c == MsSsimChannels::Y ? "y" : "ycbcr-mean";
}

Plane ssim_map(const Plane& a, const Plane& b, const MsSsimParams& params) {
  return ssim_terms(a, b, params, true).map;
}

double ssim(const Plane& a, const Plane& b, const MsSsimParams& params) {
  return ssim_terms(a, b, params, false).mean_ssim;
}

std::size_t effective_scales(std::size_t width, std::size_t height,
                             const MsSsimParams& params) {
  std::size_t scales = 0;
  std::size_t dim = std::min(width, height);
  while (scales < params.scales && dim >= params.window()) {
    ++scales;
    dim /= 2;
  }
  return scales;
}

double ms_ssim(const Plane& a, const Plane& b, const MsSsimParams& params) {
  require_same_dims(a, b);
  if (params.scales == 0 || params.weights.size() < params.scales)
    throw InvalidArgument("ms_ssim: need one weight per scale");
  const std::size_t scales = effective_scales(a.width, a.height, params);
  if (scales == 0)
    throw TooShort("image smaller than the " + std::to_string(params.window()) +
                   "-pixel SSIM window");

  const double weight_sum =
      std::accumulate(params.weights.begin(), params.weights.begin() + scales, 0.0);

  Plane pa = a, pb = b;
  double score = 1.0;
  for (std::size_t s = 0; s < scales; ++s) {
    const SsimTerms t = ssim_terms(pa, pb, params, false);
    const double w = params.weights[s] / weight_sum;
    const bool coarsest = s + 1 == scales;
    const double term = std::max(0.0, coarsest ? t.mean_ssim : t.mean_cs);
    score *= std::pow(term, w);
    if (!coarsest) {
      pa = downsample_dyadic(pa);
      pb = downsample_dyadic(pb);
    }
  }
  return score;
}

double ms_ssim(const ImagePlanes& a, const ImagePlanes& b, MsSsimChannels channels,
               const MsSsimParams& params) {
  if (channels == MsSsimChannels::Y) return ms_ssim(a.y, b.y, params);
  auto shifted = [](const Plane& p) {
    Plane out = p;
    for (double& v : out.data) v += 0.5;
    return out;
  };
  return (ms_ssim(a.y, b.y, params) + ms_ssim(shifted(a.cb), shifted(b.cb), params) +
          ms_ssim(shifted(a.cr), shifted(b.cr), params)) /
         3.0;
}

Plane downsample_dyadic(const Plane& plane) {
  Plane out(plane.width / 2, plane.height / 2);
  for (std::size_t y = 0; y < out.height; ++y)
    for (std::size_t x = 0; x < out.width; ++x)
      out.at(x, y) = 0.25 * (plane.at(2 * x, 2 * y) + plane.at(2 * x + 1, 2 * y) +
                             plane.at(2 * x, 2 * y + 1) + plane.at(2 * x + 1, 2 * y + 1));
  return out;
}

double psnr(const Plane& a, const Plane& b, double peak) {
  require_same_dims(a, b);
  double mse = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) mse += (a.data[i] - b.data[i]) * (a.data[i] - b.data[i]);
  mse /= static_cast<double>(a.size());
  if (mse == 0.0) return std::numeric_limits<double>::infinity();
  return 10.0 * std::log10(peak * peak / mse);
}

}  // namespace ternwave
