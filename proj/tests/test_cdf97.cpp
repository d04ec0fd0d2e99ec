#include <gtest/gtest.h>

#include <Eigen/Dense>

#include <array>
#include <cmath>
#include <numbers>
#include <vector>

#include "support.hpp"
#include "ternwave/cdf97.hpp"
#include "ternwave/error.hpp"

using namespace ternwave;

namespace {

// Irreversible 9/7 analysis filters as published for JPEG 2000 (low-pass DC
// gain 1, high-pass Nyquist gain 2), index 0 is the centre tap.
constexpr std::array<double, 5> kLow{0.602949018236, 0.266864118443, -0.078223266529,
                                     -0.016864118443, 0.026748757411};
constexpr std::array<double, 4> kHigh{1.115087052457, -0.591271763114, -0.057543526229,
                                      0.091271763114};

double reflect_at(const std::vector<double>& x, std::ptrdiff_t p) {
  const auto n = static_cast<std::ptrdiff_t>(x.size());
  while (p < 0 || p >= n) {
    if (p < 0) p = -p;
    if (p >= n) p = 2 * n - 2 - p;
  }
  return x[static_cast<std::size_t>(p)];
}

// Direct convolution on the whole-sample symmetric extension, rescaled to the
// library's normalisation (low-pass times sqrt 2, high-pass over sqrt 2).
Bands97 convolve_97(const std::vector<double>& x) {
  Bands97 b;
  const auto n = static_cast<std::ptrdiff_t>(x.size());
  for (std::ptrdiff_t i = 0; 2 * i < n; ++i) {
    double s = kLow[0] * reflect_at(x, 2 * i);
    for (std::ptrdiff_t k = 1; k < 5; ++k)
      s += kLow[static_cast<std::size_t>(k)] * (reflect_at(x, 2 * i - k) + reflect_at(x, 2 * i + k));
    b.approx.push_back(std::numbers::sqrt2 * s);
  }
  for (std::ptrdiff_t i = 0; 2 * i + 1 < n; ++i) {
    const std::ptrdiff_t c = 2 * i + 1;
    double s = kHigh[0] * reflect_at(x, c);
    for (std::ptrdiff_t k = 1; k < 4; ++k)
      s += kHigh[static_cast<std::size_t>(k)] * (reflect_at(x, c - k) + reflect_at(x, c + k));
    b.detail.push_back(s / std::numbers::sqrt2);
  }
  return b;
}

}  // namespace

TEST(Cdf97, MatchesPublishedFilterConvolution) {
  twtest::for_all(100, 97, [](twtest::Gen& g, std::size_t i) {
    const std::size_t n = i == 0 ? 17 : g.size(9, 200);
    const auto x = g.vec(n, -4.0, 4.0);
    const Bands97 got = forward_level_97(x);
    const Bands97 ref = convolve_97(x);
    ASSERT_EQ(got.approx.size(), (n + 1) / 2);
    ASSERT_EQ(got.detail.size(), n / 2);
    // The published taps carry 12 decimals.
    EXPECT_LT(twtest::max_abs_diff(got.approx, ref.approx), 1e-10);
    EXPECT_LT(twtest::max_abs_diff(got.detail, ref.detail), 1e-10);
  });
}

TEST(Cdf97, AnalysisHighPassHasFourVanishingMoments) {
  // Probe the detail response of an interior coefficient.
  const std::size_t n = 64, i = 16;
  std::vector<double> e(n, 0.0), taps;
  for (std::size_t j = 0; j < n; ++j) {
    e[j] = 1.0;
    taps.push_back(forward_level_97(e).detail[i]);
    e[j] = 0.0;
  }
  for (int alpha = 0; alpha <= 3; ++alpha) {
    double m = 0.0;
    for (std::size_t j = 0; j < n; ++j)
      m += std::pow(static_cast<double>(j) - static_cast<double>(2 * i + 1), alpha) * taps[j];
    EXPECT_NEAR(m, 0.0, 1e-12) << "alpha " << alpha;
  }
  double m4 = 0.0;
  for (std::size_t j = 0; j < n; ++j) m4 += std::pow(static_cast<double>(j) - 33.0, 4) * taps[j];
  EXPECT_GT(std::abs(m4), 1e-3);
}

TEST(Cdf97, ConstantAndPolynomialSignals) {
  const std::vector<double> c(40, 3.5);
  EXPECT_LT(twtest::max_abs(forward_level_97(c).detail), 1e-12);

  std::vector<double> ramp(64), cubic(64);
  for (std::size_t j = 0; j < 64; ++j) {
    const double t = static_cast<double>(j) / 64.0;
    ramp[j] = 2.0 * t - 0.5;
    cubic[j] = t * t * t - 0.7 * t * t + 0.1;
  }
  for (const auto* x : {&ramp, &cubic}) {
    const auto d = forward_level_97(*x).detail;
    for (std::size_t i = 3; i + 3 < d.size(); ++i) EXPECT_NEAR(d[i], 0.0, 1e-10) << i;
  }
}

TEST(Cdf97, SingleLevelRoundTrip) {
  twtest::Gen g(971);
  for (std::size_t n = 9; n <= 200; ++n) {
    const auto x = g.vec(n, -5.0, 5.0);
    ASSERT_LT(twtest::max_abs_diff(inverse_level_97(forward_level_97(x)), x), 1e-10) << n;
    std::vector<double> flat(n), back(n);
    forward_97(x, flat);
    inverse_97(flat, back);
    ASSERT_LT(twtest::max_abs_diff(back, x), 1e-10) << n;
  }
}

TEST(Cdf97, ZerosAndDuals) {
  Bands97 z{std::vector<double>(9, 0.0), std::vector<double>(8, 0.0)};
  EXPECT_EQ(twtest::max_abs(inverse_level_97(z)), 0.0);

  // Dual vectors: columns of the inverse of the analysis matrix.
  const std::size_t n = 40;
  Eigen::MatrixXd M(n, n);
  std::vector<double> e(n, 0.0), col(n);
  for (std::size_t j = 0; j < n; ++j) {
    e[j] = 1.0;
    forward_97(e, col);
    e[j] = 0.0;
    for (std::size_t i = 0; i < n; ++i) M(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = col[i];
  }
  const Eigen::MatrixXd Minv = M.inverse();
  std::vector<double> out(n);
  for (std::size_t k = 0; k < n; ++k) {
    e[k] = 1.0;
    inverse_97(e, out);
    e[k] = 0.0;
    std::vector<double> dual(n);
    for (std::size_t i = 0; i < n; ++i) dual[i] = Minv(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k));
    EXPECT_LT(twtest::max_abs_diff(out, dual), 1e-10) << k;
  }

  // Interior dual wavelet against the published synthesis filter, which is
  // the analysis low-pass modulated by (-1)^k and centred on the odd sample.
  e.assign(n, 0.0);
  const std::size_t i = 10, centre = 2 * i + 1;
  e[n / 2 + i] = 1.0;
  inverse_97(e, out);
  for (std::size_t j = 0; j < n; ++j) {
    const auto d = static_cast<std::ptrdiff_t>(j) - static_cast<std::ptrdiff_t>(centre);
    const auto a = static_cast<std::size_t>(std::abs(d));
    const double expect = a < 5 ? std::numbers::sqrt2 * (a % 2 ? -1.0 : 1.0) * kLow[a] : 0.0;
    EXPECT_NEAR(out[j], expect, 1e-10) << j;
  }
}

TEST(Cdf97, MultiLevel) {
  EXPECT_EQ(level_count_97(1024, 99), 7u);
  // Direct recursion on the stop rule.
  std::size_t n = 1024, levels = 0;
  while (n >= kCdf97MinLength) ++levels, n = (n + 1) / 2;
  EXPECT_EQ(levels, 7u);

  twtest::Gen g(972);
  const auto x = g.vec(1024);
  const auto pyr = forward_multi_97(x, 99);
  EXPECT_EQ(pyr.size(), 7u);
  EXPECT_EQ(pyr.back().approx.size(), 8u);
  EXPECT_LT(twtest::max_abs_diff(inverse_multi_97(pyr), x), 1e-10);

  for (std::size_t len = 9; len <= 200; ++len) {
    const auto y = g.vec(len);
    ASSERT_LT(twtest::max_abs_diff(inverse_multi_97(forward_multi_97(y, 99)), y), 1e-10) << len;
  }

  const std::vector<double> c(300, -2.0);
  for (const auto& lvl : forward_multi_97(c, 99)) EXPECT_LT(twtest::max_abs(lvl.detail), 1e-11);
  EXPECT_EQ(forward_multi_97(x, 3).size(), 3u);
}

TEST(Cdf97, Errors) {
  EXPECT_THROW(forward_level_97(std::vector<double>(8, 1.0)), TooShort);
  Bands97 bad{std::vector<double>(5, 0.0), std::vector<double>(3, 0.0)};
  EXPECT_THROW(inverse_level_97(bad), InvalidArgument);
}
