#include "ternwave/cdf97.hpp"

#include <algorithm>
#include <numbers>
#include <string>

#include "ternwave/error.hpp"

namespace ternwave {

namespace {

// x[i] += c * (x[i-1] + x[i+1]) for every i of the given parity, with the
// whole-sample mirror x[-1] = x[1], x[n] = x[n-2].
void lift(std::span<double> x, std::size_t parity, double c) {
  const std::size_t n = x.size();
  for (std::size_t i = parity; i < n; i += 2) {
    const double left = i == 0 ? x[1] : x[i - 1];
    const double right = i + 1 == n ? x[n - 2] : x[i + 1];
    x[i] += c * (left + right);
  }
}

}  // namespace

void forward_97(std::span<const double> signal, std::span<double> out,
                const LiftingScheme97& ls) {
  const std::size_t n = signal.size();
  if (n < kCdf97MinLength)
    throw TooShort("CDF-9/7 level needs at least 9 samples, got " + std::to_string(n));
  if (out.size() != n) throw InvalidArgument("forward_97: output length mismatch");

  std::vector<double> x(signal.begin(), signal.end());
  lift(x, 1, ls.alpha);
  lift(x, 0, ls.beta);
  lift(x, 1, ls.gamma);
  lift(x, 0, ls.delta);

  const double low = std::numbers::sqrt2 / ls.zeta;
  const double high = ls.zeta / std::numbers::sqrt2;
  const std::size_t na = (n + 1) / 2;
  for (std::size_t i = 0; i < na; ++i) out[i] = low * x[2 * i];
  for (std::size_t i = 0; i < n / 2; ++i) out[na + i] = high * x[2 * i + 1];
}

void inverse_97(std::span<const double> coeffs, std::span<double> out,
                const LiftingScheme97& ls) {
  const std::size_t n = coeffs.size();
  if (n < kCdf97MinLength)
    throw TooShort("CDF-9/7 level needs at least 9 samples, got " + std::to_string(n));
  if (out.size() != n) throw InvalidArgument("inverse_97: output length mismatch");

  const double low = ls.zeta / std::numbers::sqrt2;
  const double high = std::numbers::sqrt2 / ls.zeta;
  const std::size_t na = (n + 1) / 2;
  for (std::size_t i = 0; i < na; ++i) out[2 * i] = low * coeffs[i];
  for (std::size_t i = 0; i < n / 2; ++i) out[2 * i + 1] = high * coeffs[na + i];

  lift(out, 0, -ls.delta);
  lift(out, 1, -ls.gamma);
  lift(out, 0, -ls.beta);
  lift(out, 1, -ls.alpha);
}

Bands97 forward_level_97(std::span<const double> signal, const LiftingScheme97& ls) {
  std::vector<double> out(signal.size());
  forward_97(signal, out, ls);
  const std::size_t na = (signal.size() + 1) / 2;
  return {{out.begin(), out.begin() + na}, {out.begin() + na, out.end()}};
}

std::vector<double> inverse_level_97(const Bands97& bands, const LiftingScheme97& ls) {
  if (bands.approx.size() < bands.detail.size() ||
      bands.approx.size() - bands.detail.size() > 1)
    throw InvalidArgument("inverse_level_97: approx/detail lengths are inconsistent");
  std::vector<double> joined(bands.approx);
  joined.insert(joined.end(), bands.detail.begin(), bands.detail.end());
  std::vector<double> out(joined.size());
  inverse_97(joined, out, ls);
  return out;
}

std::size_t level_count_97(std::size_t n, std::size_t max_levels) {
  std::size_t levels = 0;
  while (levels < max_levels && n >= kCdf97MinLength) {
    ++levels;
    n = (n + 1) / 2;
  }
  return levels;
}

std::vector<Bands97> forward_multi_97(std::span<const double> signal, std::size_t max_levels,
                                      const LiftingScheme97& ls) {
  if (signal.size() < kCdf97MinLength)
    throw TooShort("CDF-9/7 needs at least 9 samples, got " + std::to_string(signal.size()));
  std::vector<Bands97> levels;
  std::vector<double> current(signal.begin(), signal.end());
  const std::size_t count = level_count_97(signal.size(), max_levels);
  for (std::size_t l = 0; l < count; ++l) {
    levels.push_back(forward_level_97(current, ls));
    current = levels.back().approx;
  }
  return levels;
}

std::vector<double> inverse_multi_97(const std::vector<Bands97>& pyramid,
                                     const LiftingScheme97& ls) {
  if (pyramid.empty()) throw InvalidArgument("inverse_multi_97: empty pyramid");
  for (std::size_t l = 0; l + 1 < pyramid.size(); ++l) {
    const std::size_t next = pyramid[l + 1].approx.size() + pyramid[l + 1].detail.size();
    if (next != pyramid[l].approx.size())
      throw InvalidArgument("inverse_multi_97: level sizes do not chain");
  }
  std::vector<double> approx = inverse_level_97(pyramid.back(), ls);
  for (std::size_t l = pyramid.size() - 1; l-- > 0;) {
    Bands97 level{std::move(approx), pyramid[l].detail};
    approx = inverse_level_97(level, ls);
  }
  return approx;
}

}  // namespace ternwave
