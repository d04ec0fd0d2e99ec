#pragma once

// CDF-9/7 biorthogonal wavelet via lifting, whole-sample symmetric extension.
//
// Even samples become the approximation band (ceil(n/2) values), odd samples
// the detail band (floor(n/2)). Bands are normalised so the low-pass DC gain
// is sqrt(2), matching the scale of the orthogonal ternary transforms.

#include <cstddef>
#include <span>
#include <vector>

namespace ternwave {

struct LiftingScheme97 {
  double alpha = -1.586134342059924;
  double beta = -0.052980118572961;
  double gamma = 0.882911075530934;
  double delta = 0.443506852043971;
  double zeta = 1.230174104914001;
};

inline constexpr std::size_t kCdf97MinLength = 9;

struct Bands97 {
  std::vector<double> approx;
  std::vector<double> detail;
};

/// Throws TooShort for n < 9.
Bands97 forward_level_97(std::span<const double> signal, const LiftingScheme97& ls = {});
/// Throws InvalidArgument unless approx.size() - detail.size() is 0 or 1.
std::vector<double> inverse_level_97(const Bands97& bands, const LiftingScheme97& ls = {});

/// Contiguous layout [approx | detail]; in and out must have equal length.
void forward_97(std::span<const double> signal, std::span<double> out,
                const LiftingScheme97& ls = {});
void inverse_97(std::span<const double> coeffs, std::span<double> out,
                const LiftingScheme97& ls = {});

/// Finest level first; recursion on the approximation band while its length
/// is >= 9.
std::vector<Bands97> forward_multi_97(std::span<const double> signal, std::size_t max_levels,
                                      const LiftingScheme97& ls = {});
std::vector<double> inverse_multi_97(const std::vector<Bands97>& pyramid,
                                     const LiftingScheme97& ls = {});

std::size_t level_count_97(std::size_t n, std::size_t max_levels);

}  // namespace ternwave
