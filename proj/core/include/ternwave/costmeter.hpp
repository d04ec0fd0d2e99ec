#pragma once

// Scalar-multiplication cost model. Ternary rows are counted with every v_k
// rescaled by sqrt(2)/sin(theta_k), which leaves five non-trivial entries per
// 3x3 gate; rows with theta in {0, pi} reduce to signed permutations and are
// free. Multiplications by exactly 0 or +-1 are never counted.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>

#include "ternwave/ternary.hpp"
#include "ternwave/wavelet.hpp"

namespace ternwave {

/// Rows of the circuit that are not signed permutations.
std::size_t nontrivial_rows(const TernaryCircuitSpec& spec);

/// (5/3) n per non-trivial row. Throws InvalidArgument unless n is a multiple of 3.
std::uint64_t mu_ternary_level(std::size_t n, const TernaryCircuitSpec& spec);

/// 3n (four lifting steps plus the two scalings). Throws InvalidArgument for n < 2.
std::uint64_t mu_cdf_level(std::size_t n);

struct ImageCost {
  WaveletKind family = WaveletKind::Cdf97;
  std::size_t n = 0;
  std::size_t levels = 0;
  std::uint64_t total = 0;  // interior model summed over the levels actually run
  double per_n2 = 0.0;
  double asymptote = 0.0;  // infinite-depth limit of total / n^2
  bool near_asymptote = false;  // within 2 % of the limit
};

/// Square n x n image, rows and columns at every level, recursing on the
/// scaling block as long as the 2-D transform does.
ImageCost mu_image_total(WaveletKind family, std::size_t n);

struct CostReport {
  WaveletKind family = WaveletKind::Cdf97;
  std::size_t n = 0;
  std::size_t levels = 0;
  std::uint64_t mu_analytic = 0;
  std::uint64_t mu_instrumented = 0;
  std::uint64_t envelope = 0;  // 12 z multiplications per level (z = 1 for CDF)
  double max_deviation = 0.0;  // counting path vs production, after compensation
  std::string notes;

  bool within_envelope() const noexcept {
    const auto gap = mu_analytic > mu_instrumented ? mu_analytic - mu_instrumented
                                                   : mu_instrumented - mu_analytic;
    return gap <= envelope;
  }
};

/// Runs a counting copy of the forward transform (rescaled gates for the
/// ternary families) and compares it with the analytic model. The counter's
/// output is divided by the compensating diagonal and checked against the
/// production transform; that compensation is not counted.
CostReport instrument_transform(std::span<const double> signal, WaveletKind family,
                                std::size_t max_levels = 1);

}  // namespace ternwave
