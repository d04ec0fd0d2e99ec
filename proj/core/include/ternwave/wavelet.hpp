#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "ternwave/ternary.hpp"

namespace ternwave {

enum class WaveletKind { TernaryI, TernaryII, Cdf97 };

std::string_view to_string(WaveletKind kind);
/// Accepts "tern1", "tern2", "cdf97".
std::optional<WaveletKind> parse_wavelet(std::string_view name);

/// One level of a 1-D transform over a line of samples, coefficients laid out
/// band after band with the recursed (scaling) band first.
class LineTransform {
 public:
  virtual ~LineTransform() = default;

  virtual WaveletKind kind() const = 0;
  /// Shortest line a level is applied to.
  virtual std::size_t min_length() const = 0;
  virtual std::vector<std::size_t> band_sizes(std::size_t n) const = 0;
  virtual void forward(std::span<const double> in, std::span<double> out) const = 0;
  virtual void inverse(std::span<const double> in, std::span<double> out) const = 0;
};

std::unique_ptr<LineTransform> make_line_transform(WaveletKind kind);

/// Circuit spec behind a ternary kind; throws InvalidArgument for Cdf97.
TernaryCircuitSpec ternary_spec(WaveletKind kind);

}  // namespace ternwave
