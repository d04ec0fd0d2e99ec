#include "ternwave/wavelet.hpp"

#include "ternwave/cdf97.hpp"
#include "ternwave/error.hpp"

namespace ternwave {

namespace {

class TernaryLine final : public LineTransform {
 public:
  TernaryLine(WaveletKind kind, const TernaryCircuitSpec& spec) : kind_(kind), t_(spec) {}

  WaveletKind kind() const override { return kind_; }
  std::size_t min_length() const override { return t_.spec().min_transform_length(); }
  std::vector<std::size_t> band_sizes(std::size_t n) const override {
    const LevelPlan p = plan_level(n, t_.spec().cascade());
    return {p.n_sca, p.n_wav_plus, p.n_wav_minus};
  }
  void forward(std::span<const double> in, std::span<double> out) const override {
    t_.forward(in, out);
  }
  void inverse(std::span<const double> in, std::span<double> out) const override {
    t_.inverse(in, out);
  }

 private:
  WaveletKind kind_;
  TernaryTransform t_;
};

class Cdf97Line final : public LineTransform {
 public:
  WaveletKind kind() const override { return WaveletKind::Cdf97; }
  std::size_t min_length() const override { return kCdf97MinLength; }
  std::vector<std::size_t> band_sizes(std::size_t n) const override {
    return {(n + 1) / 2, n / 2};
  }
  void forward(std::span<const double> in, std::span<double> out) const override {
    forward_97(in, out);
  }
  void inverse(std::span<const double> in, std::span<double> out) const override {
    inverse_97(in, out);
  }
};

}  // namespace

std::string_view to_string(WaveletKind kind) {
  switch (kind) {
    case WaveletKind::TernaryI:
      return "tern1";
    case WaveletKind::TernaryII:
      return "tern2";
    case WaveletKind::Cdf97:
      return "cdf97";
  }
  return "unknown";
}

std::optional<WaveletKind> parse_wavelet(std::string_view name) {
  if (name == "tern1") return WaveletKind::TernaryI;
  if (name == "tern2") return WaveletKind::TernaryII;
  if (name == "cdf97") return WaveletKind::Cdf97;
  return std::nullopt;
}

TernaryCircuitSpec ternary_spec(WaveletKind kind) {
  switch (kind) {
    case WaveletKind::TernaryI:
      return TernaryCircuitSpec::type_i();
    case WaveletKind::TernaryII:
      return TernaryCircuitSpec::type_ii();
    default:
      throw InvalidArgument("ternary_spec: not a ternary wavelet");
  }
}

std::unique_ptr<LineTransform> make_line_transform(WaveletKind kind) {
  if (kind == WaveletKind::Cdf97) return std::make_unique<Cdf97Line>();
  return std::make_unique<TernaryLine>(kind, ternary_spec(kind));
}

}  // namespace ternwave
