#pragma once

// Dilation-3 wavelet transforms built from depth-z ternary circuits.
//
// Orientation: the circuit U (u_H on top, then v_1, crossings, ..., v_z) maps
// coefficients to samples, so its columns are the wavelet functions. The
// forward transform applies U^T: v_z^T first, v_1^T last, then the u_H pairs.
//
// Lattice layout for a length-n signal with left offset o (0 for an
// edge-centered left boundary, 1 for site-centered): gate triple j covers
// positions 3j-o .. 3j-o+2, its center 3j-o+1 emits a site-centered (h+)
// coefficient and every pair (3j-o+2, 3j-o+3) between neighbouring triples
// carries a crossing and, at the top, a u_H gate emitting the edge-centered
// (g+, g-) coefficients.

#include <array>
#include <cstddef>
#include <numbers>
#include <optional>
#include <span>
#include <vector>

#include "ternwave/gates.hpp"

namespace ternwave {

enum class Cascade { SiteCentered, EdgeCentered };

enum class Extension { Edge, Site, Periodic };

inline constexpr std::array<double, 6> kTypeIAngles{
    0.072130476, 0.847695078, -0.576099009, -0.591746629, 0.673886987, 0.529449713};
inline constexpr std::array<double, 6> kTypeIIAngles{
    -0.261582176, std::numbers::pi, 0.107465734, std::numbers::pi, -0.461363266, 0.0};

class TernaryCircuitSpec {
 public:
  /// Throws InvalidArgument on an empty or non-finite angle list.
  TernaryCircuitSpec(std::vector<double> angles, Cascade cascade);

  /// Depth-6 site-centered cascade (Type I).
  static TernaryCircuitSpec type_i();
  /// Depth-6 edge-centered cascade (Type II).
  static TernaryCircuitSpec type_ii();

  std::size_t depth() const noexcept { return angles_.size(); }
  const std::vector<double>& angles() const noexcept { return angles_; }
  Cascade cascade() const noexcept { return cascade_; }

  /// Shortest signal a multi-level cascade still transforms (6z).
  std::size_t min_transform_length() const noexcept { return 6 * depth(); }

 private:
  std::vector<double> angles_;
  Cascade cascade_;
};

struct LevelPlan {
  std::size_t n = 0;
  Extension left = Extension::Edge;
  Extension right = Extension::Edge;
  std::size_t n_sca = 0;
  std::size_t n_wav_plus = 0;
  std::size_t n_wav_minus = 0;

  friend bool operator==(const LevelPlan&, const LevelPlan&) = default;
};

/// Boundary extensions and subband counts for one level.
/// n mod 3 == 0 -> edge/edge, 1 -> site/site, 2 -> edge/site. For the
/// edge-centered cascade the scaling channel is g+, so the site- and
/// edge-centered symmetric counts trade places. Throws TooShort for n < 3.
LevelPlan plan_level(std::size_t n, Cascade cascade);

/// Plan for a single periodic level; n must be a multiple of 3 and >= 6.
LevelPlan plan_periodic(std::size_t n);

struct Subbands1D {
  std::vector<double> sca;
  std::vector<double> wav_plus;
  std::vector<double> wav_minus;
  LevelPlan plan;

  std::size_t size() const noexcept { return sca.size() + wav_plus.size() + wav_minus.size(); }
};

/// Precomputed gates for one circuit. Contiguous forward/inverse entry points
/// use the layout [sca | wav_plus | wav_minus].
class TernaryTransform {
 public:
  explicit TernaryTransform(const TernaryCircuitSpec& spec);

  const TernaryCircuitSpec& spec() const noexcept { return spec_; }

  void forward(std::span<const double> signal, std::span<double> out) const;
  void inverse(std::span<const double> coeffs, std::span<double> out) const;

  void forward_periodic(std::span<const double> signal, std::span<double> out) const;
  void inverse_periodic(std::span<const double> coeffs, std::span<double> out) const;

  /// Runs the analysis layers in place and leaves every coefficient at its
  /// lattice position (see the layout note at the top of this header).
  void analyze_in_place(std::span<double> x, Extension left, bool periodic) const;

 private:
  struct Row {
    RotationGate3 v;
    Gate2 half;          // l_k acting on (neighbour, centre)
    Gate2 inverse_half;  // l~_k; its transpose undoes `half`
  };

  void synthesize_in_place(std::span<double> x, Extension left, bool periodic) const;

  TernaryCircuitSpec spec_;
  std::vector<Row> rows_;  // in application order: v_z first
};

/// Groups the output of analyze_in_place (open boundaries) into subbands.
Subbands1D subbands_from_lattice(std::span<const double> x, const LevelPlan& plan,
                                 Cascade cascade);

Subbands1D forward_periodic(std::span<const double> signal, const TernaryCircuitSpec& spec);
std::vector<double> inverse_periodic(const Subbands1D& bands, const TernaryCircuitSpec& spec);

Subbands1D forward_open(std::span<const double> signal, const TernaryCircuitSpec& spec,
                        const LevelPlan& plan);
Subbands1D forward_open(std::span<const double> signal, const TernaryCircuitSpec& spec);
std::vector<double> inverse_open(const Subbands1D& bands, const TernaryCircuitSpec& spec);

/// Mirror padding. Edge: reflect across the boundary edge (sample repeated);
/// Site: reflect about the boundary sample (not repeated). Repeats as needed
/// for padding longer than the signal.
std::vector<double> extend_symmetric(std::span<const double> signal, Extension left,
                                     Extension right, std::size_t pad_left,
                                     std::size_t pad_right);

/// Coefficients trimmed away by the explicit symmetric extension: the
/// anti-symmetric u_H outputs straddling an edge-centered boundary.
struct TrimmedBoundary {
  std::optional<double> left;
  std::optional<double> right;
};

/// Reference transform: mirror-extends the signal over one full period of
/// its symmetric extension, runs the bulk periodic circuit and keeps the
/// unique coefficients.
Subbands1D symmetric_extension_oracle(std::span<const double> signal,
                                      const TernaryCircuitSpec& spec, const LevelPlan& plan);
TrimmedBoundary trimmed_boundary_coefficients(std::span<const double> signal,
                                              const TernaryCircuitSpec& spec,
                                              const LevelPlan& plan);

/// Levels are ordered finest first. Recursion runs on the scaling channel
/// while its length stays >= spec.min_transform_length().
std::vector<Subbands1D> forward_multi(std::span<const double> signal,
                                      const TernaryCircuitSpec& spec, std::size_t max_levels);
std::vector<double> inverse_multi(const std::vector<Subbands1D>& pyramid,
                                  const TernaryCircuitSpec& spec);

/// Plans for every level forward_multi would run on a length-n signal.
std::vector<LevelPlan> plan_levels(std::size_t n, const TernaryCircuitSpec& spec,
                                   std::size_t max_levels);

}  // namespace ternwave
