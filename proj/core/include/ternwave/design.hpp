#pragma once

#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

#include "ternwave/ternary.hpp"

namespace ternwave {

enum class SequenceId { HPlus, GPlus, GMinus };
std::string_view to_string(SequenceId id);
std::optional<SequenceId> parse_sequence_id(std::string_view name);

/// A row of the analysis operator trimmed to its nominal window. `center` is
/// the symmetry point in tap-index coordinates: an integer for site-centered
/// sequences, a half-integer for edge-centered ones.
struct Sequence {
  std::vector<double> taps;
  double center = 0.0;
  std::ptrdiff_t ring_start = 0;  // ring index of taps[0] on the probe ring

  /// Distance of tap i from the center, in lattice units.
  double r(std::size_t i) const noexcept { return static_cast<double>(i) - center; }
  /// Count between the first and last tap with |value| > tol (inclusive).
  std::size_t support(double tol = 1e-15) const;
  /// max |s_i - parity * s_mirror(i)|, parity +1 for symmetric, -1 for anti-symmetric.
  double symmetry_residual(int parity) const;
};

/// h+ (6z - 3 taps, site-centered), g+ and g- (6z taps, edge-centered).
struct SequenceSet {
  Sequence h_plus;
  Sequence g_plus;
  Sequence g_minus;

  const Sequence& get(SequenceId id) const;
  /// Largest |tap| that fell outside the nominal windows on the probe ring.
  double leakage = 0.0;
};

/// Impulse-probes the periodic circuit on a ring of 12z sites.
SequenceSet extract_sequences(const TernaryCircuitSpec& spec);

/// Dense analysis matrix of the periodic circuit on an L-site ring
/// (row-major, rows indexed by lattice position).
std::vector<double> periodic_analysis_matrix(const TernaryCircuitSpec& spec, std::size_t ring);

/// sum_r r^alpha s_r, or with the alternating factor (-1)^floor(r) when
/// highfreq is set. For edge-centered sequences this makes the tap at
/// r = +1/2 positive.
double moment(const Sequence& seq, unsigned alpha, bool highfreq);

struct MomentConstraint {
  SequenceId sequence = SequenceId::HPlus;
  unsigned alpha = 0;
  bool highfreq = false;
};

struct MomentConstraintSet {
  std::vector<unsigned> alphas;
  struct Target {
    SequenceId sequence;
    bool highfreq;
  };
  std::vector<Target> which;

  std::vector<MomentConstraint> expand() const;
};

/// alpha in {0,1,2}. Site-centered cascade: low-frequency on g+, g-,
/// high-frequency on h+, g+. Edge-centered: h+ and g+ trade roles.
MomentConstraintSet default_constraints(Cascade cascade);

/// True when the constraint vanishes for every angle choice because of the
/// sequence's reflection symmetry.
bool is_symmetry_trivial(const MomentConstraint& c);

struct ResidualEntry {
  MomentConstraint constraint;
  double value = 0.0;
  bool trivial = false;
};

struct ResidualReport {
  std::vector<ResidualEntry> entries;
  double max_abs = 0.0;
};

ResidualReport verify_angles(const TernaryCircuitSpec& spec, const MomentConstraintSet& constraints);

struct SolverOptions {
  double tolerance = 1e-10;
  std::size_t max_iterations = 200;
  double jacobian_step = 1e-7;
};

struct SolveResult {
  std::vector<double> angles;
  std::vector<double> residuals;  // non-trivial constraints only
  double max_residual = 0.0;
  std::size_t iterations = 0;
  bool already_solved = false;  // every constraint was symmetry-trivial
};

/// Levenberg-Marquardt on the non-trivial moment residuals. Throws
/// InvalidArgument when there are more non-trivial constraints than angles
/// and ConvergenceFailure when the iteration cap is hit.
SolveResult solve_angles(std::size_t depth, Cascade cascade,
                         const MomentConstraintSet& constraints,
                         const std::vector<double>& initial_angles,
                         const SolverOptions& options = {});

struct RenderedFunction {
  std::vector<double> x;
  std::vector<double> value;
  std::size_t iterations = 0;

  /// Piecewise-linear evaluation, zero outside the sampled range.
  double at(double position) const;
};

/// Cascade algorithm: c_1 = chosen sequence, c_{i+1} = upsample3(c_i) * s with
/// s the scaling sequence (h+ for the site-centered cascade, g+ otherwise).
/// Samples are scaled by 3^((i-1)/2) so iterations approximate one function.
RenderedFunction render_function(const TernaryCircuitSpec& spec, SequenceId channel,
                                 std::size_t iterations);

/// sup |f_{i+1} - f_i| over the grid of f_i, for i = 1 .. iterations - 1.
std::vector<double> cauchy_differences(const TernaryCircuitSpec& spec, SequenceId channel,
                                       std::size_t iterations);

}  // namespace ternwave
