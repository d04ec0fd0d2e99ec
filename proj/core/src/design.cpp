#include "ternwave/design.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <string>

#include "ternwave/error.hpp"

namespace ternwave {

std::string_view to_string(SequenceId id) {
  switch (id) {
    case SequenceId::HPlus: return "h+";
    case SequenceId::GPlus: return "g+";
    case SequenceId::GMinus: return "g-";
  }
  return "?";
}

std::optional<SequenceId> parse_sequence_id(std::string_view name) {
  if (name == "h+" || name == "hplus") return SequenceId::HPlus;
  if (name == "g+" || name == "gplus") return SequenceId::GPlus;
  if (name == "g-" || name == "gminus") return SequenceId::GMinus;
  return std::nullopt;
}

std::size_t Sequence::support(double tol) const {
  std::size_t first = taps.size(), last = 0;
  for (std::size_t i = 0; i < taps.size(); ++i)
    if (std::abs(taps[i]) > tol) {
      first = std::min(first, i);
      last = i;
    }
  return first == taps.size() ? 0 : last - first + 1;
}

double Sequence::symmetry_residual(int parity) const {
  double worst = 0.0;
  const std::size_t n = taps.size();
  for (std::size_t i = 0; i < n; ++i)
    worst = std::max(worst, std::abs(taps[i] - parity * taps[n - 1 - i]));
  return worst;
}

const Sequence& SequenceSet::get(SequenceId id) const {
  switch (id) {
    case SequenceId::HPlus: return h_plus;
    case SequenceId::GPlus: return g_plus;
    case SequenceId::GMinus: return g_minus;
  }
  throw InvalidArgument("unknown sequence id");
}

std::vector<double> periodic_analysis_matrix(const TernaryCircuitSpec& spec, std::size_t ring) {
  if (ring % 3 != 0 || ring < 6)
    throw InvalidArgument("probe ring must be a multiple of 3 and at least 6 sites");
  const TernaryTransform t(spec);
  std::vector<double> m(ring * ring), probe(ring);
  for (std::size_t i = 0; i < ring; ++i) {
    std::fill(probe.begin(), probe.end(), 0.0);
    probe[i] = 1.0;
    t.analyze_in_place(probe, Extension::Edge, true);
    for (std::size_t p = 0; p < ring; ++p) m[p * ring + i] = probe[p];
  }
  return m;
}

SequenceSet extract_sequences(const TernaryCircuitSpec& spec) {
  const auto z = static_cast<std::ptrdiff_t>(spec.depth());
  const auto ring = static_cast<std::size_t>(12 * z);
  const std::vector<double> m = periodic_analysis_matrix(spec, ring);

  const std::ptrdiff_t site = 6 * z + 1;  // centre of triple j = 2z
  const std::ptrdiff_t edge_lo = site + 1, edge_hi = site + 2;

  auto take = [&](std::ptrdiff_t row, std::ptrdiff_t first, std::ptrdiff_t count, double center,
                  double& leakage) {
    Sequence s;
    s.center = center;
    s.ring_start = first;
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(ring); ++i) {
      const double v = m[static_cast<std::size_t>(row) * ring + static_cast<std::size_t>(i)];
      if (i >= first && i < first + count)
        s.taps.push_back(v);
      else
        leakage = std::max(leakage, std::abs(v));
    }
    return s;
  };

  SequenceSet set;
  set.h_plus = take(site, site - (3 * z - 2), 6 * z - 3, double(3 * z - 2), set.leakage);
  const std::ptrdiff_t g_first = edge_lo - (3 * z - 1);
  set.g_plus = take(edge_lo, g_first, 6 * z, 3.0 * double(z) - 0.5, set.leakage);
  set.g_minus = take(edge_hi, g_first, 6 * z, 3.0 * double(z) - 0.5, set.leakage);
  return set;
}

double moment(const Sequence& seq, unsigned alpha, bool highfreq) {
  double sum = 0.0;
  for (std::size_t i = 0; i < seq.taps.size(); ++i) {
    const double r = seq.r(i);
    double term = seq.taps[i] * std::pow(r, static_cast<double>(alpha));
    if (highfreq && static_cast<long long>(std::floor(r)) % 2 != 0) term = -term;
    sum += term;
  }
  return sum;
}

std::vector<MomentConstraint> MomentConstraintSet::expand() const {
  std::vector<MomentConstraint> out;
  for (const Target& t : which)
    for (unsigned a : alphas) out.push_back({t.sequence, a, t.highfreq});
  return out;
}

MomentConstraintSet default_constraints(Cascade cascade) {
  MomentConstraintSet set;
  set.alphas = {0, 1, 2};
  if (cascade == Cascade::SiteCentered)
    set.which = {{SequenceId::GPlus, false},
                 {SequenceId::GMinus, false},
                 {SequenceId::HPlus, true},
                 {SequenceId::GPlus, true}};
  else
    set.which = {{SequenceId::HPlus, false},
                 {SequenceId::GMinus, false},
                 {SequenceId::GPlus, true},
                 {SequenceId::HPlus, true}};
  return set;
}

bool is_symmetry_trivial(const MomentConstraint& c) {
  const bool odd = c.alpha % 2 == 1;
  switch (c.sequence) {
    case SequenceId::HPlus:
      // (-1)^r is even about a site, so the weighting has the parity of r^alpha.
      return odd;
    case SequenceId::GPlus:
      // About an edge the alternating factor is odd.
      return c.highfreq ? !odd : odd;
    case SequenceId::GMinus:
      return c.highfreq ? odd : !odd;
  }
  return false;
}

namespace {

std::vector<double> nontrivial_residuals(const std::vector<double>& angles, Cascade cascade,
                                         const std::vector<MomentConstraint>& active) {
  const SequenceSet set = extract_sequences(TernaryCircuitSpec(angles, cascade));
  std::vector<double> r;
  r.reserve(active.size());
  for (const auto& c : active) r.push_back(moment(set.get(c.sequence), c.alpha, c.highfreq));
  return r;
}

double max_abs(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

double sum_sq(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return s;
}

}  // namespace

ResidualReport verify_angles(const TernaryCircuitSpec& spec,
                             const MomentConstraintSet& constraints) {
  const SequenceSet set = extract_sequences(spec);
  ResidualReport report;
  for (const auto& c : constraints.expand()) {
    ResidualEntry e{c, moment(set.get(c.sequence), c.alpha, c.highfreq), is_symmetry_trivial(c)};
    report.max_abs = std::max(report.max_abs, std::abs(e.value));
    report.entries.push_back(e);
  }
  return report;
}

SolveResult solve_angles(std::size_t depth, Cascade cascade,
                         const MomentConstraintSet& constraints,
                         const std::vector<double>& initial_angles,
                         const SolverOptions& options) {
  if (initial_angles.size() != depth)
    throw InvalidArgument("solve_angles: expected " + std::to_string(depth) +
                          " initial angles, got " + std::to_string(initial_angles.size()));
  std::vector<MomentConstraint> active;
  for (const auto& c : constraints.expand())
    if (!is_symmetry_trivial(c)) active.push_back(c);

  SolveResult result;
  result.angles = initial_angles;
  if (active.empty()) {
    result.already_solved = true;
    return result;
  }
  if (active.size() > depth)
    throw InvalidArgument("solve_angles: " + std::to_string(active.size()) +
                          " non-trivial constraints exceed depth " + std::to_string(depth));

  const auto m = static_cast<Eigen::Index>(active.size());
  const auto n = static_cast<Eigen::Index>(depth);
  std::vector<double> theta = initial_angles;
  std::vector<double> r = nontrivial_residuals(theta, cascade, active);
  double cost = sum_sq(r);
  double lambda = 1e-6;

  std::size_t it = 0;
  while (max_abs(r) >= options.tolerance) {
    if (it == options.max_iterations)
      throw ConvergenceFailure("angle solver did not converge in " + std::to_string(it) +
                                   " iterations",
                               max_abs(r));
    ++it;

    Eigen::MatrixXd jac(m, n);
    for (Eigen::Index k = 0; k < n; ++k) {
      auto plus = theta, minus = theta;
      plus[k] += options.jacobian_step;
      minus[k] -= options.jacobian_step;
      const auto rp = nontrivial_residuals(plus, cascade, active);
      const auto rm = nontrivial_residuals(minus, cascade, active);
      for (Eigen::Index i = 0; i < m; ++i)
        jac(i, k) = (rp[i] - rm[i]) / (2.0 * options.jacobian_step);
    }
    const Eigen::VectorXd rv = Eigen::Map<const Eigen::VectorXd>(r.data(), m);
    const Eigen::MatrixXd jtj = jac.transpose() * jac;
    const Eigen::VectorXd jtr = jac.transpose() * rv;

    bool accepted = false;
    while (!accepted && lambda < 1e12) {
      const Eigen::MatrixXd a = jtj + lambda * Eigen::MatrixXd::Identity(n, n);
      const Eigen::VectorXd step = a.ldlt().solve(-jtr);
      std::vector<double> trial = theta;
      for (Eigen::Index k = 0; k < n; ++k) trial[k] += step[k];
      const auto rt = nontrivial_residuals(trial, cascade, active);
      const double trial_cost = sum_sq(rt);
      if (trial_cost < cost) {
        theta = std::move(trial);
        r = rt;
        cost = trial_cost;
        lambda = std::max(lambda / 10.0, 1e-15);
        accepted = true;
      } else {
        lambda *= 10.0;
      }
    }
    if (!accepted)
      throw ConvergenceFailure("angle solver stalled: no descent step found", max_abs(r));
  }

  result.angles = theta;
  result.residuals = r;
  result.max_residual = max_abs(r);
  result.iterations = it;
  return result;
}

// ---------------------------------------------------------------------------

double RenderedFunction::at(double position) const {
  if (x.empty() || position < x.front() || position > x.back()) return 0.0;
  const auto hi = std::lower_bound(x.begin(), x.end(), position);
  const auto i = static_cast<std::size_t>(hi - x.begin());
  if (i == 0 || x[i] == position) return value[i];
  const double t = (position - x[i - 1]) / (x[i] - x[i - 1]);
  return (1.0 - t) * value[i - 1] + t * value[i];
}

namespace {

std::vector<RenderedFunction> cascade_iterates(const TernaryCircuitSpec& spec, SequenceId channel,
                                               std::size_t iterations) {
  if (iterations == 0) throw InvalidArgument("render_function: iterations must be >= 1");
  const SequenceSet set = extract_sequences(spec);
  const Sequence& s =
      spec.cascade() == Cascade::SiteCentered ? set.h_plus : set.g_plus;
  const Sequence& first = set.get(channel);

  std::vector<RenderedFunction> out;
  std::vector<double> c = first.taps;
  double origin = first.center;  // index of x = 0 in c
  double scale = 1.0;
  double spacing = 1.0;
  for (std::size_t i = 1; i <= iterations; ++i) {
    if (i > 1) {
      std::vector<double> next(3 * (c.size() - 1) + s.taps.size(), 0.0);
      for (std::size_t k = 0; k < c.size(); ++k)
        for (std::size_t j = 0; j < s.taps.size(); ++j) next[3 * k + j] += c[k] * s.taps[j];
      c = std::move(next);
      origin = 3.0 * origin + s.center;
      scale *= std::sqrt(3.0);
      spacing /= 3.0;
    }
    RenderedFunction f;
    f.iterations = i;
    for (std::size_t k = 0; k < c.size(); ++k) {
      f.x.push_back((static_cast<double>(k) - origin) * spacing);
      f.value.push_back(c[k] * scale);
    }
    out.push_back(std::move(f));
  }
  return out;
}

}  // namespace

RenderedFunction render_function(const TernaryCircuitSpec& spec, SequenceId channel,
                                 std::size_t iterations) {
  return std::move(cascade_iterates(spec, channel, iterations).back());
}

std::vector<double> cauchy_differences(const TernaryCircuitSpec& spec, SequenceId channel,
                                       std::size_t iterations) {
  const auto it = cascade_iterates(spec, channel, iterations);
  std::vector<double> diffs;
  for (std::size_t i = 0; i + 1 < it.size(); ++i) {
    double worst = 0.0;
    for (std::size_t k = 0; k < it[i].x.size(); ++k)
      worst = std::max(worst, std::abs(it[i + 1].at(it[i].x[k]) - it[i].value[k]));
    diffs.push_back(worst);
  }
  return diffs;
}

}  // namespace ternwave
