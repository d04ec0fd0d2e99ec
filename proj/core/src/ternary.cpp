#include "ternwave/ternary.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

#include "ternwave/error.hpp"

namespace ternwave {

namespace {

constexpr double kSqrt2 = std::numbers::sqrt2;

std::ptrdiff_t left_offset(Extension left) { return left == Extension::Site ? 1 : 0; }

std::ptrdiff_t mod(std::ptrdiff_t a, std::ptrdiff_t m) {
  const std::ptrdiff_t r = a % m;
  return r < 0 ? r + m : r;
}

// Period of the two-sided symmetric extension.
std::size_t extension_period(std::size_t n, Extension left, Extension right) {
  std::size_t period = 2 * n;
  if (left == Extension::Site) --period;
  if (right == Extension::Site) --period;
  return period;
}

std::size_t reflect(std::ptrdiff_t p, std::size_t n, Extension right, std::size_t period) {
  const auto q = static_cast<std::size_t>(mod(p, static_cast<std::ptrdiff_t>(period)));
  if (q < n) return q;
  return right == Extension::Edge ? 2 * n - 1 - q : 2 * n - 2 - q;
}

// Coefficients collected in lattice order.
struct Collected {
  std::vector<double> sites;
  std::vector<double> edge_plus;
  std::vector<double> edge_minus;
};

Subbands1D to_subbands(Collected c, const LevelPlan& plan, Cascade cascade) {
  Subbands1D b;
  b.plan = plan;
  if (cascade == Cascade::SiteCentered) {
    b.sca = std::move(c.sites);
    b.wav_plus = std::move(c.edge_plus);
  } else {
    b.sca = std::move(c.edge_plus);
    b.wav_plus = std::move(c.sites);
  }
  b.wav_minus = std::move(c.edge_minus);
  return b;
}

void check_plan_counts(const Subbands1D& b) {
  if (b.sca.size() != b.plan.n_sca || b.wav_plus.size() != b.plan.n_wav_plus ||
      b.wav_minus.size() != b.plan.n_wav_minus)
    throw InvalidArgument("subband lengths do not match the level plan");
}

// Gather open-boundary coefficients from their lattice positions.
Collected gather_open(std::span<const double> x, Extension left) {
  const auto n = static_cast<std::ptrdiff_t>(x.size());
  const std::ptrdiff_t o = left_offset(left);
  Collected c;
  for (std::ptrdiff_t centre = 1 - o; centre < n; centre += 3) c.sites.push_back(x[centre]);
  for (std::ptrdiff_t p = -1 - o; p < n; p += 3) {
    if (p + 1 < 0) continue;
    if (p < 0) {
      c.edge_plus.push_back(x[0]);
    } else if (p + 1 >= n) {
      c.edge_plus.push_back(x[p]);
    } else {
      c.edge_plus.push_back(x[p]);
      c.edge_minus.push_back(x[p + 1]);
    }
  }
  return c;
}

void scatter_open(const Collected& c, std::span<double> x, Extension left) {
  const auto n = static_cast<std::ptrdiff_t>(x.size());
  const std::ptrdiff_t o = left_offset(left);
  std::size_t s = 0, ep = 0, em = 0;
  for (std::ptrdiff_t centre = 1 - o; centre < n; centre += 3) x[centre] = c.sites.at(s++);
  for (std::ptrdiff_t p = -1 - o; p < n; p += 3) {
    if (p + 1 < 0) continue;
    if (p < 0) {
      x[0] = c.edge_plus.at(ep++);
    } else if (p + 1 >= n) {
      x[p] = c.edge_plus.at(ep++);
    } else {
      x[p] = c.edge_plus.at(ep++);
      x[p + 1] = c.edge_minus.at(em++);
    }
  }
}

Collected gather_periodic(std::span<const double> x) {
  const std::size_t n = x.size();
  Collected c;
  for (std::size_t j = 0; 3 * j < n; ++j) {
    c.sites.push_back(x[3 * j + 1]);
    c.edge_plus.push_back(x[3 * j + 2]);
    c.edge_minus.push_back(x[(3 * j + 3) % n]);
  }
  return c;
}

void scatter_periodic(const Collected& c, std::span<double> x) {
  const std::size_t n = x.size();
  for (std::size_t j = 0; 3 * j < n; ++j) {
    x[3 * j + 1] = c.sites.at(j);
    x[3 * j + 2] = c.edge_plus.at(j);
    x[(3 * j + 3) % n] = c.edge_minus.at(j);
  }
}

Collected split_contiguous(std::span<const double> in, const LevelPlan& plan, Cascade cascade) {
  auto take = [&](std::size_t from, std::size_t count) {
    return std::vector<double>(in.begin() + from, in.begin() + from + count);
  };
  std::vector<double> sca = take(0, plan.n_sca);
  std::vector<double> wp = take(plan.n_sca, plan.n_wav_plus);
  std::vector<double> wm = take(plan.n_sca + plan.n_wav_plus, plan.n_wav_minus);
  Collected c;
  if (cascade == Cascade::SiteCentered) {
    c.sites = std::move(sca);
    c.edge_plus = std::move(wp);
  } else {
    c.sites = std::move(wp);
    c.edge_plus = std::move(sca);
  }
  c.edge_minus = std::move(wm);
  return c;
}

void join_contiguous(const Subbands1D& b, std::span<double> out) {
  auto it = std::copy(b.sca.begin(), b.sca.end(), out.begin());
  it = std::copy(b.wav_plus.begin(), b.wav_plus.end(), it);
  std::copy(b.wav_minus.begin(), b.wav_minus.end(), it);
}

void require_size(std::span<const double> in, std::span<double> out) {
  if (in.size() != out.size())
    throw InvalidArgument("input and output spans differ in length");
}

}  // namespace

// ---------------------------------------------------------------------------

TernaryCircuitSpec::TernaryCircuitSpec(std::vector<double> angles, Cascade cascade)
    : angles_(std::move(angles)), cascade_(cascade) {
  if (angles_.empty()) throw InvalidArgument("ternary circuit needs depth >= 1");
  for (double a : angles_)
    if (!std::isfinite(a)) throw InvalidArgument("ternary circuit angles must be finite");
}

TernaryCircuitSpec TernaryCircuitSpec::type_i() {
  return {{kTypeIAngles.begin(), kTypeIAngles.end()}, Cascade::SiteCentered};
}

TernaryCircuitSpec TernaryCircuitSpec::type_ii() {
  return {{kTypeIIAngles.begin(), kTypeIIAngles.end()}, Cascade::EdgeCentered};
}

LevelPlan plan_level(std::size_t n, Cascade cascade) {
  if (n < 3) throw TooShort("ternary level needs at least 3 samples, got " + std::to_string(n));
  const std::size_t k = n / 3;
  LevelPlan p;
  p.n = n;
  std::size_t sites = 0, plus = 0, minus = 0;
  switch (n % 3) {
    case 0:
      p.left = p.right = Extension::Edge;
      sites = k, plus = k + 1, minus = k - 1;
      break;
    case 1:
      p.left = p.right = Extension::Site;
      sites = k + 1, plus = k, minus = k;
      break;
    default:
      p.left = Extension::Edge;
      p.right = Extension::Site;
      sites = k + 1, plus = k + 1, minus = k;
      break;
  }
  if (cascade == Cascade::SiteCentered) {
    p.n_sca = sites;
    p.n_wav_plus = plus;
  } else {
    p.n_sca = plus;
    p.n_wav_plus = sites;
  }
  p.n_wav_minus = minus;
  return p;
}

LevelPlan plan_periodic(std::size_t n) {
  if (n < 6 || n % 3 != 0)
    throw InvalidArgument("periodic ternary level needs a multiple of 3 that is >= 6, got " +
                          std::to_string(n));
  LevelPlan p;
  p.n = n;
  p.left = p.right = Extension::Periodic;
  p.n_sca = p.n_wav_plus = p.n_wav_minus = n / 3;
  return p;
}

// ---------------------------------------------------------------------------

TernaryTransform::TernaryTransform(const TernaryCircuitSpec& spec) : spec_(spec) {
  const auto& angles = spec_.angles();
  rows_.reserve(angles.size());
  for (auto it = angles.rbegin(); it != angles.rend(); ++it)
    rows_.push_back({ternary_gate(*it), boundary_gate(Gate2Kind::Left, *it),
                     boundary_gate(Gate2Kind::InverseLeft, *it)});
}

void TernaryTransform::analyze_in_place(std::span<double> x, Extension left,
                                        bool periodic) const {
  const auto n = static_cast<std::ptrdiff_t>(x.size());
  const std::ptrdiff_t o = periodic ? 0 : left_offset(left);

  auto crossings = [&] {
    for (std::ptrdiff_t p = 2 - o; p < n; p += 3) {
      if (p + 1 < n)
        std::swap(x[p], x[p + 1]);
      else if (periodic)
        std::swap(x[p], x[0]);
    }
  };

  for (std::size_t i = 0; i < rows_.size(); ++i) {
    if (i > 0) crossings();
    const Row& row = rows_[i];
    for (std::ptrdiff_t t = -o; t < n; t += 3) {
      if (t >= 0 && t + 2 < n) {
        const auto y = row.v.apply_transposed({x[t], x[t + 1], x[t + 2]});
        x[t] = y[0], x[t + 1] = y[1], x[t + 2] = y[2];
      } else if (t == -1) {
        const auto y = row.half.apply({x[1], x[0]});
        x[1] = y[0], x[0] = y[1];
      } else if (t + 2 == n) {
        const auto y = row.half.apply({x[n - 2], x[n - 1]});
        x[n - 2] = y[0], x[n - 1] = y[1];
      } else {
        throw std::logic_error("ternary layout leaves a dangling gate");
      }
    }
  }

  constexpr double h = 1.0 / kSqrt2;
  if (!periodic && o == 0) x[0] *= kSqrt2;
  for (std::ptrdiff_t p = 2 - o; p < n; p += 3) {
    if (p + 1 < n || periodic) {
      const std::ptrdiff_t q = (p + 1 < n) ? p + 1 : 0;
      const double a = x[p], b = x[q];
      x[p] = h * (a + b);
      x[q] = h * (a - b);
    } else {
      x[p] *= kSqrt2;
    }
  }
}

void TernaryTransform::synthesize_in_place(std::span<double> x, Extension left,
                                           bool periodic) const {
  const auto n = static_cast<std::ptrdiff_t>(x.size());
  const std::ptrdiff_t o = periodic ? 0 : left_offset(left);

  constexpr double h = 1.0 / kSqrt2;
  if (!periodic && o == 0) x[0] *= h;
  for (std::ptrdiff_t p = 2 - o; p < n; p += 3) {
    if (p + 1 < n || periodic) {
      const std::ptrdiff_t q = (p + 1 < n) ? p + 1 : 0;
      const double a = x[p], b = x[q];
      x[p] = h * (a + b);
      x[q] = h * (a - b);
    } else {
      x[p] *= h;
    }
  }

  for (std::size_t i = rows_.size(); i-- > 0;) {
    const Row& row = rows_[i];
    for (std::ptrdiff_t t = -o; t < n; t += 3) {
      if (t >= 0 && t + 2 < n) {
        const auto y = row.v.apply({x[t], x[t + 1], x[t + 2]});
        x[t] = y[0], x[t + 1] = y[1], x[t + 2] = y[2];
      } else if (t == -1) {
        const auto y = row.inverse_half.apply_transposed({x[1], x[0]});
        x[1] = y[0], x[0] = y[1];
      } else if (t + 2 == n) {
        const auto y = row.inverse_half.apply_transposed({x[n - 2], x[n - 1]});
        x[n - 2] = y[0], x[n - 1] = y[1];
      } else {
        throw std::logic_error("ternary layout leaves a dangling gate");
      }
    }
    if (i > 0) {
      for (std::ptrdiff_t p = 2 - o; p < n; p += 3) {
        if (p + 1 < n)
          std::swap(x[p], x[p + 1]);
        else if (periodic)
          std::swap(x[p], x[0]);
      }
    }
  }
}

void TernaryTransform::forward(std::span<const double> signal, std::span<double> out) const {
  require_size(signal, out);
  const LevelPlan plan = plan_level(signal.size(), spec_.cascade());
  std::vector<double> work(signal.begin(), signal.end());
  analyze_in_place(work, plan.left, false);
  join_contiguous(to_subbands(gather_open(work, plan.left), plan, spec_.cascade()), out);
}

void TernaryTransform::inverse(std::span<const double> coeffs, std::span<double> out) const {
  require_size(coeffs, out);
  const LevelPlan plan = plan_level(coeffs.size(), spec_.cascade());
  scatter_open(split_contiguous(coeffs, plan, spec_.cascade()), out, plan.left);
  synthesize_in_place(out, plan.left, false);
}

void TernaryTransform::forward_periodic(std::span<const double> signal,
                                        std::span<double> out) const {
  require_size(signal, out);
  const LevelPlan plan = plan_periodic(signal.size());
  std::vector<double> work(signal.begin(), signal.end());
  analyze_in_place(work, Extension::Periodic, true);
  join_contiguous(to_subbands(gather_periodic(work), plan, spec_.cascade()), out);
}

void TernaryTransform::inverse_periodic(std::span<const double> coeffs,
                                        std::span<double> out) const {
  require_size(coeffs, out);
  const LevelPlan plan = plan_periodic(coeffs.size());
  scatter_periodic(split_contiguous(coeffs, plan, spec_.cascade()), out);
  synthesize_in_place(out, Extension::Periodic, true);
}

// ---------------------------------------------------------------------------

Subbands1D subbands_from_lattice(std::span<const double> x, const LevelPlan& plan,
                                 Cascade cascade) {
  if (x.size() != plan.n) throw InvalidArgument("lattice length does not match the level plan");
  return to_subbands(gather_open(x, plan.left), plan, cascade);
}

Subbands1D forward_periodic(std::span<const double> signal, const TernaryCircuitSpec& spec) {
  const LevelPlan plan = plan_periodic(signal.size());
  std::vector<double> work(signal.begin(), signal.end());
  TernaryTransform(spec).analyze_in_place(work, Extension::Periodic, true);
  return to_subbands(gather_periodic(work), plan, spec.cascade());
}

std::vector<double> inverse_periodic(const Subbands1D& bands, const TernaryCircuitSpec& spec) {
  check_plan_counts(bands);
  std::vector<double> joined(bands.size()), out(bands.size());
  join_contiguous(bands, joined);
  TernaryTransform(spec).inverse_periodic(joined, out);
  return out;
}

Subbands1D forward_open(std::span<const double> signal, const TernaryCircuitSpec& spec,
                        const LevelPlan& plan) {
  if (plan != plan_level(signal.size(), spec.cascade()))
    throw InvalidArgument("level plan does not match the signal length");
  std::vector<double> work(signal.begin(), signal.end());
  TernaryTransform(spec).analyze_in_place(work, plan.left, false);
  return to_subbands(gather_open(work, plan.left), plan, spec.cascade());
}

Subbands1D forward_open(std::span<const double> signal, const TernaryCircuitSpec& spec) {
  return forward_open(signal, spec, plan_level(signal.size(), spec.cascade()));
}

std::vector<double> inverse_open(const Subbands1D& bands, const TernaryCircuitSpec& spec) {
  check_plan_counts(bands);
  if (bands.plan != plan_level(bands.plan.n, spec.cascade()) || bands.size() != bands.plan.n)
    throw InvalidArgument("subbands carry an inconsistent level plan");
  std::vector<double> joined(bands.size()), out(bands.size());
  join_contiguous(bands, joined);
  TernaryTransform(spec).inverse(joined, out);
  return out;
}

std::vector<double> extend_symmetric(std::span<const double> signal, Extension left,
                                     Extension right, std::size_t pad_left,
                                     std::size_t pad_right) {
  const std::size_t n = signal.size();
  if (left == Extension::Periodic || right == Extension::Periodic)
    throw InvalidArgument("extend_symmetric takes edge or site extensions");
  const std::size_t period = n == 0 ? 0 : extension_period(n, left, right);
  if (period == 0) throw InvalidArgument("signal too short for this symmetric extension");
  std::vector<double> out;
  out.reserve(n + pad_left + pad_right);
  // The period already encodes the left fold: wrapped negative positions land
  // in the right-hand mirror image.
  for (std::ptrdiff_t p = -static_cast<std::ptrdiff_t>(pad_left);
       p < static_cast<std::ptrdiff_t>(n + pad_right); ++p)
    out.push_back(signal[reflect(p, n, right, period)]);
  return out;
}

namespace {

struct OracleRun {
  std::vector<double> ring;
  std::ptrdiff_t offset = 0;  // ring index of lattice position 0
};

OracleRun run_oracle(std::span<const double> signal, const TernaryCircuitSpec& spec,
                     const LevelPlan& plan) {
  if (plan != plan_level(signal.size(), spec.cascade()))
    throw InvalidArgument("level plan does not match the signal length");
  const std::size_t n = signal.size();
  const std::size_t period = extension_period(n, plan.left, plan.right);
  const std::ptrdiff_t o = left_offset(plan.left);
  // One full period starting at the first gate of the left boundary.
  std::vector<double> ring =
      extend_symmetric(signal, plan.left, plan.right, static_cast<std::size_t>(o),
                       period - n - static_cast<std::size_t>(o));
  TernaryTransform(spec).analyze_in_place(ring, Extension::Periodic, true);
  return {std::move(ring), o};
}

}  // namespace

Subbands1D symmetric_extension_oracle(std::span<const double> signal,
                                      const TernaryCircuitSpec& spec, const LevelPlan& plan) {
  const OracleRun run = run_oracle(signal, spec, plan);
  const auto n = static_cast<std::ptrdiff_t>(signal.size());
  const auto L = static_cast<std::ptrdiff_t>(run.ring.size());
  const std::ptrdiff_t o = run.offset;
  auto at = [&](std::ptrdiff_t position) { return run.ring[mod(position + o, L)]; };

  Collected c;
  for (std::ptrdiff_t centre = 1 - o; centre < n; centre += 3) c.sites.push_back(at(centre));
  for (std::ptrdiff_t p = -1 - o; p < n; p += 3) {
    if (p + 1 < 0) continue;
    c.edge_plus.push_back(at(p));
    if (p >= 0 && p + 1 < n) c.edge_minus.push_back(at(p + 1));
  }
  return to_subbands(std::move(c), plan, spec.cascade());
}

TrimmedBoundary trimmed_boundary_coefficients(std::span<const double> signal,
                                              const TernaryCircuitSpec& spec,
                                              const LevelPlan& plan) {
  const OracleRun run = run_oracle(signal, spec, plan);
  const auto n = static_cast<std::ptrdiff_t>(signal.size());
  const auto L = static_cast<std::ptrdiff_t>(run.ring.size());
  auto at = [&](std::ptrdiff_t position) { return run.ring[mod(position + run.offset, L)]; };
  TrimmedBoundary t;
  if (plan.left == Extension::Edge) t.left = at(0);
  if (plan.right == Extension::Edge) t.right = at(n);
  return t;
}

// ---------------------------------------------------------------------------

std::vector<LevelPlan> plan_levels(std::size_t n, const TernaryCircuitSpec& spec,
                                   std::size_t max_levels) {
  std::vector<LevelPlan> plans;
  while (plans.size() < max_levels && n >= spec.min_transform_length()) {
    plans.push_back(plan_level(n, spec.cascade()));
    n = plans.back().n_sca;
  }
  return plans;
}

std::vector<Subbands1D> forward_multi(std::span<const double> signal,
                                      const TernaryCircuitSpec& spec, std::size_t max_levels) {
  if (signal.size() < spec.min_transform_length())
    throw TooShort("signal of length " + std::to_string(signal.size()) +
                   " is below the multi-level minimum " +
                   std::to_string(spec.min_transform_length()));
  const TernaryTransform transform(spec);
  std::vector<Subbands1D> levels;
  std::vector<double> current(signal.begin(), signal.end());
  for (const LevelPlan& plan : plan_levels(signal.size(), spec, max_levels)) {
    std::vector<double> work = current;
    transform.analyze_in_place(work, plan.left, false);
    levels.push_back(to_subbands(gather_open(work, plan.left), plan, spec.cascade()));
    current = levels.back().sca;
  }
  return levels;
}

std::vector<double> inverse_multi(const std::vector<Subbands1D>& pyramid,
                                  const TernaryCircuitSpec& spec) {
  if (pyramid.empty()) throw InvalidArgument("inverse_multi: empty pyramid");
  for (std::size_t l = 0; l + 1 < pyramid.size(); ++l)
    if (pyramid[l].plan.n_sca != pyramid[l + 1].plan.n)
      throw InvalidArgument("inverse_multi: level " + std::to_string(l + 1) +
                            " does not continue the scaling channel of level " +
                            std::to_string(l));
  std::vector<double> sca = inverse_open(pyramid.back(), spec);
  for (std::size_t l = pyramid.size() - 1; l-- > 0;) {
    Subbands1D level = pyramid[l];
    level.sca = std::move(sca);
    sca = inverse_open(level, spec);
  }
  return sca;
}

}  // namespace ternwave
