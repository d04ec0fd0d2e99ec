#include "ternwave/costmeter.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "ternwave/cdf97.hpp"
#include "ternwave/error.hpp"

namespace ternwave {

namespace {

constexpr double kSqrt2 = std::numbers::sqrt2;

bool is_trivial(double theta) { return std::abs(std::sin(theta)) < 1e-12; }

struct Counter {
  std::uint64_t count = 0;

  double mul(double k, double x) {
    if (k == 0.0) return 0.0;
    if (k == 1.0) return x;
    if (k == -1.0) return -x;
    ++count;
    return k * x;
  }
};

// One open-boundary level of the rescaled circuit, in place on the lattice,
// followed by the (uncounted) compensation back to the production scale.
void counted_ternary_level(std::span<double> x, const TernaryCircuitSpec& spec, Extension left,
                           Counter& counter) {
  const auto n = static_cast<std::ptrdiff_t>(x.size());
  const std::ptrdiff_t o = left == Extension::Site ? 1 : 0;
  const auto& angles = spec.angles();
  double k_site = 1.0;

  for (std::size_t i = 0; i < angles.size(); ++i) {
    const double theta = angles[angles.size() - 1 - i];
    if (i > 0)
      for (std::ptrdiff_t p = 2 - o; p + 1 < n; p += 3) std::swap(x[p], x[p + 1]);

    const bool trivial = is_trivial(theta);
    const double c = trivial ? (std::cos(theta) > 0 ? 1.0 : -1.0) : std::cos(theta);
    const double sp = kSqrt2 * std::sin(theta);
    // Rescaled v^T rows: (a, -1, b), (1, d, 1), (b, -1, a); trivial rows are
    // used unscaled: (a, 0, b), (0, c, 0), (b, 0, a).
    const double a = trivial ? 0.5 * (c + 1.0) : (c + 1.0) / sp;
    const double b = trivial ? 0.5 * (c - 1.0) : (c - 1.0) / sp;
    const double d = trivial ? c : 2.0 * c / sp;
    const double e = trivial ? c : kSqrt2 * c / std::sin(theta);
    if (!trivial) k_site *= 2.0 / sp;

    auto half = [&](std::ptrdiff_t s_idx, std::ptrdiff_t c_idx) {
      const double s = x[s_idx], ctr = x[c_idx];
      if (trivial) {
        x[s_idx] = counter.mul(c, s);
        x[c_idx] = counter.mul(c, ctr);
      } else {
        x[s_idx] = counter.mul(e, s) - ctr;
        x[c_idx] = s + s + counter.mul(e, ctr);
      }
    };

    for (std::ptrdiff_t t = -o; t < n; t += 3) {
      if (t >= 0 && t + 2 < n) {
        const double x0 = x[t], x1 = x[t + 1], x2 = x[t + 2];
        const double side = trivial ? 0.0 : x1;
        x[t] = counter.mul(a, x0) - side + counter.mul(b, x2);
        x[t + 1] = (trivial ? 0.0 : x0 + x2) + counter.mul(d, x1);
        x[t + 2] = counter.mul(b, x0) - side + counter.mul(a, x2);
      } else if (t == -1) {
        half(1, 0);
      } else {
        half(n - 2, n - 1);
      }
    }
  }

  if (o == 0) x[0] = x[0] + x[0];
  for (std::ptrdiff_t p = 2 - o; p < n; p += 3) {
    if (p + 1 < n) {
      const double u = x[p], v = x[p + 1];
      x[p] = u + v;
      x[p + 1] = u - v;
    } else {
      x[p] = x[p] + x[p];
    }
  }

  const double k_edge = kSqrt2 * k_site;
  for (std::ptrdiff_t p = 0; p < n; ++p) x[p] /= ((p + o) % 3 == 1) ? k_site : k_edge;
}

void counted_lift(std::span<double> x, std::size_t parity, double c, Counter& counter) {
  const std::size_t n = x.size();
  for (std::size_t i = parity; i < n; i += 2) {
    const double l = i == 0 ? x[1] : x[i - 1];
    const double r = i + 1 == n ? x[n - 2] : x[i + 1];
    x[i] += counter.mul(c, l + r);
  }
}

std::vector<double> counted_cdf_level(std::span<const double> signal, Counter& counter) {
  const LiftingScheme97 ls;
  std::vector<double> x(signal.begin(), signal.end());
  counted_lift(x, 1, ls.alpha, counter);
  counted_lift(x, 0, ls.beta, counter);
  counted_lift(x, 1, ls.gamma, counter);
  counted_lift(x, 0, ls.delta, counter);
  const std::size_t n = x.size(), na = (n + 1) / 2;
  std::vector<double> out(n);
  for (std::size_t i = 0; i < na; ++i) out[i] = counter.mul(kSqrt2 / ls.zeta, x[2 * i]);
  for (std::size_t i = 0; i < n / 2; ++i) out[na + i] = counter.mul(ls.zeta / kSqrt2, x[2 * i + 1]);
  return out;
}

double max_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace

std::size_t nontrivial_rows(const TernaryCircuitSpec& spec) {
  return static_cast<std::size_t>(
      std::count_if(spec.angles().begin(), spec.angles().end(),
                    [](double t) { return !is_trivial(t); }));
}

std::uint64_t mu_ternary_level(std::size_t n, const TernaryCircuitSpec& spec) {
  if (n % 3 != 0)
    throw InvalidArgument("interior cost model needs n divisible by 3, got " + std::to_string(n));
  return 5 * (n / 3) * nontrivial_rows(spec);
}

std::uint64_t mu_cdf_level(std::size_t n) {
  if (n < 2) throw InvalidArgument("CDF-9/7 cost needs n >= 2");
  return 3 * n;
}

ImageCost mu_image_total(WaveletKind family, std::size_t n) {
  ImageCost cost;
  cost.family = family;
  cost.n = n;
  double total = 0.0;
  std::size_t m = n;
  if (family == WaveletKind::Cdf97) {
    cost.asymptote = 6.0 / (1.0 - 0.25);
    while (m >= kCdf97MinLength) {
      total += 2.0 * double(m) * 3.0 * double(m);
      ++cost.levels;
      m = (m + 1) / 2;
    }
  } else {
    const TernaryCircuitSpec spec = ternary_spec(family);
    const double per_row = 5.0 / 3.0 * double(nontrivial_rows(spec));
    cost.asymptote = 2.0 * per_row / (1.0 - 1.0 / 9.0);
    while (m >= spec.min_transform_length()) {
      total += 2.0 * double(m) * per_row * double(m);
      ++cost.levels;
      m = plan_level(m, spec.cascade()).n_sca;
    }
  }
  cost.total = static_cast<std::uint64_t>(std::llround(total));
  cost.per_n2 = n == 0 ? 0.0 : total / (double(n) * double(n));
  cost.near_asymptote =
      cost.asymptote > 0 && std::abs(cost.per_n2 - cost.asymptote) <= 0.02 * cost.asymptote;
  return cost;
}

CostReport instrument_transform(std::span<const double> signal, WaveletKind family,
                                std::size_t max_levels) {
  CostReport report;
  report.family = family;
  report.n = signal.size();
  Counter counter;
  double analytic = 0.0;

  if (family == WaveletKind::Cdf97) {
    const auto production = forward_multi_97(signal, max_levels);
    std::vector<double> current(signal.begin(), signal.end());
    for (const Bands97& level : production) {
      const std::size_t n = current.size(), na = (n + 1) / 2;
      const auto out = counted_cdf_level(current, counter);
      std::vector<double> joined(level.approx);
      joined.insert(joined.end(), level.detail.begin(), level.detail.end());
      report.max_deviation = std::max(report.max_deviation, max_diff(out, joined));
      analytic += 3.0 * double(n);
      current.assign(out.begin(), out.begin() + static_cast<std::ptrdiff_t>(na));
    }
    report.levels = production.size();
    report.envelope = 12 * report.levels;
    report.notes = "lifting: 4 steps x n/2 + 2 scalings";
  } else {
    const TernaryCircuitSpec spec = ternary_spec(family);
    const auto production = forward_multi(signal, spec, max_levels);
    const std::size_t rows = nontrivial_rows(spec);
    std::vector<double> current(signal.begin(), signal.end());
    for (const Subbands1D& level : production) {
      counted_ternary_level(current, spec, level.plan.left, counter);
      const Subbands1D got = subbands_from_lattice(current, level.plan, spec.cascade());
      report.max_deviation =
          std::max({report.max_deviation, max_diff(got.sca, level.sca),
                    max_diff(got.wav_plus, level.wav_plus),
                    max_diff(got.wav_minus, level.wav_minus)});
      analytic += 5.0 / 3.0 * double(rows) * double(level.plan.n);
      current = got.sca;
    }
    report.levels = production.size();
    report.envelope = 12 * spec.depth() * report.levels;
    report.notes = "rescaled gates; " + std::to_string(spec.depth() - rows) +
                   " trivial rows skipped";
  }
  report.mu_analytic = static_cast<std::uint64_t>(std::llround(analytic));
  report.mu_instrumented = counter.count;
  return report;
}

}  // namespace ternwave
