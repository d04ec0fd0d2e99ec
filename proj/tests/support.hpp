#pragma once

// Small hand-rolled generators for property tests. Every property runs a
// fixed number of cases from a fixed seed; failures report the case index
// and seed through SCOPED_TRACE so they can be replayed.

#include <gtest/gtest.h>

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "oracle.hpp"
#include "ternwave/image.hpp"

namespace twtest {

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  double normal(double sigma = 1.0) { return std::normal_distribution<double>(0.0, sigma)(rng_); }
  std::size_t size(std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng_);
  }
  std::vector<double> vec(std::size_t n, double lo = -1.0, double hi = 1.0) {
    std::vector<double> v(n);
    for (double& x : v) x = uniform(lo, hi);
    return v;
  }
  ternwave::Plane plane(std::size_t w, std::size_t h, double lo = 0.0, double hi = 1.0) {
    ternwave::Plane p(w, h);
    for (double& x : p.data) x = uniform(lo, hi);
    return p;
  }
  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

/// Runs fn(gen, case_index) for `cases` cases.
template <typename Fn>
void for_all(std::size_t cases, std::uint64_t seed, Fn&& fn) {
  Gen gen(seed);
  for (std::size_t i = 0; i < cases; ++i) {
    SCOPED_TRACE("property case " + std::to_string(i) + ", seed " + std::to_string(seed));
    fn(gen, i);
    if (::testing::Test::HasFatalFailure()) return;
  }
}

inline double max_abs_diff(std::span<const double> a, std::span<const double> b) {
  EXPECT_EQ(a.size(), b.size());
  double m = 0.0;
  for (std::size_t i = 0; i < std::min(a.size(), b.size()); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

inline double max_abs(std::span<const double> a) {
  double m = 0.0;
  for (double v : a) m = std::max(m, std::abs(v));
  return m;
}

inline double norm2(std::span<const double> a) {
  double s = 0.0;
  for (double v : a) s += v * v;
  return std::sqrt(s);
}

}  // namespace twtest
