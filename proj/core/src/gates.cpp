#include "ternwave/gates.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "ternwave/error.hpp"

namespace ternwave {

namespace {

void require_finite(double theta) {
  if (!std::isfinite(theta))
    throw InvalidArgument("gate angle must be finite, got " + std::to_string(theta));
}

template <std::size_t N>
using Sq = std::array<std::array<double, N>, N>;

template <std::size_t N>
Sq<N> mat_transpose(const Sq<N>& a) {
  Sq<N> t{};
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < N; ++j) t[j][i] = a[i][j];
  return t;
}

template <std::size_t N>
Sq<N> mat_mul(const Sq<N>& a, const Sq<N>& b) {
  Sq<N> c{};
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < N; ++j) {
      double s = 0.0;
      for (std::size_t k = 0; k < N; ++k) s += a[i][k] * b[k][j];
      c[i][j] = s;
    }
  return c;
}

template <std::size_t N>
double ortho_defect(const Sq<N>& a) {
  const auto g = mat_mul(mat_transpose(a), a);
  double worst = 0.0;
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < N; ++j)
      worst = std::max(worst, std::abs(g[i][j] - (i == j ? 1.0 : 0.0)));
  return worst;
}

}  // namespace

std::array<double, 3> RotationGate3::apply(const std::array<double, 3>& x) const {
  return {m[0][0] * x[0] + m[0][1] * x[1] + m[0][2] * x[2],
          m[1][0] * x[0] + m[1][1] * x[1] + m[1][2] * x[2],
          m[2][0] * x[0] + m[2][1] * x[1] + m[2][2] * x[2]};
}

std::array<double, 3> RotationGate3::apply_transposed(const std::array<double, 3>& x) const {
  return {m[0][0] * x[0] + m[1][0] * x[1] + m[2][0] * x[2],
          m[0][1] * x[0] + m[1][1] * x[1] + m[2][1] * x[2],
          m[0][2] * x[0] + m[1][2] * x[1] + m[2][2] * x[2]};
}

std::array<double, 2> Gate2::apply(const std::array<double, 2>& x) const {
  return {m[0][0] * x[0] + m[0][1] * x[1], m[1][0] * x[0] + m[1][1] * x[1]};
}

std::array<double, 2> Gate2::apply_transposed(const std::array<double, 2>& x) const {
  return {m[0][0] * x[0] + m[1][0] * x[1], m[0][1] * x[0] + m[1][1] * x[1]};
}

RotationGate3 ternary_gate(double theta) {
  require_finite(theta);
  const double c = std::cos(theta);
  const double s = std::numbers::sqrt2 * std::sin(theta);
  RotationGate3 g;
  g.theta = theta;
  g.m = {{{0.5 * (c + 1.0), 0.5 * s, 0.5 * (c - 1.0)},
          {-0.5 * s, c, -0.5 * s},
          {0.5 * (c - 1.0), 0.5 * s, 0.5 * (c + 1.0)}}};
  return g;
}

Gate2 boundary_gate(Gate2Kind kind, double theta) {
  require_finite(theta);
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  const double r2 = std::numbers::sqrt2;
  const Mat2 left{{{c, -s / r2}, {r2 * s, c}}};
  const Mat2 inverse_left{{{c, -r2 * s}, {s / r2, c}}};

  Gate2 g;
  g.kind = kind;
  g.theta = theta;
  switch (kind) {
    case Gate2Kind::Left:
      g.m = left;
      break;
    case Gate2Kind::Right:
      g.m = mat_transpose(left);
      break;
    case Gate2Kind::InverseLeft:
      g.m = inverse_left;
      break;
    case Gate2Kind::InverseRight:
      g.m = mat_transpose(inverse_left);
      break;
    default:
      throw InvalidArgument("boundary_gate: kind is not a boundary gate");
  }
  return g;
}

FixedGates fixed_gates() {
  const double h = 1.0 / std::numbers::sqrt2;
  FixedGates f;
  f.permutation.kind = Gate2Kind::Permutation;
  f.permutation.m = {{{0.0, 1.0}, {1.0, 0.0}}};
  f.hadamard.kind = Gate2Kind::Hadamard;
  f.hadamard.m = {{{h, h}, {h, -h}}};
  return f;
}

Mat2 transpose(const Mat2& a) { return mat_transpose(a); }
Mat3 transpose(const Mat3& a) { return mat_transpose(a); }
Mat2 multiply(const Mat2& a, const Mat2& b) { return mat_mul(a, b); }
Mat3 multiply(const Mat3& a, const Mat3& b) { return mat_mul(a, b); }
double orthogonality_defect(const Mat2& a) { return ortho_defect(a); }
double orthogonality_defect(const Mat3& a) { return ortho_defect(a); }

double reflection_defect(const Mat3& a) {
  double worst = 0.0;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      worst = std::max(worst, std::abs(a[i][j] - a[2 - i][2 - j]));
  return worst;
}

}  // namespace ternwave
