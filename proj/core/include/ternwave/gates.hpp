#pragma once

// Elementary orthogonal gates of the ternary circuit formalism.
//
// Gates are dense 2x2 / 3x3 matrices. Transform kernels may precompute or fuse
// them, but these objects are what the tests treat as ground truth.

#include <array>

namespace ternwave {

using Mat2 = std::array<std::array<double, 2>, 2>;
using Mat3 = std::array<std::array<double, 3>, 3>;

/// Reflection-symmetric 3x3 rotation v(theta).
struct RotationGate3 {
  double theta = 0.0;
  Mat3 m{};

  /// y = m * x
  std::array<double, 3> apply(const std::array<double, 3>& x) const;
  /// y = m^T * x
  std::array<double, 3> apply_transposed(const std::array<double, 3>& x) const;
};

enum class Gate2Kind {
  Permutation,
  Hadamard,
  Left,
  Right,
  InverseLeft,
  InverseRight,
};

struct Gate2 {
  Gate2Kind kind = Gate2Kind::Permutation;
  double theta = 0.0;  // only meaningful for boundary kinds
  Mat2 m{};

  std::array<double, 2> apply(const std::array<double, 2>& x) const;
  std::array<double, 2> apply_transposed(const std::array<double, 2>& x) const;
};

struct FixedGates {
  Gate2 permutation;
  Gate2 hadamard;
};

/// Throws InvalidArgument for non-finite theta.
RotationGate3 ternary_gate(double theta);

/// Left (l), right (l^T), inverse-left ((l^T)^-1) and inverse-right gates.
/// Throws InvalidArgument for non-boundary kinds or non-finite theta.
Gate2 boundary_gate(Gate2Kind kind, double theta);

FixedGates fixed_gates();

Mat2 transpose(const Mat2& a);
Mat3 transpose(const Mat3& a);
Mat2 multiply(const Mat2& a, const Mat2& b);
Mat3 multiply(const Mat3& a, const Mat3& b);

/// Max-norm distance of a^T a from the identity.
double orthogonality_defect(const Mat2& a);
double orthogonality_defect(const Mat3& a);

/// Max-norm distance between a and J a J (J the exchange matrix).
double reflection_defect(const Mat3& a);

}  // namespace ternwave
