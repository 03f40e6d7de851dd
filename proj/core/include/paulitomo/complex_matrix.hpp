// Copyright 2026 The paulitomo Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <array>
#include <complex>

namespace paulitomo {

using complexd = std::complex<double>;

/// Default tolerance for matrix comparisons. Everything in this library is
/// 2x2 or 3x3, so there is no meaningful error accumulation beyond a few ulp.
inline constexpr double kDefaultTolerance = 1e-12;

/// Dense 2x2 complex matrix with value semantics: qubit operators,
/// wave-plate unitaries and two-qubit state matrices all live here.
/// Equality is always tolerance-based (see approx_equal); there is
/// deliberately no operator==.
class ComplexMatrix2 {
 public:
  constexpr ComplexMatrix2() = default;
  constexpr ComplexMatrix2(complexd a00, complexd a01, complexd a10, complexd a11)
      : e_{{{a00, a01}, {a10, a11}}} {}

  static constexpr ComplexMatrix2 zero() { return {}; }
  static constexpr ComplexMatrix2 identity() { return {1.0, 0.0, 0.0, 1.0}; }

  complexd& operator()(int row, int col) { return e_[static_cast<std::size_t>(row)][static_cast<std::size_t>(col)]; }
  const complexd& operator()(int row, int col) const {
    return e_[static_cast<std::size_t>(row)][static_cast<std::size_t>(col)];
  }

  ComplexMatrix2 adjoint() const;
  ComplexMatrix2 transpose() const;
  ComplexMatrix2 conjugate() const;

  complexd trace() const { return e_[0][0] + e_[1][1]; }
  complexd det() const { return e_[0][0] * e_[1][1] - e_[0][1] * e_[1][0]; }

  /// Inverse via the adjugate. Throws std::domain_error when the determinant
  /// vanishes at double precision; callers that need a physically meaningful
  /// rank check should test |det| against their own threshold first.
  ComplexMatrix2 inverse() const;

  double frobenius_norm() const;
  double max_abs() const;
  bool is_finite() const;

  /// Entrywise comparison: max |a_ij - b_ij| <= tol.
  bool approx_equal(const ComplexMatrix2& other, double tol = kDefaultTolerance) const;

  /// max |(A^dag A - I)_ij| <= tol.
  bool is_unitary(double tol = kDefaultTolerance) const;

  ComplexMatrix2& operator+=(const ComplexMatrix2& other);
  ComplexMatrix2& operator-=(const ComplexMatrix2& other);
  ComplexMatrix2& operator*=(complexd scalar);

 private:
  std::array<std::array<complexd, 2>, 2> e_{};
};

ComplexMatrix2 operator+(ComplexMatrix2 a, const ComplexMatrix2& b);
ComplexMatrix2 operator-(ComplexMatrix2 a, const ComplexMatrix2& b);
ComplexMatrix2 operator*(const ComplexMatrix2& a, const ComplexMatrix2& b);
ComplexMatrix2 operator*(complexd scalar, ComplexMatrix2 a);
ComplexMatrix2 operator*(ComplexMatrix2 a, complexd scalar);

/// Unitary factor of the polar decomposition A = U_p sqrt(A^dag A): the
/// Frobenius-nearest unitary to A. Requires A invertible; throws
/// std::domain_error on (numerically) singular input.
ComplexMatrix2 polar_unitary_factor(const ComplexMatrix2& a);

/// Real 3x3 matrix; used for the rotations induced on the Pauli axes by
/// qubit unitaries.
class RotationMatrix3 {
 public:
  constexpr RotationMatrix3() = default;

  static RotationMatrix3 identity();

  double& operator()(int row, int col) { return e_[static_cast<std::size_t>(row)][static_cast<std::size_t>(col)]; }
  double operator()(int row, int col) const {
    return e_[static_cast<std::size_t>(row)][static_cast<std::size_t>(col)];
  }

  RotationMatrix3 transpose() const;
  double det() const;

  /// max |(R R^T - I)_ij| <= tol.
  bool is_orthogonal(double tol = 1e-10) const;
  bool approx_equal(const RotationMatrix3& other, double tol = 1e-10) const;

 private:
  std::array<std::array<double, 3>, 3> e_{};
};

RotationMatrix3 operator*(const RotationMatrix3& a, const RotationMatrix3& b);

}  // namespace paulitomo
