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

#include <variant>
#include <vector>

#include "paulitomo/complex_matrix.hpp"

namespace paulitomo {

/// sigma_i on the computational basis {|0> = h-polarized, |1> = v-polarized},
/// i in 0..3 with sigma_0 the identity. Throws std::out_of_range otherwise.
ComplexMatrix2 pauli(int i);

/// Birefringent plate: retardation phase phi and orientation angle theta,
/// both in radians. Angles are periodic, so any finite value is accepted;
/// a half-wave plate has phi = pi, a quarter-wave plate phi = pi/2.
struct WavePlateSpec {
  double phi = 0.0;
  double theta = 0.0;
};

/// Jones matrix of a wave plate:
///
///   W(phi, theta) = R(theta) diag(1, e^{i phi}) R(-theta)
///                 = [[z+ + c z-,  s z-],
///                    [s z-,       z+ - c z-]]
///
/// with s = sin 2theta, c = cos 2theta and z± = (1 ± e^{i phi}) / 2.
/// Always unitary. Throws std::invalid_argument on non-finite angles.
ComplexMatrix2 waveplate_matrix(const WavePlateSpec& spec);

/// One element of an optical cascade: either a plate or an explicit unitary.
using DeviceElement = std::variant<WavePlateSpec, ComplexMatrix2>;

/// Ordered cascade describing the device under test. The first element acts
/// on the beam first.
struct DeviceSpec {
  std::vector<DeviceElement> elements;
};

/// Matrix of the full cascade, applied in physical order:
/// U = W_last * ... * W_first. The empty cascade is the identity.
/// Raw matrix elements must be unitary within `tol`; throws
/// std::invalid_argument otherwise.
ComplexMatrix2 compose_device(const DeviceSpec& spec, double tol = kDefaultTolerance);

/// Rotation induced on the Pauli axes by conjugation with a unitary U:
///
///   U^dag sigma_a U = sum_b R_ab sigma_b,
///   R_ab = Re Tr[U^dag sigma_a U sigma_b] / 2   (a, b in 1..3).
///
/// R is orthogonal with determinant +1, and composes along with the
/// matrices: R(UV) = R(U) R(V). Throws std::invalid_argument if U is not
/// unitary within `tol`.
RotationMatrix3 rotation_of(const ComplexMatrix2& u, double tol = kDefaultTolerance);

}  // namespace paulitomo
