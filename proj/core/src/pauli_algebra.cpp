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

#include "paulitomo/pauli_algebra.hpp"

#include <cmath>
#include <stdexcept>

namespace paulitomo {

namespace {

constexpr complexd kI{0.0, 1.0};

}  // namespace

ComplexMatrix2 pauli(int i) {
  switch (i) {
    case 0:
      return ComplexMatrix2::identity();
    case 1:
      return ComplexMatrix2{0.0, 1.0, 1.0, 0.0};
    case 2:
      return ComplexMatrix2{0.0, -kI, kI, 0.0};
    case 3:
      return ComplexMatrix2{1.0, 0.0, 0.0, -1.0};
    default:
      throw std::out_of_range("pauli index must be in 0..3, got " + std::to_string(i));
  }
}

ComplexMatrix2 waveplate_matrix(const WavePlateSpec& spec) {
  if (!std::isfinite(spec.phi) || !std::isfinite(spec.theta)) {
    throw std::invalid_argument("wave plate angles must be finite");
  }
  const complexd retard = std::exp(kI * spec.phi);
  const complexd z_plus = (1.0 + retard) / 2.0;
  const complexd z_minus = (1.0 - retard) / 2.0;
  const double s = std::sin(2.0 * spec.theta);
  const double c = std::cos(2.0 * spec.theta);
  return ComplexMatrix2{z_plus + c * z_minus, s * z_minus,  //
                        s * z_minus, z_plus - c * z_minus};
}

ComplexMatrix2 compose_device(const DeviceSpec& spec, double tol) {
  ComplexMatrix2 u = ComplexMatrix2::identity();
  for (const DeviceElement& element : spec.elements) {
    ComplexMatrix2 w = std::holds_alternative<WavePlateSpec>(element)
                           ? waveplate_matrix(std::get<WavePlateSpec>(element))
                           : std::get<ComplexMatrix2>(element);
    if (std::holds_alternative<ComplexMatrix2>(element) && !w.is_unitary(tol)) {
      throw std::invalid_argument("device element matrix is not unitary");
    }
    // Later elements act on the state the earlier ones produced.
    u = w * u;
  }
  return u;
}

RotationMatrix3 rotation_of(const ComplexMatrix2& u, double tol) {
  if (!u.is_unitary(tol)) {
    throw std::invalid_argument("rotation_of requires a unitary matrix");
  }
  RotationMatrix3 r;
  for (int a = 1; a <= 3; ++a) {
    const ComplexMatrix2 conjugated = u.adjoint() * pauli(a) * u;
    for (int b = 1; b <= 3; ++b) {
      r(a - 1, b - 1) = 0.5 * (conjugated * pauli(b)).trace().real();
    }
  }
  return r;
}

}  // namespace paulitomo
