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

#include "paulitomo/entangled_state.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "paulitomo/pauli_algebra.hpp"

namespace paulitomo {

TwoQubitPureState::TwoQubitPureState(const ComplexMatrix2& psi, double tol) : psi_(psi) {
  if (!psi.is_finite()) {
    throw std::invalid_argument("state coefficients must be finite");
  }
  const double norm = psi.frobenius_norm();
  if (std::abs(norm - 1.0) > tol) {
    throw std::invalid_argument("state coefficients must have unit norm, got " +
                                std::to_string(norm));
  }
}

TwoQubitPureState bell_state(int k) {
  if (k < 0 || k > 3) {
    throw std::out_of_range("bell state index must be in 0..3, got " + std::to_string(k));
  }
  return TwoQubitPureState{(1.0 / std::sqrt(2.0)) * pauli(k)};
}

TwoQubitPureState apply_local(const ComplexMatrix2& u, const TwoQubitPureState& state,
                              double tol) {
  if (!u.is_unitary(tol)) {
    throw std::invalid_argument("apply_local requires a unitary matrix");
  }
  return TwoQubitPureState{u * state.coefficients()};
}

int CorrelationTensor::check(int i) {
  if (i < 0 || i > 3) {
    throw std::out_of_range("correlation index must be in 0..3, got " + std::to_string(i));
  }
  return i;
}

CorrelationTensor correlation_tensor(const TwoQubitPureState& state) {
  const ComplexMatrix2& psi = state.coefficients();
  CorrelationTensor delta;
  for (int i = 0; i < 4; ++i) {
    const ComplexMatrix2 left = psi.adjoint() * pauli(i) * psi;
    for (int j = 0; j < 4; ++j) {
      delta(i, j) = (left * pauli(j).conjugate()).trace().real();
    }
  }
  // Unit norm makes this exact; do not let rounding leak into the corner.
  delta(0, 0) = 1.0;
  return delta;
}

bool is_full_rank(const TwoQubitPureState& state, double rank_tolerance) {
  // For a unit-norm 2x2 matrix |det| bounds the smallest singular value
  // within a factor sqrt(2), so it is an adequate conditioning proxy.
  return std::abs(state.coefficients().det()) > rank_tolerance;
}

}  // namespace paulitomo
