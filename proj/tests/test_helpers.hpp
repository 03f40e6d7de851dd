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
#include <cmath>
#include <numbers>
#include <random>

#include "paulitomo/complex_matrix.hpp"
#include "paulitomo/entangled_state.hpp"
#include "paulitomo/pauli_algebra.hpp"

namespace paulitomo::testing {

/// Haar-ish random unitary from the su(2) exponential plus a random global
/// phase. Deliberately not built from wave plates so plate code has an
/// independent reference.
inline ComplexMatrix2 random_unitary(std::mt19937_64& gen) {
  std::normal_distribution<double> normal;
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  double nx = normal(gen);
  double ny = normal(gen);
  double nz = normal(gen);
  const double len = std::sqrt(nx * nx + ny * ny + nz * nz);
  if (len == 0.0) {
    nx = 1.0;
    ny = nz = 0.0;
  } else {
    nx /= len;
    ny /= len;
    nz /= len;
  }
  const double t = std::numbers::pi * unit(gen);
  const double c = std::cos(t);
  const double s = std::sin(t);
  const complexd i{0.0, 1.0};
  const ComplexMatrix2 u{c - i * (s * nz), -s * ny - i * (s * nx),
                         s * ny - i * (s * nx), c + i * (s * nz)};
  return std::polar(1.0, 2.0 * std::numbers::pi * unit(gen)) * u;
}

/// Unit-norm coefficient matrix with |det| at least `min_det`, so the
/// inversion step stays well conditioned.
inline ComplexMatrix2 random_state_matrix(std::mt19937_64& gen, double min_det = 0.05) {
  std::normal_distribution<double> normal;
  while (true) {
    ComplexMatrix2 m;
    for (int r = 0; r < 2; ++r) {
      for (int c = 0; c < 2; ++c) {
        m(r, c) = complexd{normal(gen), normal(gen)};
      }
    }
    m *= 1.0 / m.frobenius_norm();
    if (std::abs(m.det()) >= min_det) {
      return m;
    }
  }
}

/// Joint Pauli expectation by brute force on the 4-dimensional product
/// space: <psi| sigma_i x sigma_j |psi> with the state vector indexed as
/// vec[2 n + m] = Psi_nm. Independent of the production trace formula.
inline double correlation_oracle(const ComplexMatrix2& psi, int i, int j) {
  const ComplexMatrix2 a = pauli(i);
  const ComplexMatrix2 b = pauli(j);
  std::array<complexd, 4> vec{};
  for (int n = 0; n < 2; ++n) {
    for (int m = 0; m < 2; ++m) {
      vec[static_cast<std::size_t>(2 * n + m)] = psi(n, m);
    }
  }
  complexd acc = 0.0;
  for (int n2 = 0; n2 < 2; ++n2) {
    for (int m2 = 0; m2 < 2; ++m2) {
      for (int n = 0; n < 2; ++n) {
        for (int m = 0; m < 2; ++m) {
          acc += std::conj(vec[static_cast<std::size_t>(2 * n2 + m2)]) * a(n2, n) * b(m2, m) *
                 vec[static_cast<std::size_t>(2 * n + m)];
        }
      }
    }
  }
  return acc.real();
}

/// Wave plate as rotate, retard, rotate back. Independent of the
/// production closed form.
inline ComplexMatrix2 waveplate_oracle(double phi, double theta) {
  const ComplexMatrix2 rot{std::cos(theta), -std::sin(theta), std::sin(theta), std::cos(theta)};
  const ComplexMatrix2 retarder{1.0, 0.0, 0.0, std::exp(complexd{0.0, phi})};
  return rot * retarder * rot.transpose();
}

/// A local operator on beam 2 enters through the column index: Psi V^T.
inline TwoQubitPureState apply_beam2(const ComplexMatrix2& v, const TwoQubitPureState& state) {
  return TwoQubitPureState{state.coefficients() * v.transpose()};
}

/// Bloch vector of the single-qubit pure state (c0, c1).
inline std::array<double, 3> bloch_vector(complexd c0, complexd c1) {
  std::array<double, 3> b{};
  for (int a = 1; a <= 3; ++a) {
    const ComplexMatrix2 sigma = pauli(a);
    const complexd value = std::conj(c0) * (sigma(0, 0) * c0 + sigma(0, 1) * c1) +
                           std::conj(c1) * (sigma(1, 0) * c0 + sigma(1, 1) * c1);
    b[static_cast<std::size_t>(a - 1)] = value.real();
  }
  return b;
}

}  // namespace paulitomo::testing
