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

#include "paulitomo/complex_matrix.hpp"

namespace paulitomo {

/// Smallest singular value below which a state is treated as rank deficient.
inline constexpr double kRankTolerance = 1e-9;

/// Pure state of a photon pair, stored as its coefficient matrix:
///
///   |psi> = sum_{n,m} Psi_nm |n>_1 |m>_2
///
/// with n indexing beam 1 and m indexing beam 2. The matrix must have unit
/// Frobenius norm; the constructor throws std::invalid_argument otherwise.
class TwoQubitPureState {
 public:
  explicit TwoQubitPureState(const ComplexMatrix2& psi, double tol = 1e-9);

  const ComplexMatrix2& coefficients() const { return psi_; }

 private:
  ComplexMatrix2 psi_;
};

/// Maximally entangled state Psi_k = sigma_k / sqrt(2), k in 0..3.
/// k = 0 is the state whose beams are perfectly correlated in the h/v basis.
/// Throws std::out_of_range for other k.
TwoQubitPureState bell_state(int k);

/// State after a device U acts on beam 1 only: Psi -> U Psi.
/// Throws std::invalid_argument if `u` is not unitary within `tol`.
TwoQubitPureState apply_local(const ComplexMatrix2& u, const TwoQubitPureState& state,
                              double tol = kDefaultTolerance);

/// Expectation values of joint Pauli observables, indexed 0..3 per beam.
/// Entry (0, 0) is 1 for any normalized state; row 0 and column 0 hold the
/// single-beam marginals.
class CorrelationTensor {
 public:
  double operator()(int i, int j) const { return values_[check(i) * 4 + check(j)]; }
  double& operator()(int i, int j) { return values_[check(i) * 4 + check(j)]; }

 private:
  static int check(int i);

  std::array<double, 16> values_{};
};

/// Delta_ij = Re Tr[Psi^dag sigma_i Psi sigma_j^*], the joint expectation
/// <sigma_i x sigma_j> on the state. The conjugate on the beam-2 factor
/// comes from the index convention above: beam 2 enters through a transpose.
CorrelationTensor correlation_tensor(const TwoQubitPureState& state);

/// True when |det| of the coefficient matrix exceeds `rank_tolerance`.
/// Only full-rank states admit device reconstruction by matrix inversion.
bool is_full_rank(const TwoQubitPureState& state, double rank_tolerance = kRankTolerance);

}  // namespace paulitomo
