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
#include <cstdint>
#include <optional>
#include <string>

#include "paulitomo/complex_matrix.hpp"
#include "paulitomo/entangled_state.hpp"
#include "paulitomo/measurement.hpp"

namespace paulitomo {

/// Estimated Pauli correlations with per-entry standard errors.
/// Index 0 is the identity on that beam; entry (0, 0) is exactly 1.
struct CorrelationEstimate {
  std::array<std::array<double, 4>, 4> values{};
  std::array<std::array<double, 4>, 4> std_errors{};

  /// Requested pairs per setting, 0 when built from exact correlations or
  /// from a table loaded from disk.
  std::uint64_t shots_per_setting = 0;

  /// Wrap analytic correlations as a zero-error estimate.
  static CorrelationEstimate from_exact(const CorrelationTensor& tensor);
};

/// Empirical correlations from a counts table.
///
/// Joint entries come from their own setting. The single-beam marginals are
/// pooled over the three settings sharing that axis, weighted by counts.
/// Standard errors use the binomial variance (1 - s^2) / N of a +-1 average
/// over the events that entered it. Throws ReconstructionError when any
/// setting has zero total coincidences, naming the setting.
CorrelationEstimate estimate_correlations(const CountsTable& counts);

/// Product-basis vector |n m>, each index 0 (h) or 1 (v).
struct BasisPair {
  int first = 0;
  int second = 1;

  bool operator==(const BasisPair&) const = default;
};

/// Complex weights Q_ij(nm) tying correlation estimates to one coefficient.
struct QTensor {
  std::array<std::array<complexd, 4>, 4> values{};
};

/// Q_ij(nm) = <n|sigma_i|r1> <m|sigma_j|r2> for reference vector (r1, r2).
/// Satisfies sum_ij Q_ij(nm) Delta_ij(Psi) / 4 = conj(Psi_{r1 r2}) Psi_nm,
/// which is what makes the linear reconstruction below work. Throws
/// std::out_of_range for indices outside {0, 1}.
QTensor q_tensor(int n, int m, BasisPair reference);

/// Reconstructed state matrix. The gauge is tied to the reference vector:
/// the entry at `reference` equals sqrt(p_hat), real and non-negative.
struct StateEstimate {
  ComplexMatrix2 psi_hat;
  BasisPair reference;

  /// Estimated probability of the reference coincidence cell.
  double p_hat = 0.0;
};

struct ReconstructionOptions {
  /// Reference vector for normalization and gauge. Empty selects the basis
  /// pair with the largest estimated probability.
  std::optional<BasisPair> reference;

  /// Reject references whose estimated probability is at or below this;
  /// dividing by sqrt of a tiny p amplifies noise without bound.
  double p_min = 1e-3;
};

/// Invert the correlation estimate into a state matrix:
///
///   Psi_nm = (1 / (4 sqrt(p))) sum_ij Q_ij(nm) s_ij
///
/// with p the reference-cell probability read off the z-basis correlations.
/// Throws ReconstructionError when p is at or below p_min for the chosen
/// reference, or when the result's norm falls outside [0.9, 1.1], which
/// signals counts inconsistent with a pure state.
StateEstimate reconstruct_state(const CorrelationEstimate& corr,
                                const ReconstructionOptions& options = {});

/// Per-element variances of the real and imaginary parts of a 2x2 estimate.
struct ElementVariances {
  std::array<std::array<double, 2>, 2> re{};
  std::array<std::array<double, 2>, 2> im{};
};

/// Reconstructed device matrix. `u_hat` is the raw inversion result, not
/// forced unitary; `u_unitary` is its polar projection, the nearest unitary
/// in Frobenius distance. Both share one gauge: the overall phase is chosen
/// so the largest-magnitude element of u_hat is real and non-negative.
/// `variances` is zero until filled in from a bootstrap run.
struct UnitaryEstimate {
  ComplexMatrix2 u_hat;
  ComplexMatrix2 u_unitary;
  ElementVariances variances;
  std::string gauge_note;
};

/// Device estimate by inversion: u_hat = psi_out psi_in^{-1}. Throws
/// ReconstructionError when |det psi_in| is at or below `rank_tolerance`,
/// since inversion requires that the input state is full-rank.
UnitaryEstimate reconstruct_unitary(const StateEstimate& input_est,
                                    const StateEstimate& output_est,
                                    double rank_tolerance = kRankTolerance);

/// |Tr(a^dag b)| / (|a|_F |b|_F): 1 iff b = c a for a complex scalar c, and
/// invariant under a global phase on either side. Throws
/// std::invalid_argument when either matrix is zero.
double gauge_fidelity(const ComplexMatrix2& a, const ComplexMatrix2& b);

/// `a` times the phase minimizing |e^{i phase} a - target|_F. When the
/// optimum is degenerate (Tr(a^dag target) = 0), returns `a` unchanged.
ComplexMatrix2 align_phase(const ComplexMatrix2& a, const ComplexMatrix2& target);

/// `a` rotated so its largest-magnitude element is real and non-negative.
/// Ties scan row-major and keep the first. The zero matrix is returned
/// unchanged.
ComplexMatrix2 fix_gauge(const ComplexMatrix2& a);

struct BootstrapOptions {
  int resamples = 200;
  std::uint64_t seed = 0;

  /// Used for the point estimates. Resamples reuse the references the point
  /// estimates picked so the gauge cannot jump between resamples.
  ReconstructionOptions reconstruction;
};

struct BootstrapResult {
  /// Variances of the reconstructed input-state elements.
  ElementVariances psi_in;

  /// Variances of the raw device-matrix elements.
  ElementVariances unitary;
};

/// Nonparametric bootstrap: each setting of both tables is resampled
/// multinomially at its observed total and the full reconstruction is
/// re-run. Every resample is phase-aligned to the point estimate before the
/// per-element sample variance is taken, so the unmeasurable global phase
/// does not inflate the numbers. Deterministic for a fixed seed. Throws
/// std::invalid_argument when resamples < 2 and ReconstructionError on
/// degenerate counts.
BootstrapResult bootstrap_variances(const CountsTable& input_counts,
                                    const CountsTable& output_counts,
                                    const BootstrapOptions& options = {});

}  // namespace paulitomo
