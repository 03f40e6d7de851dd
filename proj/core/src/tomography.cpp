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

#include "paulitomo/tomography.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "paulitomo/errors.hpp"
#include "paulitomo/pauli_algebra.hpp"
#include "paulitomo/rng.hpp"

namespace paulitomo {

namespace {

const char* axis_letter(int axis) {
  switch (axis) {
    case 1:
      return "x";
    case 2:
      return "y";
    default:
      return "z";
  }
}

double pm_average_error(double mean, double total) {
  // Variance of the average of `total` independent +-1 draws with the
  // given mean. Rounding can push 1 - mean^2 a hair below zero.
  return std::sqrt(std::max(1.0 - mean * mean, 0.0) / total);
}

int check_basis_index(int v, const char* what) {
  if (v != 0 && v != 1) {
    throw std::out_of_range(std::string(what) + " must be 0 or 1, got " + std::to_string(v));
  }
  return v;
}

double sign_for(int basis_index) { return basis_index == 0 ? 1.0 : -1.0; }

/// p for reference (r1, r2) from the z-axis correlations, via the projector
/// expansion |r><r| = (1 + (-1)^{r1} s3)(1 + (-1)^{r2} s3) / 4.
double reference_probability(const CorrelationEstimate& corr, BasisPair r) {
  return 0.25 * (1.0 + sign_for(r.first) * corr.values[3][0] +
                 sign_for(r.second) * corr.values[0][3] +
                 sign_for(r.first) * sign_for(r.second) * corr.values[3][3]);
}

struct RunningMoments {
  std::vector<double> samples;

  void add(double x) { samples.push_back(x); }

  double variance() const {
    const std::size_t n = samples.size();
    double mean = 0.0;
    for (double x : samples) {
      mean += x;
    }
    mean /= static_cast<double>(n);
    double ss = 0.0;
    for (double x : samples) {
      ss += (x - mean) * (x - mean);
    }
    return ss / static_cast<double>(n - 1);
  }
};

CountsTable resample_table(const CountsTable& source, std::uint64_t resample_seed,
                           std::uint64_t table_tag) {
  CountsTable out;
  out.shots_requested = source.shots_requested;
  out.seed = 0;
  int setting_index = 0;
  for (Setting s : CountsTable::all_settings()) {
    const OutcomeCounts& c = source.at(s);
    const double total = static_cast<double>(c.total());
    const std::array<double, 4> fractions = {
        static_cast<double>(c.n_pp) / total, static_cast<double>(c.n_pm) / total,
        static_cast<double>(c.n_mp) / total, static_cast<double>(c.n_mm) / total};
    auto gen = make_stream(resample_seed, table_tag, static_cast<std::uint64_t>(setting_index));
    out.at(s) = sample_setting(fractions, c.total(), gen);
    ++setting_index;
  }
  return out;
}

}  // namespace

CorrelationEstimate CorrelationEstimate::from_exact(const CorrelationTensor& tensor) {
  CorrelationEstimate est;
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      est.values[i][j] = tensor(i, j);
    }
  }
  est.shots_per_setting = 0;
  return est;
}

CorrelationEstimate estimate_correlations(const CountsTable& counts) {
  for (Setting s : CountsTable::all_settings()) {
    if (counts.at(s).total() == 0) {
      throw ReconstructionError(std::string("setting (") + axis_letter(s.alpha) + ", " +
                                axis_letter(s.beta) + ") has zero coincidences");
    }
  }

  CorrelationEstimate est;
  est.shots_per_setting = counts.shots_requested;
  est.values[0][0] = 1.0;
  est.std_errors[0][0] = 0.0;

  for (int alpha = 1; alpha <= 3; ++alpha) {
    for (int beta = 1; beta <= 3; ++beta) {
      const OutcomeCounts& c = counts.at(Setting{alpha, beta});
      const double total = static_cast<double>(c.total());
      const double s = (static_cast<double>(c.n_pp) - static_cast<double>(c.n_pm) -
                        static_cast<double>(c.n_mp) + static_cast<double>(c.n_mm)) /
                       total;
      est.values[alpha][beta] = s;
      est.std_errors[alpha][beta] = pm_average_error(s, total);
    }
  }

  // Marginals pool the three settings sharing the axis; each coincidence
  // contributes its own beam's sign regardless of the partner setting.
  for (int alpha = 1; alpha <= 3; ++alpha) {
    double signed_sum = 0.0;
    double total = 0.0;
    for (int beta = 1; beta <= 3; ++beta) {
      const OutcomeCounts& c = counts.at(Setting{alpha, beta});
      signed_sum += static_cast<double>(c.n_pp) + static_cast<double>(c.n_pm) -
                    static_cast<double>(c.n_mp) - static_cast<double>(c.n_mm);
      total += static_cast<double>(c.total());
    }
    est.values[alpha][0] = signed_sum / total;
    est.std_errors[alpha][0] = pm_average_error(est.values[alpha][0], total);
  }
  for (int beta = 1; beta <= 3; ++beta) {
    double signed_sum = 0.0;
    double total = 0.0;
    for (int alpha = 1; alpha <= 3; ++alpha) {
      const OutcomeCounts& c = counts.at(Setting{alpha, beta});
      signed_sum += static_cast<double>(c.n_pp) - static_cast<double>(c.n_pm) +
                    static_cast<double>(c.n_mp) - static_cast<double>(c.n_mm);
      total += static_cast<double>(c.total());
    }
    est.values[0][beta] = signed_sum / total;
    est.std_errors[0][beta] = pm_average_error(est.values[0][beta], total);
  }
  return est;
}

QTensor q_tensor(int n, int m, BasisPair reference) {
  check_basis_index(n, "basis index n");
  check_basis_index(m, "basis index m");
  check_basis_index(reference.first, "reference component");
  check_basis_index(reference.second, "reference component");
  QTensor q;
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      q.values[i][j] = pauli(i)(n, reference.first) * pauli(j)(m, reference.second);
    }
  }
  return q;
}

StateEstimate reconstruct_state(const CorrelationEstimate& corr,
                                const ReconstructionOptions& options) {
  BasisPair reference;
  double p = 0.0;
  if (options.reference.has_value()) {
    reference = *options.reference;
    check_basis_index(reference.first, "reference component");
    check_basis_index(reference.second, "reference component");
    p = reference_probability(corr, reference);
  } else {
    // Row-major scan; strict comparison keeps the earliest maximum.
    bool first = true;
    for (int n = 0; n < 2; ++n) {
      for (int m = 0; m < 2; ++m) {
        const double candidate = reference_probability(corr, BasisPair{n, m});
        if (first || candidate > p) {
          p = candidate;
          reference = BasisPair{n, m};
          first = false;
        }
      }
    }
  }
  if (!(p > options.p_min)) {
    throw ReconstructionError(
        "reference (" + std::to_string(reference.first) + ", " +
        std::to_string(reference.second) + ") has estimated probability " + std::to_string(p) +
        ", at or below the minimum " + std::to_string(options.p_min));
  }

  const double scale = 1.0 / (4.0 * std::sqrt(p));
  ComplexMatrix2 psi;
  for (int n = 0; n < 2; ++n) {
    for (int m = 0; m < 2; ++m) {
      const QTensor q = q_tensor(n, m, reference);
      complexd acc = 0.0;
      for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
          acc += q.values[i][j] * corr.values[i][j];
        }
      }
      psi(n, m) = scale * acc;
    }
  }

  const double norm = psi.frobenius_norm();
  if (norm < 0.9 || norm > 1.1) {
    throw ReconstructionError("reconstructed state has norm " + std::to_string(norm) +
                              ", outside [0.9, 1.1]; counts are inconsistent with a pure state");
  }
  return StateEstimate{psi, reference, p};
}

UnitaryEstimate reconstruct_unitary(const StateEstimate& input_est,
                                    const StateEstimate& output_est, double rank_tolerance) {
  const double det_mag = std::abs(input_est.psi_hat.det());
  if (!(det_mag > rank_tolerance)) {
    throw ReconstructionError(
        "input-state estimate has |det| = " + std::to_string(det_mag) +
        "; inversion requires that the input state is full-rank (|det| > " +
        std::to_string(rank_tolerance) + ")");
  }
  UnitaryEstimate estimate;
  estimate.u_hat = fix_gauge(output_est.psi_hat * input_est.psi_hat.inverse());
  try {
    estimate.u_unitary = polar_unitary_factor(estimate.u_hat);
  } catch (const std::domain_error& e) {
    throw ReconstructionError(std::string("polar projection failed: ") + e.what());
  }
  estimate.gauge_note =
      "overall phase is not measurable; phase fixed so the largest-magnitude "
      "element of u_hat is real and non-negative";
  return estimate;
}

double gauge_fidelity(const ComplexMatrix2& a, const ComplexMatrix2& b) {
  const double na = a.frobenius_norm();
  const double nb = b.frobenius_norm();
  if (na == 0.0 || nb == 0.0) {
    throw std::invalid_argument("gauge_fidelity requires nonzero matrices");
  }
  return std::abs((a.adjoint() * b).trace()) / (na * nb);
}

ComplexMatrix2 align_phase(const ComplexMatrix2& a, const ComplexMatrix2& target) {
  const complexd overlap = (a.adjoint() * target).trace();
  if (overlap == complexd{0.0, 0.0}) {
    return a;
  }
  return std::polar(1.0, std::arg(overlap)) * a;
}

ComplexMatrix2 fix_gauge(const ComplexMatrix2& a) {
  complexd pivot = a(0, 0);
  for (int r = 0; r < 2; ++r) {
    for (int c = 0; c < 2; ++c) {
      if (std::abs(a(r, c)) > std::abs(pivot)) {
        pivot = a(r, c);
      }
    }
  }
  if (pivot == complexd{0.0, 0.0}) {
    return a;
  }
  return std::polar(1.0, -std::arg(pivot)) * a;
}

BootstrapResult bootstrap_variances(const CountsTable& input_counts,
                                    const CountsTable& output_counts,
                                    const BootstrapOptions& options) {
  if (options.resamples < 2) {
    throw std::invalid_argument("bootstrap needs at least 2 resamples, got " +
                                std::to_string(options.resamples));
  }

  const CorrelationEstimate corr_in = estimate_correlations(input_counts);
  const CorrelationEstimate corr_out = estimate_correlations(output_counts);
  const StateEstimate point_in = reconstruct_state(corr_in, options.reconstruction);
  const StateEstimate point_out = reconstruct_state(corr_out, options.reconstruction);
  const UnitaryEstimate point_u = reconstruct_unitary(point_in, point_out);

  ReconstructionOptions frozen_in = options.reconstruction;
  frozen_in.reference = point_in.reference;
  ReconstructionOptions frozen_out = options.reconstruction;
  frozen_out.reference = point_out.reference;

  RunningMoments psi_moments[2][2][2];
  RunningMoments u_moments[2][2][2];
  for (int r = 0; r < options.resamples; ++r) {
    const std::uint64_t resample_seed =
        derive_stream_seed(options.seed, static_cast<std::uint64_t>(r));
    const CountsTable in_r = resample_table(input_counts, resample_seed, 0);
    const CountsTable out_r = resample_table(output_counts, resample_seed, 1);

    const StateEstimate est_in = reconstruct_state(estimate_correlations(in_r), frozen_in);
    const StateEstimate est_out = reconstruct_state(estimate_correlations(out_r), frozen_out);
    const UnitaryEstimate est_u = reconstruct_unitary(est_in, est_out);

    // The per-resample gauge is arbitrary up to a phase; aligning to the
    // point estimate measures spread around it, not phase jitter.
    const ComplexMatrix2 psi_aligned = align_phase(est_in.psi_hat, point_in.psi_hat);
    const ComplexMatrix2 u_aligned = align_phase(est_u.u_hat, point_u.u_hat);
    for (int row = 0; row < 2; ++row) {
      for (int col = 0; col < 2; ++col) {
        psi_moments[row][col][0].add(psi_aligned(row, col).real());
        psi_moments[row][col][1].add(psi_aligned(row, col).imag());
        u_moments[row][col][0].add(u_aligned(row, col).real());
        u_moments[row][col][1].add(u_aligned(row, col).imag());
      }
    }
  }

  BootstrapResult result;
  for (int row = 0; row < 2; ++row) {
    for (int col = 0; col < 2; ++col) {
      result.psi_in.re[row][col] = psi_moments[row][col][0].variance();
      result.psi_in.im[row][col] = psi_moments[row][col][1].variance();
      result.unitary.re[row][col] = u_moments[row][col][0].variance();
      result.unitary.im[row][col] = u_moments[row][col][1].variance();
    }
  }
  return result;
}

}  // namespace paulitomo
