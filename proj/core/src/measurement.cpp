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

#include "paulitomo/measurement.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "paulitomo/rng.hpp"

namespace paulitomo {

namespace {

struct Eigenvector {
  complexd c0;
  complexd c1;
};

// +1 eigenvector first. These fix what "+1" means physically: the h
// detector clicks. The z eigenvectors are the h / v modes themselves.
Eigenvector axis_eigenvector(int axis, bool plus) {
  const double r = 1.0 / std::sqrt(2.0);
  const complexd i{0.0, 1.0};
  switch (axis) {
    case 1:
      return plus ? Eigenvector{r, r} : Eigenvector{r, -r};
    case 2:
      return plus ? Eigenvector{r, r * i} : Eigenvector{r, -r * i};
    case 3:
      return plus ? Eigenvector{1.0, 0.0} : Eigenvector{0.0, 1.0};
    default:
      throw std::out_of_range("measurement axis must be in 1..3, got " + std::to_string(axis));
  }
}

// Coincidence amplitude for outcomes (a, b). Beam 2 enters through the
// column index of Psi, hence the conjugate on its eigenvector.
double joint_probability(const ComplexMatrix2& psi, int alpha, bool a_plus, int beta,
                         bool b_plus) {
  const Eigenvector ea = axis_eigenvector(alpha, a_plus);
  const Eigenvector eb = axis_eigenvector(beta, b_plus);
  complexd amp = 0.0;
  const complexd a[2] = {std::conj(ea.c0), std::conj(ea.c1)};
  const complexd b[2] = {std::conj(eb.c0), std::conj(eb.c1)};
  for (int n = 0; n < 2; ++n) {
    for (int m = 0; m < 2; ++m) {
      amp += a[n] * psi(n, m) * b[m];
    }
  }
  return std::norm(amp);
}

std::uint64_t draw_binomial(std::uint64_t n, double p, std::mt19937_64& gen) {
  if (n == 0 || p <= 0.0) {
    return 0;
  }
  if (p >= 1.0) {
    return n;
  }
  std::binomial_distribution<std::uint64_t> dist(n, p);
  return dist(gen);
}

}  // namespace

std::array<Setting, 9> CountsTable::all_settings() {
  std::array<Setting, 9> settings;
  for (int alpha = 1; alpha <= 3; ++alpha) {
    for (int beta = 1; beta <= 3; ++beta) {
      settings[(alpha - 1) * 3 + (beta - 1)] = Setting{alpha, beta};
    }
  }
  return settings;
}

int CountsTable::index(Setting s) {
  if (s.alpha < 1 || s.alpha > 3 || s.beta < 1 || s.beta > 3) {
    throw std::out_of_range("setting axes must be in 1..3, got (" + std::to_string(s.alpha) +
                            ", " + std::to_string(s.beta) + ")");
  }
  return (s.alpha - 1) * 3 + (s.beta - 1);
}

std::optional<WavePlateSpec> detector_plate_for(int axis) {
  switch (axis) {
    case 1:
      return WavePlateSpec{std::numbers::pi, std::numbers::pi / 8.0};
    case 2:
      return WavePlateSpec{std::numbers::pi / 2.0, std::numbers::pi / 4.0};
    case 3:
      return std::nullopt;
    default:
      throw std::out_of_range("measurement axis must be in 1..3, got " + std::to_string(axis));
  }
}

std::array<double, 4> outcome_probabilities(const TwoQubitPureState& state, Setting setting) {
  if (setting.alpha < 1 || setting.alpha > 3 || setting.beta < 1 || setting.beta > 3) {
    throw std::out_of_range("setting axes must be in 1..3, got (" +
                            std::to_string(setting.alpha) + ", " + std::to_string(setting.beta) +
                            ")");
  }
  const ComplexMatrix2& psi = state.coefficients();
  return {joint_probability(psi, setting.alpha, true, setting.beta, true),
          joint_probability(psi, setting.alpha, true, setting.beta, false),
          joint_probability(psi, setting.alpha, false, setting.beta, true),
          joint_probability(psi, setting.alpha, false, setting.beta, false)};
}

OutcomeCounts sample_setting(const std::array<double, 4>& probs, std::uint64_t shots,
                             std::mt19937_64& gen) {
  double sum = 0.0;
  for (double p : probs) {
    if (!(p >= 0.0)) {
      throw std::invalid_argument("outcome probabilities must be nonnegative");
    }
    sum += p;
  }
  if (std::abs(sum - 1.0) > 1e-9) {
    throw std::invalid_argument("outcome probabilities must sum to 1, got " +
                                std::to_string(sum));
  }

  // Multinomial as chained binomials on the remaining mass.
  std::array<std::uint64_t, 4> n{};
  std::uint64_t remaining = shots;
  double mass = 1.0;
  for (int k = 0; k < 3; ++k) {
    const double conditional = mass > 0.0 ? std::min(probs[k] / mass, 1.0) : 1.0;
    n[k] = draw_binomial(remaining, conditional, gen);
    remaining -= n[k];
    mass -= probs[k];
  }
  n[3] = remaining;
  return OutcomeCounts{n[0], n[1], n[2], n[3]};
}

CountsTable run_experiment(const TwoQubitPureState& state, std::uint64_t shots,
                           const DetectorModel& detector, std::uint64_t seed) {
  if (!(detector.efficiency > 0.0 && detector.efficiency <= 1.0)) {
    throw std::invalid_argument("detector efficiency must be in (0, 1], got " +
                                std::to_string(detector.efficiency));
  }
  CountsTable table;
  table.shots_requested = shots;
  table.seed = seed;
  const double coincidence_prob = detector.efficiency * detector.efficiency;
  for (Setting s : CountsTable::all_settings()) {
    auto gen = make_stream(seed, static_cast<std::uint64_t>(s.alpha),
                           static_cast<std::uint64_t>(s.beta));
    // Draw order within a stream is fixed: thinning first, then outcomes.
    const std::uint64_t kept =
        detector.efficiency == 1.0 ? shots : draw_binomial(shots, coincidence_prob, gen);
    table.at(s) = sample_setting(outcome_probabilities(state, s), kept, gen);
  }
  return table;
}

CountsTable exact_counts_table(const TwoQubitPureState& state, std::uint64_t scale) {
  CountsTable table;
  table.shots_requested = scale;
  table.seed = 0;
  for (Setting s : CountsTable::all_settings()) {
    const std::array<double, 4> probs = outcome_probabilities(state, s);
    const double n = static_cast<double>(scale);
    table.at(s) = OutcomeCounts{
        static_cast<std::uint64_t>(std::llround(probs[0] * n)),
        static_cast<std::uint64_t>(std::llround(probs[1] * n)),
        static_cast<std::uint64_t>(std::llround(probs[2] * n)),
        static_cast<std::uint64_t>(std::llround(probs[3] * n)),
    };
  }
  return table;
}

}  // namespace paulitomo
