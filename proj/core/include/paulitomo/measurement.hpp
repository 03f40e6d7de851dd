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
#include <random>

#include "paulitomo/entangled_state.hpp"
#include "paulitomo/pauli_algebra.hpp"

namespace paulitomo {

/// Joint measurement setting: Pauli axis per beam, 1 = x, 2 = y, 3 = z.
struct Setting {
  int alpha = 3;
  int beta = 3;

  bool operator==(const Setting&) const = default;
};

/// Coincidence counts for one setting, split by the + / - outcome on each
/// beam. +1 means the photon exited toward the h detector.
struct OutcomeCounts {
  std::uint64_t n_pp = 0;
  std::uint64_t n_pm = 0;
  std::uint64_t n_mp = 0;
  std::uint64_t n_mm = 0;

  std::uint64_t total() const { return n_pp + n_pm + n_mp + n_mm; }

  bool operator==(const OutcomeCounts&) const = default;
};

/// Detection model. `efficiency` is the per-photon quantum efficiency in
/// (0, 1]; coincidences survive with probability efficiency^2.
struct DetectorModel {
  double efficiency = 1.0;
};

/// Counts for all nine joint settings of one run.
class CountsTable {
 public:
  /// Requested pairs per setting. With lossy detectors the recorded totals
  /// fall short of this.
  std::uint64_t shots_requested = 0;

  /// Seed the run was generated with, 0 when the table was loaded from disk.
  std::uint64_t seed = 0;

  OutcomeCounts& at(Setting s) { return counts_[index(s)]; }
  const OutcomeCounts& at(Setting s) const { return counts_[index(s)]; }

  /// The nine settings in row-major (alpha, beta) order.
  static std::array<Setting, 9> all_settings();

  bool operator==(const CountsTable&) const = default;

 private:
  static int index(Setting s);

  std::array<OutcomeCounts, 9> counts_{};
};

/// Plate inserted before the polarizing beam splitter to measure the given
/// axis: none for z, a half-wave plate at pi/8 for x, a quarter-wave plate
/// at pi/4 for y. Throws std::out_of_range for axes outside 1..3.
std::optional<WavePlateSpec> detector_plate_for(int axis);

/// Probability of each joint outcome under the given setting, in the order
/// (+,+), (+,-), (-,+), (-,-). Sums to 1.
std::array<double, 4> outcome_probabilities(const TwoQubitPureState& state, Setting setting);

/// Multinomial draw of `shots` outcomes from the four-way distribution.
/// Throws std::invalid_argument if the probabilities are negative or do not
/// sum to 1 within 1e-9.
OutcomeCounts sample_setting(const std::array<double, 4>& probs, std::uint64_t shots,
                             std::mt19937_64& gen);

/// Simulate one run: `shots` pairs per setting, thinned by detector
/// efficiency, outcomes drawn from the state's distribution. Each setting
/// consumes its own seed stream derived from (seed, alpha, beta), so the
/// result does not depend on evaluation order. Throws std::invalid_argument
/// if the efficiency is outside (0, 1].
CountsTable run_experiment(const TwoQubitPureState& state, std::uint64_t shots,
                           const DetectorModel& detector = {}, std::uint64_t seed = 0);

/// Noise-free table: each count is the outcome probability times `scale`,
/// rounded to the nearest integer. With the default scale the rounding is
/// far below any statistical tolerance, which makes the table usable as an
/// infinite-statistics stand-in.
CountsTable exact_counts_table(const TwoQubitPureState& state,
                               std::uint64_t scale = 1'000'000'000'000'000ULL);

}  // namespace paulitomo
