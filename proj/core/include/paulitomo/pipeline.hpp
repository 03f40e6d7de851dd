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

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>

#include "paulitomo/entangled_state.hpp"
#include "paulitomo/measurement.hpp"
#include "paulitomo/pauli_algebra.hpp"
#include "paulitomo/tomography.hpp"

namespace paulitomo {

/// One tomography run, fully specified. Exactly one of bell_input and
/// input_matrix is set after parsing.
struct ExperimentConfig {
  std::optional<int> bell_input;
  std::optional<ComplexMatrix2> input_matrix;
  DeviceSpec device;
  std::uint64_t shots_per_setting = 10000;
  double detector_efficiency = 1.0;
  std::uint64_t seed = 0;

  /// Empty means pick the reference automatically.
  std::optional<BasisPair> reference;

  /// 0 disables the bootstrap; otherwise at least 2.
  int bootstrap_resamples = 200;

  TwoQubitPureState input_state() const;
  ComplexMatrix2 theory_unitary() const;
};

/// Parse and validate a JSON config document.
///
/// Keys: input_state (required; "bell k", {"bell": k} or {"matrix": ...}),
/// device (array of {phi_over_pi, theta_over_pi} or {"matrix": ...};
/// default empty = identity), shots_per_setting, detector_efficiency, seed,
/// reference_vector ("auto" or [n, m]), bootstrap_resamples. Matrix entries
/// are [re, im] pairs or plain reals. Explicit input matrices are
/// normalized; device matrices must be unitary within 1e-6 and are snapped
/// to the nearest unitary. Throws ConfigError naming the offending field.
ExperimentConfig parse_config(const std::string& text);

/// Everything a finished run reports. `theory_aligned` is the theory matrix
/// phase-aligned to the estimate so the two can be compared entrywise;
/// `fidelity` is the phase-invariant comparison.
struct RunReport {
  ExperimentConfig config;
  StateEstimate input_state;
  ElementVariances input_variances;
  UnitaryEstimate device;
  ComplexMatrix2 theory;
  ComplexMatrix2 theory_aligned;
  double fidelity = 0.0;
};

/// Raw datasets behind a report, for callers that want to persist them.
struct PipelineArtifacts {
  CountsTable input_counts;
  CountsTable output_counts;
};

/// Simulate one dataset: the input-state characterization run
/// (with_device = false) or the run with the device in the beam. Seeds are
/// derived from config.seed per dataset, so the pair of calls reproduces
/// exactly what run_pipeline consumes.
CountsTable simulate_counts(const ExperimentConfig& config, bool with_device);

/// Estimate states and device from already-collected counts, compare to the
/// configured theory, and bootstrap error bars per the config.
RunReport reconstruct_from_counts(const ExperimentConfig& config,
                                  const CountsTable& input_counts,
                                  const CountsTable& output_counts);

/// End to end: simulate both datasets, then reconstruct_from_counts.
/// Deterministic for a fixed config. When `artifacts` is non-null the
/// simulated tables are copied out.
RunReport run_pipeline(const ExperimentConfig& config, PipelineArtifacts* artifacts = nullptr);

enum class ReportFormat { text, structured };

/// Throws ConfigError unless `name` is "text" or "structured".
ReportFormat parse_report_format(std::string_view name);

/// Render a report. Text: metadata, the reconstructed input state, and an
/// 8-row Re/Im table of the device elements with standard deviations and
/// the aligned theory column. Structured: JSON carrying every number the
/// text form shows, with stable field names.
std::string emit_report(const RunReport& report, ReportFormat format);

struct SelfTestOptions {
  /// Test hook: corrupt one entry of the expected-value tables so the
  /// cross-checks must report a failure.
  bool corrupt_tables = false;
};

/// Run the built-in cross-checks (closed forms, detector equivalence, Bell
/// correlation diagonals, exact-correlation round trips), one line per
/// check. Returns the number of failed checks.
int selftest(std::ostream& out, const SelfTestOptions& options = {});

}  // namespace paulitomo
