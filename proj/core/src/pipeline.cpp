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

#include "paulitomo/pipeline.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "paulitomo/errors.hpp"
#include "paulitomo/rng.hpp"

namespace paulitomo {

namespace {

using nlohmann::json;
using ordered_json = nlohmann::ordered_json;

// Dataset tags for seed derivation. Every consumer of config.seed goes
// through one of these, so the three stages never share a stream.
constexpr std::uint64_t kInputRunTag = 1;
constexpr std::uint64_t kOutputRunTag = 2;
constexpr std::uint64_t kBootstrapTag = 3;

[[noreturn]] void config_fail(const std::string& path, const std::string& message) {
  throw ConfigError(path + ": " + message);
}

double require_number(const json& j, const std::string& path) {
  if (!j.is_number()) {
    config_fail(path, "expected a number");
  }
  const double v = j.get<double>();
  if (!std::isfinite(v)) {
    config_fail(path, "must be finite");
  }
  return v;
}

std::uint64_t require_nonnegative_integer(const json& j, const std::string& path) {
  if (j.is_number_unsigned()) {
    return j.get<std::uint64_t>();
  }
  if (j.is_number_integer() && j.get<std::int64_t>() >= 0) {
    return static_cast<std::uint64_t>(j.get<std::int64_t>());
  }
  config_fail(path, "expected a non-negative integer");
}

complexd parse_entry(const json& j, const std::string& path) {
  if (j.is_number()) {
    return complexd{require_number(j, path), 0.0};
  }
  if (j.is_array() && j.size() == 2) {
    return complexd{require_number(j[0], path + "[0]"), require_number(j[1], path + "[1]")};
  }
  config_fail(path, "expected a real number or an [re, im] pair");
}

ComplexMatrix2 parse_matrix(const json& j, const std::string& path) {
  if (!j.is_array() || j.size() != 2) {
    config_fail(path, "expected 2 rows");
  }
  ComplexMatrix2 m;
  for (int r = 0; r < 2; ++r) {
    const json& row = j[r];
    const std::string row_path = path + "[" + std::to_string(r) + "]";
    if (!row.is_array() || row.size() != 2) {
      config_fail(row_path, "expected 2 entries");
    }
    for (int c = 0; c < 2; ++c) {
      m(r, c) = parse_entry(row[c], row_path + "[" + std::to_string(c) + "]");
    }
  }
  return m;
}

void parse_input_state(const json& j, ExperimentConfig& config) {
  if (j.is_string()) {
    // "bell k" shorthand.
    const std::string s = j.get<std::string>();
    int k = -1;
    if (std::sscanf(s.c_str(), "bell %d", &k) != 1 || k < 0 || k > 3) {
      config_fail("input_state", "expected \"bell k\" with k in 0..3, got \"" + s + "\"");
    }
    config.bell_input = k;
    return;
  }
  if (!j.is_object()) {
    config_fail("input_state", "expected a string or an object");
  }
  for (const auto& [key, value] : j.items()) {
    if (key != "bell" && key != "matrix") {
      config_fail("input_state", "unknown key '" + key + "'");
    }
  }
  if (j.contains("bell") == j.contains("matrix")) {
    config_fail("input_state", "expected exactly one of 'bell' and 'matrix'");
  }
  if (j.contains("bell")) {
    const std::uint64_t k = require_nonnegative_integer(j["bell"], "input_state.bell");
    if (k > 3) {
      config_fail("input_state.bell", "must be in 0..3");
    }
    config.bell_input = static_cast<int>(k);
    return;
  }
  ComplexMatrix2 m = parse_matrix(j["matrix"], "input_state.matrix");
  const double norm = m.frobenius_norm();
  if (norm == 0.0) {
    config_fail("input_state.matrix", "must be nonzero");
  }
  m *= 1.0 / norm;
  if (!is_full_rank(TwoQubitPureState{m})) {
    config_fail("input_state.matrix",
                "device reconstruction requires that the input state is full-rank");
  }
  config.input_matrix = m;
}

void parse_device(const json& j, ExperimentConfig& config) {
  if (!j.is_array()) {
    config_fail("device", "expected an array of elements");
  }
  for (std::size_t i = 0; i < j.size(); ++i) {
    const json& element = j[i];
    const std::string path = "device[" + std::to_string(i) + "]";
    if (!element.is_object()) {
      config_fail(path, "expected an object");
    }
    for (const auto& [key, value] : element.items()) {
      if (key != "phi_over_pi" && key != "theta_over_pi" && key != "matrix") {
        config_fail(path, "unknown key '" + key + "'");
      }
    }
    if (element.contains("matrix")) {
      if (element.contains("phi_over_pi") || element.contains("theta_over_pi")) {
        config_fail(path, "'matrix' excludes the angle keys");
      }
      const ComplexMatrix2 m = parse_matrix(element["matrix"], path + ".matrix");
      if (!m.is_unitary(1e-6)) {
        config_fail(path + ".matrix", "must be unitary within 1e-6");
      }
      // Snap so downstream unitarity checks at tighter tolerances hold.
      config.device.elements.push_back(polar_unitary_factor(m));
      continue;
    }
    if (!element.contains("phi_over_pi") || !element.contains("theta_over_pi")) {
      config_fail(path, "expected both 'phi_over_pi' and 'theta_over_pi'");
    }
    const double phi = require_number(element["phi_over_pi"], path + ".phi_over_pi");
    const double theta = require_number(element["theta_over_pi"], path + ".theta_over_pi");
    config.device.elements.push_back(
        WavePlateSpec{phi * std::numbers::pi, theta * std::numbers::pi});
  }
}

void parse_reference(const json& j, ExperimentConfig& config) {
  if (j.is_string()) {
    if (j.get<std::string>() != "auto") {
      config_fail("reference_vector", "expected \"auto\" or a pair [n, m]");
    }
    config.reference.reset();
    return;
  }
  if (!j.is_array() || j.size() != 2) {
    config_fail("reference_vector", "expected \"auto\" or a pair [n, m]");
  }
  const std::uint64_t n = require_nonnegative_integer(j[0], "reference_vector[0]");
  const std::uint64_t m = require_nonnegative_integer(j[1], "reference_vector[1]");
  if (n > 1 || m > 1) {
    config_fail("reference_vector", "components must be 0 or 1");
  }
  config.reference = BasisPair{static_cast<int>(n), static_cast<int>(m)};
}

json matrix_to_json(const ComplexMatrix2& m) {
  json rows = json::array();
  for (int r = 0; r < 2; ++r) {
    json row = json::array();
    for (int c = 0; c < 2; ++c) {
      row.push_back(json::array({m(r, c).real(), m(r, c).imag()}));
    }
    rows.push_back(row);
  }
  return rows;
}

json part_to_json(const ComplexMatrix2& m, bool real_part) {
  json rows = json::array();
  for (int r = 0; r < 2; ++r) {
    json row = json::array();
    for (int c = 0; c < 2; ++c) {
      row.push_back(real_part ? m(r, c).real() : m(r, c).imag());
    }
    rows.push_back(row);
  }
  return rows;
}

json grid_to_json(const std::array<std::array<double, 2>, 2>& g) {
  return json::array({json::array({g[0][0], g[0][1]}), json::array({g[1][0], g[1][1]})});
}

ordered_json config_to_json(const ExperimentConfig& config) {
  ordered_json j;
  if (config.bell_input.has_value()) {
    j["input_state"] = {{"bell", *config.bell_input}};
  } else if (config.input_matrix.has_value()) {
    j["input_state"] = {{"matrix", matrix_to_json(*config.input_matrix)}};
  }
  ordered_json device = ordered_json::array();
  for (const DeviceElement& element : config.device.elements) {
    if (std::holds_alternative<WavePlateSpec>(element)) {
      const WavePlateSpec& plate = std::get<WavePlateSpec>(element);
      device.push_back({{"phi_over_pi", plate.phi / std::numbers::pi},
                        {"theta_over_pi", plate.theta / std::numbers::pi}});
    } else {
      device.push_back({{"matrix", matrix_to_json(std::get<ComplexMatrix2>(element))}});
    }
  }
  j["device"] = device;
  j["shots_per_setting"] = config.shots_per_setting;
  j["detector_efficiency"] = config.detector_efficiency;
  j["seed"] = config.seed;
  if (config.reference.has_value()) {
    j["reference_vector"] = {config.reference->first, config.reference->second};
  } else {
    j["reference_vector"] = "auto";
  }
  j["bootstrap_resamples"] = config.bootstrap_resamples;
  return j;
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

std::string fmt_cell(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%11.6f", v);
  return buf;
}

std::string complex_cell(complexd v) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "%.6f%+.6fi", v.real(), v.imag());
  return buf;
}

void emit_element_rows(std::ostringstream& out, const char* symbol, const ComplexMatrix2& m,
                       const ElementVariances& variances, const ComplexMatrix2* theory) {
  for (int r = 0; r < 2; ++r) {
    for (int c = 0; c < 2; ++c) {
      for (int part = 0; part < 2; ++part) {
        const bool real_part = part == 0;
        const double estimate = real_part ? m(r, c).real() : m(r, c).imag();
        const double variance = real_part ? variances.re[r][c] : variances.im[r][c];
        out << "  " << (real_part ? "Re " : "Im ") << symbol << "[" << r << "][" << c << "]"
            << fmt_cell(estimate) << fmt_cell(std::sqrt(variance));
        if (theory != nullptr) {
          const complexd t = (*theory)(r, c);
          out << fmt_cell(real_part ? t.real() : t.imag());
        }
        out << "\n";
      }
    }
  }
}

std::string emit_text(const RunReport& report) {
  std::ostringstream out;
  out << "pauli tomography report\n";
  out << "  shots per setting    " << report.config.shots_per_setting << "\n";
  out << "  detector efficiency  " << fmt(report.config.detector_efficiency) << "\n";
  out << "  seed                 " << report.config.seed << "\n";
  out << "  bootstrap resamples  " << report.config.bootstrap_resamples << "\n";
  out << "\n";
  out << "input state estimate, reference (" << report.input_state.reference.first << ", "
      << report.input_state.reference.second << "), p_hat " << fmt(report.input_state.p_hat)
      << "\n";
  out << "  element           estimate        std\n";
  emit_element_rows(out, "psi", report.input_state.psi_hat, report.input_variances, nullptr);
  out << "\n";
  out << "device estimate, raw inversion; theory aligned to the estimate's phase\n";
  out << "  element           estimate        std     theory\n";
  emit_element_rows(out, "U", report.device.u_hat, report.device.variances,
                    &report.theory_aligned);
  out << "\n";
  out << "nearest unitary\n";
  for (int r = 0; r < 2; ++r) {
    out << "  [ " << complex_cell(report.device.u_unitary(r, 0)) << "  "
        << complex_cell(report.device.u_unitary(r, 1)) << " ]\n";
  }
  out << "\n";
  out << "gauge fidelity vs theory  " << fmt(report.fidelity) << "\n";
  out << "note: " << report.device.gauge_note << "\n";
  return out.str();
}

std::string emit_structured(const RunReport& report) {
  ordered_json j;
  j["format"] = "paulitomo-report";
  j["schema_version"] = 1;
  j["config"] = config_to_json(report.config);

  ordered_json input;
  input["reference"] = {report.input_state.reference.first, report.input_state.reference.second};
  input["p_hat"] = report.input_state.p_hat;
  input["psi_re"] = part_to_json(report.input_state.psi_hat, true);
  input["psi_im"] = part_to_json(report.input_state.psi_hat, false);
  input["variance_re"] = grid_to_json(report.input_variances.re);
  input["variance_im"] = grid_to_json(report.input_variances.im);
  j["input_state"] = input;

  ordered_json device;
  device["u_re"] = part_to_json(report.device.u_hat, true);
  device["u_im"] = part_to_json(report.device.u_hat, false);
  device["variance_re"] = grid_to_json(report.device.variances.re);
  device["variance_im"] = grid_to_json(report.device.variances.im);
  device["unitary_re"] = part_to_json(report.device.u_unitary, true);
  device["unitary_im"] = part_to_json(report.device.u_unitary, false);
  device["gauge_note"] = report.device.gauge_note;
  j["device"] = device;

  ordered_json theory;
  theory["u_re"] = part_to_json(report.theory, true);
  theory["u_im"] = part_to_json(report.theory, false);
  theory["aligned_re"] = part_to_json(report.theory_aligned, true);
  theory["aligned_im"] = part_to_json(report.theory_aligned, false);
  j["theory"] = theory;

  j["gauge_fidelity"] = report.fidelity;
  return j.dump(2) + "\n";
}

}  // namespace

TwoQubitPureState ExperimentConfig::input_state() const {
  if (bell_input.has_value()) {
    return bell_state(*bell_input);
  }
  if (input_matrix.has_value()) {
    // Programmatic callers must hand in a unit-norm matrix; parse_config
    // normalizes on their behalf.
    return TwoQubitPureState{*input_matrix};
  }
  throw std::logic_error("ExperimentConfig has no input state");
}

ComplexMatrix2 ExperimentConfig::theory_unitary() const { return compose_device(device); }

ExperimentConfig parse_config(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  if (!doc.is_object()) {
    throw ConfigError("config: expected a JSON object");
  }

  ExperimentConfig config;
  for (const auto& [key, value] : doc.items()) {
    if (key == "input_state") {
      parse_input_state(value, config);
    } else if (key == "device") {
      parse_device(value, config);
    } else if (key == "shots_per_setting") {
      config.shots_per_setting = require_nonnegative_integer(value, "shots_per_setting");
    } else if (key == "detector_efficiency") {
      const double e = require_number(value, "detector_efficiency");
      if (!(e > 0.0 && e <= 1.0)) {
        config_fail("detector_efficiency", "must be in (0, 1], got " + std::to_string(e));
      }
      config.detector_efficiency = e;
    } else if (key == "seed") {
      config.seed = require_nonnegative_integer(value, "seed");
    } else if (key == "reference_vector") {
      parse_reference(value, config);
    } else if (key == "bootstrap_resamples") {
      const std::uint64_t r = require_nonnegative_integer(value, "bootstrap_resamples");
      if (r == 1 || r > 1000000) {
        config_fail("bootstrap_resamples", "must be 0 (disabled) or in 2..1000000");
      }
      config.bootstrap_resamples = static_cast<int>(r);
    } else {
      throw ConfigError("config: unknown key '" + key + "'");
    }
  }
  if (!config.bell_input.has_value() && !config.input_matrix.has_value()) {
    throw ConfigError("config: 'input_state' is required");
  }
  return config;
}

CountsTable simulate_counts(const ExperimentConfig& config, bool with_device) {
  const TwoQubitPureState input = config.input_state();
  const DetectorModel detector{config.detector_efficiency};
  if (!with_device) {
    return run_experiment(input, config.shots_per_setting, detector,
                          derive_stream_seed(config.seed, kInputRunTag));
  }
  const TwoQubitPureState output = apply_local(config.theory_unitary(), input);
  return run_experiment(output, config.shots_per_setting, detector,
                        derive_stream_seed(config.seed, kOutputRunTag));
}

RunReport reconstruct_from_counts(const ExperimentConfig& config,
                                  const CountsTable& input_counts,
                                  const CountsTable& output_counts) {
  ReconstructionOptions options;
  options.reference = config.reference;

  const StateEstimate est_in = reconstruct_state(estimate_correlations(input_counts), options);
  const StateEstimate est_out = reconstruct_state(estimate_correlations(output_counts), options);
  UnitaryEstimate device = reconstruct_unitary(est_in, est_out);

  ElementVariances input_variances;
  if (config.bootstrap_resamples >= 2) {
    BootstrapOptions bootstrap;
    bootstrap.resamples = config.bootstrap_resamples;
    bootstrap.seed = derive_stream_seed(config.seed, kBootstrapTag);
    bootstrap.reconstruction = options;
    const BootstrapResult result = bootstrap_variances(input_counts, output_counts, bootstrap);
    device.variances = result.unitary;
    input_variances = result.psi_in;
  }

  RunReport report;
  report.config = config;
  report.input_state = est_in;
  report.input_variances = input_variances;
  report.device = std::move(device);
  report.theory = config.theory_unitary();
  report.theory_aligned = align_phase(report.theory, report.device.u_hat);
  report.fidelity = gauge_fidelity(report.theory, report.device.u_hat);
  return report;
}

RunReport run_pipeline(const ExperimentConfig& config, PipelineArtifacts* artifacts) {
  const CountsTable input_counts = simulate_counts(config, false);
  const CountsTable output_counts = simulate_counts(config, true);
  if (artifacts != nullptr) {
    artifacts->input_counts = input_counts;
    artifacts->output_counts = output_counts;
  }
  return reconstruct_from_counts(config, input_counts, output_counts);
}

ReportFormat parse_report_format(std::string_view name) {
  if (name == "text") {
    return ReportFormat::text;
  }
  if (name == "structured") {
    return ReportFormat::structured;
  }
  throw ConfigError("format: expected 'text' or 'structured', got '" + std::string(name) + "'");
}

std::string emit_report(const RunReport& report, ReportFormat format) {
  return format == ReportFormat::text ? emit_text(report) : emit_structured(report);
}

namespace {

class SelfTestRun {
 public:
  explicit SelfTestRun(std::ostream& out) : out_(out) {}

  void check(const std::string& name, bool ok, const std::string& detail) {
    if (ok) {
      out_ << "ok - " << name << "\n";
    } else {
      out_ << "FAIL - " << name << " (" << detail << ")\n";
      ++failures_;
    }
  }

  void check_below(const std::string& name, double worst, double bound) {
    check(name, worst <= bound, "worst deviation " + std::to_string(worst));
  }

  int failures() const { return failures_; }

 private:
  std::ostream& out_;
  int failures_ = 0;
};

ComplexMatrix2 random_unit_matrix(std::mt19937_64& gen) {
  std::normal_distribution<double> normal;
  ComplexMatrix2 m;
  for (int r = 0; r < 2; ++r) {
    for (int c = 0; c < 2; ++c) {
      m(r, c) = complexd{normal(gen), normal(gen)};
    }
  }
  return (1.0 / m.frobenius_norm()) * m;
}

TwoQubitPureState plate_then_z_state(const TwoQubitPureState& state, int alpha, int beta) {
  ComplexMatrix2 psi = state.coefficients();
  if (const auto plate = detector_plate_for(alpha)) {
    psi = waveplate_matrix(*plate) * psi;
  }
  if (const auto plate = detector_plate_for(beta)) {
    psi = psi * waveplate_matrix(*plate).transpose();
  }
  return TwoQubitPureState{psi};
}

}  // namespace

int selftest(std::ostream& out, const SelfTestOptions& options) {
  SelfTestRun run(out);
  const double pi = std::numbers::pi;
  // The corruption hook shifts one expected value so a healthy build must
  // report the discrepancy.
  const double corruption = options.corrupt_tables ? 1e-3 : 0.0;

  {
    std::mt19937_64 gen(101);
    std::uniform_real_distribution<double> angle(-pi, pi);
    double worst = 0.0;
    for (int k = 0; k < 20; ++k) {
      const double theta = angle(gen);
      const double c = std::cos(2.0 * theta);
      const double s = std::sin(2.0 * theta);
      const ComplexMatrix2 expected{c + corruption, s, s, -c};
      worst = std::max(worst, (waveplate_matrix({pi, theta}) - expected).max_abs());
    }
    run.check_below("half-wave plate closed form", worst, 1e-12);
  }
  {
    const complexd a{0.5, 0.5};
    const complexd b{0.5, -0.5};
    const ComplexMatrix2 expected{a, b, b, a};
    const double worst = (waveplate_matrix({pi / 2.0, pi / 4.0}) - expected).max_abs();
    run.check_below("quarter-wave plate at pi/4", worst, 1e-12);
  }
  {
    std::mt19937_64 gen(202);
    std::uniform_real_distribution<double> angle(-pi, pi);
    double worst = 0.0;
    for (int k = 0; k < 20; ++k) {
      const double theta = angle(gen);
      const RotationMatrix3 r = rotation_of(waveplate_matrix({pi, theta}));
      const double c4 = std::cos(4.0 * theta);
      const double s4 = std::sin(4.0 * theta);
      RotationMatrix3 expected;
      expected(0, 0) = -c4;
      expected(0, 2) = s4;
      expected(1, 1) = -1.0;
      expected(2, 0) = s4;
      expected(2, 2) = c4;
      for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
          worst = std::max(worst, std::abs(r(i, j) - expected(i, j)));
        }
      }
    }
    run.check_below("half-wave plate rotation closed form", worst, 1e-12);
  }
  {
    std::mt19937_64 gen(303);
    double worst = 0.0;
    for (int k = 0; k < 20; ++k) {
      const TwoQubitPureState state{random_unit_matrix(gen)};
      for (Setting s : CountsTable::all_settings()) {
        const auto direct = outcome_probabilities(state, s);
        const auto via_plates =
            outcome_probabilities(plate_then_z_state(state, s.alpha, s.beta), Setting{3, 3});
        for (int i = 0; i < 4; ++i) {
          worst = std::max(worst, std::abs(direct[i] - via_plates[i]));
        }
      }
    }
    run.check_below("detector plate equivalence", worst, 1e-12);
  }
  {
    constexpr double kExpected[4][4] = {{1.0, 1.0, -1.0, 1.0},
                                        {1.0, 1.0, 1.0, -1.0},
                                        {1.0, -1.0, -1.0, -1.0},
                                        {1.0, -1.0, 1.0, 1.0}};
    double worst = 0.0;
    for (int k = 0; k < 4; ++k) {
      const CorrelationTensor delta = correlation_tensor(bell_state(k));
      for (int i = 0; i < 4; ++i) {
        worst = std::max(worst, std::abs(delta(i, i) - kExpected[k][i]));
      }
    }
    run.check_below("bell state correlation diagonals", worst, 1e-12);
  }
  {
    std::mt19937_64 gen(404);
    std::uniform_real_distribution<double> angle(-pi, pi);
    std::uniform_int_distribution<int> length(1, 3);
    double worst_infidelity = 0.0;
    for (int k = 0; k < 4; ++k) {
      for (int trial = 0; trial < 5; ++trial) {
        DeviceSpec device;
        const int n = length(gen);
        for (int e = 0; e < n; ++e) {
          device.elements.push_back(WavePlateSpec{angle(gen), angle(gen)});
        }
        const ComplexMatrix2 u = compose_device(device);
        const TwoQubitPureState input = bell_state(k);
        const TwoQubitPureState output = apply_local(u, input);

        const StateEstimate est_in = reconstruct_state(
            CorrelationEstimate::from_exact(correlation_tensor(input)));
        const StateEstimate est_out = reconstruct_state(
            CorrelationEstimate::from_exact(correlation_tensor(output)));
        const UnitaryEstimate estimate = reconstruct_unitary(est_in, est_out);
        worst_infidelity =
            std::max(worst_infidelity, 1.0 - gauge_fidelity(u, estimate.u_hat));
      }
    }
    run.check_below("exact-correlation round trip", worst_infidelity, 1e-9);
  }
  return run.failures();
}

}  // namespace paulitomo
