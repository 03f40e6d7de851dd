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
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <string>

#include "doctest.h"
#include "json.hpp"
#include "paulitomo/errors.hpp"

namespace paulitomo {
namespace {

const char* kPlateConfig = R"({
  "input_state": "bell 1",
  "device": [{"phi_over_pi": 0.45, "theta_over_pi": -0.138}],
  "shots_per_setting": 100000,
  "seed": 7
})";

// ---------------------------------------------------------------------------
// parse_config

TEST_CASE("config parsing fills fields and defaults") {
  const ExperimentConfig config = parse_config(kPlateConfig);
  CHECK(config.bell_input == 1);
  CHECK_FALSE(config.input_matrix.has_value());
  REQUIRE(config.device.elements.size() == 1);
  CHECK(config.shots_per_setting == 100000);
  CHECK(config.seed == 7);
  CHECK(config.detector_efficiency == 1.0);
  CHECK_FALSE(config.reference.has_value());
  CHECK(config.bootstrap_resamples == 200);

  const ExperimentConfig minimal = parse_config(R"({"input_state": "bell 0"})");
  CHECK(minimal.shots_per_setting == 10000);
  CHECK(minimal.device.elements.empty());
  CHECK(minimal.theory_unitary().approx_equal(ComplexMatrix2::identity(), 1e-15));
}

TEST_CASE("input state spellings are equivalent") {
  const ExperimentConfig a = parse_config(R"({"input_state": "bell 2"})");
  const ExperimentConfig b = parse_config(R"({"input_state": {"bell": 2}})");
  CHECK(a.bell_input == b.bell_input);
  CHECK(a.input_state().coefficients().approx_equal(b.input_state().coefficients(), 1e-15));
}

TEST_CASE("explicit input matrices are normalized") {
  const ExperimentConfig config = parse_config(
      R"({"input_state": {"matrix": [[[1, 0], [0, 0]], [[0, 0], [1, 0]]]}})");
  const ComplexMatrix2 psi = config.input_state().coefficients();
  CHECK(psi.frobenius_norm() == doctest::Approx(1.0).epsilon(1e-13));
  const double r = 1.0 / std::sqrt(2.0);
  CHECK(psi.approx_equal(ComplexMatrix2{r, 0.0, 0.0, r}, 1e-13));
}

TEST_CASE("rank-deficient input states are rejected at parse time") {
  try {
    (void)parse_config(R"({"input_state": {"matrix": [[1, 0], [0, 0]]}})");
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("is full-rank") != std::string::npos);
  }
}

TEST_CASE("config validation rejects bad values by field name") {
  const auto expect_error = [](const std::string& text, const std::string& needle) {
    try {
      (void)parse_config(text);
      FAIL("expected ConfigError for: ", text);
    } catch (const ConfigError& e) {
      CHECK(std::string(e.what()).find(needle) != std::string::npos);
    }
  };

  expect_error(R"({"device": []})", "input_state");
  expect_error(R"({"input_state": "bell 5"})", "input_state");
  expect_error(R"({"input_state": "bell 1", "detector_efficiency": 0})", "detector_efficiency");
  expect_error(R"({"input_state": "bell 1", "detector_efficiency": 1.5})", "detector_efficiency");
  expect_error(R"({"input_state": "bell 1", "bootstrap_resamples": 1})", "bootstrap_resamples");
  expect_error(R"({"input_state": "bell 1", "shots": 5})", "shots");
  expect_error(R"({"input_state": "bell 1", "reference_vector": [2, 0]})", "reference_vector");
  expect_error(R"({"input_state": "bell 1", "device": [{"phi_over_pi": 1}]})", "device");
  expect_error(R"({"input_state": "bell 1", "device": [{"matrix": [[1, 0], [0, 2]]}]})", "device");

  CHECK_THROWS_AS((void)parse_config("not json at all"), ConfigError);
  CHECK_THROWS_AS((void)parse_config(R"(["top level must be an object"])"), ConfigError);
}

TEST_CASE("reference vector parsing") {
  const ExperimentConfig automatic =
      parse_config(R"({"input_state": "bell 1", "reference_vector": "auto"})");
  CHECK_FALSE(automatic.reference.has_value());
  const ExperimentConfig pinned =
      parse_config(R"({"input_state": "bell 1", "reference_vector": [1, 0]})");
  REQUIRE(pinned.reference.has_value());
  CHECK(*pinned.reference == BasisPair{1, 0});
}

TEST_CASE("device matrices are snapped to the nearest unitary") {
  // Off by 1e-8 from a rotation: accepted, then cleaned up.
  const ExperimentConfig config = parse_config(
      R"({"input_state": "bell 1",
          "device": [{"matrix": [[[0.60000001, 0], [-0.8, 0]], [[0.8, 0], [0.6, 0]]]}]})");
  CHECK(config.theory_unitary().is_unitary(1e-12));
}

TEST_CASE("bootstrap can be disabled but not degenerate") {
  const ExperimentConfig off =
      parse_config(R"({"input_state": "bell 1", "bootstrap_resamples": 0})");
  CHECK(off.bootstrap_resamples == 0);
}

// ---------------------------------------------------------------------------
// pipeline runs

TEST_CASE("cascade theory matrix is the ordered plate product") {
  const ExperimentConfig config = parse_config(R"({
    "input_state": "bell 1",
    "device": [{"phi_over_pi": 0.45, "theta_over_pi": -0.138},
               {"phi_over_pi": 1.0, "theta_over_pi": 0.29}]
  })");
  const ComplexMatrix2 first = waveplate_matrix({0.45 * std::numbers::pi, -0.138 * std::numbers::pi});
  const ComplexMatrix2 second = waveplate_matrix({std::numbers::pi, 0.29 * std::numbers::pi});
  // The first listed element acts first, so it sits rightmost in the product.
  CHECK(config.theory_unitary().approx_equal(second * first, 1e-14));
}

TEST_CASE("pipeline recovers a plate device from simulated counts") {
  ExperimentConfig config = parse_config(kPlateConfig);
  config.bootstrap_resamples = 0;
  PipelineArtifacts artifacts;
  const RunReport report = run_pipeline(config, &artifacts);
  CHECK(report.fidelity >= 0.995);
  CHECK(report.device.u_unitary.is_unitary(1e-10));
  CHECK(gauge_fidelity(report.theory, report.theory_aligned) ==
        doctest::Approx(1.0).epsilon(1e-12));

  for (const Setting& s : artifacts.input_counts.all_settings()) {
    CHECK(artifacts.input_counts.at(s).total() == config.shots_per_setting);
    CHECK(artifacts.output_counts.at(s).total() == config.shots_per_setting);
  }
  // Input and output datasets use distinct streams.
  CHECK_FALSE(artifacts.input_counts.at({1, 1}) == artifacts.output_counts.at({1, 1}));
}

TEST_CASE("pipeline output is deterministic") {
  ExperimentConfig config = parse_config(kPlateConfig);
  config.shots_per_setting = 5000;
  config.bootstrap_resamples = 50;
  const std::string a = emit_report(run_pipeline(config), ReportFormat::structured);
  const std::string b = emit_report(run_pipeline(config), ReportFormat::structured);
  CHECK(a == b);
}

TEST_CASE("running the pipeline equals simulating then reconstructing") {
  ExperimentConfig config = parse_config(kPlateConfig);
  config.shots_per_setting = 4000;
  config.bootstrap_resamples = 25;
  const RunReport direct = run_pipeline(config);
  const CountsTable input = simulate_counts(config, false);
  const CountsTable output = simulate_counts(config, true);
  const RunReport rebuilt = reconstruct_from_counts(config, input, output);
  CHECK(emit_report(direct, ReportFormat::structured) ==
        emit_report(rebuilt, ReportFormat::structured));
}

TEST_CASE("zero shots cannot be reconstructed") {
  ExperimentConfig config = parse_config(R"({"input_state": "bell 1", "shots_per_setting": 0})");
  CHECK_THROWS_AS((void)run_pipeline(config), ReconstructionError);
}

TEST_CASE("identity device estimate stays within its own error bars") {
  ExperimentConfig config = parse_config(R"({
    "input_state": "bell 1",
    "shots_per_setting": 10000,
    "seed": 21
  })");
  const RunReport report = run_pipeline(config);
  CHECK(report.fidelity >= 0.999);
  for (int r = 0; r < 2; ++r) {
    for (int c = 0; c < 2; ++c) {
      const double re_err = std::abs(report.device.u_hat(r, c).real() -
                                     report.theory_aligned(r, c).real());
      const double im_err = std::abs(report.device.u_hat(r, c).imag() -
                                     report.theory_aligned(r, c).imag());
      CHECK(re_err <= 4.0 * std::sqrt(report.device.variances.re[r][c]) + 1e-3);
      CHECK(im_err <= 4.0 * std::sqrt(report.device.variances.im[r][c]) + 1e-3);
    }
  }
}

// ---------------------------------------------------------------------------
// reports

TEST_CASE("text report shows the eight device element rows") {
  ExperimentConfig config = parse_config(kPlateConfig);
  config.shots_per_setting = 2000;
  config.bootstrap_resamples = 25;
  const std::string text = emit_report(run_pipeline(config), ReportFormat::text);

  const auto count_occurrences = [&text](const std::string& needle) {
    int n = 0;
    for (std::size_t pos = text.find(needle); pos != std::string::npos;
         pos = text.find(needle, pos + 1)) {
      ++n;
    }
    return n;
  };
  CHECK(count_occurrences("Re U[") == 4);
  CHECK(count_occurrences("Im U[") == 4);
  CHECK(count_occurrences("Re psi[") == 4);
  CHECK(text.find("gauge fidelity vs theory") != std::string::npos);
  CHECK(text.find("nearest unitary") != std::string::npos);
  CHECK(text.find("p_hat") != std::string::npos);
}

TEST_CASE("structured report carries every reported number") {
  ExperimentConfig config = parse_config(kPlateConfig);
  config.shots_per_setting = 2000;
  config.bootstrap_resamples = 25;
  const RunReport report = run_pipeline(config);
  const nlohmann::json j = nlohmann::json::parse(emit_report(report, ReportFormat::structured));

  CHECK(j.at("format") == "paulitomo-report");
  CHECK(j.at("schema_version") == 1);
  CHECK(j.at("config").at("shots_per_setting") == 2000);
  CHECK(j.at("config").at("seed") == 7);
  CHECK(j.at("config").at("input_state").at("bell") == 1);
  CHECK(j.at("input_state").at("p_hat").get<double>() ==
        doctest::Approx(report.input_state.p_hat).epsilon(1e-12));
  CHECK(j.at("gauge_fidelity").get<double>() == doctest::Approx(report.fidelity).epsilon(1e-12));

  // The raw estimate, its polar projection, and the aligned theory all
  // round-trip elementwise.
  for (int r = 0; r < 2; ++r) {
    for (int c = 0; c < 2; ++c) {
      CHECK(j.at("device").at("u_re")[r][c].get<double>() ==
            doctest::Approx(report.device.u_hat(r, c).real()).epsilon(1e-12));
      CHECK(j.at("device").at("u_im")[r][c].get<double>() ==
            doctest::Approx(report.device.u_hat(r, c).imag()).epsilon(1e-12));
      CHECK(j.at("device").at("unitary_re")[r][c].get<double>() ==
            doctest::Approx(report.device.u_unitary(r, c).real()).epsilon(1e-12));
      CHECK(j.at("theory").at("aligned_re")[r][c].get<double>() ==
            doctest::Approx(report.theory_aligned(r, c).real()).epsilon(1e-12));
      CHECK(j.at("device").at("variance_re")[r][c].get<double>() >= 0.0);
    }
  }
  CHECK(j.at("device").at("gauge_note").get<std::string>().find("phase") != std::string::npos);

  // Recomputing the fidelity from the serialized matrices closes the loop.
  ComplexMatrix2 u;
  ComplexMatrix2 theory;
  for (int r = 0; r < 2; ++r) {
    for (int c = 0; c < 2; ++c) {
      u(r, c) = complexd{j.at("device").at("u_re")[r][c].get<double>(),
                         j.at("device").at("u_im")[r][c].get<double>()};
      theory(r, c) = complexd{j.at("theory").at("u_re")[r][c].get<double>(),
                              j.at("theory").at("u_im")[r][c].get<double>()};
    }
  }
  CHECK(gauge_fidelity(theory, u) == doctest::Approx(report.fidelity).epsilon(1e-12));
}

TEST_CASE("report format names") {
  CHECK(parse_report_format("text") == ReportFormat::text);
  CHECK(parse_report_format("structured") == ReportFormat::structured);
  CHECK_THROWS_AS((void)parse_report_format("yaml"), ConfigError);
}

// ---------------------------------------------------------------------------
// selftest

TEST_CASE("selftest passes on a healthy build") {
  std::ostringstream out;
  CHECK(selftest(out) == 0);
  const std::string text = out.str();
  int ok_lines = 0;
  for (std::size_t pos = text.find("ok - "); pos != std::string::npos;
       pos = text.find("ok - ", pos + 1)) {
    ++ok_lines;
  }
  CHECK(ok_lines >= 5);
  CHECK(text.find("FAIL") == std::string::npos);

  std::ostringstream again;
  CHECK(selftest(again) == 0);
  CHECK(again.str() == text);
}

TEST_CASE("selftest notices corrupted expectation tables") {
  std::ostringstream out;
  CHECK(selftest(out, {true}) >= 1);
  CHECK(out.str().find("FAIL") != std::string::npos);
}

}  // namespace
}  // namespace paulitomo
