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

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "paulitomo/counts_csv.hpp"
#include "paulitomo/errors.hpp"
#include "paulitomo/pipeline.hpp"

namespace {

// Exit codes, kept scriptable: 2 bad configuration or usage, 3 estimation
// failure, 4 selftest failure, 1 anything unexpected.
constexpr int kExitConfigError = 2;
constexpr int kExitReconstructionError = 3;
constexpr int kExitSelfTestFailure = 4;

struct GlobalOptions {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::uint64_t> shots;
  std::string format = "text";
};

std::string read_file(const std::string& path, const char* what) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw paulitomo::ConfigError(std::string("cannot open ") + what + " '" + path + "'");
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  out << content;
  if (!out) {
    throw paulitomo::ConfigError("cannot write '" + path + "'");
  }
}

void write_or_print(const std::string& path, const std::string& content) {
  if (path.empty()) {
    std::cout << content;
  } else {
    write_file(path, content);
  }
}

paulitomo::ExperimentConfig load_config(const GlobalOptions& global) {
  if (global.config_path.empty()) {
    throw paulitomo::ConfigError("--config is required for this subcommand");
  }
  paulitomo::ExperimentConfig config =
      paulitomo::parse_config(read_file(global.config_path, "config file"));
  if (global.seed.has_value()) {
    config.seed = *global.seed;
  }
  if (global.shots.has_value()) {
    config.shots_per_setting = *global.shots;
  }
  return config;
}

int do_simulate(const GlobalOptions& global, bool without_device, const std::string& out_path) {
  const paulitomo::ExperimentConfig config = load_config(global);
  const paulitomo::CountsTable table = paulitomo::simulate_counts(config, !without_device);
  write_or_print(out_path, paulitomo::counts_to_csv(table));
  return 0;
}

int do_reconstruct(const GlobalOptions& global, const std::string& input_csv,
                   const std::string& output_csv, const std::string& out_path) {
  const paulitomo::ExperimentConfig config = load_config(global);
  const paulitomo::CountsTable input =
      paulitomo::counts_from_csv(read_file(input_csv, "input counts"));
  const paulitomo::CountsTable output =
      paulitomo::counts_from_csv(read_file(output_csv, "output counts"));
  const paulitomo::RunReport report =
      paulitomo::reconstruct_from_counts(config, input, output);
  write_or_print(out_path,
                 paulitomo::emit_report(report, paulitomo::parse_report_format(global.format)));
  return 0;
}

int do_run(const GlobalOptions& global, const std::string& dump_prefix,
           const std::string& out_path) {
  const paulitomo::ExperimentConfig config = load_config(global);
  paulitomo::PipelineArtifacts artifacts;
  const paulitomo::RunReport report = paulitomo::run_pipeline(config, &artifacts);
  if (!dump_prefix.empty()) {
    // Two datasets feed one reconstruction, so one prefix yields two files.
    write_file(dump_prefix + "-input.csv", paulitomo::counts_to_csv(artifacts.input_counts));
    write_file(dump_prefix + "-output.csv", paulitomo::counts_to_csv(artifacts.output_counts));
  }
  write_or_print(out_path,
                 paulitomo::emit_report(report, paulitomo::parse_report_format(global.format)));
  return 0;
}

int do_selftest(bool corrupt_tables) {
  const int failures = paulitomo::selftest(std::cout, {corrupt_tables});
  if (failures != 0) {
    std::cout << failures << " check(s) failed\n";
    return kExitSelfTestFailure;
  }
  std::cout << "all checks passed\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Entanglement-assisted tomography of a single-qubit optical device"};
  app.require_subcommand(1);

  GlobalOptions global;
  app.add_option("--config", global.config_path, "path to the JSON experiment config");
  app.add_option("--seed", global.seed, "override the config seed");
  app.add_option("--shots", global.shots, "override shots per setting");
  app.add_option("--format", global.format, "report format: text or structured")
      ->check(CLI::IsMember({"text", "structured"}));

  auto* simulate = app.add_subcommand("simulate", "generate a coincidence-counts CSV");
  simulate->fallthrough();
  bool without_device = false;
  std::string simulate_out;
  simulate->add_flag("--without-device", without_device,
                     "simulate the input-state characterization run (device removed)");
  simulate->add_option("-o,--output", simulate_out, "output CSV path (default: stdout)");

  auto* reconstruct =
      app.add_subcommand("reconstruct", "estimate state and device from counts CSVs");
  reconstruct->fallthrough();
  std::string input_csv;
  std::string output_csv;
  std::string reconstruct_out;
  reconstruct->add_option("--input-counts", input_csv, "CSV of the run without the device")
      ->required();
  reconstruct->add_option("--output-counts", output_csv, "CSV of the run with the device")
      ->required();
  reconstruct->add_option("-o,--output", reconstruct_out, "report path (default: stdout)");

  auto* run = app.add_subcommand("run", "simulate both datasets and reconstruct");
  run->fallthrough();
  std::string dump_prefix;
  std::string run_out;
  run->add_option("--dump-counts", dump_prefix,
                  "write the simulated counts to PREFIX-input.csv and PREFIX-output.csv");
  run->add_option("-o,--output", run_out, "report path (default: stdout)");

  auto* selftest_cmd = app.add_subcommand("selftest", "run the built-in cross-checks");
  selftest_cmd->fallthrough();
  bool corrupt_tables = false;
  selftest_cmd->add_flag("--with-corrupted-tables", corrupt_tables)->group("");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfigError;
  }

  try {
    if (simulate->parsed()) {
      return do_simulate(global, without_device, simulate_out);
    }
    if (reconstruct->parsed()) {
      return do_reconstruct(global, input_csv, output_csv, reconstruct_out);
    }
    if (run->parsed()) {
      return do_run(global, dump_prefix, run_out);
    }
    return do_selftest(corrupt_tables);
  } catch (const paulitomo::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const paulitomo::ReconstructionError& e) {
    std::cerr << "reconstruction error: " << e.what() << "\n";
    return kExitReconstructionError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
