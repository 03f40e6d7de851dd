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

#include "paulitomo/counts_csv.hpp"

#include <array>
#include <charconv>
#include <string>
#include <vector>

#include "paulitomo/errors.hpp"

namespace paulitomo {

namespace {

constexpr std::string_view kHeader = "alpha,beta,outcome_a,outcome_b,count";

const char* axis_letter(int axis) {
  switch (axis) {
    case 1:
      return "x";
    case 2:
      return "y";
    case 3:
      return "z";
    default:
      return "?";
  }
}

int parse_axis(std::string_view field, int line_number) {
  if (field == "x") return 1;
  if (field == "y") return 2;
  if (field == "z") return 3;
  throw ConfigError("counts csv line " + std::to_string(line_number) +
                    ": axis must be x, y or z, got '" + std::string(field) + "'");
}

bool parse_outcome(std::string_view field, int line_number) {
  if (field == "+1" || field == "1") return true;
  if (field == "-1") return false;
  throw ConfigError("counts csv line " + std::to_string(line_number) +
                    ": outcome must be +1 or -1, got '" + std::string(field) + "'");
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) {
    s.remove_prefix(1);
  }
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      fields.push_back(trim(line.substr(start)));
      return fields;
    }
    fields.push_back(trim(line.substr(start, comma - start)));
    start = comma + 1;
  }
}

std::uint64_t& cell(CountsTable& table, Setting s, bool a_plus, bool b_plus) {
  OutcomeCounts& c = table.at(s);
  if (a_plus) {
    return b_plus ? c.n_pp : c.n_pm;
  }
  return b_plus ? c.n_mp : c.n_mm;
}

}  // namespace

std::string counts_to_csv(const CountsTable& table) {
  std::string out;
  out.reserve(1024);
  out += kHeader;
  out += '\n';
  const std::array<std::pair<const char*, const char*>, 4> outcome_labels = {
      std::pair{"+1", "+1"}, {"+1", "-1"}, {"-1", "+1"}, {"-1", "-1"}};
  for (Setting s : CountsTable::all_settings()) {
    const OutcomeCounts& c = table.at(s);
    const std::array<std::uint64_t, 4> cells = {c.n_pp, c.n_pm, c.n_mp, c.n_mm};
    for (int k = 0; k < 4; ++k) {
      out += axis_letter(s.alpha);
      out += ',';
      out += axis_letter(s.beta);
      out += ',';
      out += outcome_labels[k].first;
      out += ',';
      out += outcome_labels[k].second;
      out += ',';
      out += std::to_string(cells[k]);
      out += '\n';
    }
  }
  return out;
}

CountsTable counts_from_csv(std::string_view text) {
  CountsTable table;
  table.shots_requested = 0;
  table.seed = 0;

  std::array<bool, 36> seen{};
  bool header_seen = false;
  int line_number = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t newline = text.find('\n', pos);
    const std::string_view raw = newline == std::string_view::npos
                                     ? text.substr(pos)
                                     : text.substr(pos, newline - pos);
    pos = newline == std::string_view::npos ? text.size() + 1 : newline + 1;
    ++line_number;
    const std::string_view line = trim(raw);
    if (line.empty()) {
      continue;
    }
    if (!header_seen) {
      // Compare field-wise so padded headers parse like padded rows.
      const std::vector<std::string_view> fields = split_fields(line);
      const std::vector<std::string_view> expected = split_fields(kHeader);
      if (fields != expected) {
        throw ConfigError("counts csv line " + std::to_string(line_number) +
                          ": expected header '" + std::string(kHeader) + "'");
      }
      header_seen = true;
      continue;
    }
    const std::vector<std::string_view> fields = split_fields(line);
    if (fields.size() != 5) {
      throw ConfigError("counts csv line " + std::to_string(line_number) + ": expected 5 fields, got " +
                        std::to_string(fields.size()));
    }
    const Setting s{parse_axis(fields[0], line_number), parse_axis(fields[1], line_number)};
    const bool a_plus = parse_outcome(fields[2], line_number);
    const bool b_plus = parse_outcome(fields[3], line_number);
    std::uint64_t count = 0;
    const auto [ptr, ec] =
        std::from_chars(fields[4].data(), fields[4].data() + fields[4].size(), count);
    if (ec != std::errc{} || ptr != fields[4].data() + fields[4].size()) {
      throw ConfigError("counts csv line " + std::to_string(line_number) +
                        ": count must be a non-negative integer, got '" + std::string(fields[4]) +
                        "'");
    }
    const int cell_index =
        ((s.alpha - 1) * 3 + (s.beta - 1)) * 4 + (a_plus ? 0 : 2) + (b_plus ? 0 : 1);
    if (seen[cell_index]) {
      throw ConfigError("counts csv line " + std::to_string(line_number) + ": duplicate cell");
    }
    seen[cell_index] = true;
    cell(table, s, a_plus, b_plus) = count;
  }
  if (!header_seen) {
    throw ConfigError("counts csv: empty document");
  }
  int missing = 0;
  for (bool b : seen) {
    missing += b ? 0 : 1;
  }
  if (missing != 0) {
    throw ConfigError("counts csv: " + std::to_string(missing) + " of 36 cells missing");
  }
  return table;
}

}  // namespace paulitomo
