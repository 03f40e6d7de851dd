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

#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "paulitomo/entangled_state.hpp"
#include "paulitomo/errors.hpp"
#include "paulitomo/measurement.hpp"

namespace paulitomo {
namespace {

CountsTable sample_table() { return run_experiment(bell_state(1), 500, {}, 2024); }

TEST_CASE("csv round trip preserves every cell") {
  const CountsTable original = sample_table();
  const CountsTable loaded = counts_from_csv(counts_to_csv(original));
  for (const Setting& s : original.all_settings()) {
    CHECK(loaded.at(s) == original.at(s));
  }
}

TEST_CASE("csv layout is one header plus thirty-six rows") {
  const std::string text = counts_to_csv(sample_table());
  std::istringstream in(text);
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    lines.push_back(line);
  }
  REQUIRE(lines.size() == 37);
  CHECK(lines[0] == "alpha,beta,outcome_a,outcome_b,count");
  for (std::size_t i = 1; i < lines.size(); ++i) {
    CHECK(lines[i].find_first_not_of("xyz,+-0123456789") == std::string::npos);
  }
}

TEST_CASE("csv serialization is byte-stable") {
  CountsTable table;
  OutcomeCounts c{1, 2, 3, 4};
  for (const Setting& s : table.all_settings()) {
    table.at(s) = c;
    c.n_pp += 10;
  }
  const std::string first = counts_to_csv(table);
  const std::string second = counts_to_csv(table);
  CHECK(first == second);
  CHECK(first.substr(0, 49) ==
        "alpha,beta,outcome_a,outcome_b,count\nx,x,+1,+1,1\n");
}

TEST_CASE("csv rows may arrive in any order") {
  const CountsTable original = sample_table();
  const std::string text = counts_to_csv(original);
  std::istringstream in(text);
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    lines.push_back(line);
  }
  std::string shuffled = lines[0] + "\n";
  for (std::size_t i = lines.size(); i-- > 1;) {
    shuffled += lines[i] + "\n";
  }
  const CountsTable loaded = counts_from_csv(shuffled);
  for (const Setting& s : original.all_settings()) {
    CHECK(loaded.at(s) == original.at(s));
  }
}

TEST_CASE("csv parser tolerates formatting slack") {
  std::string text = counts_to_csv(sample_table());
  // CRLF endings and padding spaces both appear in the wild.
  std::string crlf;
  for (char c : text) {
    if (c == '\n') {
      crlf += "\r\n";
    } else {
      crlf += c;
    }
  }
  CHECK_NOTHROW((void)counts_from_csv(crlf));

  std::string padded = "alpha, beta ,outcome_a,outcome_b,count\n";
  const CountsTable original = sample_table();
  for (const Setting& s : original.all_settings()) {
    const char axis[] = {'\0', 'x', 'y', 'z'};
    const OutcomeCounts& c = original.at(s);
    padded += std::string(1, axis[s.alpha]) + " , " + std::string(1, axis[s.beta]);
    // "1" is accepted as a spelling of "+1".
    padded += " , 1 , +1 , " + std::to_string(c.n_pp) + "\n";
    padded += std::string(1, axis[s.alpha]) + "," + std::string(1, axis[s.beta]) + ",+1,-1," +
              std::to_string(c.n_pm) + "\n";
    padded += std::string(1, axis[s.alpha]) + "," + std::string(1, axis[s.beta]) + ",-1,+1," +
              std::to_string(c.n_mp) + "\n";
    padded += std::string(1, axis[s.alpha]) + "," + std::string(1, axis[s.beta]) + ",-1,-1," +
              std::to_string(c.n_mm) + "\n";
  }
  const CountsTable loaded = counts_from_csv(padded);
  for (const Setting& s : original.all_settings()) {
    CHECK(loaded.at(s) == original.at(s));
  }
}

TEST_CASE("csv parser rejects malformed input") {
  const std::string good = counts_to_csv(sample_table());

  SUBCASE("wrong header") {
    std::string bad = good;
    bad.replace(0, 5, "gamma");
    CHECK_THROWS_AS((void)counts_from_csv(bad), ConfigError);
  }
  SUBCASE("wrong field count") {
    std::string bad = good + "x,x,+1\n";
    CHECK_THROWS_AS((void)counts_from_csv(bad), ConfigError);
  }
  SUBCASE("unknown axis") {
    std::string bad = good;
    bad.replace(bad.find("\nx,x"), 4, "\nw,x");
    CHECK_THROWS_AS((void)counts_from_csv(bad), ConfigError);
  }
  SUBCASE("unknown outcome") {
    std::string bad = good;
    bad.replace(bad.find("+1,+1"), 5, "+2,+1");
    CHECK_THROWS_AS((void)counts_from_csv(bad), ConfigError);
  }
  SUBCASE("negative count") {
    std::string bad = "alpha,beta,outcome_a,outcome_b,count\nx,x,+1,+1,-3\n";
    CHECK_THROWS_AS((void)counts_from_csv(bad), ConfigError);
  }
  SUBCASE("non-numeric count") {
    std::string bad = good;
    const std::size_t pos = bad.find_last_of(',');
    bad = bad.substr(0, pos + 1) + "abc\n";
    CHECK_THROWS_AS((void)counts_from_csv(bad), ConfigError);
  }
  SUBCASE("duplicate cell") {
    std::string bad = good + "x,x,+1,+1,5\n";
    CHECK_THROWS_AS((void)counts_from_csv(bad), ConfigError);
  }
  SUBCASE("missing cell") {
    std::string bad = good;
    const std::size_t first_row = bad.find('\n') + 1;
    const std::size_t second_row = bad.find('\n', first_row) + 1;
    bad.erase(first_row, second_row - first_row);
    CHECK_THROWS_AS((void)counts_from_csv(bad), ConfigError);
  }
  SUBCASE("empty input") {
    CHECK_THROWS_AS((void)counts_from_csv(""), ConfigError);
  }
}

TEST_CASE("csv errors carry the offending line number") {
  const std::string bad = "alpha,beta,outcome_a,outcome_b,count\nx,x,+1,+1,5\nw,x,+1,+1,5\n";
  try {
    (void)counts_from_csv(bad);
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("line 3") != std::string::npos);
  }
}

}  // namespace
}  // namespace paulitomo
