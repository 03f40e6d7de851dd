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

#include <string>
#include <string_view>

#include "paulitomo/measurement.hpp"

namespace paulitomo {

/// CSV rendering of a counts table. Header `alpha,beta,outcome_a,outcome_b,
/// count`, axes written as x/y/z, outcomes as +1/-1, one row per outcome
/// cell of each setting: 36 data rows in fixed order.
std::string counts_to_csv(const CountsTable& table);

/// Parse the format written by counts_to_csv. Rows may appear in any order
/// but every one of the 36 cells must appear exactly once. Throws
/// ConfigError on malformed input. The loaded table has shots_requested and
/// seed equal to 0 since the file does not carry them.
CountsTable counts_from_csv(std::string_view text);

}  // namespace paulitomo
