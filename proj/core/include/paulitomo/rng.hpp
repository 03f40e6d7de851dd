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
#include <random>

namespace paulitomo {

/// SplitMix64 output function. Bijective on 64-bit words, so distinct
/// inputs never collide.
std::uint64_t splitmix64(std::uint64_t x);

/// Deterministic seed for the substream identified by (tag_a, tag_b) under
/// a master seed. Each tag pair gets a statistically independent stream, so
/// results do not depend on the order the substreams are consumed in.
std::uint64_t derive_stream_seed(std::uint64_t master, std::uint64_t tag_a,
                                 std::uint64_t tag_b = 0);

/// Generator seeded for the (tag_a, tag_b) substream of `master`.
std::mt19937_64 make_stream(std::uint64_t master, std::uint64_t tag_a, std::uint64_t tag_b = 0);

}  // namespace paulitomo
