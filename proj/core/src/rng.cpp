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

#include "paulitomo/rng.hpp"

namespace paulitomo {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t derive_stream_seed(std::uint64_t master, std::uint64_t tag_a, std::uint64_t tag_b) {
  // Chained mixing keeps (master, a, b) and (master, b, a) distinct.
  std::uint64_t s = splitmix64(master);
  s = splitmix64(s ^ splitmix64(tag_a));
  s = splitmix64(s ^ splitmix64(tag_b));
  return s;
}

std::mt19937_64 make_stream(std::uint64_t master, std::uint64_t tag_a, std::uint64_t tag_b) {
  return std::mt19937_64{derive_stream_seed(master, tag_a, tag_b)};
}

}  // namespace paulitomo
