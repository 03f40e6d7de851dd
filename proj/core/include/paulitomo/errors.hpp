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

#include <stdexcept>
#include <string>

namespace paulitomo {

/// Invalid experiment configuration or malformed input document.
/// The CLI maps this to exit code 2.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Estimation cannot proceed: empty settings, reference probability too
/// small, or a rank-deficient state matrix. The CLI maps this to exit code 3.
class ReconstructionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace paulitomo
