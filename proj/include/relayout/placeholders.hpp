// Copyright 2026 The relayout Authors
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

// Scanning of `{v<id>}` placeholder tokens in masked text.

#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "relayout/ir.hpp"

namespace relayout {

struct TokenMatch {
  std::size_t begin = 0;  // byte offsets into the scanned text
  std::size_t end = 0;
  std::optional<int> id;  // empty for malformed tokens
};

/// Finds well-formed `{v<digits>}` tokens and near-misses such as `{v}`,
/// `{ v1 }` or `{V2}`, which are reported with an empty id.
std::vector<TokenMatch> scan_tokens(std::string_view text);

/// Substitutes every known token with the placeholder's restored text;
/// unknown tokens are left in place.
std::string restore_text(std::string_view masked, const std::vector<Placeholder>& placeholders);

/// Removes well-formed tokens and all whitespace.
std::string strip_tokens_and_space(std::string_view masked);

}  // namespace relayout
