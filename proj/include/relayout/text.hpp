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

// UTF-8 helpers and the code point classes used by segmentation and line
// breaking.

#pragma once

#include <string>
#include <string_view>

namespace relayout::text {

/// Invalid sequences decode to U+FFFD.
std::u32string decode(std::string_view utf8);
std::string encode(std::u32string_view text);
std::string encode(char32_t cp);
std::size_t length(std::string_view utf8);

bool is_space(char32_t cp);
/// Scripts written without inter-word spaces; any boundary is a break point.
bool is_spaceless(char32_t cp);
bool is_lower(char32_t cp);
bool is_upper(char32_t cp);
bool is_letter(char32_t cp);
bool is_digit(char32_t cp);

std::string trim(std::string_view s);

}  // namespace relayout::text
